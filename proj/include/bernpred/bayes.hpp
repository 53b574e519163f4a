#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bernpred/classes.hpp"
#include "bernpred/core.hpp"

namespace bernpred {

// Hyperparameters of a beta prior, both strictly positive.
struct BetaHyper {
    double a;
    double b;

    BetaHyper(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            throw std::domain_error("BetaHyper: parameters must be positive");
    }
};

// Bayes decision under KL loss for the beta prior:
//   delta0 = a/(a+b+1),  delta1 = (a+1)/(a+b+1).
// Always lands in C_LESS since delta1 - delta0 = 1/(a+b+1).
inline Decision beta_to_decision(const BetaHyper& hyper) {
    const double s = hyper.a + hyper.b + 1.0;
    return Decision(hyper.a / s, (hyper.a + 1.0) / s);
}

// Inverse of beta_to_decision on C_LESS:
//   a = delta0/(delta1-delta0),  b = (1-delta1)/(delta1-delta0).
inline BetaHyper decision_to_beta(const Decision& delta) {
    if (classify(delta) != DecisionClass::c_less)
        throw std::domain_error("decision_to_beta: decision must lie in C_LESS");
    const double gap = delta.delta1() - delta.delta0();
    return BetaHyper(delta.delta0() / gap, (1.0 - delta.delta1()) / gap);
}

// A prior with finitely many atoms in [0,1]: atoms strictly increasing,
// weights positive and summing to one within 1e-12. Atoms closer than
// 1e-12 are merged at construction (weights added).
class DiscretePrior {
public:
    struct Atom {
        double theta;
        double weight;
    };

    static constexpr double merge_tol = 1e-12;
    static constexpr double sum_tol = 1e-12;

    explicit DiscretePrior(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty())
            throw std::invalid_argument("DiscretePrior: no atoms");
        for (const Atom& a : atoms_) {
            Probability check(a.theta); // validates [0,1], rejects NaN
            (void)check;
            if (!(a.weight > 0.0) || !std::isfinite(a.weight))
                throw std::invalid_argument("DiscretePrior: weights must be positive");
        }
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
        std::vector<Atom> merged;
        merged.reserve(atoms_.size());
        for (const Atom& a : atoms_) {
            if (!merged.empty() && a.theta - merged.back().theta < merge_tol)
                merged.back().weight += a.weight;
            else
                merged.push_back(a);
        }
        atoms_ = std::move(merged);
        double sum = 0.0;
        for (const Atom& a : atoms_) sum += a.weight;
        if (std::abs(sum - 1.0) > sum_tol)
            throw std::invalid_argument("DiscretePrior: weights must sum to 1");
    }

    // Rescales the weights to sum exactly to one, then validates.
    // Intended for solver output whose sum carries accumulated rounding.
    static DiscretePrior normalized(std::vector<Atom> atoms) {
        double sum = 0.0;
        for (const Atom& a : atoms) sum += a.weight;
        if (!(sum > 0.0) || !std::isfinite(sum))
            throw std::invalid_argument("DiscretePrior: total weight must be positive");
        for (Atom& a : atoms) a.weight /= sum;
        return DiscretePrior(std::move(atoms));
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
};

// First and second moments of theta under a prior.
struct MomentSummary {
    double m1; // E(theta)
    double m2; // E(theta^2)
};

inline MomentSummary moments(const DiscretePrior& prior) {
    double m1 = 0.0, m2 = 0.0;
    for (const auto& a : prior.atoms()) {
        m1 += a.weight * a.theta;
        m2 += a.weight * a.theta * a.theta;
    }
    return {m1, m2};
}

// Bayes decision under KL loss: the posterior mean of theta given x,
//   delta(1) = m2/m1,  delta(0) = (m1 - m2)/(1 - m1).
// Requires both observations to have positive marginal probability;
// conditioning on a probability-zero observation is an error, not a
// convention.
inline Decision bayes_decision(const DiscretePrior& prior) {
    const MomentSummary m = moments(prior);
    if (!(m.m1 > 0.0) || !(m.m1 < 1.0))
        throw std::domain_error(
            "bayes_decision: degenerate posterior (an observation has "
            "marginal probability zero)");
    return Decision((m.m1 - m.m2) / (1.0 - m.m1), m.m2 / m.m1);
}

// Average of a decision with its label-swapped mirror (1-delta1, 1-delta0).
// The result satisfies delta0 + delta1 = 1 and never has a larger worst
// case, by convexity of the KL loss.
inline Decision symmetrize(const Decision& delta) {
    const double d0 = delta.delta0(), d1 = delta.delta1();
    return Decision(0.5 * (d0 + 1.0 - d1), 0.5 * (d1 + 1.0 - d0));
}

// A prior is minimax exactly when E(theta) = 1/2 and E(theta^2) = 2/5.
// The tolerance accommodates solver output that meets the condition only
// to optimizer precision.
inline bool is_minimax_prior(const DiscretePrior& prior, double tol = 1e-9) {
    const MomentSummary m = moments(prior);
    return std::abs(m.m1 - 0.5) <= tol && std::abs(m.m2 - 0.4) <= tol;
}

} // namespace bernpred
