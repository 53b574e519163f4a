#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bernpred/core.hpp"
#include "bernpred/extreal.hpp"

namespace bernpred {

// Frequentist risk of a decision: the KL loss averaged over the
// observation, R(theta) = (1-theta) KL(theta, delta0) + theta KL(theta, delta1).
// Weighting follows the 0 * inf == 0 convention, so e.g. the MLE rule
// has zero risk at theta in {0, 1} and infinite risk in between.
inline ExtReal risk(const Decision& delta, const Probability& theta) {
    const double t = theta.value();
    return (1.0 - t) * kl_bernoulli(theta, Probability(delta.delta0())) +
           t * kl_bernoulli(theta, Probability(delta.delta1()));
}

inline ExtReal risk(const Decision& delta, double theta) {
    return risk(delta, Probability(theta));
}

inline bool is_interior(const Decision& d) {
    return d.delta0() > 0.0 && d.delta0() < 1.0 &&
           d.delta1() > 0.0 && d.delta1() < 1.0;
}

namespace detail {

// Vectorizable evaluator for the risk of an interior decision, in the
// expanded form
//   R(t) = -S(t) + t^2 q11 + t(1-t)(q10 + q01) + (1-t)^2 q00,
// where qxy = log 1/p_delta(y | x). Only valid when both components are
// strictly inside (0,1), so all four coefficients are finite.
struct RiskCurve {
    double q11, q10, q01, q00;

    explicit RiskCurve(const Decision& d) {
        if (!is_interior(d))
            throw std::domain_error("RiskCurve: decision must be interior");
        q11 = -std::log(d.delta1());
        q10 = -std::log1p(-d.delta1());
        q01 = -std::log(d.delta0());
        q00 = -std::log1p(-d.delta0());
    }

    double operator()(double t) const {
        return -binary_entropy(Probability(t)) + t * t * q11 +
               t * (1.0 - t) * (q10 + q01) + (1.0 - t) * (1.0 - t) * q00;
    }

    // Same polynomial part, reusing a cached entropy value.
    double with_entropy(double t, double entropy) const {
        return -entropy + t * t * q11 + t * (1.0 - t) * (q10 + q01) +
               (1.0 - t) * (1.0 - t) * q00;
    }

    // dR/dt = log(t/(1-t)) + polynomial'; defined on (0,1) only.
    double derivative(double t) const {
        return std::log(t / (1.0 - t)) + 2.0 * t * q11 +
               (1.0 - 2.0 * t) * (q10 + q01) - 2.0 * (1.0 - t) * q00;
    }
};

} // namespace detail

// Coefficients (F, G, H) of the risk difference
//   R_delta(t) - R_delta'(t) = F t^2 - G t + H,
// defined when all four decision components are strictly interior.
struct QuadraticRiskDiff {
    double f = 0.0;
    double g = 0.0;
    double h = 0.0;

    double at(double theta) const { return f * theta * theta - g * theta + h; }

    // Exact minimum of the quadratic over [0,1].
    double min_on_unit_interval() const {
        double m = std::min(at(0.0), at(1.0));
        if (f > 0.0) {
            const double vertex = g / (2.0 * f);
            if (vertex > 0.0 && vertex < 1.0) m = std::min(m, at(vertex));
        }
        return m;
    }
};

inline QuadraticRiskDiff risk_difference_coeffs(const Decision& delta,
                                                const Decision& delta_prime) {
    if (!is_interior(delta) || !is_interior(delta_prime))
        throw std::domain_error(
            "risk_difference_coeffs: both decisions must be interior");
    const double d0 = delta.delta0(), d1 = delta.delta1();
    const double p0 = delta_prime.delta0(), p1 = delta_prime.delta1();
    QuadraticRiskDiff q;
    const double l_h = std::log((1.0 - p0) / (1.0 - d0));
    q.h = l_h;
    // The (1-delta'_0)/(1-delta_0) factor enters G twice.
    q.g = 2.0 * l_h + std::log((1.0 - d1) / (1.0 - p1)) + std::log(d0 / p0);
    q.f = std::log(p1 / d1) + std::log((1.0 - d1) / (1.0 - p1)) +
          std::log(d0 / p0) + l_h;
    return q;
}

// Supremum of the risk over theta in [0,1].
struct WorstCase {
    ExtReal value;
    double argmax = 0.0;
    // All maximizers found within 1e-9 of the supremum, ascending.
    std::vector<double> attained_at;
};

// Grid supremum of R over [0,1] (endpoints included), sharpened by
// bisecting dR/dt on every sign-changing subinterval. Interior maxima
// are real: R'' = 1/(t(1-t)) + 2 (quadratic coefficient) may be
// negative. Returns exact +inf as soon as any grid point is infinite.
inline WorstCase worst_case_risk(const Decision& delta, int grid_n = 10001,
                                 double refine_tol = 1e-12) {
    if (grid_n < 3)
        throw std::invalid_argument("worst_case_risk: grid_n must be >= 3");

    WorstCase out;
    const double step = 1.0 / (grid_n - 1);
    const auto grid_theta = [&](int i) {
        return i == grid_n - 1 ? 1.0 : i * step;
    };

    if (!is_interior(delta)) {
        // Some component is on the boundary; the risk is +inf on a set
        // that always meets the interior grid.
        bool any_inf = false;
        for (int i = 0; i < grid_n; ++i) {
            const double t = grid_theta(i);
            if (risk(delta, t).is_infinite()) {
                if (!any_inf) out.argmax = t;
                any_inf = true;
                out.attained_at.push_back(t);
            }
        }
        if (!any_inf)
            throw std::logic_error(
                "worst_case_risk: boundary decision with all-finite grid");
        out.value = ExtReal::infinity();
        return out;
    }

    const detail::RiskCurve curve(delta);
    std::vector<double> cand_theta, cand_value;
    cand_theta.reserve(grid_n + 4);
    cand_value.reserve(grid_n + 4);
    for (int i = 0; i < grid_n; ++i) {
        const double t = grid_theta(i);
        cand_theta.push_back(t);
        cand_value.push_back(curve(t));
    }

    // Bracket stationary points of R between interior grid nodes and
    // refine by bisection; R' -> -inf at 0+ and +inf at 1-, so maxima
    // adjacent to the endpoints are the endpoints themselves.
    const auto deriv_sign = [&](double t) {
        const double d = curve.derivative(t);
        return (d > 0.0) - (d < 0.0);
    };
    std::vector<int> sign(grid_n, 0);
    for (int i = 1; i + 1 < grid_n; ++i) sign[i] = deriv_sign(grid_theta(i));
    for (int i = 1; i + 2 < grid_n; ++i) {
        double lo = grid_theta(i), hi = grid_theta(i + 1);
        const int slo = sign[i], shi = sign[i + 1];
        if (slo == 0) continue; // grid node is itself stationary, already a candidate
        if (slo * shi >= 0) continue;
        while (hi - lo > refine_tol) {
            const double mid = 0.5 * (lo + hi);
            const int sm = deriv_sign(mid);
            if (sm == 0) { lo = hi = mid; break; }
            if (sm == slo) lo = mid; else hi = mid;
        }
        const double root = 0.5 * (lo + hi);
        cand_theta.push_back(root);
        cand_value.push_back(curve(root));
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < cand_theta.size(); ++k)
        if (cand_value[k] > cand_value[best]) best = k;
    const double sup = cand_value[best];

    std::vector<std::pair<double, double>> near_sup; // (theta, value)
    for (std::size_t k = 0; k < cand_theta.size(); ++k)
        if (cand_value[k] >= sup - 1e-9)
            near_sup.emplace_back(cand_theta[k], cand_value[k]);
    std::sort(near_sup.begin(), near_sup.end());
    // Collapse clusters closer than 1e-9, keeping each cluster's best point.
    std::vector<double> attained;
    for (std::size_t k = 0; k < near_sup.size();) {
        std::size_t best_in_run = k;
        std::size_t e = k + 1;
        while (e < near_sup.size() &&
               near_sup[e].first - near_sup[e - 1].first <= 1e-9) {
            if (near_sup[e].second >= near_sup[best_in_run].second) best_in_run = e;
            ++e;
        }
        attained.push_back(near_sup[best_in_run].first);
        k = e;
    }

    out.value = ExtReal(sup);
    out.argmax = cand_theta[best];
    out.attained_at = std::move(attained);
    return out;
}

} // namespace bernpred
