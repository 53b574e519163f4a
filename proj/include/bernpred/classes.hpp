#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "bernpred/core.hpp"
#include "bernpred/risk.hpp"

namespace bernpred {

// The disjoint classes partitioning the decision square:
//   c_less        0 < delta0 < delta1 < 1
//   c_eq          0 < delta0 = delta1 < 1   (equalizer-type rules)
//   c_greater     0 < delta1 < delta0 < 1
//   boundary_mle  (0, 1), the plug-in rule
//   boundary_other remaining boundary points
enum class DecisionClass {
    c_less,
    c_eq,
    c_greater,
    boundary_mle,
    boundary_other,
};

inline const char* to_string(DecisionClass c) {
    switch (c) {
        case DecisionClass::c_less: return "C_LESS";
        case DecisionClass::c_eq: return "C_EQ";
        case DecisionClass::c_greater: return "C_GREATER";
        case DecisionClass::boundary_mle: return "BOUNDARY_MLE";
        case DecisionClass::boundary_other: return "BOUNDARY_OTHER";
    }
    return "?";
}

// Exact comparisons: equality means bitwise-equal stored components.
// Callers needing tolerance must pre-round.
inline DecisionClass classify(const Decision& d) {
    const double d0 = d.delta0(), d1 = d.delta1();
    if (d0 == 0.0 || d0 == 1.0 || d1 == 0.0 || d1 == 1.0)
        return (d0 == 0.0 && d1 == 1.0) ? DecisionClass::boundary_mle
                                        : DecisionClass::boundary_other;
    if (d0 < d1) return DecisionClass::c_less;
    if (d0 > d1) return DecisionClass::c_greater;
    return DecisionClass::c_eq;
}

// Bounds sandwiching the mu^2 of the dominating construction: for any
// decision with 0 < delta1 < delta0 < 1,
//   upper_prod > mu^2 > lower_sq
// has a solution because upper_prod > lower_sq (verified numerically
// throughout the test suite; the interval is never empty).
struct MuBounds {
    double lower_sq = 0.0;   // (log(delta0 + 1 - delta1))^2
    double upper_prod = 0.0; // product of the two logarithms bounding above

    // Deterministic choice with margin on both sides.
    double midpoint_mu() const { return std::sqrt(0.5 * (lower_sq + upper_prod)); }
};

inline MuBounds lemma1_bounds(const Decision& delta) {
    if (classify(delta) != DecisionClass::c_greater)
        throw std::domain_error("lemma1_bounds: decision must lie in C_GREATER");
    const double d0 = delta.delta0(), d1 = delta.delta1();
    const double s = d0 + 1.0 - d1; // in (1, 2)
    MuBounds b;
    const double l = std::log(s);
    b.lower_sq = l * l;
    b.upper_prod = std::log((1.0 - d1) / (s * (1.0 - d0))) *
                   std::log(d0 / (s * d1));
    return b;
}

// The strictly dominating decision for a C_GREATER input:
//   delta0' = e^-mu delta0,   delta1' = e^-mu delta1 + (1 - e^-mu),
// with mu^2 the midpoint of the MuBounds interval. The result lies in
// C_LESS and its risk is smaller at every theta, certified by F > 0 and
// F H - G^2/4 > 0 for the quadratic risk difference.
inline Decision dominating_decision(const Decision& delta) {
    const MuBounds b = lemma1_bounds(delta); // also checks the class
    const double em = std::exp(-b.midpoint_mu());
    Decision result(em * delta.delta0(), em * delta.delta1() + (1.0 - em));
    if (classify(result) != DecisionClass::c_less)
        throw std::logic_error("dominating_decision: construction left C_LESS");
    return result;
}

// True iff delta_prime is at least as good as delta at every grid theta
// (+inf <= +inf counts as no worse) and strictly better somewhere: a
// finite gap above 1e-12, or a finite risk where delta's is infinite.
// For interior pairs the quadratic difference is an exact representation
// of the risk gap, so its minimum over [0,1] additionally guards the
// space between grid points.
inline bool dominates(const Decision& delta_prime, const Decision& delta,
                      int grid_n = 10001) {
    if (grid_n < 3)
        throw std::invalid_argument("dominates: grid_n must be >= 3");
    const double step = 1.0 / (grid_n - 1);
    bool strict = false;
    for (int i = 0; i < grid_n; ++i) {
        const double t = (i == grid_n - 1) ? 1.0 : i * step;
        const ExtReal rp = risk(delta_prime, t);
        const ExtReal r = risk(delta, t);
        if (!(rp <= r)) return false;
        if (r.is_infinite()) {
            if (rp.is_finite()) strict = true;
        } else if (r.value() - rp.value() > 1e-12) {
            strict = true;
        }
    }
    if (!strict) return false;
    if (is_interior(delta) && is_interior(delta_prime)) {
        const QuadraticRiskDiff q = risk_difference_coeffs(delta, delta_prime);
        if (q.min_on_unit_interval() < -1e-12) return false;
    }
    return true;
}

} // namespace bernpred
