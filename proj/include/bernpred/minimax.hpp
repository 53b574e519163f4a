#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bernpred/bayes.hpp"
#include "bernpred/risk.hpp"

namespace bernpred {

// Worst-case risk of the symmetric beta-Bayes decision (a = b):
//   sup_t R(t) = log((2a+1)/(a+1))                          for a >= 1/3,
//              = (1/2) log((a+1)/(4a)) + log((2a+1)/(a+1))  for 0 < a <= 1/3.
// Both branches agree at a = 1/3 with value log(5/4). Derived from the
// risk form R(t) = -S(t) + log((2a+1)/(a+1)) + 2 t(1-t) log((a+1)/a),
// whose supremum sits at the endpoints (upper branch) or at t = 1/2
// (lower branch).
inline double worst_case_symmetric(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("worst_case_symmetric: a must be positive");
    const double plateau = std::log((2.0 * a + 1.0) / (a + 1.0));
    if (a >= 1.0 / 3.0) return plateau;
    return 0.5 * std::log((a + 1.0) / (4.0 * a)) + plateau;
}

// Worst-case scan over the equalizer class delta0 = delta1 = c: the sup
// over theta is max(log 1/c, log 1/(1-c)), minimized at c = 1/2.
struct EqualizerScan {
    double infimum;
    double minimizer;
};

inline EqualizerScan equalizer_scan(int scan_n = 999) {
    if (scan_n < 3)
        throw std::invalid_argument("equalizer_scan: scan_n must be >= 3");
    EqualizerScan best{HUGE_VAL, 0.5};
    for (int i = 1; i <= scan_n; ++i) {
        const double c = static_cast<double>(i) / (scan_n + 1);
        const double sup = std::max(-std::log(c), -std::log1p(-c));
        if (sup < best.infimum) {
            best.infimum = sup;
            best.minimizer = c;
        }
    }
    return best;
}

// Floor of the worst-case risk over the equalizer class: log 2, attained
// at c = 1/2. The closed form is cross-checked against the scan.
inline double equalizer_floor() {
    const double floor = std::log(2.0);
    const EqualizerScan scan = equalizer_scan();
    if (std::abs(scan.infimum - floor) > 1e-6 || scan.infimum < floor - 1e-12)
        throw std::logic_error("equalizer_floor: scan disagrees with log 2");
    return floor;
}

struct MinimaxReport {
    enum class Method { closed_form, numeric };

    Decision decision;
    double value;
    Method method;
    std::vector<double> worst_theta;
};

inline const char* to_string(MinimaxReport::Method m) {
    return m == MinimaxReport::Method::closed_form ? "CLOSED_FORM" : "NUMERIC";
}

// The unique minimax decision (1/5, 4/5), whose risk equals log(5/4) at
// theta in {0, 1/2, 1} and is smaller everywhere else.
inline MinimaxReport solve_minimax_closed() {
    return {Decision(0.2, 0.8), std::log(1.25),
            MinimaxReport::Method::closed_form, {0.0, 0.5, 1.0}};
}

namespace detail {

// Worst case used inside the numeric search; a moderate grid with
// bisection refinement is plenty at search accuracy.
inline double search_worst_case(const Decision& d) {
    return worst_case_risk(d, 1001, 1e-10).value.as_double();
}

} // namespace detail

// Independent numeric minimizer of the worst-case risk: coarse grid over
// the closed triangle delta0 <= delta1 (boundary decisions price
// themselves out at +inf), then box refinement shrinking by half each
// round around the incumbent. Deliberately avoids the beta-prior
// reduction so it can serve as an oracle for the closed form.
inline MinimaxReport solve_minimax_numeric(int grid_n = 101, int refine_iters = 20) {
    if (grid_n < 11)
        throw std::invalid_argument("solve_minimax_numeric: grid_n must be >= 11");
    if (refine_iters < 0)
        throw std::invalid_argument("solve_minimax_numeric: refine_iters must be >= 0");

    const double spacing = 1.0 / (grid_n - 1);
    double best0 = 0.5, best1 = 0.5;
    double best_val = HUGE_VAL;
    for (int i = 1; i + 1 < grid_n; ++i) {
        for (int j = i; j + 1 < grid_n; ++j) {
            const double d0 = i * spacing, d1 = j * spacing;
            const double v = detail::search_worst_case(Decision(d0, d1));
            if (v < best_val) {
                best_val = v;
                best0 = d0;
                best1 = d1;
            }
        }
    }

    double half = spacing;
    constexpr double half_floor = 1e-9;
    constexpr int local_n = 9;
    for (int round = 0; round < refine_iters; ++round) {
        const double lo0 = std::max(best0 - half, 1e-12);
        const double hi0 = std::min(best0 + half, 1.0 - 1e-12);
        const double lo1 = std::max(best1 - half, 1e-12);
        const double hi1 = std::min(best1 + half, 1.0 - 1e-12);
        for (int i = 0; i < local_n; ++i) {
            const double d0 = lo0 + (hi0 - lo0) * i / (local_n - 1);
            for (int j = 0; j < local_n; ++j) {
                const double d1 = lo1 + (hi1 - lo1) * j / (local_n - 1);
                if (d1 < d0) continue; // stay in C_LESS ∪ C_EQ
                const double v = detail::search_worst_case(Decision(d0, d1));
                if (v < best_val) {
                    best_val = v;
                    best0 = d0;
                    best1 = d1;
                }
            }
        }
        half = std::max(0.5 * half, half_floor);
    }

    const Decision best(best0, best1);
    const WorstCase final = worst_case_risk(best, 10001, 1e-12);
    return {best, final.value.as_double(), MinimaxReport::Method::numeric,
            final.attained_at};
}

} // namespace bernpred
