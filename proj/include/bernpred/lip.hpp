#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "bernpred/bayes.hpp"
#include "bernpred/risk.hpp"
#include "bernpred/simplex.hpp"

namespace bernpred {

// Conditional mutual information I(Theta; Y | X) of a prior, with its
// term-by-term decomposition. Two independent routes are reported:
//   bayes_risk_form     = sum_theta pi(theta) R_bayes(theta)
//   entropy difference  = predictive_entropy - entropy_term
// They are mathematically identical; `value` carries the Bayes-risk
// form, which is a sum of nonnegative terms.
struct InfoReport {
    double value = 0.0;
    double entropy_term = 0.0;       // integral of S dpi
    double predictive_entropy = 0.0; // sum_x p(x) S(delta_bayes(x))
    double bayes_risk_form = 0.0;
};

inline InfoReport conditional_mutual_information(const DiscretePrior& prior) {
    const Decision d = bayes_decision(prior); // checks 0 < m1 < 1
    const MomentSummary m = moments(prior);

    InfoReport rep;
    ExtReal risk_sum(0.0);
    for (const auto& a : prior.atoms()) {
        risk_sum += a.weight * risk(d, a.theta);
        rep.entropy_term += a.weight * binary_entropy(Probability(a.theta));
    }
    if (risk_sum.is_infinite())
        throw std::logic_error(
            "conditional_mutual_information: infinite Bayes risk under the "
            "prior's own Bayes rule");
    rep.bayes_risk_form = risk_sum.value();
    rep.predictive_entropy = (1.0 - m.m1) * binary_entropy(Probability(d.delta0())) +
                             m.m1 * binary_entropy(Probability(d.delta1()));
    rep.value = rep.bayes_risk_form;
    return rep;
}

// --- Linear-programming route ------------------------------------------

struct LipLpReport {
    DiscretePrior prior;
    double objective;    // integral of S dpi at the optimum
    bool unique_vertex;  // false when another vertex prices out equal
};

// Maximizing I over minimax priors reduces to minimizing the entropy
// integral subject to the moment constraints; on a grid that is the LP
//   minimize sum S(theta_i) w_i
//   s.t. sum w_i = 1, sum theta_i w_i = 1/2, sum theta_i^2 w_i = 2/5, w >= 0.
// A basic optimal solution has at most three atoms.
inline LipLpReport solve_lip_lp_report(const std::vector<double>& grid) {
    if (grid.size() < 3)
        throw std::invalid_argument("solve_lip_lp: grid needs at least 3 points");
    const std::size_t n = grid.size();
    std::vector<std::vector<double>> a(3, std::vector<double>(n));
    std::vector<double> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Probability t(grid[j]);
        a[0][j] = 1.0;
        a[1][j] = t;
        a[2][j] = t * t;
        c[j] = binary_entropy(t);
    }
    const LpResult lp = solve_equality_lp(a, {1.0, 0.5, 0.4}, c);
    if (lp.status != LpResult::Status::optimal)
        throw std::runtime_error(
            "solve_lip_lp: grid admits no prior with the required moments");
    std::vector<DiscretePrior::Atom> atoms;
    for (std::size_t j = 0; j < n; ++j)
        if (lp.solution[j] > 1e-9) atoms.push_back({grid[j], lp.solution[j]});
    return {DiscretePrior::normalized(std::move(atoms)), lp.objective,
            lp.unique_vertex};
}

inline DiscretePrior solve_lip_lp(const std::vector<double>& grid) {
    return solve_lip_lp_report(grid).prior;
}

// --- Symmetric four-atom parametric route --------------------------------

// Candidate prior on the symmetric support {x, y, 1-y, 1-x} with weights
// {alpha, beta, beta, alpha}, 0 <= x <= y <= 1/2 and 2 alpha + 2 beta = 1.
// The first moment is 1/2 automatically; the second pins alpha and beta:
//   alpha u(x) + beta u(y) = 2/5,  u(t) = t^2 + (1-t)^2.
// When y = 1/2 the two middle atoms coincide and carry total mass 2 beta.
struct ParametricLipCandidate {
    double x = 0.0;
    double y = 0.5;
    double alpha = 0.3;
    double beta = 0.2;

    double objective() const {
        return 2.0 * alpha * binary_entropy(Probability(x)) +
               2.0 * beta * binary_entropy(Probability(y));
    }

    DiscretePrior to_prior() const {
        std::vector<DiscretePrior::Atom> atoms;
        if (alpha > 0.0) {
            atoms.push_back({x, alpha});
            atoms.push_back({1.0 - x, alpha});
        }
        if (beta > 0.0) {
            atoms.push_back({y, beta});
            atoms.push_back({1.0 - y, beta});
        }
        return DiscretePrior::normalized(std::move(atoms)); // merges coincident atoms
    }
};

namespace detail {

inline double second_moment_factor(double t) {
    return t * t + (1.0 - t) * (1.0 - t);
}

// Weights solving the normalization and second-moment constraints for
// fixed (x, y); +inf objective when they leave the simplex.
inline double parametric_objective(double x, double y, double& alpha, double& beta) {
    alpha = 0.0;
    beta = 0.0;
    const double ux = second_moment_factor(x);
    const double uy = second_moment_factor(y);
    if (ux - uy < 1e-14) return HUGE_VAL; // degenerate: u must separate
    alpha = (0.4 - 0.5 * uy) / (ux - uy);
    beta = 0.5 - alpha;
    if (alpha < -1e-12 || beta < -1e-12) return HUGE_VAL;
    alpha = std::max(alpha, 0.0);
    beta = std::max(beta, 0.0);
    return 2.0 * alpha * binary_entropy(Probability(x)) +
           2.0 * beta * binary_entropy(Probability(y));
}

} // namespace detail

// Minimizes the entropy integral over the symmetric four-atom family by a
// coarse scan followed by box-shrink refinement over (x, y). Feasibility
// requires u(x) >= 4/5 >= u(y), i.e. x below and y above the crossing
// point (1 - sqrt(3/5))/2 of u = 4/5. The optimum is the corner
// (x, y) = (0, 1/2) with weights (3/10, 1/5).
inline ParametricLipCandidate solve_lip_parametric(double tol = 1e-8) {
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_lip_parametric: tol must be positive");
    const double t_star = 0.5 * (1.0 - std::sqrt(0.6));

    double bx = 0.0, by = 0.5;
    double ba = 0.0, bb = 0.0;
    double best = detail::parametric_objective(bx, by, ba, bb);

    constexpr int scan_n = 65;
    for (int i = 0; i < scan_n; ++i) {
        const double x = t_star * i / (scan_n - 1);
        for (int j = 0; j < scan_n; ++j) {
            const double y = t_star + (0.5 - t_star) * j / (scan_n - 1);
            double al = 0.0, be = 0.0;
            const double v = detail::parametric_objective(x, y, al, be);
            if (v < best) {
                best = v;
                bx = x; by = y; ba = al; bb = be;
            }
        }
    }

    double half_x = t_star / (scan_n - 1);
    double half_y = (0.5 - t_star) / (scan_n - 1);
    constexpr int local_n = 9;
    while (half_x > tol * 1e-3 || half_y > tol * 1e-3) {
        const double lo_x = std::max(bx - half_x, 0.0);
        const double hi_x = std::min(bx + half_x, t_star);
        const double lo_y = std::max(by - half_y, t_star);
        const double hi_y = std::min(by + half_y, 0.5);
        for (int i = 0; i < local_n; ++i) {
            const double x = lo_x + (hi_x - lo_x) * i / (local_n - 1);
            for (int j = 0; j < local_n; ++j) {
                const double y = lo_y + (hi_y - lo_y) * j / (local_n - 1);
                double al = 0.0, be = 0.0;
                const double v = detail::parametric_objective(x, y, al, be);
                if (v < best) {
                    best = v;
                    bx = x; by = y; ba = al; bb = be;
                }
            }
        }
        half_x *= 0.5;
        half_y *= 0.5;
    }

    // The objective is quadratically flat around its minimizer, so pure
    // value comparisons cannot separate points closer than ~sqrt(eps).
    // Among numerically indistinguishable candidates, prefer an exact
    // corner of the feasible region; corners are listed first.
    {
        const std::pair<double, double> candidates[] = {
            {0.0, 0.5}, {0.0, t_star}, {t_star, 0.5}, {t_star, t_star},
            {0.0, by},  {bx, 0.5},     {bx, by}};
        double feasible_min = best;
        for (const auto& [cx, cy] : candidates) {
            double al = 0.0, be = 0.0;
            feasible_min =
                std::min(feasible_min, detail::parametric_objective(cx, cy, al, be));
        }
        for (const auto& [cx, cy] : candidates) {
            double al = 0.0, be = 0.0;
            const double v = detail::parametric_objective(cx, cy, al, be);
            if (v <= feasible_min + 1e-14) {
                best = v;
                bx = cx; by = cy; ba = al; bb = be;
                break;
            }
        }
    }

    ParametricLipCandidate out;
    out.x = bx;
    out.y = by;
    out.alpha = ba;
    out.beta = bb;
    return out;
}

// --- Ascent route ---------------------------------------------------------

struct LipAscentReport {
    DiscretePrior prior;
    double info;      // achieved I at the returned prior
    int best_restart; // index of the winning restart
};

namespace detail {

// I and its supergradient for weights on a fixed grid. Returns false on
// the degenerate corner where the Bayes rule leaves the open square
// (all surviving mass on {0,1}); the caller treats that as a failed step.
struct AscentState {
    double info;
    std::vector<double> grad; // grad[i] = R_bayes(theta_i)
};

inline bool ascent_eval(const std::vector<double>& theta,
                        const std::vector<double>& entropy,
                        const std::vector<double>& w, AscentState& out) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        m1 += w[i] * theta[i];
        m2 += w[i] * theta[i] * theta[i];
    }
    if (!(m1 > 0.0) || !(m1 < 1.0) || !(m2 > 0.0) || !(m2 < m1)) return false;
    const double d1 = m2 / m1;
    const double d0 = (m1 - m2) / (1.0 - m1);
    if (!(d0 > 0.0) || !(d0 < 1.0) || !(d1 > 0.0) || !(d1 < 1.0)) return false;
    const RiskCurve curve(Decision(d0, d1));
    out.grad.resize(w.size());
    double info = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = curve.with_entropy(theta[i], entropy[i]);
        out.grad[i] = r;
        info += w[i] * r;
    }
    out.info = info;
    return true;
}

} // namespace detail

// Maximizes I over priors supported on a uniform grid by multiplicative
// weights on the exact supergradient (the risk of the current Bayes rule
// at each atom), with renormalization. The step starts at 1/2, doubles on
// accepted moves and halves on rejected ones; a move is accepted only if
// I does not decrease. Stops once the gain stays below 1e-12 for 32
// consecutive accepted moves, or after 10^5 iterations. Deterministic
// given the seed; the best restart (ties to the lowest index) is
// returned with atoms below 1e-9 pruned.
inline LipAscentReport solve_lip_ascent(int grid_n, int restarts,
                                        std::uint64_t seed) {
    if (grid_n < 3)
        throw std::invalid_argument("solve_lip_ascent: grid_n must be >= 3");
    if (restarts < 1)
        throw std::invalid_argument("solve_lip_ascent: restarts must be >= 1");

    std::vector<double> theta(grid_n), entropy(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        theta[i] = (i == grid_n - 1) ? 1.0 : static_cast<double>(i) / (grid_n - 1);
        entropy[i] = binary_entropy(Probability(theta[i]));
    }

    constexpr int max_iters = 100000;
    constexpr double gain_tol = 1e-12;
    constexpr int patience = 32;
    constexpr double step_cap = 1e6;

    std::vector<double> best_w;
    double best_info = -1.0;
    int best_restart = -1;

    for (int r = 0; r < restarts; ++r) {
        std::seed_seq sseq{static_cast<std::uint64_t>(seed),
                           static_cast<std::uint64_t>(r)};
        std::mt19937_64 rng(sseq);
        std::exponential_distribution<double> expo(1.0);
        std::vector<double> w(grid_n);
        double sum = 0.0;
        for (double& wi : w) {
            wi = expo(rng);
            sum += wi;
        }
        for (double& wi : w) wi /= sum;

        detail::AscentState state;
        if (!detail::ascent_eval(theta, entropy, w, state)) continue;
        double step = 0.5;
        int flat = 0;
        std::vector<double> w_next(grid_n);
        detail::AscentState next;
        for (int it = 0; it < max_iters; ++it) {
            double gmax = -HUGE_VAL;
            for (int i = 0; i < grid_n; ++i)
                if (w[i] > 0.0 && state.grad[i] > gmax) gmax = state.grad[i];
            double nsum = 0.0;
            for (int i = 0; i < grid_n; ++i) {
                w_next[i] = w[i] > 0.0
                                ? w[i] * std::exp(step * (state.grad[i] - gmax))
                                : 0.0;
                nsum += w_next[i];
            }
            if (!(nsum > 0.0) || !std::isfinite(nsum)) {
                step *= 0.5;
                continue;
            }
            for (int i = 0; i < grid_n; ++i) w_next[i] /= nsum;
            if (!detail::ascent_eval(theta, entropy, w_next, next) ||
                next.info < state.info) {
                step *= 0.5;
                continue;
            }
            const double gain = next.info - state.info;
            w.swap(w_next);
            state = next;
            step = std::min(step * 2.0, step_cap);
            if (gain < gain_tol) {
                if (++flat >= patience) break;
            } else {
                flat = 0;
            }
        }
        if (state.info > best_info) {
            best_info = state.info;
            best_w = w;
            best_restart = r;
        }
    }
    if (best_restart < 0)
        throw std::logic_error("solve_lip_ascent: every restart degenerated");

    std::vector<DiscretePrior::Atom> atoms;
    for (int i = 0; i < grid_n; ++i)
        if (best_w[i] > 1e-9) atoms.push_back({theta[i], best_w[i]});
    return {DiscretePrior::normalized(std::move(atoms)), best_info, best_restart};
}

// --- Support reduction ----------------------------------------------------

// A moment-preserving perturbation direction over the atoms of a prior:
// coefficients annihilate the functionals 1, theta, theta^2, have a
// nonnegative inner product with S at the atoms (so subtracting them
// cannot decrease I), and `step` is the largest subtractable multiple
// keeping every weight nonnegative.
struct ReductionDirection {
    std::vector<double> coefficients;
    double step = 0.0;
};

namespace detail {

inline constexpr std::size_t no_index = static_cast<std::size_t>(-1);

// A basis direction of the null space of the 3 x n moment matrix,
// oriented so that sum a_i S(theta_i) >= 0 and scaled to unit max norm.
// Among the free-column basis vectors the one with the largest |a.S| is
// chosen; any of them serves when all inner products vanish.
inline std::vector<double> null_direction(const std::vector<double>& theta) {
    const std::size_t n = theta.size();
    std::vector<std::vector<double>> m(3, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        m[0][j] = 1.0;
        m[1][j] = theta[j];
        m[2][j] = theta[j] * theta[j];
    }
    // Gauss-Jordan with greedy column pivoting.
    std::vector<std::size_t> pivot_col;
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < 3; ++r) {
        std::size_t pc = no_index;
        double best = 1e-12;
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && std::abs(m[r][j]) > best) {
                best = std::abs(m[r][j]);
                pc = j;
            }
        }
        if (pc == no_index) continue; // rank-deficient row
        const double p = m[r][pc];
        for (std::size_t j = 0; j < n; ++j) m[r][j] /= p;
        for (std::size_t rr = 0; rr < 3; ++rr) {
            if (rr == r) continue;
            const double f = m[rr][pc];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) m[rr][j] -= f * m[r][j];
        }
        used[pc] = true;
        pivot_col.push_back(pc);
    }
    std::vector<double> best_dir;
    double best_score = -1.0;
    for (std::size_t f = 0; f < n; ++f) {
        if (used[f]) continue;
        std::vector<double> dir(n, 0.0);
        dir[f] = 1.0;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            dir[pivot_col[r]] = -m[r][f];
        double dot = 0.0, norm = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            dot += dir[j] * binary_entropy(Probability(theta[j]));
            norm = std::max(norm, std::abs(dir[j]));
        }
        if (dot < 0.0)
            for (double& v : dir) v = -v;
        const double score = std::abs(dot) / norm;
        if (score > best_score) {
            best_score = score;
            best_dir = std::move(dir);
            for (double& v : best_dir) v /= norm;
        }
    }
    return best_dir; // empty only if n <= 3
}

} // namespace detail

inline ReductionDirection find_reduction_direction(const DiscretePrior& prior) {
    if (prior.size() < 4)
        throw std::domain_error("find_reduction_direction: need at least 4 atoms");
    std::vector<double> theta;
    theta.reserve(prior.size());
    for (const auto& a : prior.atoms()) theta.push_back(a.theta);
    ReductionDirection rd;
    rd.coefficients = detail::null_direction(theta);
    if (rd.coefficients.empty())
        throw std::logic_error("find_reduction_direction: no null direction");
    rd.step = HUGE_VAL;
    for (std::size_t i = 0; i < prior.size(); ++i)
        if (rd.coefficients[i] > 1e-14)
            rd.step = std::min(rd.step, prior.atoms()[i].weight / rd.coefficients[i]);
    if (!std::isfinite(rd.step))
        throw std::logic_error("find_reduction_direction: direction has no "
                               "positive coefficient");
    return rd;
}

// Atom-level analogue of the interval-perturbation argument: repeatedly
// subtract a moment-preserving direction with nonnegative S-inner-product,
// stepping until the first weight hits zero, and prune. Terminates with
// at most three atoms; the moments are preserved and I never decreases
// (within rounding) along the way. A prior already at three or fewer
// atoms is returned unchanged.
inline DiscretePrior support_reduction(const DiscretePrior& prior) {
    if (!is_minimax_prior(prior, 1e-9))
        throw std::domain_error(
            "support_reduction: prior must satisfy the moment condition");
    if (prior.size() <= 3) return prior;

    std::vector<DiscretePrior::Atom> atoms = prior.atoms();
    while (atoms.size() > 3) {
        DiscretePrior current = DiscretePrior::normalized(atoms);
        const ReductionDirection rd = find_reduction_direction(current);
        atoms = current.atoms();
        std::size_t hit = atoms.size();
        double best_ratio = HUGE_VAL;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (rd.coefficients[i] > 1e-14) {
                const double ratio = atoms[i].weight / rd.coefficients[i];
                if (ratio < best_ratio) {
                    best_ratio = ratio;
                    hit = i;
                }
            }
        }
        for (std::size_t i = 0; i < atoms.size(); ++i)
            atoms[i].weight -= rd.step * rd.coefficients[i];
        atoms[hit].weight = 0.0;
        std::vector<DiscretePrior::Atom> kept;
        kept.reserve(atoms.size());
        for (const auto& a : atoms)
            if (a.weight > 1e-13) kept.push_back(a);
        if (kept.size() >= atoms.size())
            throw std::logic_error("support_reduction: no atom was pruned");
        atoms = std::move(kept);
    }
    return DiscretePrior::normalized(std::move(atoms));
}

} // namespace bernpred
