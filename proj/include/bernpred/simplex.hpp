#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bernpred {

// Dense two-phase tableau simplex for equality-form linear programs
//   minimize c.x  subject to  A x = b,  x >= 0,
// with Bland's rule for anti-cycling. Sized for problems with a handful
// of rows and up to ~10^4 columns; the tableau stays tiny because the
// row count, not the column count, drives the work per pivot.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded };

    Status status = Status::infeasible;
    std::vector<double> solution;
    double objective = 0.0;
    // False when a nonbasic column prices out at zero reduced cost, i.e.
    // another vertex attains the same objective.
    bool unique_vertex = true;
};

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(const std::vector<std::vector<double>>& a,
                   const std::vector<double>& b, std::size_t n)
        : m_(a.size()), n_(n), width_(n + a.size() + 1) {
        tab_.assign(m_ * width_, 0.0);
        basis_.resize(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            const double sgn = b[r] < 0.0 ? -1.0 : 1.0; // keep rhs nonnegative
            for (std::size_t j = 0; j < n_; ++j) at(r, j) = sgn * a[r][j];
            at(r, n_ + r) = 1.0;
            rhs(r) = sgn * b[r];
            basis_[r] = n_ + r;
        }
    }

    double& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }
    double at(std::size_t r, std::size_t c) const { return tab_[r * width_ + c]; }
    double& rhs(std::size_t r) { return tab_[r * width_ + n_ + m_]; }
    double rhs(std::size_t r) const { return tab_[r * width_ + n_ + m_]; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t j = 0; j < width_; ++j) tab_[pr * width_ + j] /= p;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j)
                tab_[r * width_ + j] -= f * tab_[pr * width_ + j];
        }
        basis_[pr] = pc;
    }

    // Reduced costs for the objective vector given per-column (artificial
    // columns carry cost `art_cost` in phase 1, zero afterwards).
    std::vector<double> reduced_costs(const std::vector<double>& cost,
                                      double art_cost) const {
        const auto col_cost = [&](std::size_t j) {
            return j < n_ ? cost[j] : art_cost;
        };
        std::vector<double> red(n_ + m_);
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            double z = 0.0;
            for (std::size_t r = 0; r < m_; ++r)
                z += col_cost(basis_[r]) * at(r, j);
            red[j] = col_cost(j) - z;
        }
        return red;
    }

    // One phase of Bland-rule iterations. `allow` masks enterable columns.
    LpResult::Status iterate(const std::vector<double>& cost, double art_cost,
                             const std::vector<bool>& allow, double tol) {
        for (;;) {
            const std::vector<double> red = reduced_costs(cost, art_cost);
            std::size_t enter = npos;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (!allow[j]) continue;
                if (red[j] < -tol) { enter = j; break; } // Bland: lowest index
            }
            if (enter == npos) return LpResult::Status::optimal;
            std::size_t leave = npos;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, enter);
                if (a > tol) {
                    const double ratio = rhs(r) / a;
                    if (ratio < best_ratio - 1e-15 ||
                        (ratio < best_ratio + 1e-15 &&
                         (leave == npos || basis_[r] < basis_[leave])))
                    {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == npos) return LpResult::Status::unbounded;
            pivot(leave, enter);
        }
    }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    const std::vector<std::size_t>& basis() const { return basis_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t m_, n_, width_;
    std::vector<double> tab_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

inline LpResult solve_equality_lp(const std::vector<std::vector<double>>& a,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c,
                                  double tol = 1e-11) {
    const std::size_t m = a.size();
    if (m == 0 || b.size() != m)
        throw std::invalid_argument("solve_equality_lp: bad constraint shape");
    const std::size_t n = a[0].size();
    for (const auto& row : a)
        if (row.size() != n)
            throw std::invalid_argument("solve_equality_lp: ragged matrix");
    if (c.size() != n)
        throw std::invalid_argument("solve_equality_lp: bad cost size");

    detail::SimplexTableau t(a, b, n);

    // Phase 1: drive the artificial variables to zero.
    std::vector<bool> allow(n + m, true);
    const std::vector<double> zero_cost(n, 0.0);
    t.iterate(zero_cost, 1.0, allow, tol);
    double infeas = 0.0;
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis()[r] >= n) infeas += t.rhs(r);
    if (infeas > 1e-8) {
        LpResult res;
        res.status = LpResult::Status::infeasible;
        return res;
    }
    // Pivot any zero-level artificial out of the basis when possible.
    for (std::size_t r = 0; r < m; ++r) {
        if (t.basis()[r] < n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(t.at(r, j)) > tol) {
                t.pivot(r, j);
                break;
            }
        }
    }

    // Phase 2 over the original columns only.
    for (std::size_t j = n; j < n + m; ++j) allow[j] = false;
    const LpResult::Status st = t.iterate(c, 0.0, allow, tol);

    LpResult res;
    res.status = st;
    if (st != LpResult::Status::optimal) return res;
    res.solution.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis()[r] < n) res.solution[t.basis()[r]] = t.rhs(r);
    res.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.solution[j];
    const std::vector<double> red = t.reduced_costs(c, 0.0);
    std::vector<bool> basic(n, false);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis()[r] < n) basic[t.basis()[r]] = true;
    for (std::size_t j = 0; j < n; ++j)
        if (!basic[j] && red[j] <= tol) res.unique_vertex = false;
    return res;
}

} // namespace bernpred
