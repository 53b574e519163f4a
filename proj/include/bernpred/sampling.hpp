#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bernpred/bayes.hpp"
#include "bernpred/classes.hpp"

namespace bernpred {

// Random generators for decisions and priors used by the verification
// suite and the property tests. All draw from a caller-owned engine so
// runs are reproducible.

inline double uniform_open(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double v = u(rng);
        if (v > 0.0 && v < 1.0) return v;
    }
}

inline Decision sample_interior_decision(std::mt19937_64& rng) {
    return Decision(uniform_open(rng), uniform_open(rng));
}

// Uniform over {0 < delta1 < delta0 < 1}.
inline Decision sample_c_greater(std::mt19937_64& rng) {
    for (;;) {
        const double a = uniform_open(rng), b = uniform_open(rng);
        if (a > b) return Decision(a, b);
        if (b > a) return Decision(b, a);
    }
}

// Uniform over the boundary of the square, excluding the MLE (0, 1).
inline Decision sample_boundary_non_mle(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> edge(0, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double p = u(rng);
        Decision d = [&]() -> Decision {
            switch (edge(rng)) {
                case 0: return Decision(0.0, p);
                case 1: return Decision(1.0, p);
                case 2: return Decision(p, 0.0);
                default: return Decision(p, 1.0);
            }
        }();
        if (classify(d) == DecisionClass::boundary_other) return d;
    }
}

// Dirichlet(1,...,1) weights.
inline std::vector<double> dirichlet_weights(std::mt19937_64& rng, std::size_t k) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(k);
    double sum = 0.0;
    for (double& wi : w) {
        wi = expo(rng);
        sum += wi;
    }
    for (double& wi : w) wi /= sum;
    return w;
}

// Generic prior with 2..max_atoms atoms at uniform positions; endpoints
// are included with probability 1/2 each to exercise boundary atoms.
inline DiscretePrior random_prior(std::mt19937_64& rng, std::size_t max_atoms = 6) {
    std::uniform_int_distribution<std::size_t> nd(2, max_atoms);
    std::bernoulli_distribution coin(0.5);
    for (;;) {
        std::vector<double> pos;
        const std::size_t n = nd(rng);
        if (coin(rng)) pos.push_back(0.0);
        if (coin(rng)) pos.push_back(1.0);
        while (pos.size() < n) pos.push_back(uniform_open(rng));
        const std::vector<double> w = dirichlet_weights(rng, pos.size());
        std::vector<DiscretePrior::Atom> atoms;
        for (std::size_t i = 0; i < pos.size(); ++i)
            atoms.push_back({pos[i], w[i]});
        DiscretePrior prior = DiscretePrior::normalized(std::move(atoms));
        const MomentSummary m = moments(prior);
        if (m.m1 > 0.0 && m.m1 < 1.0) return prior; // nondegenerate marginals
    }
}

namespace detail {

// Solves the 3x3 system m x = r by Gaussian elimination with partial
// pivoting. The matrices here are tiny Gram matrices, never singular in
// the sampled configurations.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m,
                                    std::array<double, 3> r) {
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int row = c + 1; row < 3; ++row)
            if (std::abs(m[row][c]) > std::abs(m[p][c])) p = row;
        std::swap(m[p], m[c]);
        std::swap(r[p], r[c]);
        if (m[c][c] == 0.0)
            throw std::runtime_error("solve3: singular system");
        for (int row = 0; row < 3; ++row) {
            if (row == c) continue;
            const double f = m[row][c] / m[c][c];
            for (int col = c; col < 3; ++col) m[row][col] -= f * m[c][col];
            r[row] -= f * r[c];
        }
    }
    return {r[0] / m[0][0], r[1] / m[1][1], r[2] / m[2][2]};
}

} // namespace detail

// Prior with prescribed (sum, mean, second moment) built by projecting
// Dirichlet weights on atoms {0, 1, interior...} onto the constraint
// subspace; resamples until every weight clears 1e-3. Targets default to
// the minimax moment condition.
inline DiscretePrior random_projected_prior(std::mt19937_64& rng,
                                            double target_m1 = 0.5,
                                            double target_m2 = 0.4) {
    std::uniform_int_distribution<std::size_t> extra(2, 4);
    for (;;) {
        std::vector<double> pos{0.0, 1.0};
        const std::size_t k = extra(rng);
        while (pos.size() < 2 + k) pos.push_back(uniform_open(rng));
        const std::size_t n = pos.size();
        std::vector<double> w = dirichlet_weights(rng, n);

        // Rows of the constraint map and the residual of the draw.
        std::vector<std::array<double, 3>> rows(n);
        std::array<double, 3> resid{-1.0, -target_m1, -target_m2};
        for (std::size_t i = 0; i < n; ++i) {
            rows[i] = {1.0, pos[i], pos[i] * pos[i]};
            for (int c = 0; c < 3; ++c) resid[c] += w[i] * rows[i][c];
        }
        std::array<std::array<double, 3>, 3> gram{};
        for (std::size_t i = 0; i < n; ++i)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) gram[r][c] += rows[i][r] * rows[i][c];
        std::array<double, 3> lambda;
        try {
            lambda = detail::solve3(gram, resid);
        } catch (const std::runtime_error&) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] -= rows[i][0] * lambda[0] + rows[i][1] * lambda[1] +
                    rows[i][2] * lambda[2];
            if (w[i] < 1e-3) ok = false;
        }
        if (!ok) continue;
        std::vector<DiscretePrior::Atom> atoms;
        for (std::size_t i = 0; i < n; ++i) atoms.push_back({pos[i], w[i]});
        return DiscretePrior(std::move(atoms));
    }
}

// Minimax prior from the symmetric four-atom family {x, y, 1-y, 1-x};
// the moment condition holds by construction.
inline DiscretePrior random_symmetric_minimax_prior(std::mt19937_64& rng) {
    const double t_star = 0.5 * (1.0 - std::sqrt(0.6));
    std::uniform_real_distribution<double> ux(0.0, t_star - 1e-3);
    std::uniform_real_distribution<double> uy(t_star + 1e-3, 0.5);
    for (;;) {
        const double x = ux(rng), y = uy(rng);
        const double vx = x * x + (1.0 - x) * (1.0 - x);
        const double vy = y * y + (1.0 - y) * (1.0 - y);
        const double alpha = (0.4 - 0.5 * vy) / (vx - vy);
        const double beta = 0.5 - alpha;
        if (alpha < 0.01 || beta < 0.01) continue;
        return DiscretePrior::normalized(
            {{x, alpha}, {y, beta}, {1.0 - y, beta}, {1.0 - x, alpha}});
    }
}

// Five distinct atoms {x, y, 1/2, 1-y, 1-x} with positive weights and the
// exact moment condition; feeds the support-reduction checks.
inline DiscretePrior random_five_atom_minimax_prior(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(0.0, 0.4);
    std::uniform_real_distribution<double> ug(0.02, 0.6);
    for (;;) {
        const double x = ux(rng);
        std::uniform_real_distribution<double> uy(x + 0.02, 0.48);
        const double y = uy(rng);
        const double gamma = ug(rng);
        const double vx = x * x + (1.0 - x) * (1.0 - x);
        const double vy = y * y + (1.0 - y) * (1.0 - y);
        const double alpha = (0.4 - 0.25 * gamma - 0.5 * vy * (1.0 - gamma)) / (vx - vy);
        const double beta = 0.5 * (1.0 - gamma) - alpha;
        if (alpha < 0.02 || beta < 0.02) continue;
        return DiscretePrior::normalized({{x, alpha},
                                          {y, beta},
                                          {0.5, gamma},
                                          {1.0 - y, beta},
                                          {1.0 - x, alpha}});
    }
}

} // namespace bernpred
