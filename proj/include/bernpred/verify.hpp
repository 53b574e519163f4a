#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "bernpred/bayes.hpp"
#include "bernpred/classes.hpp"
#include "bernpred/lip.hpp"
#include "bernpred/minimax.hpp"
#include "bernpred/risk.hpp"
#include "bernpred/sampling.hpp"

namespace bernpred {

// End-to-end verification of the package against its numeric contract:
// one named check per headline claim, each reporting the measured values
// it was judged on. The fast variant shrinks sample counts and grids to
// fit an interactive budget; the full variant runs the complete set.

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    bool fast = false;
    std::uint64_t seed = 0;
};

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

namespace detail {

template <class... Args>
std::string strf(const char* fmt, Args... args) {
    const int len = std::snprintf(nullptr, 0, fmt, args...);
    std::string s(static_cast<std::size_t>(len), '\0');
    std::snprintf(s.data(), static_cast<std::size_t>(len) + 1, fmt, args...);
    return s;
}

// Total variation distance between two discrete priors as measures on
// [0,1]; atoms within 1e-12 are identified.
inline double total_variation(const DiscretePrior& a, const DiscretePrior& b) {
    double tv = 0.0;
    std::size_t i = 0, j = 0;
    const auto& pa = a.atoms();
    const auto& pb = b.atoms();
    while (i < pa.size() || j < pb.size()) {
        if (i < pa.size() && j < pb.size() &&
            std::abs(pa[i].theta - pb[j].theta) < 1e-12) {
            tv += std::abs(pa[i].weight - pb[j].weight);
            ++i;
            ++j;
        } else if (j >= pb.size() ||
                   (i < pa.size() && pa[i].theta < pb[j].theta)) {
            tv += pa[i].weight;
            ++i;
        } else {
            tv += pb[j].weight;
            ++j;
        }
    }
    return 0.5 * tv;
}

inline DiscretePrior lip_prior() {
    return DiscretePrior({{0.0, 0.3}, {0.5, 0.4}, {1.0, 0.3}});
}

inline std::vector<double> uniform_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = (i == n - 1) ? 1.0 : static_cast<double>(i) / (n - 1);
    return g;
}

// True when the prior has exactly the three atoms 0, 1/2, 1 with weights
// within tol of (3/10, 2/5, 3/10).
inline bool matches_lip_prior(const DiscretePrior& p, double tol) {
    if (p.size() != 3) return false;
    const auto& a = p.atoms();
    return a[0].theta == 0.0 && std::abs(a[1].theta - 0.5) < 1e-12 &&
           a[2].theta == 1.0 && std::abs(a[0].weight - 0.3) <= tol &&
           std::abs(a[1].weight - 0.4) <= tol &&
           std::abs(a[2].weight - 0.3) <= tol;
}

} // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyOptions& opt = {}) {
    using clock = std::chrono::steady_clock;
    const auto suite_start = clock::now();
    const auto seconds_since = [](clock::time_point t0) {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    std::vector<CheckResult> results;
    const double ln2 = std::log(2.0);
    const double minimax_value = std::log(1.25);

    // 1. The minimax rule: closed form (1/5, 4/5) exactly, confirmed by
    //    the independent grid-plus-refinement search.
    {
        const auto t0 = clock::now();
        const MinimaxReport closed = solve_minimax_closed();
        const bool exact = closed.decision == Decision(0.2, 0.8);
        const MinimaxReport numeric =
            opt.fast ? solve_minimax_numeric(51, 12) : solve_minimax_numeric(101, 20);
        const double e0 = std::abs(numeric.decision.delta0() - 0.2);
        const double e1 = std::abs(numeric.decision.delta1() - 0.8);
        const double elapsed = seconds_since(t0);
        results.push_back(
            {"minimax-rule", exact && e0 <= 1e-3 && e1 <= 1e-3 && elapsed < 10.0,
             detail::strf("closed=(%.17g,%.17g) numeric_err=(%.3e,%.3e) time=%.2fs",
                          closed.decision.delta0(), closed.decision.delta1(), e0,
                          e1, elapsed)});
    }

    // 2. The minimax value log(5/4), attained at theta in {0, 1/2, 1}.
    double measured_minimax = 0.0;
    {
        const Decision d(0.2, 0.8);
        const WorstCase wc = worst_case_risk(d, 10001, 1e-12);
        measured_minimax = wc.value.as_double();
        bool pass = std::abs(measured_minimax - minimax_value) <= 1e-9;
        for (double t : {0.0, 0.5, 1.0}) {
            pass = pass &&
                   std::abs(risk(d, t).as_double() - measured_minimax) <= 1e-9;
            bool found = false;
            for (double a : wc.attained_at)
                if (std::abs(a - t) <= 1e-9) found = true;
            pass = pass && found;
        }
        results.push_back(
            {"minimax-value", pass,
             detail::strf("value=%.12f target=%.12f attained_points=%zu",
                          measured_minimax, minimax_value, wc.attained_at.size())});
    }

    // 3. Equalizer floor: the scanned infimum over C= equals log 2 and
    //    sits strictly above the minimax value.
    {
        const EqualizerScan scan = equalizer_scan(opt.fast ? 999 : 9999);
        const double floor = equalizer_floor();
        const bool pass = std::abs(scan.infimum - ln2) <= 1e-6 &&
                          scan.infimum >= ln2 - 1e-12 && floor == ln2 &&
                          scan.infimum > measured_minimax;
        results.push_back(
            {"equalizer-floor", pass,
             detail::strf("scan_inf=%.12f at c=%.6f log2=%.12f", scan.infimum,
                          scan.minimizer, ln2)});
    }

    // 4. Worst-case hierarchy of the symmetric priors: minimax < Jeffreys
    //    < uniform, each at its closed form.
    {
        const double v_minimax = worst_case_symmetric(1.0 / 3.0);
        const double v_jeffreys = worst_case_symmetric(0.5);
        const double v_uniform = worst_case_symmetric(1.0);
        const bool pass = std::abs(v_minimax - std::log(1.25)) <= 1e-12 &&
                          std::abs(v_jeffreys - std::log(4.0 / 3.0)) <= 1e-12 &&
                          std::abs(v_uniform - std::log(1.5)) <= 1e-12 &&
                          v_minimax < v_jeffreys && v_jeffreys < v_uniform;
        results.push_back({"symmetric-hierarchy", pass,
                           detail::strf("log(5/4)=%.12f log(4/3)=%.12f log(3/2)=%.12f",
                                        v_minimax, v_jeffreys, v_uniform)});
    }

    // 5. The latent information prior by three independent solvers.
    LipAscentReport ascent{detail::lip_prior(), 0.0, -1};
    {
        bool lp_ok = true;
        std::string lp_note;
        for (int g : opt.fast ? std::vector<int>{11, 101}
                              : std::vector<int>{11, 101, 1001}) {
            const LipLpReport rep = solve_lip_lp_report(detail::uniform_grid(g));
            const bool ok = detail::matches_lip_prior(rep.prior, 1e-6);
            lp_ok = lp_ok && ok;
            lp_note += detail::strf(" lp%d=%s", g, ok ? "ok" : "BAD");
        }
        const ParametricLipCandidate par = solve_lip_parametric(1e-8);
        const bool par_ok = std::abs(par.x) <= 1e-8 &&
                            std::abs(par.y - 0.5) <= 1e-8 &&
                            std::abs(par.alpha - 0.3) <= 1e-8 &&
                            std::abs(par.beta - 0.2) <= 1e-8;
        ascent = opt.fast ? solve_lip_ascent(51, 5, opt.seed)
                          : solve_lip_ascent(101, 20, opt.seed);
        const double tv = detail::total_variation(ascent.prior, detail::lip_prior());
        const bool pass = lp_ok && par_ok && tv <= 1e-3;
        results.push_back(
            {"lip-solvers", pass,
             detail::strf("%s par=(%.2e,%.2e,%.2e,%.2e)err ascent_tv=%.3e",
                          lp_note.c_str() + 1, std::abs(par.x),
                          std::abs(par.y - 0.5), std::abs(par.alpha - 0.3),
                          std::abs(par.beta - 0.2), tv)});
    }

    // 6. Game value: the ascent maximum of I meets the minimax value, the
    //    published closed-form constant sits exactly 2 log 2 above the
    //    derived one, and every solver agrees on the maximizing prior.
    {
        const double gap = std::abs(ascent.info - measured_minimax);
        const double derived_const = 0.8 * std::log(1.25) + 0.2 * std::log(5.0);
        const double published_const = 0.4 * ln2 + std::log(5.0);
        const double offs_err =
            std::abs(published_const - derived_const - 2.0 * ln2);
        const double const_is_entropy =
            std::abs(derived_const - binary_entropy(Probability(0.2)));
        const ParametricLipCandidate par = solve_lip_parametric(1e-8);
        const bool argmax_ok =
            detail::matches_lip_prior(solve_lip_lp(detail::uniform_grid(101)), 1e-6) &&
            detail::matches_lip_prior(par.to_prior(), 1e-8);
        const bool pass = gap <= 1e-6 && offs_err <= 1e-12 &&
                          const_is_entropy <= 1e-12 && argmax_ok;
        results.push_back(
            {"game-value", pass,
             detail::strf("ascent_I=%.9f |I-minimax|=%.3e offset_err=%.3e",
                          ascent.info, gap, offs_err)});
    }

    // 7. Dominance machinery: the mu interval is never empty on C_GREATER
    //    and the constructed decision strictly improves the risk everywhere.
    {
        std::mt19937_64 rng(opt.seed + 7);
        const int n_lemma = opt.fast ? 10000 : 100000;
        const int n_dom = opt.fast ? 100 : 1000;
        const int grid_n = opt.fast ? 1001 : 10001;
        int lemma_fail = 0;
        for (int i = 0; i < n_lemma; ++i) {
            const MuBounds b = lemma1_bounds(sample_c_greater(rng));
            if (!(b.upper_prod > b.lower_sq)) ++lemma_fail;
        }
        int dom_fail = 0;
        double min_gap = HUGE_VAL;
        for (int i = 0; i < n_dom; ++i) {
            const Decision d = sample_c_greater(rng);
            const Decision dp = dominating_decision(d);
            const QuadraticRiskDiff q = risk_difference_coeffs(d, dp);
            bool ok = classify(dp) == DecisionClass::c_less && q.f > 0.0 &&
                      q.f * q.h - 0.25 * q.g * q.g > 0.0;
            const detail::RiskCurve cd(d), cdp(dp);
            for (int k = 0; k < grid_n && ok; ++k) {
                const double t =
                    (k == grid_n - 1) ? 1.0 : static_cast<double>(k) / (grid_n - 1);
                const double gap = cd.with_entropy(t, 0.0) - cdp.with_entropy(t, 0.0);
                min_gap = std::min(min_gap, gap);
                if (!(gap > 0.0)) ok = false;
            }
            if (!ok) ++dom_fail;
        }
        results.push_back(
            {"dominance", lemma_fail == 0 && dom_fail == 0,
             detail::strf("lemma_fail=%d/%d construction_fail=%d/%d min_gap=%.3e",
                          lemma_fail, n_lemma, dom_fail, n_dom, min_gap)});
    }

    // 8. Moment characterization of minimax priors, both directions.
    {
        std::mt19937_64 rng(opt.seed + 8);
        const int n = opt.fast ? 100 : 1000;
        int pos_fail = 0, neg_fail = 0;
        for (int i = 0; i < n; ++i) {
            const Decision d = bayes_decision(random_projected_prior(rng));
            if (std::abs(d.delta0() - 0.2) > 1e-9 ||
                std::abs(d.delta1() - 0.8) > 1e-9)
                ++pos_fail;
        }
        std::uniform_real_distribution<double> pert(-0.02, 0.02);
        for (int i = 0; i < n; ++i) {
            double e1 = 0.0, e2 = 0.0;
            do {
                e1 = pert(rng);
                e2 = pert(rng);
            } while (std::max(std::abs(e1), std::abs(e2)) < 1.5e-3);
            const Decision d =
                bayes_decision(random_projected_prior(rng, 0.5 + e1, 0.4 + e2));
            const double gap = std::max(std::abs(d.delta0() - 0.2),
                                        std::abs(d.delta1() - 0.8));
            if (gap < 1e-4) ++neg_fail;
        }
        results.push_back(
            {"moment-characterization", pos_fail == 0 && neg_fail == 0,
             detail::strf("satisfying_fail=%d/%d violating_fail=%d/%d", pos_fail,
                          n, neg_fail, n)});
    }

    // 9. Information identities: both I formulas agree, I never exceeds
    //    log 2, the affine form holds on minimax priors, and a point mass
    //    carries no information.
    {
        std::mt19937_64 rng(opt.seed + 9);
        const int n = opt.fast ? 100 : 1000;
        const double s_fifth = binary_entropy(Probability(0.2));
        int fail = 0;
        double max_mismatch = 0.0;
        for (int i = 0; i < n; ++i) {
            const InfoReport rep = conditional_mutual_information(random_prior(rng));
            const double mismatch = std::abs(
                rep.bayes_risk_form - (rep.predictive_entropy - rep.entropy_term));
            max_mismatch = std::max(max_mismatch, mismatch);
            if (mismatch > 1e-12 || rep.value > ln2 + 1e-12 || rep.value < 0.0)
                ++fail;
        }
        std::uniform_real_distribution<double> mix(0.0, 1.0);
        for (int i = 0; i < n; ++i) {
            DiscretePrior p = random_symmetric_minimax_prior(rng);
            if (i % 2 == 1) {
                // Convex mixtures stay minimax and widen the support pool.
                const DiscretePrior q = random_symmetric_minimax_prior(rng);
                const double lam = mix(rng);
                std::vector<DiscretePrior::Atom> atoms;
                for (const auto& a : p.atoms()) atoms.push_back({a.theta, lam * a.weight});
                for (const auto& a : q.atoms())
                    atoms.push_back({a.theta, (1.0 - lam) * a.weight});
                p = DiscretePrior::normalized(std::move(atoms));
            }
            const InfoReport rep = conditional_mutual_information(p);
            if (std::abs(rep.value - (s_fifth - rep.entropy_term)) > 1e-12) ++fail;
        }
        const InfoReport point =
            conditional_mutual_information(DiscretePrior({{0.5, 1.0}}));
        if (point.value != 0.0) ++fail;
        results.push_back({"information-identities", fail == 0,
                           detail::strf("fail=%d max_route_mismatch=%.3e point_mass_I=%g",
                                        fail, max_mismatch, point.value)});
    }

    // 10. Support reduction: every run lands on at most three atoms with
    //     the moments intact and I not decreased.
    {
        std::mt19937_64 rng(opt.seed + 10);
        const int n = opt.fast ? 20 : 100;
        int fail = 0;
        for (int i = 0; i < n; ++i) {
            const DiscretePrior in = random_five_atom_minimax_prior(rng);
            const double info_in = conditional_mutual_information(in).value;
            const DiscretePrior out = support_reduction(in);
            const MomentSummary m = moments(out);
            const double info_out = conditional_mutual_information(out).value;
            if (out.size() > 3 || std::abs(m.m1 - 0.5) > 1e-9 ||
                std::abs(m.m2 - 0.4) > 1e-9 || info_out < info_in - 1e-10)
                ++fail;
        }
        results.push_back({"support-reduction", fail == 0,
                           detail::strf("fail=%d/%d", fail, n)});
    }

    // 11. Wall-clock budget for the whole suite.
    {
        const double elapsed = seconds_since(suite_start);
        const double budget = opt.fast ? 10.0 : 120.0;
        results.push_back({"runtime", elapsed < budget,
                           detail::strf("%.2fs (budget %.0fs)", elapsed, budget)});
    }

    return results;
}

} // namespace bernpred
