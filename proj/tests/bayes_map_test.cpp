#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bernpred/bayes.hpp"
#include "bernpred/prior_io.hpp"
#include "bernpred/risk.hpp"
#include "bernpred/sampling.hpp"
#include "testutil.hpp"

using namespace bernpred;
using Catch::Matchers::WithinAbs;

TEST_CASE("beta prior maps to its Bayes decision", "[bayes]") {
    const Decision uniform = beta_to_decision(BetaHyper(1.0, 1.0));
    CHECK_THAT(uniform.delta0(), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(uniform.delta1(), WithinAbs(2.0 / 3.0, 1e-15));

    const Decision minimax = beta_to_decision(BetaHyper(1.0 / 3.0, 1.0 / 3.0));
    CHECK_THAT(minimax.delta0(), WithinAbs(0.2, 1e-15));
    CHECK_THAT(minimax.delta1(), WithinAbs(0.8, 1e-15));

    const Decision jeffreys = beta_to_decision(BetaHyper(0.5, 0.5));
    CHECK(jeffreys.delta0() == 0.25);
    CHECK(jeffreys.delta1() == 0.75);

    CHECK_THROWS_AS(BetaHyper(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(BetaHyper(1.0, -2.0), std::domain_error);
}

TEST_CASE("beta decisions always land in C_LESS", "[bayes][property]") {
    auto g = testutil::rng(41);
    for (int i = 0; i < 5000; ++i) {
        const double a = std::exp(testutil::uniform(g, std::log(0.01), std::log(100.0)));
        const double b = std::exp(testutil::uniform(g, std::log(0.01), std::log(100.0)));
        CHECK(classify(beta_to_decision(BetaHyper(a, b))) == DecisionClass::c_less);
    }
}

TEST_CASE("decision maps back to its beta prior", "[bayes]") {
    const BetaHyper h = decision_to_beta(Decision(0.2, 0.8));
    CHECK_THAT(h.a, WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(h.b, WithinAbs(1.0 / 3.0, 1e-15));
    const BetaHyper u = decision_to_beta(Decision(1.0 / 3.0, 2.0 / 3.0));
    CHECK_THAT(u.a, WithinAbs(1.0, 1e-14));
    CHECK_THAT(u.b, WithinAbs(1.0, 1e-14));
    const BetaHyper j = decision_to_beta(Decision(0.25, 0.75));
    CHECK(j.a == 0.5);
    CHECK(j.b == 0.5);
    CHECK_THROWS_AS(decision_to_beta(Decision(0.8, 0.2)), std::domain_error);
    CHECK_THROWS_AS(decision_to_beta(Decision(0.5, 0.5)), std::domain_error);
    CHECK_THROWS_AS(decision_to_beta(Decision(0.0, 1.0)), std::domain_error);
}

TEST_CASE("hyperparameter round trip", "[bayes][property]") {
    auto g = testutil::rng(42);
    for (int i = 0; i < 10000; ++i) {
        const double a = std::exp(testutil::uniform(g, std::log(0.01), std::log(100.0)));
        const double b = std::exp(testutil::uniform(g, std::log(0.01), std::log(100.0)));
        const BetaHyper back = decision_to_beta(beta_to_decision(BetaHyper(a, b)));
        CHECK_THAT(back.a, WithinAbs(a, 1e-14 * std::max(1.0, a)));
        CHECK_THAT(back.b, WithinAbs(b, 1e-14 * std::max(1.0, b)));
    }
}

TEST_CASE("Bayes decisions of discrete priors", "[bayes]") {
    const DiscretePrior lip({{0.0, 0.3}, {0.5, 0.4}, {1.0, 0.3}});
    const Decision d = bayes_decision(lip);
    CHECK_THAT(d.delta0(), WithinAbs(0.2, 1e-15));
    CHECK_THAT(d.delta1(), WithinAbs(0.8, 1e-15));

    // the maximum likelihood prior reproduces the MLE for any xi
    const DiscretePrior ml({{0.0, 0.4}, {1.0, 0.6}});
    CHECK(bayes_decision(ml) == Decision(0.0, 1.0));

    const DiscretePrior pair({{0.25, 0.5}, {0.75, 0.5}});
    const Decision dp = bayes_decision(pair);
    CHECK_THAT(dp.delta0(), WithinAbs(0.375, 1e-15));
    CHECK_THAT(dp.delta1(), WithinAbs(0.625, 1e-15));

    CHECK_THROWS_AS(bayes_decision(DiscretePrior({{0.0, 1.0}})), std::domain_error);
    CHECK_THROWS_AS(bayes_decision(DiscretePrior({{1.0, 1.0}})), std::domain_error);
}

TEST_CASE("symmetrization", "[bayes]") {
    CHECK(symmetrize(Decision(0.2, 0.8)) == Decision(0.2, 0.8));
    const Decision s = symmetrize(Decision(0.1, 0.4));
    CHECK_THAT(s.delta0(), WithinAbs(0.35, 1e-15));
    CHECK_THAT(s.delta1(), WithinAbs(0.65, 1e-15));

    auto g = testutil::rng(43);
    for (int i = 0; i < 5000; ++i) {
        const Decision d(testutil::uniform(g), testutil::uniform(g));
        const Decision once = symmetrize(d);
        CHECK_THAT(once.delta0() + once.delta1(), WithinAbs(1.0, 1e-15));
        const Decision twice = symmetrize(once);
        CHECK_THAT(twice.delta0(), WithinAbs(once.delta0(), 1e-15));
        CHECK_THAT(twice.delta1(), WithinAbs(once.delta1(), 1e-15));
    }
}

TEST_CASE("symmetrizing never worsens the worst case", "[bayes][property]") {
    auto g = testutil::rng(44);
    for (int i = 0; i < 1000; ++i) {
        const Decision d(testutil::uniform(g, 0.001, 0.999),
                         testutil::uniform(g, 0.001, 0.999));
        const double before = worst_case_risk(d, 1001, 1e-10).value.value();
        const double after =
            worst_case_risk(symmetrize(d), 1001, 1e-10).value.value();
        CHECK(after <= before + 1e-12);
    }
}

TEST_CASE("moments at the pinned points", "[bayes]") {
    const MomentSummary lip = moments(DiscretePrior({{0.0, 0.3}, {0.5, 0.4}, {1.0, 0.3}}));
    CHECK_THAT(lip.m1, WithinAbs(0.5, 1e-15));
    CHECK_THAT(lip.m2, WithinAbs(0.4, 1e-15));
    const MomentSummary point = moments(DiscretePrior({{0.5, 1.0}}));
    CHECK(point.m1 == 0.5);
    CHECK(point.m2 == 0.25);
    const MomentSummary ends = moments(DiscretePrior({{0.0, 0.5}, {1.0, 0.5}}));
    CHECK(ends.m1 == 0.5);
    CHECK(ends.m2 == 0.5);
}

TEST_CASE("moment summaries are always consistent", "[bayes][property]") {
    std::mt19937_64 g(45);
    for (int i = 0; i < 2000; ++i) {
        const MomentSummary m = moments(random_prior(g));
        CHECK(m.m2 >= 0.0);
        CHECK(m.m2 <= m.m1);
        CHECK(m.m1 <= 1.0);
        CHECK(m.m1 * m.m1 <= m.m2 + 1e-15);
    }
}

TEST_CASE("minimax-prior predicate", "[bayes]") {
    CHECK(is_minimax_prior(DiscretePrior({{0.0, 0.3}, {0.5, 0.4}, {1.0, 0.3}})));
    CHECK_FALSE(is_minimax_prior(DiscretePrior({{0.0, 0.5}, {1.0, 0.5}})));
    CHECK_FALSE(is_minimax_prior(DiscretePrior({{0.5, 1.0}})));
}

TEST_CASE("moment condition characterizes the minimax Bayes rule",
          "[bayes][property]") {
    std::mt19937_64 g(46);
    for (int i = 0; i < 1000; ++i) {
        const DiscretePrior p = random_projected_prior(g);
        const MomentSummary m = moments(p);
        REQUIRE_THAT(m.m1, WithinAbs(0.5, 1e-12));
        REQUIRE_THAT(m.m2, WithinAbs(0.4, 1e-12));
        const Decision d = bayes_decision(p);
        CHECK_THAT(d.delta0(), WithinAbs(0.2, 1e-9));
        CHECK_THAT(d.delta1(), WithinAbs(0.8, 1e-9));
    }
    std::uniform_real_distribution<double> pert(-0.02, 0.02);
    for (int i = 0; i < 1000; ++i) {
        double e1 = 0.0, e2 = 0.0;
        do {
            e1 = pert(g);
            e2 = pert(g);
        } while (std::max(std::abs(e1), std::abs(e2)) < 1.5e-3);
        const Decision d =
            bayes_decision(random_projected_prior(g, 0.5 + e1, 0.4 + e2));
        const double gap = std::max(std::abs(d.delta0() - 0.2),
                                    std::abs(d.delta1() - 0.8));
        CHECK(gap >= 1e-4);
    }
}

TEST_CASE("grid discretization of a beta prior reproduces its decision",
          "[bayes][property]") {
    for (const auto& [a, b] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {1.5, 3.0}}) {
        constexpr int n = 10000;
        std::vector<DiscretePrior::Atom> atoms;
        atoms.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double t = (i + 0.5) / n; // cell midpoints
            atoms.push_back({t, std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0)});
        }
        const Decision approx = bayes_decision(DiscretePrior::normalized(atoms));
        const Decision exact = beta_to_decision(BetaHyper(a, b));
        CHECK_THAT(approx.delta0(), WithinAbs(exact.delta0(), 1e-3));
        CHECK_THAT(approx.delta1(), WithinAbs(exact.delta1(), 1e-3));
    }
}

TEST_CASE("DiscretePrior enforces its invariants", "[bayes]") {
    // sorting
    const DiscretePrior p({{0.9, 0.5}, {0.1, 0.5}});
    CHECK(p.atoms()[0].theta == 0.1);
    CHECK(p.atoms()[1].theta == 0.9);
    // merging of nearly identical atoms
    const DiscretePrior m({{0.3, 0.25}, {0.3 + 1e-13, 0.25}, {0.8, 0.5}});
    REQUIRE(m.size() == 2);
    CHECK_THAT(m.atoms()[0].weight, WithinAbs(0.5, 1e-15));
    // invariant violations
    CHECK_THROWS_AS(DiscretePrior({}), std::invalid_argument);
    CHECK_THROWS_AS(DiscretePrior({{0.5, 0.0}, {0.6, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscretePrior({{0.5, -0.2}, {0.6, 1.2}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscretePrior({{0.5, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscretePrior({{1.5, 1.0}}), std::domain_error);
    // normalization entry point
    const DiscretePrior n = DiscretePrior::normalized({{0.2, 2.0}, {0.7, 6.0}});
    CHECK_THAT(n.atoms()[0].weight, WithinAbs(0.25, 1e-15));
    CHECK_THAT(n.atoms()[1].weight, WithinAbs(0.75, 1e-15));
}

TEST_CASE("prior files round trip and reject malformed input", "[bayes][io]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "bernpred_test";
    fs::create_directories(dir);
    const std::string path = (dir / "prior.json").string();

    const DiscretePrior lip({{0.0, 0.3}, {0.5, 0.4}, {1.0, 0.3}});
    save_prior(lip, path);
    const DiscretePrior loaded = load_prior(path);
    REQUIRE(loaded.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(loaded.atoms()[i].theta == lip.atoms()[i].theta);
        CHECK(loaded.atoms()[i].weight == lip.atoms()[i].weight);
    }

    CHECK_THROWS_AS(load_prior(std::string("/nonexistent/prior.json")),
                    std::runtime_error);
    std::istringstream bad_json("not json at all");
    CHECK_THROWS_AS(load_prior(bad_json), std::runtime_error);
    std::istringstream bad_shape("[{\"atom\": 0.5}]");
    CHECK_THROWS_AS(load_prior(bad_shape), std::runtime_error);
    std::istringstream bad_sum(
        "[{\"atom\": 0.2, \"weight\": 0.5}, {\"atom\": 0.6, \"weight\": 0.6}]");
    CHECK_THROWS_AS(load_prior(bad_sum), std::runtime_error);
    std::istringstream bad_atom("[{\"atom\": 1.2, \"weight\": 1.0}]");
    CHECK_THROWS_AS(load_prior(bad_atom), std::runtime_error);
}
