#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bernpred/minimax.hpp"
#include "testutil.hpp"

using namespace bernpred;
using Catch::Matchers::WithinAbs;

namespace {
const double ln54 = std::log(1.25);
}

TEST_CASE("symmetric worst case at the pinned points", "[minimax]") {
    CHECK_THAT(worst_case_symmetric(1.0 / 3.0), WithinAbs(ln54, 1e-15));
    CHECK_THAT(worst_case_symmetric(0.5), WithinAbs(std::log(4.0 / 3.0), 1e-15));
    CHECK_THAT(worst_case_symmetric(1.0), WithinAbs(std::log(1.5), 1e-15));
    // lower branch: (1/2) log(13/4) + log(14/13)
    CHECK_THAT(worst_case_symmetric(1.0 / 12.0),
               WithinAbs(0.6634354703245451, 1e-14));
    CHECK_THROWS_AS(worst_case_symmetric(0.0), std::domain_error);
    CHECK_THROWS_AS(worst_case_symmetric(-1.0), std::domain_error);
}

TEST_CASE("symmetric worst case: continuity and monotonicity",
          "[minimax][property]") {
    CHECK_THAT(worst_case_symmetric(1.0 / 3.0 - 1e-12),
               WithinAbs(worst_case_symmetric(1.0 / 3.0 + 1e-12), 1e-9));
    // decreasing up to 1/3, increasing beyond
    double prev = worst_case_symmetric(1e-3);
    for (int i = 1; i <= 1000; ++i) {
        const double a = 1e-3 + (1.0 / 3.0 - 1e-3) * i / 1000.0;
        const double v = worst_case_symmetric(a);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    prev = worst_case_symmetric(1.0 / 3.0);
    for (int i = 1; i <= 1000; ++i) {
        const double a = 1.0 / 3.0 + 10.0 * i / 1000.0;
        const double v = worst_case_symmetric(a);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK(worst_case_symmetric(0.4) < std::log(2.0));
}

TEST_CASE("symmetric formula agrees with the risk engine",
          "[minimax][property]") {
    auto g = testutil::rng(51);
    for (int i = 0; i < 100; ++i) {
        const double a =
            std::exp(testutil::uniform(g, std::log(0.05), std::log(10.0)));
        const Decision d = beta_to_decision(BetaHyper(a, a));
        const double engine = worst_case_risk(d, 10001, 1e-12).value.value();
        CHECK_THAT(worst_case_symmetric(a), WithinAbs(engine, 1e-9));
    }
}

TEST_CASE("equalizer floor", "[minimax]") {
    CHECK(equalizer_floor() == std::log(2.0));
    const EqualizerScan scan = equalizer_scan(999);
    CHECK_THAT(scan.infimum, WithinAbs(std::log(2.0), 1e-12));
    CHECK(scan.infimum >= std::log(2.0) - 1e-12);
    CHECK(scan.minimizer == 0.5);
    // individual scan points, cross-checked against the risk engine
    CHECK_THAT(worst_case_risk(Decision(0.5, 0.5), 1001).value.value(),
               WithinAbs(std::log(2.0), 1e-12));
    CHECK_THAT(worst_case_risk(Decision(0.25, 0.25), 1001).value.value(),
               WithinAbs(std::log(4.0), 1e-12));
}

TEST_CASE("closed-form minimax report", "[minimax]") {
    const MinimaxReport rep = solve_minimax_closed();
    CHECK(rep.decision == Decision(0.2, 0.8));
    CHECK(rep.value == ln54);
    CHECK(rep.method == MinimaxReport::Method::closed_form);
    REQUIRE(rep.worst_theta.size() == 3);
    CHECK(rep.worst_theta[0] == 0.0);
    CHECK(rep.worst_theta[1] == 0.5);
    CHECK(rep.worst_theta[2] == 1.0);
    // strictly below the equalizer class and the Jeffreys/uniform rules
    CHECK(rep.value < equalizer_floor());
    CHECK(rep.value < worst_case_symmetric(0.5));
    CHECK(worst_case_symmetric(0.5) < worst_case_symmetric(1.0));
}

TEST_CASE("numeric minimax search matches the closed form", "[minimax]") {
    const MinimaxReport rep = solve_minimax_numeric(101, 20);
    CHECK(rep.method == MinimaxReport::Method::numeric);
    CHECK_THAT(rep.decision.delta0(), WithinAbs(0.2, 1e-3));
    CHECK_THAT(rep.decision.delta1(), WithinAbs(0.8, 1e-3));
    CHECK_THAT(rep.value, WithinAbs(0.223144, 1e-4));
    CHECK_THROWS_AS(solve_minimax_numeric(5, 10), std::invalid_argument);
}

TEST_CASE("search restricted to symmetric decisions finds the same optimum",
          "[minimax]") {
    // minimize over delta = (t, 1-t); coarse scan plus shrinking bracket
    double best_t = 0.25, best_v = HUGE_VAL;
    for (int i = 1; i <= 200; ++i) {
        const double t = 0.5 * i / 201.0;
        const double v = worst_case_risk(Decision(t, 1.0 - t), 1001, 1e-10).value.value();
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    double half = 0.5 / 201.0;
    for (int round = 0; round < 30; ++round) {
        for (int i = -4; i <= 4; ++i) {
            const double t = std::clamp(best_t + half * i / 4.0, 1e-9, 0.5);
            const double v =
                worst_case_risk(Decision(t, 1.0 - t), 1001, 1e-10).value.value();
            if (v < best_v) {
                best_v = v;
                best_t = t;
            }
        }
        half *= 0.5;
    }
    CHECK_THAT(best_t, WithinAbs(0.2, 1e-3));
    CHECK_THAT(best_v, WithinAbs(ln54, 1e-6));
}

TEST_CASE("descent from random starts always reaches the minimax rule",
          "[minimax][property]") {
    auto g = testutil::rng(52);
    for (int start = 0; start < 20; ++start) {
        // random start in the closed lower triangle
        double d0 = testutil::uniform(g, 0.02, 0.98);
        double d1 = testutil::uniform(g, 0.02, 0.98);
        if (d0 > d1) std::swap(d0, d1);
        const auto value = [](double a, double b) {
            return worst_case_risk(Decision(a, b), 1001, 1e-10).value.value();
        };
        double best = value(d0, d1);
        double step = 0.25;
        while (step > 1e-7) {
            bool moved = false;
            // axis and diagonal moves: the worst case is a max of smooth
            // pieces, and its tie ridges run diagonally
            const double cand[8][2] = {
                {d0 + step, d1},        {d0 - step, d1},
                {d0, d1 + step},        {d0, d1 - step},
                {d0 + step, d1 + step}, {d0 - step, d1 - step},
                {d0 + step, d1 - step}, {d0 - step, d1 + step}};
            for (const auto& c : cand) {
                const double a = std::clamp(c[0], 1e-6, 1.0 - 1e-6);
                const double b = std::clamp(c[1], 1e-6, 1.0 - 1e-6);
                if (a > b) continue;
                const double v = value(a, b);
                if (v < best - 1e-15) {
                    best = v;
                    d0 = a;
                    d1 = b;
                    moved = true;
                    break;
                }
            }
            if (!moved) step *= 0.5;
        }
        CHECK_THAT(d0, WithinAbs(0.2, 1e-3));
        CHECK_THAT(d1, WithinAbs(0.8, 1e-3));
    }
}

TEST_CASE("a perturbed rule is measurably worse than minimax", "[minimax]") {
    // the sharpness the verification gate relies on
    const double perturbed =
        worst_case_risk(Decision(0.21, 0.8), 10001, 1e-12).value.value();
    CHECK(perturbed > ln54 + 1e-4);
}
