#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernpred/extreal.hpp"

namespace bernpred {

// A validated probability in [0,1]. Out-of-range or NaN input is a
// construction error, never a silent clamp.
class Probability {
public:
    explicit Probability(double v) : value_(v) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("Probability: value must lie in [0,1]");
    }

    double value() const { return value_; }
    operator double() const { return value_; }

    Probability complement() const { return Probability(1.0 - value_); }

    friend bool operator==(const Probability& a, const Probability& b) {
        return a.value_ == b.value_;
    }

private:
    double value_;
};

// The observation x and the future outcome y take values in {0, 1}.
enum class BinaryOutcome : int { zero = 0, one = 1 };

// A nonrandomized predictive rule: the Bernoulli parameter predicted
// after observing x = 0 and after x = 1. Identified with a point of
// the unit square.
class Decision {
public:
    Decision(double after_zero, double after_one)
        : delta0_(after_zero), delta1_(after_one) {}

    double delta0() const { return delta0_.value(); }
    double delta1() const { return delta1_.value(); }

    Probability component(BinaryOutcome x) const {
        return x == BinaryOutcome::zero ? delta0_ : delta1_;
    }

    // The plug-in maximum likelihood rule (0, 1).
    static Decision mle() { return Decision(0.0, 1.0); }

    friend bool operator==(const Decision& a, const Decision& b) {
        return a.delta0_ == b.delta0_ && a.delta1_ == b.delta1_;
    }

private:
    Probability delta0_;
    Probability delta1_;
};

// Binary entropy S(t) = -t log t - (1-t) log(1-t), natural log, with
// 0 log 0 == 0. Finite, nonnegative, at most log 2.
inline double binary_entropy(const Probability& theta) {
    const double t = theta.value();
    double s = 0.0;
    if (t > 0.0 && t < 1.0)
        s = -t * std::log(t) - (1.0 - t) * std::log1p(-t);
    return s;
}

inline double binary_entropy(double theta) {
    return binary_entropy(Probability(theta));
}

// Kullback-Leibler divergence between Bernoulli(theta) and
// Bernoulli(delta). +inf exactly when delta puts probability zero on
// an outcome that theta makes possible; never NaN.
inline ExtReal kl_bernoulli(const Probability& theta, const Probability& delta) {
    const double t = theta.value();
    const double d = delta.value();
    if (t == d) return ExtReal(0.0);
    if (t > 0.0 && d == 0.0) return ExtReal::infinity();
    if (t < 1.0 && d == 1.0) return ExtReal::infinity();
    double sum = 0.0;
    if (t > 0.0) sum += t * std::log(t / d);
    if (t < 1.0) sum += (1.0 - t) * std::log((1.0 - t) / (1.0 - d));
    // Gibbs: the divergence is nonnegative; guard against rounding when
    // theta and delta are close.
    return ExtReal(std::max(0.0, sum));
}

inline ExtReal kl_bernoulli(double theta, double delta) {
    return kl_bernoulli(Probability(theta), Probability(delta));
}

} // namespace bernpred
