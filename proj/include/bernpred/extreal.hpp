#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bernpred {

// Extended real: a finite double or a distinguished +infinity state.
// Finite values are never NaN. The algebra follows the entropy-sum
// conventions: +inf dominates addition and comparisons, while
// 0 * (+inf) == 0, so a zero-weight branch contributes nothing even
// when its loss is infinite.
class ExtReal {
public:
    ExtReal() = default;

    ExtReal(double v) {
        if (std::isnan(v))
            throw std::invalid_argument("ExtReal: NaN is not a value");
        if (std::isinf(v)) {
            if (v < 0)
                throw std::invalid_argument("ExtReal: -infinity is not a value");
            infinite_ = true;
            value_ = 0.0;
        } else {
            value_ = v;
        }
    }

    static ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Finite value; throws on the infinite state.
    double value() const {
        if (infinite_)
            throw std::logic_error("ExtReal: value() on +inf");
        return value_;
    }

    // IEEE view, mapping the infinite state to HUGE_VAL.
    double as_double() const {
        return infinite_ ? HUGE_VAL : value_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtReal(a.value_ + b.value_);
    }
    ExtReal& operator+=(const ExtReal& other) {
        *this = *this + other;
        return *this;
    }

    // Scaling by a nonnegative finite weight; 0 * (+inf) == 0.
    friend ExtReal operator*(double c, const ExtReal& x) {
        if (std::isnan(c) || std::isinf(c))
            throw std::invalid_argument("ExtReal: scale factor must be finite");
        if (x.infinite_) {
            if (c == 0.0) return ExtReal(0.0);
            if (c < 0.0)
                throw std::invalid_argument("ExtReal: negative multiple of +inf");
            return infinity();
        }
        return ExtReal(c * x.value_);
    }
    friend ExtReal operator*(const ExtReal& x, double c) { return c * x; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
        if (x.infinite_) return os << "+inf";
        return os << x.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

} // namespace bernpred
