#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace socint {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b), tolerating -inf operands.
inline double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b) for a >= b. Returns -inf when the difference underflows
// (including a == b).
inline double log_sub(double a, double b) {
    if (b == kNegInf) return a;
    if (b >= a) return kNegInf;
    const double d = -std::expm1(b - a);  // in (0, 1]
    return a + std::log(d);
}

// Log of a sum of log-domain magnitudes. Terms are sorted ascending and
// accumulated with compensated summation in the linear domain relative to
// the largest term; relative error stays below 1e-10 for up to ~1e7 terms.
double log_sum(std::vector<double> terms);

// Natural-log magnitude with a dedicated zero sentinel (-inf). Addition is
// log-domain addition of the underlying linear values.
struct LogWeight {
    double value = kNegInf;

    LogWeight() = default;
    explicit LogWeight(double log_value) : value(log_value) {}

    static LogWeight zero() { return LogWeight(); }
    static LogWeight from_linear(double x) {
        return LogWeight(x > 0 ? std::log(x) : kNegInf);
    }

    bool is_zero() const { return value == kNegInf; }
    double linear() const { return std::exp(value); }

    LogWeight operator+(const LogWeight& o) const {
        return LogWeight(log_add(value, o.value));
    }
    LogWeight& operator+=(const LogWeight& o) {
        value = log_add(value, o.value);
        return *this;
    }
};

// Non-negative integer magnitude that stays exact in a 64-bit word while it
// fits and degrades to a log-domain double beyond that. Code sizes and type
// class cardinalities routinely reach e^{n H}, so both representations are
// needed side by side.
class Count {
public:
    Count() : log_(kNegInf), exact_(0), has_exact_(true) {}

    static Count from_u64(std::uint64_t v) {
        Count c;
        c.exact_ = v;
        c.has_exact_ = true;
        c.log_ = v == 0 ? kNegInf : std::log(static_cast<double>(v));
        return c;
    }
    static Count from_log(double lg) {
        Count c;
        c.log_ = lg;
        c.has_exact_ = false;
        if (lg == kNegInf) {
            c.has_exact_ = true;
            c.exact_ = 0;
        } else if (lg < 43.0) {  // e^43 < 2^63; round to nearest integer
            const double v = std::exp(lg);
            const double r = std::round(v);
            if (std::abs(v - r) < 1e-6 * std::max(1.0, r)) {
                c.exact_ = static_cast<std::uint64_t>(r);
                c.has_exact_ = true;
                c.log_ = c.exact_ == 0 ? kNegInf
                                       : std::log(static_cast<double>(c.exact_));
            }
        }
        return c;
    }

    bool is_zero() const { return log_ == kNegInf; }
    bool exact() const { return has_exact_; }
    std::uint64_t value() const { return exact_; }
    double log() const { return log_; }
    double to_double() const {
        return has_exact_ ? static_cast<double>(exact_) : std::exp(log_);
    }

    Count& operator+=(const Count& o) {
        if (has_exact_ && o.has_exact_ &&
            exact_ <= std::numeric_limits<std::uint64_t>::max() - o.exact_) {
            exact_ += o.exact_;
            log_ = exact_ == 0 ? kNegInf : std::log(static_cast<double>(exact_));
        } else {
            log_ = log_add(log_, o.log_);
            has_exact_ = false;
        }
        return *this;
    }
    Count operator+(const Count& o) const {
        Count c = *this;
        c += o;
        return c;
    }

    // Saturating subtraction; requires *this >= o up to log-domain rounding.
    Count minus(const Count& o) const {
        if (has_exact_ && o.has_exact_) {
            return from_u64(exact_ >= o.exact_ ? exact_ - o.exact_ : 0);
        }
        return from_log(log_sub(log_, o.log_));
    }

    bool operator<(const Count& o) const {
        if (has_exact_ && o.has_exact_) return exact_ < o.exact_;
        return log_ < o.log_;
    }
    bool operator<=(const Count& o) const { return !(o < *this); }
    bool operator>(const Count& o) const { return o < *this; }
    bool operator>=(const Count& o) const { return !(*this < o); }

private:
    double log_;
    std::uint64_t exact_;
    bool has_exact_;
};

}  // namespace socint
