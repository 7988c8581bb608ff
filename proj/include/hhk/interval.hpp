#pragma once

// Closed real intervals with outward rounding.
//
// Directed rounding is not used: every endpoint produced by a primitive is
// pushed outward by a few units in the last place, which covers the
// round-to-nearest error of the basic operations and the (sub-ulp) error of
// the libm transcendentals used here. An empty interval is represented by
// NaN endpoints; it propagates through arithmetic and fails every sign test.

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <limits>

namespace hhk {

class Interval {
public:
    constexpr Interval() = default;
    constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit from double is intended
    constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi) {}

    static constexpr Interval entire() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    static constexpr Interval empty() {
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }

    constexpr double lo() const { return lo_; }
    constexpr double hi() const { return hi_; }
    double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
    double width() const { return hi_ - lo_; }
    double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

    bool is_empty() const { return std::isnan(lo_) || std::isnan(hi_); }
    bool is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool strictly_negative() const { return hi_ < 0.0; }
    bool strictly_positive() const { return lo_ > 0.0; }
    bool nonnegative() const { return lo_ >= 0.0; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

namespace rounding {

// Roughly four ulps of slack relative to the magnitude, plus the smallest
// subnormal so that rounded results near zero are also widened. Sums with a
// zero operand, products with a zero factor and quotients of zero are exact
// and bypass the slack.
inline constexpr double kRelSlack = 4.0 * std::numeric_limits<double>::epsilon();

inline double down(double v) {
    if (!std::isfinite(v)) return v;
    return v - (std::abs(v) * kRelSlack + std::numeric_limits<double>::denorm_min());
}
inline double up(double v) {
    if (!std::isfinite(v)) return v;
    return v + (std::abs(v) * kRelSlack + std::numeric_limits<double>::denorm_min());
}

}  // namespace rounding

inline Interval outward(double lo, double hi) {
    return {rounding::down(lo), rounding::up(hi)};
}

inline Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

namespace detail {
// Sums with an exact zero operand are exact and are not widened.
inline double add_down(double u, double v) { return u == 0.0 || v == 0.0 ? u + v : rounding::down(u + v); }
inline double add_up(double u, double v) { return u == 0.0 || v == 0.0 ? u + v : rounding::up(u + v); }
}  // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return {detail::add_down(a.lo(), b.lo()), detail::add_up(a.hi(), b.hi())};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return {detail::add_down(a.lo(), -b.hi()), detail::add_up(a.hi(), -b.lo())};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    // A product with an exact zero factor is exact and is not widened.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double u : {a.lo(), a.hi()}) {
        for (double v : {b.lo(), b.hi()}) {
            if (u == 0.0 || v == 0.0) {
                lo = std::min(lo, 0.0);
                hi = std::max(hi, 0.0);
            } else {
                const double p = u * v;
                lo = std::min(lo, rounding::down(p));
                hi = std::max(hi, rounding::up(p));
            }
        }
    }
    return {lo, hi};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    if (b.contains(0.0)) return Interval::entire();
    // A zero numerator gives an exact zero quotient.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double u : {a.lo(), a.hi()}) {
        for (double v : {b.lo(), b.hi()}) {
            if (u == 0.0) {
                lo = std::min(lo, 0.0);
                hi = std::max(hi, 0.0);
            } else {
                const double q = u / v;
                lo = std::min(lo, rounding::down(q));
                hi = std::max(hi, rounding::up(q));
            }
        }
    }
    return {lo, hi};
}

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo() == b.lo() && a.hi() == b.hi();
}

inline Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline Interval intersect(const Interval& a, const Interval& b) {
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (a.is_empty() || b.is_empty() || lo > hi) return Interval::empty();
    return {lo, hi};
}

inline Interval abs(const Interval& a) {
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return {0.0, std::max(-a.lo(), a.hi())};
}

// Square; tighter than a*a when a straddles zero.
inline Interval sqr(const Interval& a) {
    const Interval m = abs(a);
    return {std::max(0.0, rounding::down(m.lo() * m.lo())), rounding::up(m.hi() * m.hi())};
}

// Square root of a ∩ [0, inf). Empty if a lies entirely below zero.
inline Interval sqrt(const Interval& a) {
    if (a.is_empty() || a.hi() < 0.0) return Interval::empty();
    const double lo = std::max(a.lo(), 0.0);
    return {std::max(0.0, rounding::down(std::sqrt(lo))), rounding::up(std::sqrt(a.hi()))};
}

inline Interval exp(const Interval& a) {
    return {std::max(0.0, rounding::down(std::exp(a.lo()))), rounding::up(std::exp(a.hi()))};
}

inline Interval log(const Interval& a) {
    if (a.is_empty() || a.hi() <= 0.0) return Interval::empty();
    const double lo = a.lo() > 0.0 ? rounding::down(std::log(a.lo()))
                                   : -std::numeric_limits<double>::infinity();
    return {lo, rounding::up(std::log(a.hi()))};
}

// |a|^e for e > 0: monotone in |a|, evaluated on the sign-split magnitude.
inline Interval pow_abs(const Interval& a, double e) {
    const Interval m = abs(a);
    const double lo = m.lo() == 0.0 ? 0.0 : std::max(0.0, rounding::down(std::pow(m.lo(), e)));
    return {lo, rounding::up(std::pow(m.hi(), e))};
}

// a^e on a ∩ [0, inf) for e > 0.
inline Interval pow_nonneg(const Interval& a, double e) {
    if (a.is_empty() || a.hi() < 0.0) return Interval::empty();
    return pow_abs(Interval(std::max(a.lo(), 0.0), a.hi()), e);
}

// Exact rational p/q enclosed outward.
inline Interval rational(long long p, long long q) {
    return Interval(static_cast<double>(p)) / Interval(static_cast<double>(q));
}

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace hhk
