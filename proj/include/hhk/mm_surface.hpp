#pragma once

// Expression templates for the quartic-radical graph surface
//
//   Q(x, y)   = 1 - x⁴ - y⁴
//   S(x, y)   = x⁸ + y⁸ + 3(x⁴ + y⁴ - x⁴y⁴) + 1
//   rad(x, y) = Q^(5/2) - 25 x²y² √S
//   f(x, y)   = x y √rad / Q
//   g(x, y)   = (x² - y²) - (x⁴ - y⁴)/6
//   u(x, y)   = g + s t f,  s = ±1 the sheet
//
// on D = { |x|^(4/5) + |y|^(4/5) <= 1 }. Every function is templated on the
// scalar so that one definition serves double, long double, Interval and the
// Dual/Jet towers built on them. Q is clipped to [0, inf) before fractional
// powers; on D that is the identity and it keeps interval enclosures sound on
// boxes that poke out of D.

#include <type_traits>

#include "hhk/interval.hpp"
#include "hhk/jet.hpp"

namespace hhk {

template <typename T>
struct ScalarTraits {
    using Base = T;
    static T lift(const Base& b) { return b; }
    static T clip_nonneg(const T& v) {
        if constexpr (std::is_same_v<T, Interval>) {
            return intersect(v, Interval(0.0, std::numeric_limits<double>::infinity()));
        } else {
            return v < T(0) ? T(0) : v;
        }
    }
};

template <typename S, std::size_t N>
struct ScalarTraits<Dual<S, N>> {
    using Base = typename ScalarTraits<S>::Base;
    static Dual<S, N> lift(const Base& b) { return Dual<S, N>(ScalarTraits<S>::lift(b)); }
    // Only the value is clipped; derivatives of a C¹ extension are unchanged.
    static Dual<S, N> clip_nonneg(const Dual<S, N>& a) {
        Dual<S, N> r = a;
        r.v = ScalarTraits<S>::clip_nonneg(a.v);
        return r;
    }
};

template <typename S, std::size_t N>
struct ScalarTraits<Jet<S, N>> {
    using Base = typename ScalarTraits<S>::Base;
    static Jet<S, N> lift(const Base& b) { return Jet<S, N>(ScalarTraits<S>::lift(b)); }
    static Jet<S, N> clip_nonneg(const Jet<S, N>& a) {
        Jet<S, N> r = a;
        r.v = ScalarTraits<S>::clip_nonneg(a.v);
        return r;
    }
};

template <typename T>
using base_scalar_t = typename ScalarTraits<T>::Base;

/// p/q as a T, enclosed outward when the base scalar is an interval.
template <typename T>
T ratio(long long p, long long q) {
    using B = base_scalar_t<T>;
    if constexpr (std::is_same_v<B, Interval>) {
        return ScalarTraits<T>::lift(rational(p, q));
    } else {
        return ScalarTraits<T>::lift(B(p) / B(q));
    }
}

template <typename T>
T lift(const base_scalar_t<T>& b) {
    return ScalarTraits<T>::lift(b);
}

// v^(5/2) for v >= 0 as one unary operation, so that derivative enclosures
// stay finite where v touches zero.
inline double pow_five_halves(double v) { return v * v * std::sqrt(v); }
inline long double pow_five_halves(long double v) { return v * v * std::sqrt(v); }
inline Interval pow_five_halves(const Interval& v) {
    const Interval c = ScalarTraits<Interval>::clip_nonneg(v);
    return sqr(c) * sqrt(c);
}

template <typename S, std::size_t N>
Dual<S, N> pow_five_halves(const Dual<S, N>& a) {
    using std::sqrt;
    const S v = a.v;
    const S root = sqrt(v);
    return chain(a, S(sqr(v) * root), S(S(2.5) * v * root));
}

template <typename S, std::size_t N>
Jet<S, N> pow_five_halves(const Jet<S, N>& a) {
    using std::sqrt;
    const S v = a.v;
    const S root = sqrt(v);
    return chain(a, S(sqr(v) * root), S(S(2.5) * v * root), S(S(3.75) * root));
}

template <typename T>
struct QuarticTerms {
    T x2, y2, x4, y4;
};

template <typename T>
QuarticTerms<T> quartic_terms(const T& x, const T& y) {
    QuarticTerms<T> q;
    q.x2 = sqr(x);
    q.y2 = sqr(y);
    q.x4 = sqr(q.x2);
    q.y4 = sqr(q.y2);
    return q;
}

/// 1 - x⁴ - y⁴ clipped to [0, inf).
template <typename T>
T quartic_gap(const QuarticTerms<T>& q) {
    return ScalarTraits<T>::clip_nonneg(T(1.0) - q.x4 - q.y4);
}

/// x⁸ + y⁸ + 3(x⁴(1 - y⁴) + y⁴) + 1, written so that every summand is
/// nonnegative on the unit square.
template <typename T>
T radical_inner(const QuarticTerms<T>& q) {
    return sqr(q.x4) + sqr(q.y4) + T(3.0) * (q.x4 * (T(1.0) - q.y4) + q.y4) + T(1.0);
}

template <typename T>
T mm_radicand_expr(const T& x, const T& y) {
    using std::sqrt;
    const QuarticTerms<T> q = quartic_terms(x, y);
    return pow_five_halves(quartic_gap(q)) - T(25.0) * (q.x2 * q.y2) * sqrt(radical_inner(q));
}

/// x y √rad / Q. Undefined (division by zero) at the four cusps.
template <typename T>
T mm_f_expr(const T& x, const T& y) {
    using std::sqrt;
    const QuarticTerms<T> q = quartic_terms(x, y);
    const T gap = quartic_gap(q);
    const T rad = pow_five_halves(gap) - T(25.0) * (q.x2 * q.y2) * sqrt(radical_inner(q));
    return x * y * sqrt(ScalarTraits<T>::clip_nonneg(rad)) / gap;
}

template <typename T>
T base_g_expr(const T& x, const T& y) {
    const T x2 = sqr(x);
    const T y2 = sqr(y);
    const T sixth = ratio<T>(1, 6);
    return x2 * (T(1.0) - x2 * sixth) - y2 * (T(1.0) - y2 * sixth);
}

/// g + coef f, where coef = sheet * t is passed as a base scalar.
template <typename T>
T mm_height_expr(const T& x, const T& y, const base_scalar_t<T>& coef, bool include_f) {
    T u = base_g_expr(x, y);
    if (include_f) u = u + mm_f_expr(x, y) * lift<T>(coef);
    return u;
}

}  // namespace hhk
