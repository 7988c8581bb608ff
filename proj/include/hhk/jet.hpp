#pragma once

// Forward-mode automatic differentiation templated on the scalar type.
//
//   Dual<T, N>  value and gradient in N variables
//   Jet<T, N>   value, gradient and (packed, symmetric) Hessian in N variables
//
// T may be double, long double, Interval, or a Dual itself; the last case gives
// enclosures of derivatives of derivatives, which the certification code uses
// for mean-value forms of the curvature numerator.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>

#include "hhk/interval.hpp"

namespace hhk {

inline double sqr(double v) { return v * v; }
inline long double sqr(long double v) { return v * v; }

template <typename T, std::size_t N>
struct Dual {
    using Scalar = T;
    T v{};
    std::array<T, N> g{};

    Dual() = default;
    Dual(const T& value) : v(value) {}  // NOLINT: constants promote implicitly
    template <typename S = T>
        requires(!std::is_same_v<S, double>)
    Dual(double value) : v(value) {}  // NOLINT

    static Dual variable(const T& value, std::size_t i) {
        Dual d(value);
        d.g[i] = T(1.0);
        return d;
    }
};

template <typename T, std::size_t N>
struct Jet {
    using Scalar = T;
    static constexpr std::size_t kPacked = N * (N + 1) / 2;

    T v{};
    std::array<T, N> g{};
    std::array<T, kPacked> h{};  // upper triangle, row-major

    Jet() = default;
    Jet(const T& value) : v(value) {}  // NOLINT
    template <typename S = T>
        requires(!std::is_same_v<S, double>)
    Jet(double value) : v(value) {}  // NOLINT

    static Jet variable(const T& value, std::size_t i) {
        Jet j(value);
        j.g[i] = T(1.0);
        return j;
    }

    static constexpr std::size_t index(std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return i * N - i * (i - 1) / 2 + (j - i);
    }
    const T& hess(std::size_t i, std::size_t j) const { return h[index(i, j)]; }
};

// ---------------------------------------------------------------- Dual ops

template <typename T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a) {
    Dual<T, N> r;
    r.v = -a.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = -a.g[i];
    return r;
}

template <typename T, std::size_t N>
Dual<T, N> operator+(const Dual<T, N>& a, const Dual<T, N>& b) {
    Dual<T, N> r;
    r.v = a.v + b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] + b.g[i];
    return r;
}

template <typename T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a, const Dual<T, N>& b) {
    Dual<T, N> r;
    r.v = a.v - b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] - b.g[i];
    return r;
}

template <typename T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
    Dual<T, N> r;
    r.v = a.v * b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
    return r;
}

template <typename T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, double s) {
    Dual<T, N> r;
    r.v = a.v * T(s);
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] * T(s);
    return r;
}
template <typename T, std::size_t N>
Dual<T, N> operator*(double s, const Dual<T, N>& a) { return a * s; }
template <typename T, std::size_t N>
Dual<T, N> operator+(const Dual<T, N>& a, double s) { return a + Dual<T, N>(T(s)); }
template <typename T, std::size_t N>
Dual<T, N> operator+(double s, const Dual<T, N>& a) { return a + s; }
template <typename T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a, double s) { return a - Dual<T, N>(T(s)); }
template <typename T, std::size_t N>
Dual<T, N> operator-(double s, const Dual<T, N>& a) { return Dual<T, N>(T(s)) - a; }

template <typename T, std::size_t N>
Dual<T, N> chain(const Dual<T, N>& a, const T& f0, const T& f1) {
    Dual<T, N> r;
    r.v = f0;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = f1 * a.g[i];
    return r;
}

template <typename T, std::size_t N>
Dual<T, N> sqr(const Dual<T, N>& a) {
    return chain(a, T(sqr(a.v)), T(a.v * T(2.0)));
}

template <typename T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    return chain(a, s, T(T(0.5) / s));
}

template <typename T, std::size_t N>
Dual<T, N> reciprocal(const Dual<T, N>& a) {
    const T inv = T(1.0) / a.v;
    return chain(a, inv, T(-sqr(inv)));
}

template <typename T, std::size_t N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) { return a * reciprocal(b); }

// ----------------------------------------------------------------- Jet ops

template <typename T, std::size_t N>
Jet<T, N> operator-(const Jet<T, N>& a) {
    Jet<T, N> r;
    r.v = -a.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = -a.g[i];
    for (std::size_t k = 0; k < Jet<T, N>::kPacked; ++k) r.h[k] = -a.h[k];
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> operator+(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    r.v = a.v + b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] + b.g[i];
    for (std::size_t k = 0; k < Jet<T, N>::kPacked; ++k) r.h[k] = a.h[k] + b.h[k];
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> operator-(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    r.v = a.v - b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] - b.g[i];
    for (std::size_t k = 0; k < Jet<T, N>::kPacked; ++k) r.h[k] = a.h[k] - b.h[k];
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> operator*(const Jet<T, N>& a, const Jet<T, N>& b) {
    Jet<T, N> r;
    r.v = a.v * b.v;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            const std::size_t k = Jet<T, N>::index(i, j);
            r.h[k] = a.v * b.h[k] + b.v * a.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
        }
    }
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> scale(const Jet<T, N>& a, const T& s) {
    Jet<T, N> r;
    r.v = a.v * s;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = a.g[i] * s;
    for (std::size_t k = 0; k < Jet<T, N>::kPacked; ++k) r.h[k] = a.h[k] * s;
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> operator*(const Jet<T, N>& a, double s) { return scale(a, T(s)); }
template <typename T, std::size_t N>
Jet<T, N> operator*(double s, const Jet<T, N>& a) { return scale(a, T(s)); }

template <typename T, std::size_t N>
Jet<T, N> operator+(const Jet<T, N>& a, double s) {
    Jet<T, N> r = a;
    r.v = a.v + T(s);
    return r;
}
template <typename T, std::size_t N>
Jet<T, N> operator+(double s, const Jet<T, N>& a) { return a + s; }
template <typename T, std::size_t N>
Jet<T, N> operator-(const Jet<T, N>& a, double s) { return a + (-s); }
template <typename T, std::size_t N>
Jet<T, N> operator-(double s, const Jet<T, N>& a) { return (-a) + s; }

// Univariate chain rule with f(v), f'(v), f''(v).
template <typename T, std::size_t N>
Jet<T, N> chain(const Jet<T, N>& a, const T& f0, const T& f1, const T& f2) {
    Jet<T, N> r;
    r.v = f0;
    for (std::size_t i = 0; i < N; ++i) r.g[i] = f1 * a.g[i];
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            const std::size_t k = Jet<T, N>::index(i, j);
            r.h[k] = f1 * a.h[k] + f2 * (a.g[i] * a.g[j]);
        }
    }
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> sqr(const Jet<T, N>& a) {
    Jet<T, N> r;
    r.v = sqr(a.v);
    const T two_v = a.v * T(2.0);
    for (std::size_t i = 0; i < N; ++i) r.g[i] = two_v * a.g[i];
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            const std::size_t k = Jet<T, N>::index(i, j);
            r.h[k] = two_v * a.h[k] + T(2.0) * (a.g[i] * a.g[j]);
        }
    }
    return r;
}

template <typename T, std::size_t N>
Jet<T, N> sqrt(const Jet<T, N>& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    const T d1 = T(0.5) / s;
    const T d2 = -(d1 / (a.v * T(2.0)));
    return chain(a, s, d1, d2);
}

template <typename T, std::size_t N>
Jet<T, N> reciprocal(const Jet<T, N>& a) {
    const T inv = T(1.0) / a.v;
    const T inv2 = sqr(inv);
    return chain(a, inv, T(-inv2), T(T(2.0) * inv2 * inv));
}

template <typename T, std::size_t N>
Jet<T, N> operator/(const Jet<T, N>& a, const Jet<T, N>& b) { return a * reciprocal(b); }

// Hessian determinant in the first two variables (the numerator of the
// Gaussian curvature of a graph).
template <typename T, std::size_t N>
T hessian_det2(const Jet<T, N>& a) {
    return a.hess(0, 0) * a.hess(1, 1) - sqr(a.hess(0, 1));
}

}  // namespace hhk
