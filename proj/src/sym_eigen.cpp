#include "hhk/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hhk {

namespace {

// det(A - lambda I) and its derivative in lambda, for Newton polishing.
void char_poly(const Mat3& a, double lambda, double& value, double& slope) {
    const Mat3 m = a - lambda * Mat3::Identity();
    value = m.determinant();
    // d/dλ det(A - λI) = -trace(adj(A - λI)) = -(sum of principal 2×2 minors)
    const double minors = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1) + m(0, 0) * m(2, 2) -
                          m(0, 2) * m(2, 0) + m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    slope = -minors;
}

}  // namespace

std::array<double, 3> symmetric_eigenvalues(const Mat3& input) {
    const Mat3 a = 0.5 * (input + input.transpose());
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    std::array<double, 3> ev{};
    const double q = a.trace() / 3.0;
    if (p1 == 0.0) {
        ev = {a(0, 0), a(1, 1), a(2, 2)};
        std::sort(ev.begin(), ev.end());
        return ev;
    }
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Mat3 b = (a - q * Mat3::Identity()) / p;
    const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    ev[2] = q + 2.0 * p * std::cos(phi);
    ev[0] = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    ev[1] = 3.0 * q - ev[0] - ev[2];

    const double scale = std::max({std::abs(ev[0]), std::abs(ev[2]), 1e-300});
    for (double& lambda : ev) {
        double value = 0.0;
        double slope = 0.0;
        char_poly(a, lambda, value, slope);
        // Near a double root the slope vanishes; the closed form is already as
        // good as Newton can make it there.
        if (std::abs(slope) > 1e-8 * scale * scale) {
            const double step = value / slope;
            if (std::abs(step) < 1e-6 * scale) lambda -= step;
        }
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace hhk
