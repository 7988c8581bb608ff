#include "hhk/sphere_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hhk/errors.hpp"

namespace hhk {

UnitVec3::UnitVec3(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("UnitVec3: zero or non-finite vector");
    }
    v_ = v / n;
}

SphericalGrid sph_grid(int n_theta, int n_phi, std::optional<UnitVec3> hemisphere) {
    if (n_theta < 2 || n_phi < 3) {
        throw InvalidArgument("sph_grid: need n_theta >= 2 and n_phi >= 3");
    }
    SphericalGrid grid{n_theta, n_phi, hemisphere, {}};
    grid.points.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_theta; ++i) {
        const double theta = (i + 0.5) * std::numbers::pi / n_theta;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            UnitVec3 p(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                       std::cos(theta));
            if (hemisphere && p.dot(*hemisphere) < -1e-12) continue;
            grid.points.push_back(p);
        }
    }
    return grid;
}

TangentBasis tangent_basis(const UnitVec3& p) {
    const Vec3& v = p.vec();
    int axis = 0;
    if (std::abs(v.y()) < std::abs(v[axis])) axis = 1;
    if (std::abs(v.z()) < std::abs(v[axis])) axis = 2;
    Vec3 seed = Vec3::Zero();
    seed[axis] = 1.0;
    Vec3 e1 = seed - v.dot(seed) * v;
    e1.normalize();
    // One re-orthogonalization pass keeps |<e1,p>| at rounding level.
    e1 -= v.dot(e1) * v;
    e1.normalize();
    Vec3 e2 = v.cross(e1);
    e2 -= e1.dot(e2) * e1;
    e2.normalize();
    return {UnitVec3(e1), UnitVec3(e2)};
}

double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

namespace {

struct SemicircleData {
    Vec3 plane_normal;
    int axis;     // coordinate constrained by the half condition
    double sign;  // +1: coordinate >= 0, -1: coordinate <= 0
};

SemicircleData semicircle_data(Semicircle which) {
    switch (which) {
        case Semicircle::I: return {Vec3(3, 0, 4) / 5.0, 1, 1.0};
        case Semicircle::II: return {Vec3(0, 3, -4) / 5.0, 0, 1.0};
        case Semicircle::III: return {Vec3(3, 0, -4) / 5.0, 1, -1.0};
        case Semicircle::IV: return {Vec3(0, 3, 4) / 5.0, 0, -1.0};
    }
    throw std::logic_error("unknown semicircle");
}

}  // namespace

double semicircle_distance(const UnitVec3& p, Semicircle which) {
    const SemicircleData s = semicircle_data(which);
    const Vec3& v = p.vec();
    const double off = v.dot(s.plane_normal);
    const Vec3 q = v - off * s.plane_normal;
    const double qn = q.norm();

    Vec3 axis_vec = Vec3::Zero();
    axis_vec[s.axis] = 1.0;
    const Vec3 endpoint = s.plane_normal.cross(axis_vec).normalized();
    const double to_ends = std::min(angle_between(v, endpoint), angle_between(v, -endpoint));

    if (qn < 1e-300) return std::numbers::pi / 2.0;
    if (s.sign * q[s.axis] >= 0.0) {
        return std::atan2(std::abs(off), qn);
    }
    return to_ends;
}

double singular_set_distance(const UnitVec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (Semicircle s : kAllSemicircles) best = std::min(best, semicircle_distance(p, s));
    return best;
}

}  // namespace hhk
