#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hhk {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Point of the unit sphere S². Construction normalizes; the invariant
/// |v| = 1 holds to 1e-12.
class UnitVec3 {
public:
    UnitVec3() : v_(0.0, 0.0, 1.0) {}
    /// Throws InvalidArgument for a zero or non-finite vector.
    explicit UnitVec3(const Vec3& v);
    UnitVec3(double x, double y, double z) : UnitVec3(Vec3(x, y, z)) {}

    const Vec3& vec() const { return v_; }
    operator const Vec3&() const { return v_; }  // NOLINT
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }
    double dot(const Vec3& o) const { return v_.dot(o); }

private:
    Vec3 v_;
};

struct SphericalGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::optional<UnitVec3> hemisphere;
    std::vector<UnitVec3> points;
};

/// Latitude–longitude lattice; polar angles sit at half steps so no sample is
/// a pole. With `hemisphere` set only points with <p,n> >= -1e-12 are kept.
SphericalGrid sph_grid(int n_theta, int n_phi, std::optional<UnitVec3> hemisphere = std::nullopt);

struct TangentBasis {
    UnitVec3 e1;
    UnitVec3 e2;
};

/// Right-handed orthonormal {e1, e2, p}; e1 is Gram–Schmidt of the axis least
/// aligned with p.
TangentBasis tangent_basis(const UnitVec3& p);

/// The four closed semicircles of the singular set:
///   I: 3x+4z=0, y>=0   II: 3y-4z=0, x>=0   III: 3x-4z=0, y<=0   IV: 3y+4z=0, x<=0
enum class Semicircle { I, II, III, IV };

inline constexpr std::array<Semicircle, 4> kAllSemicircles{Semicircle::I, Semicircle::II,
                                                           Semicircle::III, Semicircle::IV};

/// Geodesic distance (radians) from p to the closed semicircle.
double semicircle_distance(const UnitVec3& p, Semicircle which);

/// Distance to the union of the four semicircles.
double singular_set_distance(const UnitVec3& p);

/// Geodesic angle between unit vectors, accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

}  // namespace hhk
