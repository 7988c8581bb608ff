#pragma once

// Smooth hedgehogs in R³ given by a support function h on S².
//
// Everything is computed from the 1-homogeneous extension
// phi(u) = |u| h(u/|u|): the hedgehog point is grad phi(p) and the principal
// radii are the two eigenvalues of Hess phi(p) other than the zero along p.

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hhk/sphere_math.hpp"

namespace hhk {

/// Value, gradient and Hessian of phi at a point u != 0.
struct PhiJet {
    double value = 0.0;
    Vec3 grad = Vec3::Zero();
    Mat3 hess = Mat3::Zero();
};

/// h(p) = coef * px^a * py^b * pz^c on the sphere, i.e. a trigonometric
/// polynomial in spherical coordinates written in direction cosines (smooth
/// at the poles).
struct Monomial {
    double coef = 0.0;
    int a = 0;
    int b = 0;
    int c = 0;
};

/// User-supplied support function. Only `h` is required; missing derivatives
/// of phi are taken by central differences with step 1e-5·max(1, |u|) for
/// the gradient and 1e-4·max(1, |u|) for the Hessian.
struct CustomSupport {
    std::function<double(const Vec3& p)> h;
    std::function<Vec3(const Vec3& u)> grad_phi;
    std::function<Mat3(const Vec3& u)> hess_phi;
};

enum class FieldKind { Constant, Linear, SphereOffset, Sum, TrigPolynomial, Custom };

class SupportField {
public:
    static SupportField constant(double r);
    static SupportField linear(const Vec3& c);
    /// base + offset; prefer add_ball, which folds constants.
    static SupportField sphere_offset(const SupportField& base, double offset);
    static SupportField sum(std::vector<SupportField> terms);
    static SupportField sum(const SupportField& a, const SupportField& b) { return sum({a, b}); }
    static SupportField trig_polynomial(std::vector<Monomial> terms);
    static SupportField custom(CustomSupport support);

    FieldKind kind() const;
    /// True when value, gradient and Hessian are all closed form.
    bool analytic() const;

    double phi(const Vec3& u) const;
    PhiJet jet(const Vec3& u) const;

    /// Constant term for Constant fields, offset for SphereOffset.
    double constant_value() const;
    const Vec3& linear_vector() const;

    struct Node;

private:
    explicit SupportField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// One point of a hedgehog with its principal radii; r1 <= r2 and
/// curvature = r1*r2 (the curvature function R_h).
struct HedgehogJet {
    UnitVec3 p;
    Vec3 x = Vec3::Zero();
    double r1 = 0.0;
    double r2 = 0.0;
    double curvature = 0.0;
    double mean_radius = 0.0;
};

double eval_support(const SupportField& field, const UnitVec3& p);
Vec3 hedgehog_point(const SupportField& field, const UnitVec3& p);

/// Throws EulerViolation when the eigenvalue of Hess phi along p is not
/// numerically zero (bad derivative data).
HedgehogJet hedgehog_jet(const SupportField& field, const UnitVec3& p);

/// det of Hess phi(p) restricted to the tangent plane.
double curvature_function(const SupportField& field, const UnitVec3& p);

/// Minkowski addition of a ball of radius R (R may be negative).
SupportField add_ball(const SupportField& field, double radius);

struct ExtremePoint {
    UnitVec3 p;
    double height = 0.0;  // <x_h(p), n>
};

/// Grid points within 1e-9·scale of the maximum of <x_h(p), n>, where
/// scale = max(1, max |<x_h, n>|).
std::vector<ExtremePoint> extreme_points(const SupportField& field, const UnitVec3& n,
                                         const SphericalGrid& grid);

/// Central-difference derivatives of phi, used for Custom fields and as an
/// audit path in tests. Steps 1e-5 (gradient) and 1e-4 (Hessian), scaled by
/// max(1, |u|), balance truncation against rounding.
Vec3 fd_gradient(const std::function<double(const Vec3&)>& phi, const Vec3& u);
Mat3 fd_hessian(const std::function<double(const Vec3&)>& phi, const Vec3& u);

}  // namespace hhk
