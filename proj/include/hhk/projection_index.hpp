#pragma once

// Planar hedgehogs and the index of a point with respect to them.
//
// A planar hedgehog is given by a 2π-periodic support function h(θ) with
// p(θ) = (cos θ, sin θ) and t(θ) = (-sin θ, cos θ). Its curve is
// x(θ) = h'(θ) t(θ) + h(θ) p(θ), with velocity (h + h'') t.

#include <memory>
#include <variant>
#include <vector>

#include "hhk/sphere_math.hpp"
#include "hhk/support_field.hpp"

namespace hhk {

struct SupportJet1 {
    double h = 0.0;
    double dh = 0.0;
    double d2h = 0.0;
};

/// a0 + Σ (a_k cos kθ + b_k sin kθ)
struct Harmonic {
    int k = 1;
    double a = 0.0;
    double b = 0.0;
};

class PlanarHedgehog {
public:
    static PlanarHedgehog constant(double r);
    static PlanarHedgehog harmonics(double a0, std::vector<Harmonic> terms);
    /// h(u, v) = u v (u⁴ + v⁴)^(-1/4) on the unit circle.
    static PlanarHedgehog quartic_boundary();
    /// h_n(θ) = h(cos θ e1 + sin θ e2) with (e1, e2) = tangent_basis(n).
    static PlanarHedgehog restriction(const SupportField& field, const UnitVec3& n);

    SupportJet1 eval(double theta) const;

    /// Plane basis of a restriction (identity axes otherwise).
    const Vec3& e1() const { return e1_; }
    const Vec3& e2() const { return e2_; }

private:
    struct ConstantData {
        double r;
    };
    struct HarmonicData {
        double a0;
        std::vector<Harmonic> terms;
    };
    struct QuarticData {};
    struct RestrictionData {
        SupportField field;
    };
    using Data = std::variant<ConstantData, HarmonicData, QuarticData, RestrictionData>;

    explicit PlanarHedgehog(Data d) : data_(std::make_shared<const Data>(std::move(d))) {}

    std::shared_ptr<const Data> data_;
    Vec3 e1_ = Vec3::UnitX();
    Vec3 e2_ = Vec3::UnitY();
};

PlanarHedgehog restrict_to_circle(const SupportField& field, const UnitVec3& n);

Vec2 planar_point(const PlanarHedgehog& ph, double theta);
/// h'' + h, the single radius of curvature of a planar hedgehog.
double planar_radius(const PlanarHedgehog& ph, double theta);

struct IndexOptions {
    int n_samples = 4096;
    double theta_tol = 1e-12;
    int max_directions = 32;
    /// Perturbation used for the regular-value check.
    double perturbation = 1e-7;
};

struct IndexResult {
    Vec2 x = Vec2::Zero();
    Vec2 direction = Vec2::UnitX();
    int crossings = 0;  // unsigned count
    int index = 0;      // signed sum
    bool degenerate = false;
};

/// Signed number of crossings of the ray from x with the oriented hedgehog
/// curve. Throws OnCurve if x lies on the curve, DegenerateRay if every
/// candidate direction is tangent or near-missing.
IndexResult ray_index(const PlanarHedgehog& ph, const Vec2& x, const IndexOptions& opts = {});

struct ProjectionCounts {
    int elliptic = 0;    // points with R_h > 0
    int hyperbolic = 0;  // points with R_h < 0
    std::vector<UnitVec3> solutions;
    int difference() const { return elliptic - hyperbolic; }
};

/// Counts the p in the closed hemisphere <p, n> >= 0 whose hedgehog point
/// projects onto x (coordinates in the tangent_basis(n) frame of n⊥), split
/// by the sign of the curvature function. Grid points seed a Newton solve on
/// the sphere. Throws ParabolicAmbiguity if a solution has |R_h| < 1e-10.
ProjectionCounts projection_counts(const SupportField& field, const UnitVec3& n, const Vec2& x,
                               const SphericalGrid& grid);

}  // namespace hhk
