#pragma once

// Graph surfaces z = u(x, y) built from the quartic-radical function f and
// the saddle g, their curvature, Gauss maps and the cross-cap identities.
//
// Orientation: the upper sheet (sheet = +1) carries the normal
// (-u_x, -u_y, 1)/W, the lower sheet (sheet = -1) its negative, where
// W = √(1 + u_x² + u_y²). Principal radii are reciprocals of the eigenvalues
// of the shape operator for that normal, so the upper unit hemisphere has
// r1 = r2 = -1.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hhk/exact_real.hpp"
#include "hhk/jet.hpp"
#include "hhk/sphere_math.hpp"

namespace hhk {

using HeightJet = Jet<double, 2>;

// ------------------------------------------------------------------ values

/// 1 - |x|^(4/5) - |y|^(4/5); nonnegative exactly on D.
double boundary_distance(double x, double y);
/// Membership in D with 1e-12 slack for points computed on ∂D.
bool in_domain(double x, double y);

/// Unclamped radicand Q^(5/2) - 25x²y²√S. No domain check.
double mm_radicand_raw(double x, double y);
/// Radicand on D; values in [-1e-12, 0) are clamped to 0. Throws
/// DomainViolation outside D.
double mm_radicand(double x, double y);
/// x y √rad / (1 - x⁴ - y⁴), 0 at the cusps. Throws NegativeRadicand when
/// the radicand is below -1e-12, DomainViolation outside D.
double mm_f(double x, double y);
/// (x² - y²) - (x⁴ - y⁴)/6.
double base_g(double x, double y);
/// base_g + t·sheet·mm_f.
double surface_height(double t, int sheet, double x, double y);

// ------------------------------------------------------------------- specs

struct MMCounterexample {
    ExactReal t = ExactReal::rational(1, 12);
    int sheet = +1;
};

/// z = (x/y)√(y^(5/2) - x²) on y > 0, x² <= y^(5/2).
struct CrossCapGraph {
    int sheet = +1;
};

struct BaseG {
    int sheet = +1;
};

struct CustomHeight {
    std::function<HeightJet(const HeightJet&, const HeightJet&)> height;
    /// Nonnegative exactly on the domain.
    std::function<double(double, double)> domain_distance;
    int sheet = +1;
    std::string name = "custom";
};

class GraphSurfaceSpec {
public:
    using Kind = std::variant<MMCounterexample, CrossCapGraph, BaseG, CustomHeight>;

    GraphSurfaceSpec(Kind k);  // NOLINT: variant alternatives convert implicitly
    static GraphSurfaceSpec counterexample(const ExactReal& t, int sheet);
    static GraphSurfaceSpec counterexample(double t, int sheet);
    static GraphSurfaceSpec base_g(int sheet = +1);
    static GraphSurfaceSpec crosscap(int sheet = +1);
    static GraphSurfaceSpec custom(CustomHeight h);

    const Kind& kind() const { return kind_; }
    int sheet() const;
    /// Domain functional: >= 0 exactly on the closed domain.
    double domain_distance(double x, double y) const;
    bool contains(double x, double y) const;
    double height(double x, double y) const;
    /// Value, gradient and Hessian of the height. Throws DomainViolation.
    HeightJet height_jet(double x, double y) const;

private:
    Kind kind_;
};

struct CurvatureSample {
    double x = 0.0;
    double y = 0.0;
    int sheet = +1;
    double z = 0.0;
    double K_numerator = 0.0;
    double K = 0.0;
    double r1 = 0.0;  // r1 <= r2, ±inf where a principal curvature vanishes
    double r2 = 0.0;
    Vec3 normal = Vec3::UnitZ();
    double boundary_distance = 0.0;
    /// Derivatives overflowed or lost all precision near a cusp.
    bool near_singular = false;
};

/// Curvature data at a strictly interior point. Throws DomainViolation if
/// the domain functional is not positive.
CurvatureSample graph_curvature(const GraphSurfaceSpec& spec, double x, double y);

/// Oriented unit normal. At the cusps of D the f-term has zero gradient and
/// the normal comes from g alone. Throws NearSingular on gradient overflow.
UnitVec3 gauss_map(const GraphSurfaceSpec& spec, double x, double y);

/// Central-difference audit of the curvature numerator (step 1e-6 scaled).
double curvature_numerator_fd(const GraphSurfaceSpec& spec, double x, double y);

// ------------------------------------------------------------------- scans

struct ScanSample {
    double x = 0.0;
    double y = 0.0;
    int sheet = +1;
    double z = 0.0;
    double K = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double Rh = 0.0;  // r1·r2
    double boundary_distance = 0.0;
};

struct ScanReport {
    std::string quantity = "K";
    int resolution = 0;
    double margin = 0.0;
    double t = 0.0;
    std::size_t samples = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::size_t violation_count = 0;
    std::vector<ScanSample> violations;  // capped, sorted by (x, y, sheet)
    /// Every sample, only when requested.
    std::vector<ScanSample> rows;
    std::size_t near_singular = 0;
    double seconds = 0.0;

    // Radii statistics (shape_radii_scan only).
    bool has_radii = false;
    double min_r1 = 0.0;
    double max_r1 = 0.0;
    double min_r2 = 0.0;
    double max_r2 = 0.0;
    double min_Rh = 0.0;
    double max_Rh = 0.0;
    double max_reciprocal_error = 0.0;  // max |K·r1·r2 - 1|
};

struct ScanOptions {
    std::size_t violation_cap = 10000;
    bool keep_rows = false;
};

/// Grid linspace(-1, 1, n)² restricted to boundary_distance >= margin, both
/// sheets. A violation is a sample with K >= 0 (or non-finite K).
ScanReport curvature_scan(const ExactReal& t, int n, double margin, const ScanOptions& opts = {});
ScanReport curvature_scan(double t, int n, double margin, const ScanOptions& opts = {});

/// Same grid. A violation is a sample where K < 0 but not r1 < 0 < r2, or
/// where K·r1·r2 deviates from 1 by more than 1e-8.
ScanReport shape_radii_scan(const ExactReal& t, int n, double margin, const ScanOptions& opts = {});
ScanReport shape_radii_scan(double t, int n, double margin, const ScanOptions& opts = {});

/// Curvature or radii scan of an arbitrary spec over a grid on [lo, hi]².
ScanReport scan_surface(const GraphSurfaceSpec& spec, int n, double margin, double lo, double hi,
                        bool radii, const ScanOptions& opts = {});

/// max(0, -min r1). Throws InvalidArgument for an empty or radius-less scan.
double convexify_radius(const ScanReport& scan);

struct ShiftedRadiiCheck {
    double radius = 0.0;           // R used for the shift
    std::size_t samples = 0;
    std::size_t not_hyperbolic = 0;  // samples without r1 < 0 < r2
    double min_shifted_r1 = 0.0;   // min r1 + R
    /// max |((r1 + R) - R)((r2 + R) - R) - r1 r2| / |r1 r2|
    double max_identity_error = 0.0;
};

/// Shifts the radii of every row by R (Minkowski sum with a ball), carrying
/// the shifted values in extended precision, and checks the product law.
/// Throws InvalidArgument when the scan kept no rows.
ShiftedRadiiCheck shifted_radii_check(const ScanReport& scan, double radius);

struct TSweepEntry {
    double t = 0.0;
    double max_K = 0.0;
    std::size_t violations = 0;
};

/// Max K for each t; the empirically valid parameter set is where max K < 0.
std::vector<TSweepEntry> t_sweep(const std::vector<double>& ts, int n, double margin);

// ------------------------------------------------------------ singular set

struct BoundaryLimit {
    double theta = 0.0;
    Vec2 point = Vec2::Zero();
    int sheet = +1;
    Vec3 normal = Vec3::UnitZ();
    double semicircle_distance = 0.0;
    /// Number of approach distances that stayed inside D.
    int used_levels = 0;
};

struct SingularSetReport {
    double t = 0.0;
    int n_boundary = 0;
    double max_distance = 0.0;
    double mean_distance = 0.0;
    /// Largest |z| of the extrapolated limits (0 when they lie on the equator).
    double max_abs_z = 0.0;
    /// Worst angle between a limit and the horizontal line spanned by the
    /// in-plane normal of ∂D at its sample.
    double max_equator_error = 0.0;
    double median_equator_error = 0.0;
    std::vector<BoundaryLimit> limits;
};

/// Approaches ∂D along inward normals of the level set at distances
/// 1e-2 ... 1e-6, Richardson-extrapolates the Gauss map in √distance, and
/// reports the max over samples of the distance to the four semicircles.
SingularSetReport singular_set_check(const ExactReal& t, int n_boundary);
SingularSetReport singular_set_check(double t, int n_boundary);

struct CuspFanLevel {
    double gap = 0.0;           // distance of the fan from the cusp along its axis
    double max_distance = 0.0;  // to the four semicircles
    double min_abs_z = 0.0;
    double max_abs_z = 0.0;
};

struct CuspFanReport {
    double t = 0.0;
    std::vector<CuspFanLevel> levels;
    /// Richardson limit of max_distance in gap^(1/4) from the two last levels.
    double extrapolated_distance = 0.0;
    /// Cusp normals vs their closed forms, max angular error.
    double cusp_normal_error = 0.0;
};

/// Normals on transverse sweeps across D at shrinking gaps from each cusp,
/// both sheets, evaluated in extended precision.
CuspFanReport cusp_fan_check(const ExactReal& t, int n_sweep, const std::vector<double>& gaps);

/// The closed-form normal at a cusp (±1, 0) or (0, ±1).
UnitVec3 cusp_normal(int cusp_index, int sheet);
Vec2 cusp_point(int cusp_index);

// ---------------------------------------------------------------- cross-cap

enum class CrossCapVariant { X4Y5, X5Y5 };

/// r⁴ (u, 1, u v) with r² = u² + v².
Vec3 crosscap_point(double u, double v);
/// Residual of x⁴y⁵ - (x⁴ + y²z²)² (or x⁵y⁵ - ...) at crosscap_point(u, v)
/// divided by max(1, |x⁴y⁵|).
double crosscap_residual(double u, double v, CrossCapVariant variant);
/// (x/y)√(y^(5/2) - x²). Throws DomainViolation outside y > 0, x² <= y^(5/2).
double crosscap_graph_f(double x, double y);
/// Residual of x⁴y⁵ - (x⁴ + y²z²)² at an arbitrary point, relative as above.
double crosscap_identity_residual(const Vec3& p, CrossCapVariant variant);

}  // namespace hhk
