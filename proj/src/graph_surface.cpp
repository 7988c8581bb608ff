#include "hhk/graph_surface.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hhk/errors.hpp"
#include "hhk/mm_surface.hpp"
#include "hhk/parallel.hpp"

namespace hhk {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kClamp = 1e-12;
constexpr double kSingularGradient = 1e8;

std::string point_text(double x, double y) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << x << ", " << y << ')';
    return os.str();
}

void require_domain(double x, double y, const char* who) {
    if (!in_domain(x, y)) {
        throw DomainViolation(std::string(who) + ": point " + point_text(x, y) + " outside D");
    }
}

void require_sheet(int sheet) {
    if (sheet != 1 && sheet != -1) throw InvalidArgument("sheet must be +1 or -1");
}

// Exact cusp test: the quartic gap vanishes in D only at (±1, 0), (0, ±1).
bool at_cusp(double x, double y) { return 1.0 - sqr(sqr(x)) - sqr(sqr(y)) <= 0.0; }

template <typename S>
Jet<S, 2> mm_jet(S x, S y, S coef, bool include_f, bool cusp) {
    using J = Jet<S, 2>;
    const J X = J::variable(x, 0);
    const J Y = J::variable(y, 1);
    // At a cusp the f-term and its first derivatives vanish in the limit.
    return mm_height_expr<J>(X, Y, coef, include_f && !cusp);
}

HeightJet crosscap_jet(const HeightJet& x, const HeightJet& y) {
    const HeightJet gap = ScalarTraits<HeightJet>::clip_nonneg(pow_five_halves(y) - sqr(x));
    return x / y * sqrt(gap);
}

}  // namespace

// ------------------------------------------------------------------ values

double boundary_distance(double x, double y) {
    return 1.0 - std::pow(std::abs(x), 0.8) - std::pow(std::abs(y), 0.8);
}

bool in_domain(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    return boundary_distance(x, y) >= -kDomainSlack;
}

double mm_radicand_raw(double x, double y) { return mm_radicand_expr(x, y); }

double mm_radicand(double x, double y) {
    require_domain(x, y, "mm_radicand");
    const double r = mm_radicand_raw(x, y);
    return (r < 0.0 && r >= -kClamp) ? 0.0 : r;
}

double mm_f(double x, double y) {
    require_domain(x, y, "mm_f");
    if (at_cusp(x, y)) return 0.0;
    const double r = mm_radicand_raw(x, y);
    if (r < -kClamp) {
        std::ostringstream os;
        os.precision(17);
        os << "mm_f: radicand " << r << " at " << point_text(x, y);
        throw NegativeRadicand(os.str());
    }
    const double q = 1.0 - sqr(sqr(x)) - sqr(sqr(y));
    return x * y * std::sqrt(std::max(r, 0.0)) / q;
}

double base_g(double x, double y) { return base_g_expr(x, y); }

double surface_height(double t, int sheet, double x, double y) {
    require_sheet(sheet);
    const double f = mm_f(x, y);
    return base_g(x, y) + t * sheet * f;
}

// ------------------------------------------------------------------- specs

GraphSurfaceSpec::GraphSurfaceSpec(Kind k) : kind_(std::move(k)) { require_sheet(sheet()); }

GraphSurfaceSpec GraphSurfaceSpec::counterexample(const ExactReal& t, int sheet) {
    return GraphSurfaceSpec(MMCounterexample{t, sheet});
}
GraphSurfaceSpec GraphSurfaceSpec::counterexample(double t, int sheet) {
    return counterexample(ExactReal::from_double(t), sheet);
}
GraphSurfaceSpec GraphSurfaceSpec::base_g(int sheet) { return GraphSurfaceSpec(BaseG{sheet}); }
GraphSurfaceSpec GraphSurfaceSpec::crosscap(int sheet) {
    return GraphSurfaceSpec(CrossCapGraph{sheet});
}
GraphSurfaceSpec GraphSurfaceSpec::custom(CustomHeight h) {
    if (!h.height || !h.domain_distance) {
        throw InvalidArgument("custom height needs a height and a domain functional");
    }
    return GraphSurfaceSpec(std::move(h));
}

int GraphSurfaceSpec::sheet() const {
    return std::visit([](const auto& k) { return k.sheet; }, kind_);
}

double GraphSurfaceSpec::domain_distance(double x, double y) const {
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, CrossCapGraph>) {
                if (y <= 0.0) return (x == 0.0 && y == 0.0) ? 0.0 : -1.0;
                return std::pow(y, 2.5) - x * x;
            } else if constexpr (std::is_same_v<K, CustomHeight>) {
                return k.domain_distance(x, y);
            } else {
                return boundary_distance(x, y);
            }
        },
        kind_);
}

bool GraphSurfaceSpec::contains(double x, double y) const {
    return std::isfinite(x) && std::isfinite(y) && domain_distance(x, y) >= -kDomainSlack;
}

double GraphSurfaceSpec::height(double x, double y) const {
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, MMCounterexample>) {
                return surface_height(k.t.value(), k.sheet, x, y);
            } else if constexpr (std::is_same_v<K, BaseG>) {
                require_domain(x, y, "height");
                return hhk::base_g(x, y);
            } else if constexpr (std::is_same_v<K, CrossCapGraph>) {
                return k.sheet * crosscap_graph_f(x, y);
            } else {
                return height_jet(x, y).v;
            }
        },
        kind_);
}

HeightJet GraphSurfaceSpec::height_jet(double x, double y) const {
    if (!contains(x, y)) {
        throw DomainViolation("height_jet: point " + point_text(x, y) + " outside the domain");
    }
    return std::visit(
        [&](const auto& k) -> HeightJet {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, MMCounterexample>) {
                const bool cusp = at_cusp(x, y);
                if (!cusp && !k.t.is_zero()) {
                    const double r = mm_radicand_raw(x, y);
                    if (r < -kClamp) {
                        throw NegativeRadicand("height_jet: negative radicand at " +
                                               point_text(x, y));
                    }
                }
                return mm_jet<double>(x, y, k.sheet * k.t.value(), !k.t.is_zero(), cusp);
            } else if constexpr (std::is_same_v<K, BaseG>) {
                return mm_jet<double>(x, y, 0.0, false, false);
            } else if constexpr (std::is_same_v<K, CrossCapGraph>) {
                const HeightJet f =
                    crosscap_jet(HeightJet::variable(x, 0), HeightJet::variable(y, 1));
                return k.sheet > 0 ? f : -f;
            } else {
                return k.height(HeightJet::variable(x, 0), HeightJet::variable(y, 1));
            }
        },
        kind_);
}

// --------------------------------------------------------------- curvature

namespace {

struct Radii {
    double r1;
    double r2;
};

// Principal radii from K and the oriented mean curvature H.
Radii radii_from(double K, double H) {
    const double disc = std::sqrt(std::max(H * H - K, 0.0));
    const double big = H >= 0.0 ? H + disc : H - disc;
    const double small = big != 0.0 ? K / big : 0.0;
    auto inv = [](double k) {
        return k != 0.0 ? 1.0 / k : std::numeric_limits<double>::infinity();
    };
    double a = inv(big);
    double b = inv(small);
    if (a > b) std::swap(a, b);
    return {a, b};
}

template <typename S>
Eigen::Matrix<S, 3, 1> normal_from_gradient(S p, S q, int sheet) {
    Eigen::Matrix<S, 3, 1> n(-p, -q, S(1));
    n /= n.norm();
    return sheet > 0 ? n : Eigen::Matrix<S, 3, 1>(-n);
}

}  // namespace

CurvatureSample graph_curvature(const GraphSurfaceSpec& spec, double x, double y) {
    const double dist = spec.domain_distance(x, y);
    if (!(dist > 0.0)) {
        throw DomainViolation("graph_curvature: point " + point_text(x, y) +
                              " is not strictly interior");
    }
    const HeightJet u = spec.height_jet(x, y);
    const int sheet = spec.sheet();
    const double p = u.g[0];
    const double q = u.g[1];
    const double r = u.hess(0, 0);
    const double s = u.hess(0, 1);
    const double t = u.hess(1, 1);

    CurvatureSample out;
    out.x = x;
    out.y = y;
    out.sheet = sheet;
    out.z = u.v;
    out.boundary_distance = dist;
    out.K_numerator = r * t - s * s;
    const double w2 = 1.0 + p * p + q * q;
    const double w = std::sqrt(w2);
    out.K = out.K_numerator / (w2 * w2);
    const double H = sheet * ((1.0 + q * q) * r - 2.0 * p * q * s + (1.0 + p * p) * t) / (2.0 * w2 * w);
    const Radii radii = radii_from(out.K, H);
    out.r1 = radii.r1;
    out.r2 = radii.r2;
    if (std::isfinite(p) && std::isfinite(q)) out.normal = normal_from_gradient(p, q, sheet);
    const bool finite = std::isfinite(u.v) && std::isfinite(p) && std::isfinite(q) &&
                        std::isfinite(r) && std::isfinite(s) && std::isfinite(t);
    out.near_singular = !finite || w > kSingularGradient;
    return out;
}

UnitVec3 gauss_map(const GraphSurfaceSpec& spec, double x, double y) {
    const HeightJet u = spec.height_jet(x, y);
    const double p = u.g[0];
    const double q = u.g[1];
    if (!std::isfinite(p) || !std::isfinite(q) || std::hypot(p, q) > 1e12) {
        throw NearSingular("gauss_map: gradient overflow at " + point_text(x, y));
    }
    return UnitVec3(normal_from_gradient(p, q, spec.sheet()));
}

double curvature_numerator_fd(const GraphSurfaceSpec& spec, double x, double y) {
    const double h = 1e-6 * std::max({1.0, std::abs(x), std::abs(y)});
    const HeightJet xp = spec.height_jet(x + h, y);
    const HeightJet xm = spec.height_jet(x - h, y);
    const HeightJet yp = spec.height_jet(x, y + h);
    const HeightJet ym = spec.height_jet(x, y - h);
    const double uxx = (xp.g[0] - xm.g[0]) / (2.0 * h);
    const double uyy = (yp.g[1] - ym.g[1]) / (2.0 * h);
    const double uxy = 0.5 * ((xp.g[1] - xm.g[1]) + (yp.g[0] - ym.g[0])) / (2.0 * h);
    return uxx * uyy - uxy * uxy;
}

// ------------------------------------------------------------------- scans

namespace {

struct PartialScan {
    std::size_t samples = 0;
    std::size_t near_singular = 0;
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();
    double min_r1 = std::numeric_limits<double>::infinity();
    double max_r1 = -std::numeric_limits<double>::infinity();
    double min_r2 = std::numeric_limits<double>::infinity();
    double max_r2 = -std::numeric_limits<double>::infinity();
    double max_reciprocal_error = 0.0;
    std::size_t violation_count = 0;
    std::vector<ScanSample> violations;
    std::vector<ScanSample> rows;
};

ScanSample to_row(const CurvatureSample& c) {
    ScanSample s;
    s.x = c.x;
    s.y = c.y;
    s.sheet = c.sheet;
    s.z = c.z;
    s.K = c.K;
    s.r1 = c.r1;
    s.r2 = c.r2;
    s.Rh = c.r1 * c.r2;
    s.boundary_distance = c.boundary_distance;
    return s;
}

bool row_less(const ScanSample& a, const ScanSample& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.sheet > b.sheet;
}

}  // namespace

ScanReport scan_surface(const GraphSurfaceSpec& spec, int n, double margin, double lo, double hi,
                        bool radii, const ScanOptions& opts) {
    if (n < 2) throw InvalidArgument("scan: resolution must be at least 2");
    const auto start = std::chrono::steady_clock::now();

    // The opposite sheet shares the domain; both are scanned when the spec
    // has two (the counterexample and the cross-cap).
    std::vector<GraphSurfaceSpec> sheets{spec};
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, MMCounterexample>) {
                sheets.push_back(GraphSurfaceSpec::counterexample(k.t, -k.sheet));
            } else if constexpr (std::is_same_v<K, CrossCapGraph>) {
                sheets.push_back(GraphSurfaceSpec::crosscap(-k.sheet));
            }
        },
        spec.kind());
    std::sort(sheets.begin(), sheets.end(),
              [](const auto& a, const auto& b) { return a.sheet() > b.sheet(); });

    auto coord = [&](int i) { return lo + (hi - lo) * static_cast<double>(i) / (n - 1); };

    const int workers = worker_count();
    std::vector<PartialScan> parts(static_cast<std::size_t>(workers));
    std::vector<std::size_t> chunk_of_row(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end, int w) {
        PartialScan& part = parts[static_cast<std::size_t>(w)];
        for (std::size_t i = begin; i < end; ++i) {
            const double x = coord(static_cast<int>(i));
            for (int j = 0; j < n; ++j) {
                const double y = coord(j);
                const double dist = spec.domain_distance(x, y);
                if (!(dist >= margin) || !(dist > 0.0)) continue;
                for (const auto& sh : sheets) {
                    const CurvatureSample c = graph_curvature(sh, x, y);
                    ++part.samples;
                    if (c.near_singular) ++part.near_singular;
                    const double rh = c.r1 * c.r2;
                    const double value = radii ? rh : c.K;
                    part.min_value = std::min(part.min_value, value);
                    part.max_value = std::max(part.max_value, value);
                    bool violation = false;
                    if (radii) {
                        part.min_r1 = std::min(part.min_r1, c.r1);
                        part.max_r1 = std::max(part.max_r1, c.r1);
                        part.min_r2 = std::min(part.min_r2, c.r2);
                        part.max_r2 = std::max(part.max_r2, c.r2);
                        if (c.K < 0.0 && !(c.r1 < 0.0 && 0.0 < c.r2)) violation = true;
                        if (c.K != 0.0 && std::isfinite(c.K)) {
                            const double err = std::abs(c.K * rh - 1.0);
                            part.max_reciprocal_error = std::max(part.max_reciprocal_error, err);
                            if (err > 1e-8) violation = true;
                        }
                        if (!std::isfinite(c.K)) violation = true;
                    } else {
                        violation = !(c.K < 0.0);
                    }
                    const ScanSample row = to_row(c);
                    if (violation) {
                        ++part.violation_count;
                        part.violations.push_back(row);
                    }
                    if (opts.keep_rows) part.rows.push_back(row);
                }
            }
        }
    });

    ScanReport rep;
    rep.quantity = radii ? "Rh" : "K";
    rep.resolution = n;
    rep.margin = margin;
    if (const auto* mm = std::get_if<MMCounterexample>(&spec.kind())) rep.t = mm->t.value();
    rep.has_radii = radii;
    rep.min_value = rep.min_r1 = rep.min_r2 = std::numeric_limits<double>::infinity();
    rep.max_value = rep.max_r1 = rep.max_r2 = -std::numeric_limits<double>::infinity();
    for (auto& part : parts) {
        rep.samples += part.samples;
        rep.near_singular += part.near_singular;
        rep.violation_count += part.violation_count;
        rep.min_value = std::min(rep.min_value, part.min_value);
        rep.max_value = std::max(rep.max_value, part.max_value);
        rep.min_r1 = std::min(rep.min_r1, part.min_r1);
        rep.max_r1 = std::max(rep.max_r1, part.max_r1);
        rep.min_r2 = std::min(rep.min_r2, part.min_r2);
        rep.max_r2 = std::max(rep.max_r2, part.max_r2);
        rep.max_reciprocal_error = std::max(rep.max_reciprocal_error, part.max_reciprocal_error);
        rep.violations.insert(rep.violations.end(), part.violations.begin(), part.violations.end());
        rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
    }
    std::sort(rep.violations.begin(), rep.violations.end(), row_less);
    if (rep.violations.size() > opts.violation_cap) rep.violations.resize(opts.violation_cap);
    std::sort(rep.rows.begin(), rep.rows.end(), row_less);
    if (rep.samples == 0) {
        rep.min_value = rep.max_value = 0.0;
        rep.min_r1 = rep.max_r1 = rep.min_r2 = rep.max_r2 = 0.0;
    }
    if (radii) {
        rep.min_Rh = rep.min_value;
        rep.max_Rh = rep.max_value;
    }
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

void check_scan_args(int n, double margin) {
    if (n < 16) throw InvalidArgument("scan: resolution must be at least 16");
    if (!(margin > 0.0 && margin < 1.0)) throw InvalidArgument("scan: margin must lie in (0, 1)");
}

}  // namespace

ScanReport curvature_scan(const ExactReal& t, int n, double margin, const ScanOptions& opts) {
    check_scan_args(n, margin);
    return scan_surface(GraphSurfaceSpec::counterexample(t, +1), n, margin, -1.0, 1.0, false, opts);
}

ScanReport curvature_scan(double t, int n, double margin, const ScanOptions& opts) {
    return curvature_scan(ExactReal::from_double(t), n, margin, opts);
}

ScanReport shape_radii_scan(const ExactReal& t, int n, double margin, const ScanOptions& opts) {
    check_scan_args(n, margin);
    return scan_surface(GraphSurfaceSpec::counterexample(t, +1), n, margin, -1.0, 1.0, true, opts);
}

ScanReport shape_radii_scan(double t, int n, double margin, const ScanOptions& opts) {
    return shape_radii_scan(ExactReal::from_double(t), n, margin, opts);
}

double convexify_radius(const ScanReport& scan) {
    if (scan.samples == 0) throw InvalidArgument("convexify_radius: empty scan");
    if (!scan.has_radii) throw InvalidArgument("convexify_radius: scan carries no radii");
    return std::max(0.0, -scan.min_r1);
}

ShiftedRadiiCheck shifted_radii_check(const ScanReport& scan, double radius) {
    if (!scan.has_radii || scan.rows.empty()) {
        throw InvalidArgument("shifted_radii_check: needs a radii scan with rows kept");
    }
    ShiftedRadiiCheck out;
    out.radius = radius;
    out.min_shifted_r1 = std::numeric_limits<double>::infinity();
    const long double big = radius;
    for (const ScanSample& s : scan.rows) {
        ++out.samples;
        if (!(s.r1 < 0.0 && 0.0 < s.r2)) ++out.not_hyperbolic;
        const long double a = static_cast<long double>(s.r1) + big;
        const long double b = static_cast<long double>(s.r2) + big;
        out.min_shifted_r1 = std::min(out.min_shifted_r1, static_cast<double>(a));
        const long double product = static_cast<long double>(s.r1) * s.r2;
        const long double back = (a - big) * (b - big);
        if (product != 0.0L) {
            out.max_identity_error =
                std::max(out.max_identity_error, static_cast<double>(std::abs(back - product) / std::abs(product)));
        }
    }
    return out;
}

std::vector<TSweepEntry> t_sweep(const std::vector<double>& ts, int n, double margin) {
    std::vector<TSweepEntry> out;
    ScanOptions opts;
    opts.violation_cap = 0;
    for (double t : ts) {
        const ScanReport rep = curvature_scan(t, n, margin, opts);
        out.push_back({t, rep.max_value, rep.violation_count});
    }
    return out;
}

// ------------------------------------------------------------ singular set

namespace {

// Neville extrapolation to h = 0 of samples (h_i, v_i).
Vec3 extrapolate_to_zero(const std::vector<double>& h, std::vector<Vec3> v) {
    const std::size_t m = v.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            const double a = h[i];
            const double b = h[i + level];
            v[i] = (b * v[i] - a * v[i + 1]) / (b - a);
        }
    }
    return v.front();
}

Vec2 boundary_point(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {std::copysign(std::pow(std::abs(c), 2.5), c), std::copysign(std::pow(std::abs(s), 2.5), s)};
}

// Inward unit normal of the level set of |x|^(4/5) + |y|^(4/5) at angle θ.
Vec2 inward_normal(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Vec2 g(std::copysign(std::sqrt(std::abs(s)), c), std::copysign(std::sqrt(std::abs(c)), s));
    return -g.normalized();
}

}  // namespace

SingularSetReport singular_set_check(const ExactReal& t, int n_boundary) {
    if (n_boundary < 8) throw InvalidArgument("singular_set_check: need at least 8 samples");
    static constexpr std::array<double, 5> kLevels{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    SingularSetReport rep;
    rep.t = t.value();
    rep.n_boundary = n_boundary;
    double sum = 0.0;
    std::size_t count = 0;
    std::vector<double> equator;
    for (int k = 0; k < n_boundary; ++k) {
        const double theta = 2.0 * std::numbers::pi * (k + 0.5) / n_boundary;
        const Vec2 b = boundary_point(theta);
        const Vec2 nu = inward_normal(theta);
        for (int sheet : {+1, -1}) {
            const GraphSurfaceSpec spec = GraphSurfaceSpec::counterexample(t, sheet);
            std::vector<double> hs;
            std::vector<Vec3> normals;
            for (double d : kLevels) {
                const Vec2 p = b + d * nu;
                if (!(boundary_distance(p.x(), p.y()) > 0.0)) continue;
                try {
                    normals.push_back(gauss_map(spec, p.x(), p.y()).vec());
                    hs.push_back(std::sqrt(d));
                } catch (const NearSingular&) {
                }
            }
            BoundaryLimit lim;
            lim.theta = theta;
            lim.point = b;
            lim.sheet = sheet;
            lim.used_levels = static_cast<int>(normals.size());
            if (normals.empty()) {
                rep.limits.push_back(lim);
                continue;
            }
            Vec3 n = extrapolate_to_zero(hs, normals);
            if (n.norm() == 0.0) n = normals.back();
            n.normalize();
            lim.normal = n;
            lim.semicircle_distance = singular_set_distance(UnitVec3(n));
            const Vec3 horizontal(nu.x(), nu.y(), 0.0);
            const double eq = std::min(angle_between(n, horizontal), angle_between(n, -horizontal));
            rep.max_distance = std::max(rep.max_distance, lim.semicircle_distance);
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(n.z()));
            rep.max_equator_error = std::max(rep.max_equator_error, eq);
            equator.push_back(eq);
            sum += lim.semicircle_distance;
            ++count;
            rep.limits.push_back(lim);
        }
    }
    rep.mean_distance = count ? sum / static_cast<double>(count) : 0.0;
    if (!equator.empty()) {
        const auto mid = equator.begin() + static_cast<std::ptrdiff_t>(equator.size() / 2);
        std::nth_element(equator.begin(), mid, equator.end());
        rep.median_equator_error = *mid;
    }
    return rep;
}

SingularSetReport singular_set_check(double t, int n_boundary) {
    return singular_set_check(ExactReal::from_double(t), n_boundary);
}

Vec2 cusp_point(int cusp_index) {
    switch (cusp_index & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

UnitVec3 cusp_normal(int cusp_index, int sheet) {
    require_sheet(sheet);
    // ∇g at (±1, 0) is (±4/3, 0); at (0, ±1) it is (0, ∓4/3).
    const Vec2 c = cusp_point(cusp_index);
    const Vec2 grad(4.0 / 3.0 * c.x(), -4.0 / 3.0 * c.y());
    return UnitVec3(normal_from_gradient(grad.x(), grad.y(), sheet));
}

CuspFanReport cusp_fan_check(const ExactReal& t, int n_sweep, const std::vector<double>& gaps) {
    using LD = long double;
    if (n_sweep < 2) throw InvalidArgument("cusp_fan_check: need at least 2 sweep points");
    if (gaps.empty()) throw InvalidArgument("cusp_fan_check: no gaps");
    CuspFanReport rep;
    rep.t = t.value();
    const LD tl = static_cast<LD>(t.value());

    for (int ci = 0; ci < 4; ++ci) {
        for (int sheet : {+1, -1}) {
            const UnitVec3 n = gauss_map(GraphSurfaceSpec::counterexample(t, sheet),
                                         cusp_point(ci).x(), cusp_point(ci).y());
            rep.cusp_normal_error =
                std::max(rep.cusp_normal_error, angle_between(n.vec(), cusp_normal(ci, sheet).vec()));
        }
    }

    // Sweep parameter c ∈ (-1, 1), clustered at ±1 where the fan reaches
    // the equator: 1 - |c| = 10^(-s), s up to 12.
    std::vector<LD> sweep;
    const int half = n_sweep / 2;
    for (int k = 0; k < half; ++k) {
        const LD s = 12.0L * static_cast<LD>(k) / static_cast<LD>(std::max(1, half - 1));
        const LD c = 1.0L - std::pow(10.0L, -s);
        sweep.push_back(c);
        sweep.push_back(-c);
    }

    for (double gap : gaps) {
        CuspFanLevel level;
        level.gap = gap;
        level.min_abs_z = std::numeric_limits<double>::infinity();
        const LD along = 1.0L - static_cast<LD>(gap);
        const LD w = -std::expm1(0.8L * std::log1p(-static_cast<LD>(gap)));
        const LD half_width = std::pow(w, 1.25L);
        for (int ci = 0; ci < 4; ++ci) {
            const Vec2 e = cusp_point(ci);
            const Vec2 perp(-e.y(), e.x());
            for (LD c : sweep) {
                const LD x = along * e.x() + c * half_width * perp.x();
                const LD y = along * e.y() + c * half_width * perp.y();
                for (int sheet : {+1, -1}) {
                    const Jet<LD, 2> u = mm_jet<LD>(x, y, sheet * tl, tl != 0.0L, false);
                    const auto nl = normal_from_gradient<LD>(u.g[0], u.g[1], sheet);
                    if (!std::isfinite(static_cast<double>(nl.z()))) continue;
                    const Vec3 nd(static_cast<double>(nl.x()), static_cast<double>(nl.y()),
                                  static_cast<double>(nl.z()));
                    const double d = singular_set_distance(UnitVec3(nd));
                    level.max_distance = std::max(level.max_distance, d);
                    level.min_abs_z = std::min(level.min_abs_z, std::abs(nd.z()));
                    level.max_abs_z = std::max(level.max_abs_z, std::abs(nd.z()));
                }
            }
        }
        rep.levels.push_back(level);
    }

    if (rep.levels.size() >= 2) {
        const auto& a = rep.levels[rep.levels.size() - 2];
        const auto& b = rep.levels.back();
        const double ha = std::pow(a.gap, 0.25);
        const double hb = std::pow(b.gap, 0.25);
        rep.extrapolated_distance = std::abs((ha * b.max_distance - hb * a.max_distance) / (ha - hb));
    } else {
        rep.extrapolated_distance = rep.levels.back().max_distance;
    }
    return rep;
}

// ---------------------------------------------------------------- cross-cap

Vec3 crosscap_point(double u, double v) {
    const double r4 = sqr(u * u + v * v);
    return {r4 * u, r4, r4 * u * v};
}

double crosscap_identity_residual(const Vec3& p, CrossCapVariant variant) {
    const double x = p.x();
    const double y = p.y();
    const double z = p.z();
    const double x4 = sqr(sqr(x));
    const double y5 = sqr(sqr(y)) * y;
    const double lhs = (variant == CrossCapVariant::X4Y5 ? x4 : x4 * x) * y5;
    const double rhs = sqr(x4 + y * y * z * z);
    return (lhs - rhs) / std::max(1.0, std::abs(x4 * y5));
}

double crosscap_residual(double u, double v, CrossCapVariant variant) {
    return crosscap_identity_residual(crosscap_point(u, v), variant);
}

double crosscap_graph_f(double x, double y) {
    if (!(y > 0.0)) throw DomainViolation("crosscap_graph_f: needs y > 0");
    const double gap = std::pow(y, 2.5) - x * x;
    if (gap < -kDomainSlack * std::max(1.0, x * x)) {
        throw DomainViolation("crosscap_graph_f: x² exceeds y^(5/2) at " + point_text(x, y));
    }
    return x / y * std::sqrt(std::max(gap, 0.0));
}

}  // namespace hhk
