#include "hhk/projection_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hhk/errors.hpp"
#include "hhk/jet.hpp"

namespace hhk {

PlanarHedgehog PlanarHedgehog::constant(double r) { return PlanarHedgehog(ConstantData{r}); }

PlanarHedgehog PlanarHedgehog::harmonics(double a0, std::vector<Harmonic> terms) {
    return PlanarHedgehog(HarmonicData{a0, std::move(terms)});
}

PlanarHedgehog PlanarHedgehog::quartic_boundary() { return PlanarHedgehog(QuarticData{}); }

PlanarHedgehog PlanarHedgehog::restriction(const SupportField& field, const UnitVec3& n) {
    PlanarHedgehog ph(RestrictionData{field});
    const TangentBasis b = tangent_basis(n);
    ph.e1_ = b.e1.vec();
    ph.e2_ = b.e2.vec();
    return ph;
}

PlanarHedgehog restrict_to_circle(const SupportField& field, const UnitVec3& n) {
    return PlanarHedgehog::restriction(field, n);
}

namespace {

// For a 1-homogeneous psi on the plane: h = psi(p), h' = <grad psi, t>,
// h'' = t^T Hess psi t - psi (Euler relation along p).
SupportJet1 from_homogeneous(double value, const Vec2& grad, const Eigen::Matrix2d& hess, double theta) {
    const Vec2 t(-std::sin(theta), std::cos(theta));
    return {value, grad.dot(t), t.dot(hess * t) - value};
}

SupportJet1 quartic_jet(double theta) {
    using J2 = Jet<double, 2>;
    const J2 u = J2::variable(std::cos(theta), 0);
    const J2 v = J2::variable(std::sin(theta), 1);
    const J2 quart = sqr(sqr(u)) + sqr(sqr(v));
    const J2 psi = u * v * reciprocal(sqrt(sqrt(quart)));
    Eigen::Matrix2d hess;
    hess << psi.hess(0, 0), psi.hess(0, 1), psi.hess(1, 0), psi.hess(1, 1);
    return from_homogeneous(psi.v, Vec2(psi.g[0], psi.g[1]), hess, theta);
}

}  // namespace

SupportJet1 PlanarHedgehog::eval(double theta) const {
    return std::visit(
        [&](const auto& d) -> SupportJet1 {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, ConstantData>) {
                return {d.r, 0.0, 0.0};
            } else if constexpr (std::is_same_v<D, HarmonicData>) {
                SupportJet1 j{d.a0, 0.0, 0.0};
                for (const Harmonic& term : d.terms) {
                    const double k = term.k;
                    const double c = std::cos(k * theta);
                    const double s = std::sin(k * theta);
                    j.h += term.a * c + term.b * s;
                    j.dh += k * (-term.a * s + term.b * c);
                    j.d2h += -k * k * (term.a * c + term.b * s);
                }
                return j;
            } else if constexpr (std::is_same_v<D, QuarticData>) {
                return quartic_jet(theta);
            } else {
                const Vec3 q = std::cos(theta) * e1_ + std::sin(theta) * e2_;
                const Vec3 t = -std::sin(theta) * e1_ + std::cos(theta) * e2_;
                const PhiJet j = d.field.jet(q);
                return {j.value, j.grad.dot(t), t.dot(j.hess * t) - j.value};
            }
        },
        *data_);
}

Vec2 planar_point(const PlanarHedgehog& ph, double theta) {
    const SupportJet1 j = ph.eval(theta);
    const Vec2 p(std::cos(theta), std::sin(theta));
    const Vec2 t(-std::sin(theta), std::cos(theta));
    return j.dh * t + j.h * p;
}

double planar_radius(const PlanarHedgehog& ph, double theta) {
    const SupportJet1 j = ph.eval(theta);
    return j.d2h + j.h;
}

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

struct CurveSample {
    double theta;
    Vec2 point;
};

struct Curve {
    const PlanarHedgehog* ph;
    std::vector<CurveSample> samples;
    double scale = 1.0;

    Vec2 at(double theta) const { return planar_point(*ph, theta); }
    Vec2 velocity(double theta) const {
        return planar_radius(*ph, theta) * Vec2(-std::sin(theta), std::cos(theta));
    }
};

Curve sample_curve(const PlanarHedgehog& ph, int n) {
    Curve c{&ph, {}, 1.0};
    c.samples.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / n;
        const Vec2 pt = i == n ? c.samples.front().point : planar_point(ph, theta);
        c.samples.push_back({theta, pt});
        c.scale = std::max(c.scale, pt.norm());
    }
    return c;
}

double distance_to_curve(const Curve& c, const Vec2& x) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
        const double d = (c.samples[i].point - x).norm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    // Golden-section refinement on the two adjacent cells.
    const double step = c.samples[1].theta - c.samples[0].theta;
    double a = c.samples[best].theta - step;
    double b = c.samples[best].theta + step;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = (c.at(x1) - x).norm();
    double f2 = (c.at(x2) - x).norm();
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = (c.at(x1) - x).norm();
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = (c.at(x2) - x).norm();
        }
    }
    return std::min({best_d, f1, f2});
}

struct RayCount {
    int index = 0;
    int crossings = 0;
    bool degenerate = false;
};

RayCount count_ray(const Curve& c, const Vec2& x, const Vec2& d, double theta_tol) {
    RayCount rc;
    const double tiny = 1e-9 * c.scale;
    const std::size_t n = c.samples.size() - 1;
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = cross2(d, c.samples[i].point - x);

    for (std::size_t i = 0; i < n; ++i) {
        const double g0 = g[i];
        const double g1 = g[i + 1];
        const bool change = (g0 < 0.0 && g1 > 0.0) || (g0 > 0.0 && g1 < 0.0);
        if (!change) {
            // A sample on the ray's line, or a dip towards it without a sign
            // change, means the ray grazes the curve.
            if (std::abs(g0) <= tiny && (c.samples[i].point - x).dot(d) > 0.0) rc.degenerate = true;
            continue;
        }
        double lo = c.samples[i].theta;
        double hi = c.samples[i + 1].theta;
        double glo = g0;
        while (hi - lo > theta_tol) {
            const double mid = 0.5 * (lo + hi);
            const double gm = cross2(d, c.at(mid) - x);
            if ((gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        const double root = 0.5 * (lo + hi);
        const Vec2 rel = c.at(root) - x;
        if (rel.dot(d) <= 0.0) continue;
        const double speed = cross2(d, c.velocity(root));
        if (std::abs(speed) <= 1e-9 * c.scale) {
            rc.degenerate = true;
            continue;
        }
        rc.index += speed > 0.0 ? 1 : -1;
        ++rc.crossings;
    }
    // Near-miss detection: local minima of |g| close to zero on the ray side.
    const double near = 1e-6 * c.scale;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(g[i]) < near && std::abs(g[i]) <= std::abs(g[i - 1]) &&
            std::abs(g[i]) <= std::abs(g[i + 1]) && (g[i - 1] < 0.0) == (g[i + 1] < 0.0) &&
            (c.samples[i].point - x).dot(d) > 0.0) {
            rc.degenerate = true;
        }
    }
    return rc;
}

Vec2 direction_at(int k) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double angle = 0.3 + k * golden;
    return {std::cos(angle), std::sin(angle)};
}

// First non-degenerate direction in the retry sequence.
bool choose_direction(const Curve& c, const Vec2& x, const IndexOptions& opts, Vec2& dir,
                      RayCount& out) {
    for (int k = 0; k < opts.max_directions; ++k) {
        const Vec2 d = direction_at(k);
        const RayCount rc = count_ray(c, x, d, opts.theta_tol);
        if (!rc.degenerate) {
            dir = d;
            out = rc;
            return true;
        }
    }
    return false;
}

}  // namespace

IndexResult ray_index(const PlanarHedgehog& ph, const Vec2& x, const IndexOptions& opts) {
    if (opts.n_samples < 16) throw InvalidArgument("ray_index: need at least 16 samples");
    const Curve c = sample_curve(ph, opts.n_samples);
    const double dist = distance_to_curve(c, x);
    if (dist <= 1e-9 * c.scale) {
        std::ostringstream msg;
        msg << "ray_index: point (" << x.x() << ", " << x.y() << ") lies on the curve";
        throw OnCurve(msg.str());
    }

    IndexResult result;
    result.x = x;
    RayCount rc;
    if (!choose_direction(c, x, opts, result.direction, rc)) {
        throw DegenerateRay("ray_index: every candidate ray direction is degenerate");
    }
    result.index = rc.index;
    result.crossings = rc.crossings;

    // Stability under a small rotation of the ray.
    const double eps = 1e-3;
    const Vec2 rotated(std::cos(eps) * result.direction.x() - std::sin(eps) * result.direction.y(),
                       std::sin(eps) * result.direction.x() + std::cos(eps) * result.direction.y());
    const RayCount again = count_ray(c, x, rotated, opts.theta_tol);
    if (again.degenerate || again.index != rc.index) result.degenerate = true;

    // Regular-value check: the index is locally constant off the curve.
    if (dist > 10.0 * opts.perturbation) {
        const Vec2 shifts[4] = {{opts.perturbation, 0.0}, {-opts.perturbation, 0.0},
                                {0.0, opts.perturbation}, {0.0, -opts.perturbation}};
        for (const Vec2& s : shifts) {
            Vec2 d;
            RayCount moved;
            if (!choose_direction(c, x + s, opts, d, moved) || moved.index != rc.index) {
                result.degenerate = true;
            }
        }
    } else {
        result.degenerate = true;
    }
    return result;
}

namespace {

struct Frame {
    Vec3 a1;
    Vec3 a2;
};

Vec2 projected_residual(const PhiJet& j, const Frame& f, const Vec2& x) {
    return {j.grad.dot(f.a1) - x.x(), j.grad.dot(f.a2) - x.y()};
}

}  // namespace

ProjectionCounts projection_counts(const SupportField& field, const UnitVec3& n, const Vec2& x,
                               const SphericalGrid& grid) {
    if (grid.points.empty()) throw InvalidArgument("projection_counts: empty grid");
    const TangentBasis nb = tangent_basis(n);
    const Frame frame{nb.e1.vec(), nb.e2.vec()};

    double scale = std::max(1.0, x.norm());
    for (const UnitVec3& p : grid.points) scale = std::max(scale, hedgehog_point(field, p).norm());
    const double ftol = 1e-12 * scale;

    ProjectionCounts out;
    for (const UnitVec3& seed : grid.points) {
        if (seed.dot(n.vec()) < -1e-12) continue;
        Vec3 p = seed.vec();
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const PhiJet j = field.jet(p);
            const Vec2 r = projected_residual(j, frame, x);
            if (r.norm() <= ftol) {
                converged = true;
                break;
            }
            const TangentBasis pb = tangent_basis(UnitVec3(p));
            const Vec3 hb1 = j.hess * pb.e1.vec();
            const Vec3 hb2 = j.hess * pb.e2.vec();
            Eigen::Matrix2d jac;
            jac << frame.a1.dot(hb1), frame.a1.dot(hb2), frame.a2.dot(hb1), frame.a2.dot(hb2);
            const double det = jac.determinant();
            if (!(std::abs(det) > 1e-300)) break;
            Vec2 delta = -jac.inverse() * r;
            const double len = delta.norm();
            if (len > 0.5) delta *= 0.5 / len;
            p = (p + delta.x() * pb.e1.vec() + delta.y() * pb.e2.vec()).normalized();
        }
        if (!converged || p.dot(n.vec()) < -1e-12) continue;
        const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(),
                                      [&](const UnitVec3& q) { return angle_between(q.vec(), p) < 1e-7; });
        if (seen) continue;
        const UnitVec3 sol(p);
        const double rh = curvature_function(field, sol);
        if (std::abs(rh) < 1e-10) {
            throw ParabolicAmbiguity("projection_counts: solution with vanishing curvature function; "
                                     "x is not a regular value");
        }
        out.solutions.push_back(sol);
        if (rh > 0.0) {
            ++out.elliptic;
        } else {
            ++out.hyperbolic;
        }
    }
    return out;
}

}  // namespace hhk
