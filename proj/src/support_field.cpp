#include "hhk/support_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hhk/errors.hpp"
#include "hhk/jet.hpp"
#include "hhk/sym_eigen.hpp"

namespace hhk {

namespace {

struct ConstantNode {
    double r;
};
struct LinearNode {
    Vec3 c;
};
struct OffsetNode {
    SupportField base;
    double offset;
};
struct SumNode {
    std::vector<SupportField> terms;
};
struct TrigNode {
    std::vector<Monomial> terms;
};
struct CustomNode {
    CustomSupport support;
};

using J3 = Jet<double, 3>;

J3 ipow(const J3& x, int k) {
    J3 r(1.0);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
}

PhiJet from_jet(const J3& j) {
    PhiJet out;
    out.value = j.v;
    for (int i = 0; i < 3; ++i) {
        out.grad[i] = j.g[static_cast<std::size_t>(i)];
        for (int k = 0; k < 3; ++k) out.hess(i, k) = j.hess(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    }
    return out;
}

PhiJet trig_jet(const TrigNode& node, const Vec3& u) {
    const J3 x = J3::variable(u.x(), 0);
    const J3 y = J3::variable(u.y(), 1);
    const J3 z = J3::variable(u.z(), 2);
    const J3 norm = sqrt(sqr(x) + sqr(y) + sqr(z));
    const J3 inv = reciprocal(norm);
    const J3 px = x * inv;
    const J3 py = y * inv;
    const J3 pz = z * inv;
    J3 poly(0.0);
    for (const Monomial& m : node.terms) {
        poly = poly + m.coef * (ipow(px, m.a) * ipow(py, m.b) * ipow(pz, m.c));
    }
    return from_jet(norm * poly);
}

double custom_phi(const CustomNode& node, const Vec3& u) {
    const double n = u.norm();
    return n * node.support.h(u / n);
}

}  // namespace

struct SupportField::Node {
    std::variant<ConstantNode, LinearNode, OffsetNode, SumNode, TrigNode, CustomNode> data;
};

SupportField SupportField::constant(double r) {
    return SupportField(std::make_shared<const Node>(Node{ConstantNode{r}}));
}

SupportField SupportField::linear(const Vec3& c) {
    return SupportField(std::make_shared<const Node>(Node{LinearNode{c}}));
}

SupportField SupportField::sphere_offset(const SupportField& base, double offset) {
    return SupportField(std::make_shared<const Node>(Node{OffsetNode{base, offset}}));
}

SupportField SupportField::sum(std::vector<SupportField> terms) {
    if (terms.empty()) throw InvalidArgument("SupportField::sum: no terms");
    return SupportField(std::make_shared<const Node>(Node{SumNode{std::move(terms)}}));
}

SupportField SupportField::trig_polynomial(std::vector<Monomial> terms) {
    for (const Monomial& m : terms) {
        if (m.a < 0 || m.b < 0 || m.c < 0) {
            throw InvalidArgument("trig_polynomial: negative exponent");
        }
    }
    return SupportField(std::make_shared<const Node>(Node{TrigNode{std::move(terms)}}));
}

SupportField SupportField::custom(CustomSupport support) {
    if (!support.h) throw InvalidArgument("custom support field needs h");
    return SupportField(std::make_shared<const Node>(Node{CustomNode{std::move(support)}}));
}

FieldKind SupportField::kind() const {
    switch (node_->data.index()) {
        case 0: return FieldKind::Constant;
        case 1: return FieldKind::Linear;
        case 2: return FieldKind::SphereOffset;
        case 3: return FieldKind::Sum;
        case 4: return FieldKind::TrigPolynomial;
        default: return FieldKind::Custom;
    }
}

bool SupportField::analytic() const {
    return std::visit(
        [](const auto& n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, OffsetNode>) {
                return n.base.analytic();
            } else if constexpr (std::is_same_v<N, SumNode>) {
                return std::all_of(n.terms.begin(), n.terms.end(),
                                   [](const SupportField& f) { return f.analytic(); });
            } else if constexpr (std::is_same_v<N, CustomNode>) {
                return static_cast<bool>(n.support.grad_phi) && static_cast<bool>(n.support.hess_phi);
            } else {
                return true;
            }
        },
        node_->data);
}

double SupportField::constant_value() const {
    if (const auto* c = std::get_if<ConstantNode>(&node_->data)) return c->r;
    if (const auto* o = std::get_if<OffsetNode>(&node_->data)) return o->offset;
    throw InvalidArgument("constant_value: field is neither Constant nor SphereOffset");
}

const Vec3& SupportField::linear_vector() const {
    if (const auto* l = std::get_if<LinearNode>(&node_->data)) return l->c;
    throw InvalidArgument("linear_vector: field is not Linear");
}

double SupportField::phi(const Vec3& u) const {
    return std::visit(
        [&](const auto& n) -> double {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, ConstantNode>) {
                return n.r * u.norm();
            } else if constexpr (std::is_same_v<N, LinearNode>) {
                return n.c.dot(u);
            } else if constexpr (std::is_same_v<N, OffsetNode>) {
                return n.base.phi(u) + n.offset * u.norm();
            } else if constexpr (std::is_same_v<N, SumNode>) {
                double s = 0.0;
                for (const SupportField& f : n.terms) s += f.phi(u);
                return s;
            } else if constexpr (std::is_same_v<N, TrigNode>) {
                return trig_jet(n, u).value;
            } else {
                return custom_phi(n, u);
            }
        },
        node_->data);
}

namespace {

PhiJet sphere_jet(double r, const Vec3& u) {
    const double n = u.norm();
    const Vec3 p = u / n;
    PhiJet j;
    j.value = r * n;
    j.grad = r * p;
    j.hess = (r / n) * (Mat3::Identity() - p * p.transpose());
    return j;
}

}  // namespace

PhiJet SupportField::jet(const Vec3& u) const {
    if (!(u.norm() > 0.0)) throw InvalidArgument("phi is undefined at the origin");
    return std::visit(
        [&](const auto& n) -> PhiJet {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, ConstantNode>) {
                return sphere_jet(n.r, u);
            } else if constexpr (std::is_same_v<N, LinearNode>) {
                PhiJet j;
                j.value = n.c.dot(u);
                j.grad = n.c;
                return j;
            } else if constexpr (std::is_same_v<N, OffsetNode>) {
                PhiJet j = n.base.jet(u);
                const PhiJet s = sphere_jet(n.offset, u);
                j.value += s.value;
                j.grad += s.grad;
                j.hess += s.hess;
                return j;
            } else if constexpr (std::is_same_v<N, SumNode>) {
                PhiJet j;
                for (const SupportField& f : n.terms) {
                    const PhiJet t = f.jet(u);
                    j.value += t.value;
                    j.grad += t.grad;
                    j.hess += t.hess;
                }
                return j;
            } else if constexpr (std::is_same_v<N, TrigNode>) {
                return trig_jet(n, u);
            } else {
                const auto phi_fn = [&n](const Vec3& v) { return custom_phi(n, v); };
                PhiJet j;
                j.value = phi_fn(u);
                j.grad = n.support.grad_phi ? n.support.grad_phi(u) : fd_gradient(phi_fn, u);
                if (n.support.hess_phi) {
                    j.hess = n.support.hess_phi(u);
                } else {
                    // Hess phi(u)·u = 0 exactly; projecting removes the normal
                    // component of the difference-quotient noise.
                    const Vec3 p = u.normalized();
                    const Mat3 proj = Mat3::Identity() - p * p.transpose();
                    j.hess = proj * fd_hessian(phi_fn, u) * proj;
                }
                return j;
            }
        },
        node_->data);
}

Vec3 fd_gradient(const std::function<double(const Vec3&)>& phi, const Vec3& u) {
    const double step = 1e-5 * std::max(1.0, u.norm());
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        Vec3 a = u;
        Vec3 b = u;
        a[i] += step;
        b[i] -= step;
        g[i] = (phi(a) - phi(b)) / (2.0 * step);
    }
    return g;
}

Mat3 fd_hessian(const std::function<double(const Vec3&)>& phi, const Vec3& u) {
    const double step = 1e-4 * std::max(1.0, u.norm());
    Mat3 h;
    const double f0 = phi(u);
    for (int i = 0; i < 3; ++i) {
        Vec3 a = u;
        Vec3 b = u;
        a[i] += step;
        b[i] -= step;
        h(i, i) = (phi(a) - 2.0 * f0 + phi(b)) / (step * step);
        for (int k = i + 1; k < 3; ++k) {
            Vec3 pp = u, pm = u, mp = u, mm = u;
            pp[i] += step; pp[k] += step;
            pm[i] += step; pm[k] -= step;
            mp[i] -= step; mp[k] += step;
            mm[i] -= step; mm[k] -= step;
            h(i, k) = h(k, i) = (phi(pp) - phi(pm) - phi(mp) + phi(mm)) / (4.0 * step * step);
        }
    }
    return h;
}

double eval_support(const SupportField& field, const UnitVec3& p) { return field.phi(p.vec()); }

Vec3 hedgehog_point(const SupportField& field, const UnitVec3& p) { return field.jet(p.vec()).grad; }

namespace {

// Hess phi restricted to the tangent plane of p, symmetrised.
struct TangentHessian {
    double a11 = 0.0;
    double a22 = 0.0;
    double a12 = 0.0;
};

TangentHessian tangent_hessian(const Mat3& hess, const UnitVec3& p) {
    const TangentBasis b = tangent_basis(p);
    const Vec3& e1 = b.e1.vec();
    const Vec3& e2 = b.e2.vec();
    return {e1.dot(hess * e1), e2.dot(hess * e2), 0.5 * (e1.dot(hess * e2) + e2.dot(hess * e1))};
}

}  // namespace

HedgehogJet hedgehog_jet(const SupportField& field, const UnitVec3& p) {
    const PhiJet j = field.jet(p.vec());
    // The full spectrum must contain a zero along p; the radii themselves come
    // from the tangent block, which stays accurate when they coincide.
    const std::array<double, 3> ev = symmetric_eigenvalues(j.hess);
    const double smallest = std::min({std::abs(ev[0]), std::abs(ev[1]), std::abs(ev[2])});
    const double tol = 1e-6 * std::max({1.0, std::abs(ev[0]), std::abs(ev[2])});
    if (smallest > tol) {
        std::ostringstream msg;
        msg << "Hess phi has no zero eigenvalue along p (smallest |lambda| = " << smallest << ")";
        throw EulerViolation(msg.str());
    }
    const TangentHessian t = tangent_hessian(j.hess, p);
    const double mean = 0.5 * (t.a11 + t.a22);
    const double half_gap = std::hypot(0.5 * (t.a11 - t.a22), t.a12);
    HedgehogJet out;
    out.p = p;
    out.x = j.grad;
    out.r1 = mean - half_gap;
    out.r2 = mean + half_gap;
    out.curvature = t.a11 * t.a22 - t.a12 * t.a12;
    out.mean_radius = mean;
    return out;
}

double curvature_function(const SupportField& field, const UnitVec3& p) {
    const PhiJet j = field.jet(p.vec());
    const TangentHessian t = tangent_hessian(j.hess, p);
    // Same contract as hedgehog_jet: reject fields whose Hessian is not
    // degenerate along p.
    const double along = p.vec().dot(j.hess * p.vec());
    const double scale = std::max({1.0, std::abs(t.a11), std::abs(t.a22), std::abs(t.a12)});
    if (std::abs(along) > 1e-6 * scale) {
        throw EulerViolation("Hess phi is not degenerate along p");
    }
    return t.a11 * t.a22 - t.a12 * t.a12;
}

SupportField add_ball(const SupportField& field, double radius) {
    switch (field.kind()) {
        case FieldKind::Constant:
            return SupportField::constant(field.constant_value() + radius);
        default:
            return SupportField::sphere_offset(field, radius);
    }
}

std::vector<ExtremePoint> extreme_points(const SupportField& field, const UnitVec3& n,
                                         const SphericalGrid& grid) {
    if (grid.points.empty()) throw InvalidArgument("extreme_points: empty grid");
    std::vector<double> heights;
    heights.reserve(grid.points.size());
    double best = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (const UnitVec3& p : grid.points) {
        const double v = hedgehog_point(field, p).dot(n.vec());
        heights.push_back(v);
        best = std::max(best, v);
        scale = std::max(scale, std::abs(v));
    }
    std::vector<ExtremePoint> out;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        if (heights[i] >= best - 1e-9 * scale) out.push_back({grid.points[i], heights[i]});
    }
    return out;
}

}  // namespace hhk
