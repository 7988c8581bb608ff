#include "hhk/certify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "hhk/errors.hpp"
#include "hhk/graph_surface.hpp"
#include "hhk/mm_surface.hpp"
#include "hhk/parallel.hpp"

namespace hhk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using DI = Dual<Interval, 2>;
using JI = Jet<Interval, 2>;
using JDI = Jet<DI, 2>;

Interval boundary_enclosure(const Interval& x, const Interval& y) {
    return Interval(1.0) - pow_abs(x, 0.8) - pow_abs(y, 0.8);
}

// |x| <= (1 - margin - min|y|^(4/5))^(5/4) on the region; shrink x and y.
bool contract(IntervalBox& b, double margin) {
    for (int round = 0; round < 2; ++round) {
        for (int axis = 0; axis < 2; ++axis) {
            Interval& self = axis == 0 ? b.x : b.y;
            const Interval& other = axis == 0 ? b.y : b.x;
            const double room = (Interval(1.0) - Interval(margin) - pow_abs(other, 0.8)).hi();
            if (room < 0.0) return false;
            const double reach = pow_nonneg(Interval(room), 1.25).hi();
            self = intersect(self, Interval(-reach, reach));
            if (self.is_empty()) return false;
        }
    }
    return true;
}

Interval sheet_coef(const CertExpr& e, int sheet) {
    return e.t.enclosure() * Interval(static_cast<double>(sheet));
}

Interval radicand_natural(const Interval& x, const Interval& y) { return mm_radicand_expr(x, y); }

// With s = |x|^(4/5), w = |y|^(4/5):
//   Q⁵ - 625 x⁴y⁴ S = (1 - s - w) F1 F2 F3 F4 F5 F6
// for the six quartics below, so rad = (1 - s - w) ΠF / (Q^(5/2) + 25x²y²√S)
// and the factor 1 - s - w is exactly the region functional.
template <typename T>
std::array<T, 6> radicand_quartics(const T& s, const T& w) {
    const T one(1.0);
    const T w2 = sqr(w);
    const T w3 = w2 * w;
    const T w4 = sqr(w2);
    const T tail = w4 + w3 + w2 + w + one;
    auto horner = [&](const T& c3, const T& c2, const T& c1, const T& c0) {
        return (((s + c3) * s + c2) * s + c1) * s + c0;
    };
    return {
        horner(-w - T(4.0), w2 + T(3.0) * w + T(6.0), -w3 - T(2.0) * w2 - T(3.0) * w - T(4.0), tail),
        horner(one - w, w2 - T(2.0) * w + one, -w3 - T(2.0) * w2 - T(3.0) * w + one, tail),
        horner(one - w, w2 - T(2.0) * w + one, -w3 + T(3.0) * w2 - T(3.0) * w + one,
               w4 - T(4.0) * w3 + T(6.0) * w2 - T(4.0) * w + one),
        horner(one - w, w2 - T(2.0) * w + one, -w3 + T(3.0) * w2 + T(2.0) * w + one, tail),
        horner(one - w, w2 + T(3.0) * w + one, -w3 - T(2.0) * w2 + T(2.0) * w + one, tail),
        horner(T(4.0) * w + one, T(6.0) * w2 + T(3.0) * w + one,
               T(4.0) * w3 + T(3.0) * w2 + T(2.0) * w + one, tail),
    };
}

// p⁴ + p³w + p²w² + pw³ + w⁴: the quartic vanishing at a cusp, written with
// nonnegative coefficients so its enclosure over p, w >= 0 is the exact range.
Interval corner_quartic(const Interval& p, const Interval& w) {
    const Interval p2 = sqr(p);
    const Interval w2 = sqr(w);
    return sqr(p2) + p2 * p * w + p2 * w2 + p * w2 * w + sqr(w2);
}

// Product of the quartics over S × W ⊂ D. The first and third vanish at the
// cusps (s, w) = (1, 0) and (0, 1) and are taken in the shifted variables
// p = 1 - s, q = 1 - w, both nonnegative on D; the others are at least 1 on D
// and use natural ∩ mean-value forms.
Interval quartic_product(const Interval& s, const Interval& w) {
    const Interval nonneg(0.0, kInf);
    const Interval p = intersect(Interval(1.0) - s, nonneg);
    const Interval q = intersect(Interval(1.0) - w, nonneg);
    if (p.is_empty() || q.is_empty()) return Interval::empty();
    Interval prod = corner_quartic(p, w) * corner_quartic(q, s);
    const auto nat = radicand_quartics(s, w);
    const auto der = radicand_quartics(DI::variable(s, 0), DI::variable(w, 1));
    const double cs = s.mid();
    const double cw = w.mid();
    const auto ctr = radicand_quartics(Interval(cs), Interval(cw));
    for (std::size_t i : {1, 3, 4, 5}) {
        const Interval mv = ctr[i] + der[i].g[0] * (s - Interval(cs)) + der[i].g[1] * (w - Interval(cw));
        const Interval f = intersect(nat[i], mv);
        prod = prod * (f.is_empty() ? nat[i] : f);
    }
    return prod;
}

// Enclosure of rad over box ∩ { 1 - s - w >= margin }.
Interval radicand_factored(const IntervalBox& b, double margin) {
    const Interval s = pow_abs(b.x, 0.8);
    const Interval w = pow_abs(b.y, 0.8);
    const Interval gap = intersect(Interval(1.0) - s - w, Interval(margin, kInf));
    if (gap.is_empty()) return Interval::empty();
    const Interval p = gap * quartic_product(s, w);
    const QuarticTerms<Interval> q = quartic_terms(b.x, b.y);
    const Interval denom =
        pow_five_halves(quartic_gap(q)) + Interval(25.0) * (q.x2 * q.y2) * sqrt(radical_inner(q));
    if (denom.lo() > 0.0) return p / denom;
    // Both terms of the denominator are nonnegative; only the sign survives.
    if (p.lo() >= 0.0) return {0.0, kInf};
    return Interval::entire();
}

Interval radicand_enclosure(const IntervalBox& b, double margin, EnclosureMode mode) {
    const Interval natural = radicand_natural(b.x, b.y);
    if (mode == EnclosureMode::Natural) return natural;
    // max(Q, 0)^(5/2) is C² and the rest is smooth, so the mean-value form is
    // valid on the whole box.
    const DI d = mm_radicand_expr(DI::variable(b.x, 0), DI::variable(b.y, 1));
    const double cx = b.x.mid();
    const double cy = b.y.mid();
    const Interval centre = radicand_natural(Interval(cx), Interval(cy));
    const Interval mv = centre + d.g[0] * (b.x - Interval(cx)) + d.g[1] * (b.y - Interval(cy));
    const Interval smooth = intersect(natural, mv);
    const Interval both = intersect(smooth, radicand_factored(b, margin));
    return both.is_empty() ? smooth : both;
}

// Direct evaluation of det Hess u. Its enclosures blow up near ∂D, where the
// second derivatives of √rad are unbounded.
Interval numerator_direct(const CertExpr& e, int sheet, const IntervalBox& b) {
    const JI u = mm_height_expr(JI::variable(b.x, 0), JI::variable(b.y, 1), sheet_coef(e, sheet),
                                !e.t.is_zero());
    return hessian_det2(u);
}

// With a = xy/Q and c = sheet·t, rad^(3/2) Hess u = α ∇rad ∇radᵀ + rad E where
//   α    = -c a / 4
//   E_ij = √rad g_ij + c (a_ij rad + (a_i rad_j + a_j rad_i)/2 + a rad_ij / 2)
// so det Hess u = M / rad² with M = α ∇radᵀ adj(E) ∇rad + rad det E.
// M involves no derivative of √rad and stays bounded up to ∂D.
template <typename S>
struct FactorJets {
    Jet<S, 2> rad;
    Jet<S, 2> a;
    Jet<S, 2> g;
    S root;
};

template <typename S>
FactorJets<S> factor_jets(const S& x, const S& y) {
    using J = Jet<S, 2>;
    using std::sqrt;
    const J X = J::variable(x, 0);
    const J Y = J::variable(y, 1);
    FactorJets<S> f;
    f.rad = mm_radicand_expr(X, Y);
    f.a = X * Y / quartic_gap(quartic_terms(X, Y));
    f.g = base_g_expr(X, Y);
    f.root = sqrt(ScalarTraits<S>::clip_nonneg(f.rad.v));
    return f;
}

template <typename S>
S factored_numerator(const FactorJets<S>& f, const S& c) {
    const auto& r = f.rad;
    const auto& a = f.a;
    auto entry = [&](std::size_t i, std::size_t j) {
        return f.root * f.g.hess(i, j) +
               c * (a.hess(i, j) * r.v + S(0.5) * (a.g[i] * r.g[j] + a.g[j] * r.g[i]) +
                    S(0.5) * a.v * r.hess(i, j));
    };
    const S exx = entry(0, 0);
    const S exy = entry(0, 1);
    const S eyy = entry(1, 1);
    const S alpha = -(c * a.v) * S(0.25);
    const S quad = sqr(r.g[0]) * eyy - S(2.0) * (r.g[0] * r.g[1]) * exy + sqr(r.g[1]) * exx;
    return alpha * quad + r.v * (exx * eyy - sqr(exy));
}

// det Hess u from M over the points of the box where rad > 0.
Interval numerator_from_factor(const Interval& m, const Interval& rad) {
    if (m.is_empty() || rad.is_empty() || !(rad.hi() > 0.0)) return Interval::entire();
    const Interval rad2 = sqr(rad);
    if (rad.lo() > 0.0) return m / rad2;
    // rad² <= rad.hi², so a negative M bounds the quotient from above.
    if (m.hi() < 0.0) {
        return {-kInf, rounding::up(m.hi() / rad2.hi())};
    }
    if (m.lo() > 0.0) {
        return {rounding::down(m.lo() / rad2.hi()), kInf};
    }
    return Interval::entire();
}

Interval numerator_enclosure(const CertExpr& e, const IntervalBox& b, double margin,
                             EnclosureMode mode) {
    const std::vector<int> sheets = (e.sheet != 0 || e.t.is_zero())
                                        ? std::vector<int>{e.sheet == 0 ? 1 : e.sheet}
                                        : std::vector<int>{+1, -1};
    if (mode == EnclosureMode::Natural || e.t.is_zero()) {
        Interval out = Interval::empty();
        for (int s : sheets) {
            const Interval v = numerator_direct(e, s, b);
            out = out.is_empty() ? v : hull(out, v);
        }
        return out;
    }

    const FactorJets<Interval> nat = factor_jets(b.x, b.y);
    const Interval gap = Interval(1.0) - sqr(sqr(b.x)) - sqr(sqr(b.y));
    // M is C¹ where the quartic gap and the radicand stay positive. A box
    // inside D is its own intersection with D, so the factored radicand bound
    // holds on all of it.
    const bool inside = boundary_enclosure(b.x, b.y).lo() > 0.0;
    const bool smooth = gap.lo() > 0.0 &&
                        (nat.rad.v.lo() > 0.0 || (inside && radicand_enclosure(b, 0.0, mode).lo() > 0.0));
    std::optional<FactorJets<DI>> nested;
    if (smooth) nested = factor_jets(DI::variable(b.x, 0), DI::variable(b.y, 1));
    const double cx = b.x.mid();
    const double cy = b.y.mid();
    std::optional<FactorJets<Interval>> centre;
    if (smooth) centre = factor_jets(Interval(cx), Interval(cy));

    const Interval rad = radicand_enclosure(b, margin, mode);
    Interval out = Interval::empty();
    for (int s : sheets) {
        const Interval c = sheet_coef(e, s);
        Interval m = factored_numerator(nat, c);
        if (smooth) {
            const DI dm = factored_numerator(*nested, DI(c));
            const Interval mc = factored_numerator(*centre, c);
            const Interval mv = mc + dm.g[0] * (b.x - Interval(cx)) + dm.g[1] * (b.y - Interval(cy));
            m = intersect(m, intersect(dm.v, mv));
        }
        Interval v = numerator_from_factor(m, rad);
        const Interval direct = numerator_direct(e, s, b);
        const Interval both = intersect(v, direct);
        v = both.is_empty() ? v : both;
        out = out.is_empty() ? v : hull(out, v);
    }
    return out;
}

// Larger is worse; a box is discharged when this is negative.
double violation(ClaimedSign claim, const Interval& v) {
    if (v.is_empty()) return kInf;
    return claim == ClaimedSign::Negative ? v.hi() : -v.lo();
}

// Strict: the enclosure excludes zero.
bool discharges(ClaimedSign claim, const Interval& v) {
    if (v.is_empty()) return false;
    return claim == ClaimedSign::Negative ? v.hi() < 0.0 : v.lo() > 0.0;
}

// A >= 0 claim holds on the box but a zero is not excluded.
bool touches(ClaimedSign claim, const Interval& v) {
    return claim == ClaimedSign::NonNegative && !v.is_empty() && v.lo() >= 0.0;
}

struct Node {
    IntervalBox box;
    Interval value;
    Interval boundary;
    double score = 0.0;
};

bool worse(const Node& a, const Node& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.depth != b.box.depth) return a.box.depth < b.box.depth;
    if (a.box.x.lo() != b.box.x.lo()) return a.box.x.lo() < b.box.x.lo();
    return a.box.y.lo() < b.box.y.lo();
}

// Largest L with longest edge <= 2^(1-L): the dyadic size level.
int size_level(const IntervalBox& b) {
    const double w = b.width();
    if (!(w > 0.0)) return 64;
    return std::clamp(static_cast<int>(std::floor(std::log2(2.0 / w))), 0, 64);
}

std::pair<IntervalBox, IntervalBox> bisect(const IntervalBox& b) {
    IntervalBox lo = b;
    IntervalBox hi = b;
    if (b.x.width() >= b.y.width()) {
        const double m = b.x.mid();
        lo.x = Interval(b.x.lo(), m);
        hi.x = Interval(m, b.x.hi());
    } else {
        const double m = b.y.mid();
        lo.y = Interval(b.y.lo(), m);
        hi.y = Interval(m, b.y.hi());
    }
    return {lo, hi};
}

}  // namespace

CertExpr CertExpr::radicand() { return CertExpr{}; }

CertExpr CertExpr::curvature_numerator(const ExactReal& t, int sheet) {
    if (sheet != 0 && sheet != 1 && sheet != -1) {
        throw InvalidArgument("curvature numerator: sheet must be +1, -1 or 0 (both)");
    }
    CertExpr e;
    e.kind = ExprKind::CurvatureNumerator;
    e.t = t;
    e.sheet = sheet;
    return e;
}

std::string CertExpr::id() const {
    if (kind == ExprKind::Radicand) return "radicand";
    std::ostringstream os;
    os << "curvature_numerator(t=" << t.text() << ", sheet="
       << (sheet == 0 ? "both" : (sheet > 0 ? "+1" : "-1")) << ')';
    return os.str();
}

std::string Region::descriptor() const {
    if (margin == 0.0) return "D";
    std::ostringstream os;
    os.precision(17);
    os << "D[margin=" << margin << ']';
    return os.str();
}

std::string to_string(ClaimedSign s) {
    switch (s) {
        case ClaimedSign::Negative: return "<0";
        case ClaimedSign::Positive: return ">0";
        default: return ">=0";
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "Certified";
        case Verdict::BoundaryContact: return "BoundaryContact";
        default: return "Undecided";
    }
}

BoxEnclosure enclose(const CertExpr& expr, const IntervalBox& box, const Region& region,
                     EnclosureMode mode) {
    BoxEnclosure out;
    out.box = box;
    if (!contract(out.box, region.margin)) {
        out.outside = true;
        return out;
    }
    out.box.depth = size_level(out.box);
    out.boundary = boundary_enclosure(out.box.x, out.box.y);
    if (out.boundary.hi() < region.margin) {
        out.outside = true;
        return out;
    }
    out.value = expr.kind == ExprKind::Radicand ? radicand_enclosure(out.box, region.margin, mode)
                                                : numerator_enclosure(expr, out.box, region.margin, mode);
    return out;
}

Interval interval_eval(const CertExpr& expr, const IntervalBox& box, EnclosureMode mode) {
    const BoxEnclosure e = enclose(expr, box, Region{}, mode);
    if (e.outside) throw DomainViolation("interval_eval: box does not meet D");
    return e.value;
}

SignCertificate certify_sign(const CertExpr& expr, const Region& region, ClaimedSign claim,
                             int max_depth, std::size_t budget, const CertifyOptions& opts) {
    if (max_depth < 0 || max_depth > 40) throw InvalidArgument("certify_sign: max_depth must be in [0, 40]");
    if (budget < 1) throw InvalidArgument("certify_sign: budget must be at least 1");
    if (!(region.margin >= 0.0 && region.margin < 1.0)) {
        throw InvalidArgument("certify_sign: margin must be in [0, 1)");
    }
    const auto start = std::chrono::steady_clock::now();

    SignCertificate cert;
    cert.expr = expr.id();
    cert.region = region.descriptor();
    cert.claim = claim;
    cert.max_depth = max_depth;
    cert.budget = budget;

    std::vector<Node> leaves;   // not strictly discharged at max depth
    std::vector<Node> pending;  // never refined for lack of budget
    Node tightest;              // discharged box closest to failing
    bool have_tightest = false;

    auto absorb = [&](const Node& n) { cert.bounds = cert.bounds.is_empty() ? n.value : hull(cert.bounds, n.value); };

    auto evaluate = [&](const std::vector<IntervalBox>& boxes, const std::vector<Interval>& parents) {
        std::vector<BoxEnclosure> res(boxes.size());
        parallel_for(boxes.size(), [&](std::size_t b, std::size_t e, int) {
            for (std::size_t i = b; i < e; ++i) {
                res[i] = enclose(expr, boxes[i], region, opts.mode);
                // Children inherit their parent's enclosure.
                if (!res[i].outside && !parents[i].is_empty()) {
                    const Interval both = intersect(res[i].value, parents[i]);
                    if (!both.is_empty()) res[i].value = both;
                }
            }
        });
        return res;
    };

    std::vector<Node> frontier;
    auto classify = [&](const std::vector<BoxEnclosure>& res, std::vector<Node>& next) {
        for (const auto& r : res) {
            if (r.outside) {
                ++cert.excluded;
                continue;
            }
            cert.max_depth_reached = std::max(cert.max_depth_reached, r.box.depth);
            Node n{r.box, r.value, r.boundary, violation(claim, r.value)};
            if (discharges(claim, r.value)) {
                ++cert.discharged;
                absorb(n);
                if (!have_tightest || worse(n, tightest)) {
                    tightest = n;
                    have_tightest = true;
                }
            } else {
                next.push_back(n);
            }
        }
    };

    {
        const std::vector<IntervalBox> root{IntervalBox{Interval(-1.0, 1.0), Interval(-1.0, 1.0), 0}};
        cert.boxes_processed = 1;
        classify(evaluate(root, {Interval::empty()}), frontier);
    }

    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end(), worse);
        std::vector<IntervalBox> children;
        std::vector<Interval> parents;
        for (const Node& n : frontier) {
            if (n.box.depth >= max_depth) {
                leaves.push_back(n);
                continue;
            }
            if (cert.boxes_processed + 2 > budget) {
                pending.push_back(n);
                continue;
            }
            const auto [a, b] = bisect(n.box);
            children.push_back(a);
            children.push_back(b);
            parents.push_back(n.value);
            parents.push_back(n.value);
            cert.boxes_processed += 2;
        }
        std::vector<Node> next;
        classify(evaluate(children, parents), next);
        frontier = std::move(next);
    }

    // Boxes where a >= 0 claim holds non-strictly are contacts whether they
    // stopped at max depth or for lack of budget; the rest stay open.
    std::vector<Node> contacts;
    std::vector<Node> remaining;
    for (const Node& n : leaves) {
        if (touches(claim, n.value)) {
            contacts.push_back(n);
        } else {
            remaining.push_back(n);
            ++cert.undischarged;
        }
    }
    for (const Node& n : pending) {
        if (touches(claim, n.value)) {
            contacts.push_back(n);
        } else {
            remaining.push_back(n);
            ++cert.pending;
        }
    }
    for (const Node& n : contacts) absorb(n);
    for (const Node& n : remaining) absorb(n);
    std::sort(remaining.begin(), remaining.end(), worse);
    std::sort(contacts.begin(), contacts.end(), worse);

    for (const Node& n : remaining) {
        if (cert.residual_boxes.size() >= opts.box_cap) break;
        cert.residual_boxes.push_back(n.box);
    }
    cert.contact_count = contacts.size();
    for (const Node& n : contacts) {
        cert.max_contact_boundary_distance = std::max(cert.max_contact_boundary_distance, n.boundary.hi());
        if (cert.contact_boxes.size() < opts.box_cap) cert.contact_boxes.push_back(n.box);
    }

    const Node* worst = !remaining.empty() ? &remaining.front()
                        : !contacts.empty() ? &contacts.front()
                        : have_tightest     ? &tightest
                                            : nullptr;
    if (worst != nullptr) {
        cert.worst_box = worst->box;
        cert.worst_enclosure = worst->value;
    }

    if (!remaining.empty()) {
        cert.verdict = Verdict::Undecided;
    } else if (!contacts.empty()) {
        cert.verdict = Verdict::BoundaryContact;
    } else {
        cert.verdict = Verdict::Certified;
    }

    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

EnclosureAudit audit_enclosures(const CertExpr& expr, const Region& region, std::size_t n,
                                std::uint64_t seed) {
    if (!(region.margin >= 0.0 && region.margin < 1.0)) {
        throw InvalidArgument("audit_enclosures: margin must be in [0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> log_width(-8.0, -1.0);
    const double level = 1.0 - region.margin;

    EnclosureAudit audit;
    std::vector<int> sheets;
    if (expr.kind == ExprKind::CurvatureNumerator) {
        sheets = expr.sheet == 0 ? std::vector<int>{+1, -1} : std::vector<int>{expr.sheet};
    }
    auto point_values = [&](double x, double y) {
        std::vector<double> v;
        if (expr.kind == ExprKind::Radicand) {
            v.push_back(mm_radicand_raw(x, y));
        } else {
            for (int s : sheets) {
                v.push_back(graph_curvature(GraphSurfaceSpec::counterexample(expr.t, s), x, y).K_numerator);
            }
        }
        return v;
    };

    while (audit.boxes < n) {
        double cx = unit(rng);
        double cy = unit(rng);
        if (audit.boxes % 2 == 1) {
            // Scale the centre onto the region's boundary curve.
            const double sum = std::pow(std::abs(cx), 0.8) + std::pow(std::abs(cy), 0.8);
            if (sum == 0.0) continue;
            const double k = std::pow(level / sum, 1.25);
            cx *= k;
            cy *= k;
        }
        const double hx = std::pow(10.0, log_width(rng));
        const double hy = hx * std::pow(2.0, unit(rng));
        const IntervalBox box{Interval(cx - hx, cx + hx), Interval(cy - hy, cy + hy), 0};
        // One region point of the box, found by rejection.
        double px = 0.0;
        double py = 0.0;
        bool found = false;
        for (int tries = 0; tries < 64 && !found; ++tries) {
            px = cx + hx * unit(rng);
            py = cy + hy * unit(rng);
            const double bd = boundary_distance(px, py);
            found = bd >= region.margin && (expr.kind == ExprKind::Radicand || bd > 0.0);
        }
        if (!found) continue;
        const BoxEnclosure enc = enclose(expr, box, region);
        if (enc.outside) continue;
        ++audit.boxes;
        for (double v : point_values(px, py)) {
            if (!std::isfinite(v)) continue;
            ++audit.points;
            const double tol = 1e-9 * std::max(1.0, std::abs(v));
            const double excess = std::max(enc.value.lo() - v, v - enc.value.hi());
            if (enc.value.is_empty() || excess > tol) {
                ++audit.violations;
                audit.worst_excess = std::max(audit.worst_excess, enc.value.is_empty() ? kInf : excess);
            }
        }
    }
    return audit;
}

}  // namespace hhk
