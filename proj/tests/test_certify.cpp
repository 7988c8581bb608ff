#include <doctest.h>

#include <random>

#include "hhk/certify.hpp"
#include "hhk/errors.hpp"
#include "hhk/graph_surface.hpp"

using namespace hhk;

namespace {

const ExactReal kT = ExactReal::rational(1, 12);

long double radicand_ld(long double x, long double y) {
    const long double x4 = x * x * x * x;
    const long double y4 = y * y * y * y;
    const long double q = 1 - x4 - y4;
    const long double s = x4 * x4 + y4 * y4 + 3 * (x4 + y4 - x4 * y4) + 1;
    return std::pow(q, 2.5L) - 25 * x * x * y * y * std::sqrt(s);
}

IntervalBox make_box(double cx, double cy, double hx, double hy) {
    IntervalBox b;
    b.x = Interval(cx - hx, cx + hx);
    b.y = Interval(cy - hy, cy + hy);
    return b;
}

}  // namespace

TEST_SUITE("certify") {
    TEST_CASE("radicand enclosures contain extended-precision point values") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_real_distribution<double> e(-7.0, -1.0);
        int tested = 0;
        while (tested < 3000) {
            const double h = std::pow(10.0, e(rng));
            const IntervalBox b = make_box(u(rng), u(rng), h, h);
            const BoxEnclosure enc = enclose(CertExpr::radicand(), b, Region{});
            for (int k = 0; k < 4; ++k) {
                const double x = b.x.lo() + (b.x.hi() - b.x.lo()) * (0.5 + 0.5 * u(rng));
                const double y = b.y.lo() + (b.y.hi() - b.y.lo()) * (0.5 + 0.5 * u(rng));
                if (boundary_distance(x, y) < 0.0) continue;
                REQUIRE_FALSE(enc.outside);
                const double v = static_cast<double>(radicand_ld(x, y));
                CHECK(enc.value.lo() <= v + 1e-15);
                CHECK(enc.value.hi() >= v - 1e-15);
                ++tested;
            }
        }
    }

    TEST_CASE("factored radicand enclosure is nonnegative on D") {
        // Boxes straddling the boundary: the region factor keeps the sign.
        for (double theta = 0.05; theta < 6.2; theta += 0.1) {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const double x = std::copysign(std::pow(std::abs(c), 2.5), c);
            const double y = std::copysign(std::pow(std::abs(s), 2.5), s);
            const BoxEnclosure enc = enclose(CertExpr::radicand(), make_box(x, y, 1e-6, 1e-6), Region{});
            CHECK(enc.value.lo() >= 0.0);
        }
    }

    TEST_CASE("numerator enclosures contain point values") {
        std::mt19937_64 rng(32);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        int tested = 0;
        while (tested < 2000) {
            const IntervalBox b = make_box(u(rng), u(rng), 1e-3, 2e-3);
            const BoxEnclosure enc = enclose(CertExpr::curvature_numerator(kT, +1), b, Region{1e-2});
            const double x = b.x.mid() + 1e-3 * u(rng);
            const double y = b.y.mid() + 2e-3 * u(rng);
            if (boundary_distance(x, y) < 1e-2) continue;
            const double v = graph_curvature(GraphSurfaceSpec::counterexample(kT, +1), x, y).K_numerator;
            CHECK(enc.value.lo() <= v + 1e-9 * std::max(1.0, std::abs(v)));
            CHECK(enc.value.hi() >= v - 1e-9 * std::max(1.0, std::abs(v)));
            ++tested;
        }
    }

    TEST_CASE("boxes outside the region are excluded") {
        const BoxEnclosure enc = enclose(CertExpr::radicand(), make_box(0.9, 0.9, 0.01, 0.01), Region{});
        CHECK(enc.outside);
    }

    TEST_CASE("randomized audits find no violations") {
        for (const auto& [expr, region] : {std::pair{CertExpr::radicand(), Region{}},
                                           std::pair{CertExpr::radicand(), Region{1e-2}},
                                           std::pair{CertExpr::curvature_numerator(kT), Region{1e-2}},
                                           std::pair{CertExpr::curvature_numerator(kT), Region{}},
                                           std::pair{CertExpr::curvature_numerator(ExactReal()), Region{}}}) {
            const EnclosureAudit a = audit_enclosures(expr, region, 2000, 5);
            CAPTURE(expr.id());
            CHECK(a.boxes == 2000u);
            CHECK(a.points >= 2000u);
            CHECK(a.violations == 0u);
        }
    }

    TEST_CASE("audits are deterministic in the seed") {
        const EnclosureAudit a = audit_enclosures(CertExpr::radicand(), Region{}, 500, 9);
        const EnclosureAudit b = audit_enclosures(CertExpr::radicand(), Region{}, 500, 9);
        CHECK(a.points == b.points);
        CHECK(a.worst_excess == b.worst_excess);
    }

    TEST_CASE("radicand is positive away from the boundary") {
        const SignCertificate c = certify_sign(CertExpr::radicand(), Region{1e-2}, ClaimedSign::Positive, 16, 100000);
        CHECK(c.verdict == Verdict::Certified);
        CHECK(c.bounds.lo() > 0.0);
        CHECK(c.residual_boxes.empty());
    }

    TEST_CASE("radicand nonnegativity touches only the boundary") {
        const SignCertificate c = certify_sign(CertExpr::radicand(), Region{}, ClaimedSign::NonNegative, 10, 1000000);
        CHECK(c.verdict == Verdict::BoundaryContact);
        CHECK(c.contact_count > 0u);
        CHECK(c.undischarged == 0u);
        CHECK(c.max_contact_boundary_distance <= 1e-2);
        CHECK(c.bounds.lo() >= 0.0);
        for (const IntervalBox& b : c.contact_boxes) CHECK(b.depth >= 10);
    }

    TEST_CASE("curvature numerator is negative on the shrunken domain") {
        const SignCertificate c = certify_sign(CertExpr::curvature_numerator(kT), Region{1e-2},
                                               ClaimedSign::Negative, 16, 1000000);
        CHECK(c.verdict == Verdict::Certified);
        CHECK(c.bounds.hi() < 0.0);
        CHECK(c.discharged > 0u);
    }

    TEST_CASE("false claims and the singular boundary stay undecided") {
        const SignCertificate wrong = certify_sign(CertExpr::radicand(), Region{1e-2}, ClaimedSign::Negative, 6, 100000);
        CHECK(wrong.verdict == Verdict::Undecided);
        CHECK(wrong.undischarged > 0u);
        const SignCertificate edge = certify_sign(CertExpr::curvature_numerator(kT), Region{},
                                                  ClaimedSign::Negative, 8, 20000);
        CHECK(edge.verdict == Verdict::Undecided);
        CHECK_FALSE(edge.residual_boxes.empty());
    }

    TEST_CASE("budget exhaustion leaves pending boxes") {
        const SignCertificate c = certify_sign(CertExpr::curvature_numerator(kT), Region{1e-2},
                                               ClaimedSign::Negative, 24, 50);
        CHECK(c.verdict == Verdict::Undecided);
        CHECK(c.pending > 0u);
        CHECK(c.boxes_processed <= 50u);
    }

    TEST_CASE("argument validation") {
        CHECK_THROWS_AS(certify_sign(CertExpr::radicand(), Region{}, ClaimedSign::Positive, -1, 10), InvalidArgument);
        CHECK_THROWS_AS(certify_sign(CertExpr::radicand(), Region{}, ClaimedSign::Positive, 8, 0), InvalidArgument);
    }
}
