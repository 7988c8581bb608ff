#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "hhk/errors.hpp"
#include "hhk/graph_surface.hpp"

using namespace hhk;

namespace {

constexpr double kT = 1.0 / 12.0;

struct Derivs {
    double ux, uy, uxx, uyy, uxy;
};

// Fourth-order central differences of the height, independent of the jets.
Derivs fd_derivs(double t, int sheet, double x, double y) {
    const double h = 5e-4;
    auto u = [&](double a, double b) { return surface_height(t, sheet, x + a * h, y + b * h); };
    Derivs d{};
    d.ux = (-u(2, 0) + 8 * u(1, 0) - 8 * u(-1, 0) + u(-2, 0)) / (12 * h);
    d.uy = (-u(0, 2) + 8 * u(0, 1) - 8 * u(0, -1) + u(0, -2)) / (12 * h);
    d.uxx = (-u(2, 0) + 16 * u(1, 0) - 30 * u(0, 0) + 16 * u(-1, 0) - u(-2, 0)) / (12 * h * h);
    d.uyy = (-u(0, 2) + 16 * u(0, 1) - 30 * u(0, 0) + 16 * u(0, -1) - u(0, -2)) / (12 * h * h);
    auto dx = [&](double b) { return (-u(2, b) + 8 * u(1, b) - 8 * u(-1, b) + u(-2, b)) / (12 * h); };
    d.uxy = (-dx(2) + 8 * dx(1) - 8 * dx(-1) + dx(-2)) / (12 * h);
    return d;
}

long double radicand_ld(long double x, long double y) {
    const long double x4 = x * x * x * x;
    const long double y4 = y * y * y * y;
    const long double q = 1 - x4 - y4;
    const long double s = x4 * x4 + y4 * y4 + 3 * (x4 + y4 - x4 * y4) + 1;
    return std::pow(q, 2.5L) - 25 * x * x * y * y * std::sqrt(s);
}

Vec2 random_interior(std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const double x = u(rng);
        const double y = u(rng);
        if (boundary_distance(x, y) > margin) return {x, y};
    }
}

}  // namespace

TEST_SUITE("graph_surface") {
    TEST_CASE("frozen high-precision value of f") {
        // 50-digit reference: 0.09126463979116637776907346822733257...
        CHECK(std::abs(mm_f(0.3, 0.4) - 0.091264639791166377769) <= 1e-16);
        CHECK(mm_f(0.0, 0.5) == 0.0);
    }

    TEST_CASE("saddle g and the domain functional") {
        CHECK(base_g(0.5, 0.2) == doctest::Approx(0.21 - (0.0625 - 0.0016) / 6.0).epsilon(1e-15));
        CHECK(boundary_distance(0.0, 0.0) == 1.0);
        CHECK(std::abs(boundary_distance(1.0, 0.0)) == 0.0);
        CHECK(in_domain(0.3, 0.3));
        CHECK_FALSE(in_domain(0.6, 0.6));
    }

    TEST_CASE("radicand vanishes at the boundary zeros") {
        CHECK(std::abs(mm_radicand(1.0, 0.0)) <= 1e-12);
        const double d = std::pow(2.0, -1.25);
        CHECK(std::abs(mm_radicand(d, d)) <= 1e-12);
        // Both terms equal 225√15/1024 at the diagonal point.
        const long double dl = std::pow(2.0L, -1.25L);
        const long double d4 = dl * dl * dl * dl;
        const long double lhs = std::pow(1 - 2 * d4, 2.5L);
        const long double rhs = 25 * d4 * std::sqrt(2 * d4 * d4 + 3 * (2 * d4 - d4 * d4) + 1);
        const long double closed = 225 * std::sqrt(15.0L) / 1024;
        CHECK(std::abs(lhs - closed) <= 1e-17L);
        CHECK(std::abs(rhs - closed) <= 1e-17L);
    }

    TEST_CASE("radicand matches the extended-precision formula") {
        std::mt19937_64 rng(21);
        for (int k = 0; k < 5000; ++k) {
            const Vec2 p = random_interior(rng, 0.0);
            CHECK(std::abs(mm_radicand_raw(p.x(), p.y()) - static_cast<double>(radicand_ld(p.x(), p.y()))) <= 1e-14);
        }
    }

    TEST_CASE("sheet symmetries") {
        std::mt19937_64 rng(22);
        for (int k = 0; k < 1000; ++k) {
            const Vec2 p = random_interior(rng, 1e-6);
            for (int s : {+1, -1}) {
                const double u = surface_height(kT, s, p.x(), p.y());
                CHECK(surface_height(kT, s, -p.x(), p.y()) == doctest::Approx(surface_height(kT, -s, p.x(), p.y())).epsilon(1e-14));
                CHECK(surface_height(kT, s, p.y(), p.x()) == doctest::Approx(-surface_height(kT, -s, p.x(), p.y())).epsilon(1e-14));
                CHECK(surface_height(kT, s, -p.x(), -p.y()) == doctest::Approx(u).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("curvature agrees with finite differences of the height") {
        std::mt19937_64 rng(23);
        for (int k = 0; k < 300; ++k) {
            const Vec2 p = random_interior(rng, 0.05);
            for (int s : {+1, -1}) {
                const CurvatureSample c = graph_curvature(GraphSurfaceSpec::counterexample(kT, s), p.x(), p.y());
                const Derivs d = fd_derivs(kT, s, p.x(), p.y());
                const double w2 = 1.0 + d.ux * d.ux + d.uy * d.uy;
                const double k_fd = (d.uxx * d.uyy - d.uxy * d.uxy) / (w2 * w2);
                CHECK(c.K == doctest::Approx(k_fd).epsilon(1e-5).scale(1e-3));
                CHECK(c.z == doctest::Approx(surface_height(kT, s, p.x(), p.y())).epsilon(1e-15));
                const Vec3 n = s * Vec3(-d.ux, -d.uy, 1.0) / std::sqrt(w2);
                CHECK(angle_between(c.normal, n) <= 1e-7);
                CHECK(angle_between(gauss_map(GraphSurfaceSpec::counterexample(kT, s), p.x(), p.y()).vec(), n) <= 1e-7);
                CHECK(c.K_numerator == doctest::Approx(curvature_numerator_fd(GraphSurfaceSpec::counterexample(kT, s), p.x(), p.y())).epsilon(1e-5).scale(1e-3));
            }
        }
    }

    TEST_CASE("radii are reciprocals of the principal curvatures") {
        std::mt19937_64 rng(24);
        for (int k = 0; k < 500; ++k) {
            const Vec2 p = random_interior(rng, 1e-3);
            const CurvatureSample c = graph_curvature(GraphSurfaceSpec::counterexample(kT, +1), p.x(), p.y());
            CHECK(c.r1 <= c.r2);
            CHECK(c.K * c.r1 * c.r2 == doctest::Approx(1.0).epsilon(1e-10));
        }
        // The orientation convention makes the upper unit hemisphere r = -1.
        CustomHeight hemi;
        hemi.height = [](const HeightJet& x, const HeightJet& y) { return sqrt(HeightJet(1.0) - x * x - y * y); };
        hemi.domain_distance = [](double x, double y) { return 1.0 - x * x - y * y; };
        const CurvatureSample c = graph_curvature(GraphSurfaceSpec::custom(hemi), 0.2, -0.3);
        CHECK(c.r1 == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(c.r2 == doctest::Approx(-1.0).epsilon(1e-12));
    }

    TEST_CASE("points outside the domain are rejected") {
        CHECK_THROWS_AS(graph_curvature(GraphSurfaceSpec::counterexample(kT, +1), 0.7, 0.7), DomainViolation);
        CHECK_THROWS_AS(mm_f(0.9, 0.9), DomainViolation);
        CHECK_THROWS_AS(GraphSurfaceSpec::counterexample(kT, 2), InvalidArgument);
    }

    TEST_CASE("curvature scan at t = 1/12 is strictly negative") {
        const ScanReport r = curvature_scan(ExactReal::parse("1/12"), 128, 1e-3);
        CHECK(r.samples > 10000u);
        CHECK(r.violation_count == 0u);
        CHECK(r.max_value < 0.0);
    }

    TEST_CASE("curvature scan at t = 10 reports sorted violations") {
        const ScanReport r = curvature_scan(10.0, 128, 1e-3);
        CHECK(r.violation_count > 0u);
        REQUIRE_FALSE(r.violations.empty());
        for (std::size_t i = 1; i < r.violations.size(); ++i) {
            const ScanSample& a = r.violations[i - 1];
            const ScanSample& b = r.violations[i];
            CHECK(std::make_tuple(a.x, a.y, -a.sheet) <= std::make_tuple(b.x, b.y, -b.sheet));
        }
        for (const ScanSample& s : r.violations) CHECK(s.K >= 0.0);
    }

    TEST_CASE("scan preconditions") {
        CHECK_THROWS_AS(curvature_scan(kT, 8, 1e-3), InvalidArgument);
        CHECK_THROWS_AS(curvature_scan(kT, 64, -1.0), InvalidArgument);
    }

    TEST_CASE("t sweep separates valid and invalid parameters") {
        const auto sweep = t_sweep({0.0, 0.04, 1.0 / 12.0, 0.1, 0.15, 0.2}, 128, 1e-3);
        REQUIRE(sweep.size() == 6u);
        for (int i = 0; i < 4; ++i) CHECK(sweep[i].max_K < 0.0);
        CHECK(sweep[4].max_K > 0.0);
        CHECK(sweep[5].max_K > 0.0);
    }

    TEST_CASE("shape radii are hyperbolic and the ball shift keeps their product") {
        ScanOptions opts;
        opts.keep_rows = true;
        const ScanReport r = shape_radii_scan(kT, 128, 1e-3, opts);
        CHECK(r.has_radii);
        CHECK(r.violation_count == 0u);
        CHECK(r.max_r1 < 0.0);
        CHECK(r.min_r2 > 0.0);
        CHECK(r.max_reciprocal_error <= 1e-8);
        const double r_star = convexify_radius(r);
        CHECK(r_star == doctest::Approx(-r.min_r1));
        const ShiftedRadiiCheck s = shifted_radii_check(r, r_star + 0.01);
        CHECK(s.samples == r.rows.size());
        CHECK(s.not_hyperbolic == 0u);
        CHECK(s.min_shifted_r1 == doctest::Approx(0.01).epsilon(1e-9));
        CHECK(s.max_identity_error <= 1e-14);
        CHECK_THROWS_AS(shifted_radii_check(shape_radii_scan(kT, 32, 1e-3), 1.0), InvalidArgument);
    }

    TEST_CASE("cusp normals have closed forms") {
        const Vec3 upper[4] = {Vec3(-4, 0, 3) / 5.0, Vec3(0, 4, 3) / 5.0, Vec3(4, 0, 3) / 5.0, Vec3(0, -4, 3) / 5.0};
        const Vec2 points[4] = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
        for (int i = 0; i < 4; ++i) {
            CHECK((cusp_point(i) - points[i]).norm() == 0.0);
            for (int s : {+1, -1}) {
                const Vec3 expected = s * upper[i];
                CHECK(angle_between(cusp_normal(i, s).vec(), expected) <= 1e-15);
                const UnitVec3 g = gauss_map(GraphSurfaceSpec::counterexample(kT, s), points[i].x(), points[i].y());
                CHECK(angle_between(g.vec(), expected) <= 1e-10);
                CHECK(singular_set_distance(g) <= 1e-10);
            }
        }
    }

    TEST_CASE("boundary limits of the normal are horizontal") {
        const SingularSetReport r = singular_set_check(kT, 200);
        CHECK(r.limits.size() == 400u);
        CHECK(r.median_equator_error < 0.05);
        CHECK(r.mean_distance > 0.1);
    }

    TEST_CASE("cusp fan closes onto the cusp normals") {
        const CuspFanReport r = cusp_fan_check(ExactReal::parse("1/12"), 32, {1e-3, 1e-5, 1e-7, 1e-9});
        CHECK(r.levels.size() == 4u);
        CHECK(r.cusp_normal_error <= 1e-10);
        CHECK(r.levels.back().max_distance < r.levels.front().max_distance);
        CHECK(r.extrapolated_distance < 1e-3);
    }

    TEST_CASE("cross-cap identities") {
        double worst = 0.0;
        for (int i = 0; i < 60; ++i)
            for (int j = 0; j < 60; ++j)
                worst = std::max(worst, crosscap_residual(-1.0 + 2.0 * i / 59, -1.0 + 2.0 * j / 59, CrossCapVariant::X4Y5));
        CHECK(worst <= 1e-12);
        CHECK(crosscap_residual(1.0, 1.0, CrossCapVariant::X5Y5) >= 0.5);
        std::mt19937_64 rng(25);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            const double y = 0.05 + 0.95 * u(rng);
            const double x = (2.0 * u(rng) - 1.0) * std::pow(y, 1.25);
            const Vec3 p(x, y, crosscap_graph_f(x, y));
            CHECK(crosscap_identity_residual(p, CrossCapVariant::X4Y5) <= 1e-12);
        }
        CHECK_THROWS_AS(crosscap_graph_f(0.5, 0.1), DomainViolation);
    }
}
