#include <doctest.h>

#include <random>

#include "hhk/cli.hpp"
#include "hhk/errors.hpp"
#include "hhk/support_field.hpp"

using namespace hhk;

namespace {

UnitVec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return UnitVec3(g(rng), g(rng), g(rng));
}

std::vector<SupportField> analytic_fields() {
    return {SupportField::constant(1.5),
            SupportField::linear(Vec3(0.3, -0.2, 0.7)),
            add_ball(SupportField::linear(Vec3(1.0, 0.0, 0.0)), 2.0),
            SupportField::trig_polynomial({{0.4, 2, 1, 0}, {-0.3, 0, 0, 3}, {0.2, 1, 1, 1}}),
            cli::perturbed_convex_field()};
}

}  // namespace

TEST_SUITE("support_field") {
    TEST_CASE("constant field is a sphere") {
        std::mt19937_64 rng(11);
        const SupportField f = SupportField::constant(2.5);
        for (int k = 0; k < 1000; ++k) {
            const UnitVec3 p = random_unit(rng);
            const HedgehogJet j = hedgehog_jet(f, p);
            CHECK((j.x - 2.5 * p.vec()).norm() <= 1e-12);
            CHECK(std::abs(j.r1 - 2.5) <= 1e-12);
            CHECK(std::abs(j.r2 - 2.5) <= 1e-12);
            CHECK(std::abs(j.curvature - 6.25) <= 1e-12);
        }
    }

    TEST_CASE("linear field collapses to a point") {
        std::mt19937_64 rng(12);
        const Vec3 c(0.3, -1.2, 0.4);
        const SupportField f = SupportField::linear(c);
        for (int k = 0; k < 1000; ++k) {
            const UnitVec3 p = random_unit(rng);
            CHECK((hedgehog_point(f, p) - c).norm() <= 1e-12);
            CHECK(std::abs(curvature_function(f, p)) <= 1e-12);
        }
    }

    TEST_CASE("Euler relations and finite-difference agreement") {
        std::mt19937_64 rng(13);
        for (const SupportField& f : analytic_fields()) {
            CHECK(f.analytic());
            auto phi = [&f](const Vec3& u) { return f.phi(u); };
            for (int k = 0; k < 100; ++k) {
                const UnitVec3 p = random_unit(rng);
                const PhiJet j = f.jet(p.vec());
                CHECK((j.hess * p.vec()).norm() <= 1e-8);
                CHECK(std::abs(j.grad.dot(p.vec()) - j.value) <= 1e-12 * std::max(1.0, std::abs(j.value)));
                const Vec3 g = fd_gradient(phi, p.vec());
                const Mat3 h = fd_hessian(phi, p.vec());
                CHECK((g - j.grad).norm() <= 1e-6 * std::max(1.0, j.grad.norm()));
                CHECK((h - j.hess).norm() <= 1e-6 * std::max(1.0, j.hess.norm()));
            }
        }
    }

    TEST_CASE("phi is 1-homogeneous") {
        const SupportField f = analytic_fields()[3];
        const Vec3 u(0.2, -0.7, 0.4);
        CHECK(f.phi(3.0 * u) == doctest::Approx(3.0 * f.phi(u)).epsilon(1e-13));
    }

    TEST_CASE("adding a ball shifts both radii") {
        std::mt19937_64 rng(14);
        const SupportField f = analytic_fields()[3];
        const SupportField g = add_ball(f, 0.75);
        for (int k = 0; k < 200; ++k) {
            const UnitVec3 p = random_unit(rng);
            const HedgehogJet a = hedgehog_jet(f, p);
            const HedgehogJet b = hedgehog_jet(g, p);
            CHECK(b.r1 == doctest::Approx(a.r1 + 0.75).epsilon(1e-10));
            CHECK(b.r2 == doctest::Approx(a.r2 + 0.75).epsilon(1e-10));
            CHECK((b.x - a.x - 0.75 * p.vec()).norm() <= 1e-12);
        }
        CHECK(add_ball(SupportField::constant(1.0), 0.5).constant_value() == 1.5);
    }

    TEST_CASE("curvature function is the product of the radii") {
        std::mt19937_64 rng(15);
        const SupportField f = analytic_fields()[3];
        for (int k = 0; k < 200; ++k) {
            const UnitVec3 p = random_unit(rng);
            const HedgehogJet j = hedgehog_jet(f, p);
            CHECK(j.r1 <= j.r2);
            CHECK(curvature_function(f, p) == doctest::Approx(j.r1 * j.r2).epsilon(1e-9));
            CHECK(j.mean_radius == doctest::Approx(0.5 * (j.r1 + j.r2)).epsilon(1e-12));
        }
    }

    TEST_CASE("custom field derives missing derivatives by differences") {
        CustomSupport cs;
        cs.h = [](const Vec3&) { return 2.0; };
        const SupportField f = SupportField::custom(cs);
        CHECK_FALSE(f.analytic());
        const HedgehogJet j = hedgehog_jet(f, UnitVec3(1.0, 1.0, 1.0));
        CHECK(j.r1 == doctest::Approx(2.0).epsilon(1e-4));
        CHECK(j.r2 == doctest::Approx(2.0).epsilon(1e-4));
    }

    TEST_CASE("inconsistent derivative data violates Euler") {
        CustomSupport cs;
        cs.h = [](const Vec3&) { return 1.0; };
        cs.grad_phi = [](const Vec3& u) { return Vec3(u.normalized()); };
        cs.hess_phi = [](const Vec3&) { return Mat3(Mat3::Identity()); };
        CHECK_THROWS_AS(hedgehog_jet(SupportField::custom(cs), UnitVec3(0.0, 0.0, 1.0)), EulerViolation);
    }

    TEST_CASE("extreme point of a sphere is the direction itself") {
        const UnitVec3 n(1.0, -2.0, 2.0);
        const auto pts = extreme_points(SupportField::constant(1.0), n, sph_grid(120, 240));
        REQUIRE_FALSE(pts.empty());
        for (const ExtremePoint& e : pts) CHECK(angle_between(e.p.vec(), n.vec()) < 0.05);
    }

    TEST_CASE("the perturbed field used by verify is strictly convex") {
        const SupportField f = cli::perturbed_convex_field();
        double min_r1 = 1e300;
        for (const UnitVec3& p : sph_grid(90, 180).points) min_r1 = std::min(min_r1, hedgehog_jet(f, p).r1);
        CHECK(min_r1 > 0.5);
    }
}
