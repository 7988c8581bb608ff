#include <doctest.h>

#include <random>

#include "hhk/errors.hpp"
#include "hhk/exact_real.hpp"
#include "hhk/interval.hpp"

using namespace hhk;

namespace {

// Random interval [a, a + w] with w >= 0, spanning several magnitudes.
Interval random_interval(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> centre(-10.0, 10.0);
    std::uniform_real_distribution<double> exponent(-12.0, 1.0);
    const double a = centre(rng);
    return {a, a + std::pow(10.0, exponent(rng))};
}

long double pick(const Interval& v, std::mt19937_64& rng) {
    std::uniform_real_distribution<long double> u(0.0L, 1.0L);
    return static_cast<long double>(v.lo()) + u(rng) * (static_cast<long double>(v.hi()) - v.lo());
}

}  // namespace

TEST_SUITE("interval") {
    TEST_CASE("arithmetic encloses the extended-precision result") {
        std::mt19937_64 rng(7);
        for (int k = 0; k < 20000; ++k) {
            const Interval a = random_interval(rng);
            const Interval b = random_interval(rng);
            const long double x = pick(a, rng);
            const long double y = pick(b, rng);
            CHECK((a + b).contains(static_cast<double>(x + y)));
            CHECK((a - b).contains(static_cast<double>(x - y)));
            CHECK((a * b).contains(static_cast<double>(x * y)));
            if (!b.contains(0.0)) CHECK((a / b).contains(static_cast<double>(x / y)));
            const Interval pa = abs(a);
            const long double ax = std::fabs(x);
            CHECK(sqrt(pa).contains(static_cast<double>(std::sqrt(ax))));
            CHECK(pow_nonneg(pa, 2.5).contains(static_cast<double>(std::pow(ax, 2.5L))));
            CHECK(pow_abs(a, 0.8).contains(static_cast<double>(std::pow(ax, 0.8L))));
            CHECK(sqr(a).contains(static_cast<double>(x * x)));
        }
    }

    TEST_CASE("exact zeros stay exact") {
        const Interval z(0.0);
        const Interval a(-3.0, 5.0);
        CHECK((z * a) == Interval(0.0));
        CHECK((a * z) == Interval(0.0));
        CHECK((z + z) == Interval(0.0));
        CHECK((z / Interval(2.0, 3.0)) == Interval(0.0));
        CHECK((Interval(1.5) + z) == Interval(1.5));
        CHECK((Interval(1.5) - z) == Interval(1.5));
    }

    TEST_CASE("nonzero point results are widened outward") {
        const Interval third = Interval(1.0) / Interval(3.0);
        CHECK(third.lo() < third.hi());
        CHECK(third.contains(1.0 / 3.0));
    }

    TEST_CASE("empty intervals propagate") {
        const Interval e = Interval::empty();
        CHECK(e.is_empty());
        CHECK((e + Interval(1.0)).is_empty());
        CHECK((Interval(1.0) - e).is_empty());
        CHECK((e * Interval(0.0)).is_empty());
        CHECK_FALSE(e.strictly_negative());
        CHECK_FALSE(e.strictly_positive());
        CHECK_FALSE(e.nonnegative());
        CHECK(intersect(Interval(0.0, 1.0), Interval(2.0, 3.0)).is_empty());
    }

    TEST_CASE("division by an interval containing zero is entire") {
        const Interval q = Interval(1.0, 2.0) / Interval(-1.0, 1.0);
        CHECK(q.lo() == -std::numeric_limits<double>::infinity());
        CHECK(q.hi() == std::numeric_limits<double>::infinity());
    }

    TEST_CASE("hull and intersect") {
        CHECK(hull(Interval(0.0, 1.0), Interval(2.0, 3.0)) == Interval(0.0, 3.0));
        CHECK(intersect(Interval(0.0, 2.0), Interval(1.0, 3.0)) == Interval(1.0, 2.0));
    }
}

TEST_SUITE("exact_real") {
    TEST_CASE("p/q is parsed exactly") {
        const ExactReal t = ExactReal::parse("1/12");
        CHECK(t.value() == 1.0 / 12.0);
        CHECK(t.enclosure().contains(1.0 / 12.0));
        CHECK(t.enclosure().lo() < t.enclosure().hi());
        CHECK(t.enclosure().lo() * 12.0 <= 1.0);
        CHECK(t.enclosure().hi() * 12.0 >= 1.0);
        CHECK(t.text() == "1/12");
    }

    TEST_CASE("decimal and scientific forms") {
        const ExactReal d = ExactReal::parse("0.083333");
        CHECK(d.value() == 0.083333);
        CHECK(d.enclosure().contains(0.083333));
        CHECK(ExactReal::parse("1e-3").value() == 1e-3);
        CHECK(ExactReal::parse("-2.5E+1").value() == -25.0);
        CHECK(ExactReal::parse("10").value() == 10.0);
        CHECK(ExactReal::parse("0").is_zero());
    }

    TEST_CASE("enclosures are a few ulps wide") {
        for (const char* text : {"0.5", "1/3", "0.083333", "-7/9", "2.5e-3"}) {
            const ExactReal v = ExactReal::parse(text);
            CAPTURE(text);
            CHECK(v.enclosure().contains(v.value()));
            CHECK(v.enclosure().width() <= 16 * std::numeric_limits<double>::epsilon() * std::abs(v.value()));
        }
    }

    TEST_CASE("malformed input is rejected") {
        for (const char* bad : {"", "abc", "1/0", "1//2", "0.1.2", "1e", "--1", "1/x"}) {
            CAPTURE(bad);
            CHECK_THROWS_AS(ExactReal::parse(bad), InvalidArgument);
        }
    }
}
