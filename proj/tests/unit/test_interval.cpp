#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "discpack/error.hpp"
#include "discpack/interval.hpp"
#include "discpack/rational.hpp"

using namespace discpack;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

bool encloses(const Interval& a, const Big& exact) { return Big(a.lo()) <= exact && exact <= Big(a.hi()); }

int ulps_between(double a, double b) {
    int n = 0;
    while (a < b && n < 1000) {
        a = std::nextafter(a, b);
        ++n;
    }
    return n;
}

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("construction and invariants") {
        CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
        CHECK_THROWS_AS(Interval(std::numeric_limits<double>::infinity()), DomainError);
        CHECK_THROWS_AS(Interval(std::nan(""), 1.0), DomainError);
        const Interval a(1.0, 3.0);
        CHECK(a.width() == 2.0);
        CHECK(a.mid() == 2.0);
        CHECK(a.contains(1.0));
        CHECK_FALSE(a.contains_zero());
        const auto [l, r] = a.bisect();
        CHECK(l.hi() == r.lo());
        CHECK(l.lo() == 1.0);
        CHECK(r.hi() == 3.0);
    }

    TEST_CASE("exact operations stay tight") {
        CHECK(Interval(1.0, 2.0) * Interval(3.0, 4.0) == Interval(3.0, 8.0));
        CHECK(Interval(1.0, 2.0) + Interval(0.5) == Interval(1.5, 2.5));
        CHECK(Interval(-2.0, 1.0) * Interval(-3.0, 4.0) == Interval(-8.0, 6.0));
        CHECK(Interval(1.0) / Interval(4.0) == Interval(0.25));
        CHECK(sqrt(Interval(4.0)) == Interval(2.0));
        CHECK(pow(Interval(-2.0, 1.0), 2) == Interval(0.0, 4.0));
    }

    TEST_CASE("sqrt of a point has width at most two ulps") {
        const Interval s = sqrt(Interval(2.0));
        CHECK(s.contains(std::sqrt(2.0)));
        CHECK(ulps_between(s.lo(), s.hi()) <= 2);
        CHECK(encloses(s, boost::multiprecision::sqrt(Big(2))));
    }

    TEST_CASE("inexact operations are outward rounded") {
        const Interval third = Interval(1.0) / Interval(3.0);
        CHECK(third.lo() < third.hi());
        CHECK(encloses(third, Big(1) / 3));
        const Interval tenth = interval_from_decimal("0.1");
        CHECK(encloses(tenth, Big("0.1")));
        CHECK(ulps_between(tenth.lo(), tenth.hi()) == 1);
    }

    TEST_CASE("domain errors") {
        CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), DomainError);
        CHECK_THROWS_AS(sqrt(Interval(-1.0, 4.0)), DomainError);
        CHECK_THROWS_AS(log(Interval(0.0, 1.0)), DomainError);
        CHECK_THROWS_AS(acos(Interval(0.5, 1.5)), DomainError);
        const Interval half_pi = pi_interval() / Interval(2.0);
        CHECK_THROWS_AS(tan(Interval(1.5, 1.6)), DomainError);
        CHECK_THROWS_AS(tan(half_pi), DomainError);
    }

    TEST_CASE("sqrt clamp for certified nonnegative inputs") {
        const Interval almost(-1e-15, 4.0);
        CHECK_THROWS_AS(sqrt(almost), DomainError);
        const Interval s = sqrt(almost, ClampNegative{1e-12});
        CHECK(s.lo() == 0.0);
        CHECK(s.contains(2.0));
        CHECK_THROWS_AS(sqrt(Interval(-1e-6, 4.0), ClampNegative{1e-12}), DomainError);
    }

    TEST_CASE("pi enclosure") {
        const Interval& p = pi_interval();
        CHECK(encloses(p, boost::math::constants::pi<Big>()));
        CHECK(p.contains(M_PI));
        CHECK(ulps_between(p.lo(), p.hi()) <= 1);
    }

    TEST_CASE("tan(pi/7) against a 50-digit oracle") {
        const Interval t = tan(pi_interval() / Interval(7.0));
        const Big exact = boost::multiprecision::tan(boost::math::constants::pi<Big>() / 7);
        CHECK(encloses(t, exact));
        CHECK(t.contains(0.4815746188075286));
        CHECK(t.width() < 1e-14);
    }

    TEST_CASE("transcendentals enclose extrema") {
        const Interval s = sin(Interval(1.0, 2.0));
        CHECK(s.hi() >= 1.0);
        CHECK(s.contains(std::sin(1.0)));
        const Interval c = cos(Interval(3.0, 3.5));
        CHECK(c.lo() <= -1.0);
        const Interval wide = sin(Interval(-10.0, 10.0));
        CHECK(wide.lo() == -1.0);
        CHECK(wide.hi() == 1.0);
    }

    TEST_CASE("enclosure property over random inputs") {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> pos(0.05, 4.0);
        std::uniform_real_distribution<double> any(-3.0, 3.0);
        std::uniform_real_distribution<double> unit(-0.99, 0.99);
        int failures = 0;
        for (int k = 0; k < 100000; ++k) {
            const double a = pos(rng);
            const double b = any(rng);
            const double c = unit(rng);
            const Interval A(a), B(b), C(c);
            const Big ea(a), eb(b), ec(c);
            using boost::multiprecision::acos;
            using boost::multiprecision::exp;
            using boost::multiprecision::log;
            using boost::multiprecision::pow;
            using boost::multiprecision::sin;
            using boost::multiprecision::sqrt;
            switch (k % 5) {
                case 0:
                    failures += !encloses((A * B + C) / (A + Interval(1.0)), (ea * eb + ec) / (ea + 1));
                    break;
                case 1:
                    failures += !encloses(sqrt(A) * pow(B, 3) - A / Interval(7.0), sqrt(ea) * eb * eb * eb - ea / 7);
                    break;
                case 2:
                    failures += !encloses(sin(B) + acos(C) * A, sin(eb) + acos(ec) * ea);
                    break;
                case 3:
                    failures += !encloses(exp(C) * log(A) - B, exp(ec) * log(ea) - eb);
                    break;
                default:
                    failures += !encloses(pow(A, Interval(c)) + tan(Interval(c)),
                                          pow(ea, ec) + boost::multiprecision::tan(ec));
                    break;
            }
        }
        CHECK(failures == 0);
    }

    TEST_CASE("interval variants of nondegenerate inputs contain sampled images") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> pos(0.1, 3.0);
        for (int k = 0; k < 2000; ++k) {
            double lo = pos(rng);
            double hi = pos(rng);
            if (lo > hi) std::swap(lo, hi);
            const Interval x(lo, hi);
            const Interval image = x * x - Interval(2.0) * x + sqrt(x);
            for (int s = 0; s <= 10; ++s) {
                const double p = lo + (hi - lo) * s / 10.0;
                const Big exact = Big(p) * p - 2 * Big(p) + boost::multiprecision::sqrt(Big(p));
                CHECK(encloses(image, exact));
            }
        }
    }

    TEST_CASE("decimal round trip") {
        for (double x : {0.1, 1.0 / 3.0, 0.9068996821171089, 1e-300, -2.5e17}) {
            CHECK(std::stod(to_decimal(x)) == x);
        }
    }

    TEST_CASE("rational parsing and enclosure") {
        CHECK(parse_rational("-12.5e-3") == Rational(-1, 80));
        CHECK(parse_rational("7/3") == Rational(7, 3));
        CHECK(parse_rational("42") == Rational(42));
        CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
        CHECK_THROWS_AS(parse_rational("abc"), FormatError);
        const Interval e = enclose(Rational(1, 3));
        CHECK(ulps_between(e.lo(), e.hi()) == 1);
        CHECK(enclose(Rational(3, 4)) == Interval(0.75));
    }
}
