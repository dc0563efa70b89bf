#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "discpack/bounds.hpp"
#include "discpack/error.hpp"
#include "discpack/geometry.hpp"

using namespace discpack;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double bisect_blind_root() {
    double lo = 0.6735;
    double hi = 1.0;
    for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
        const double mid = 0.5 * (lo + hi);
        (blind_bound(mid) > delta1() ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Piecewise-linear f = delta1 + g with g >= 0 and |slope| below pi / sqrt 3,
/// so |f(y) - f(x)| <= pi (y - x) / (y^2 sqrt 3) for every x < y <= 1.
struct SlopeBoundedFunction {
    std::vector<double> knots;
    std::vector<double> values;

    double operator()(double r) const {
        auto it = std::upper_bound(knots.begin(), knots.end(), r);
        if (it == knots.begin()) return values.front();
        if (it == knots.end()) return values.back();
        const std::size_t i = static_cast<std::size_t>(it - knots.begin());
        const double t = (r - knots[i - 1]) / (knots[i] - knots[i - 1]);
        return values[i - 1] + t * (values[i] - values[i - 1]);
    }
};

SlopeBoundedFunction random_function(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SlopeBoundedFunction f;
    double r = 0.05;
    double g = 0.05 * unit(rng);
    f.knots.push_back(r);
    f.values.push_back(delta1() + g);
    while (r < 0.999) {
        const double next = std::min(0.999, r + 0.005 + 0.05 * unit(rng));
        const double max_slope = M_PI / std::sqrt(3.0);
        const double slope = (2.0 * unit(rng) - 1.0) * max_slope * 0.999;
        g = std::max(0.0, g + slope * (next - r));
        r = next;
        f.knots.push_back(r);
        f.values.push_back(delta1() + g);
    }
    return f;
}

}  // namespace

TEST_SUITE("bounds") {
    TEST_CASE("delta1") {
        CHECK(std::abs(delta1() - 0.9068996821171089) < 1e-15);
        const Big exact = boost::math::constants::pi<Big>() / (2 * boost::multiprecision::sqrt(Big(3)));
        CHECK(Big(delta1_interval().lo()) <= exact);
        CHECK(exact <= Big(delta1_interval().hi()));
        int ulps = 0;
        for (double x = delta1_interval().lo(); x < delta1_interval().hi(); x = std::nextafter(x, 2.0)) ++ulps;
        CHECK(ulps <= 4);
        CHECK(delta1() == doctest::Approx(density(hexagonal_domain())).epsilon(1e-15));
        CHECK(delta1() == doctest::Approx(M_PI / (6 * std::tan(M_PI / 6))).epsilon(1e-15));
    }

    TEST_CASE("florian bound") {
        CHECK(std::abs(florian_bound(1.0) - delta1()) <= 1e-12);
        const double half = florian_bound(0.5);
        CHECK(half > delta1());
        CHECK(half < 1.0);
        CHECK(florian_bound(Interval(0.5)).contains(half));
        CHECK(florian_bound(Interval(0.4, 0.6)).contains(half));
        CHECK(florian_bound(Interval(0.4, 0.6)).hi() >= florian_bound(0.4));
        CHECK_THROWS_AS(florian_bound(0.0), DomainError);
        CHECK_THROWS_AS(florian_bound(1.5), DomainError);
        CHECK_THROWS_AS(florian_bound(Interval(0.0, 0.5)), DomainError);
        CHECK(florian_bound(0.05) > delta1());
    }

    TEST_CASE("florian triangle angles sum to pi") {
        for (int k = 1; k <= 1000; ++k) {
            const double r = k / 1000.0;
            const auto t = florian_triangle(r);
            CHECK(std::abs(t.alpha + 2 * t.beta - M_PI) <= 1e-12);
            const double s = 1.0 + r;
            CHECK(t.area == doctest::Approx(r * std::sqrt(1 + 2 * r)).epsilon(1e-12));
            CHECK(t.area == doctest::Approx(0.5 * 2 * r * std::sqrt(s * s - r * r)).epsilon(1e-12));
        }
    }

    TEST_CASE("blind bound") {
        using boost::multiprecision::tan;
        const Big pi = boost::math::constants::pi<Big>();
        const Big exact = 2 * pi / (7 * tan(pi / 7) + 5 * tan(pi / 5));
        CHECK(blind_bound(1.0) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-14));
        CHECK(blind_bound(1.0) == doctest::Approx(0.897119).epsilon(1e-6));
        CHECK(Big(blind_bound(Interval(1.0)).lo()) <= exact);
        CHECK(exact <= Big(blind_bound(Interval(1.0)).hi()));
        CHECK_THROWS_AS(blind_bound(0.5), DomainError);
        CHECK_THROWS_AS(blind_bound(Interval(0.6, 0.8)), DomainError);
        // Florian is marginally smaller right at the threshold.
        CHECK(blind_bound(0.6735) > florian_bound(0.6735));
        for (double r = 0.675; r < 1.0; r += 0.005) CHECK(blind_bound(r) < florian_bound(r));
    }

    TEST_CASE("r_B") {
        CHECK(std::abs(blind_bound(r_blind()) - delta1()) <= 1e-9);
        CHECK(std::abs(r_blind() - bisect_blind_root()) <= 1e-9);
        CHECK(std::abs(r_blind() - 0.74299) <= 1e-5);
        CHECK(r_blind_interval().contains(r_blind()));
        CHECK(r_blind_interval().width() < 1e-13);
        CHECK(r_blind() >= 0.6468);
        CHECK(r_blind() < 1.0);
    }

    TEST_CASE("bound sample invariant") {
        CHECK_NOTHROW(BoundSample(0.5, 0.93));
        CHECK_THROWS_AS(BoundSample(0.5, 0.9), DomainError);
        CHECK_THROWS_AS(BoundSample(1.5, 0.95), DomainError);
    }

    TEST_CASE("lipschitz envelope examples") {
        const std::vector<BoundSample> one{BoundSample(0.5, 0.93)};
        CHECK(lipschitz_envelope(one, 0.5) == 0.93);
        CHECK(lipschitz_envelope(one, 0.51) == doctest::Approx(0.93 + M_PI / (0.51 * 0.51 * std::sqrt(3.0)) * 0.01));
        CHECK(lipschitz_envelope(one, 0.49) == doctest::Approx(0.93 + M_PI / (0.5 * 0.5 * std::sqrt(3.0)) * 0.01));
        CHECK_THROWS_AS(lipschitz_envelope({}, 0.5), DomainError);
    }

    TEST_CASE("envelope dominance at sample points") {
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> r(0.05, 0.99);
        std::uniform_real_distribution<double> v(0.0, 0.1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<BoundSample> samples;
            for (int k = 0; k < 10; ++k) samples.emplace_back(r(rng), delta1() + v(rng));
            for (const auto& s : samples) CHECK(lipschitz_envelope(samples, s.r()) <= s.value());
        }
    }

    TEST_CASE("envelope soundness on slope-bounded functions") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> query(0.05, 0.999);
        for (int trial = 0; trial < 100; ++trial) {
            const auto f = random_function(rng);
            std::vector<BoundSample> samples;
            for (double r = 0.06; r < 0.999; r += 0.037) samples.emplace_back(r, f(r));
            for (int q = 0; q < 200; ++q) {
                const double r = query(rng);
                CHECK(lipschitz_envelope(samples, r) >= f(r) - 1e-12);
            }
        }
    }

    TEST_CASE("best upper bound") {
        const auto at09 = best_upper(0.9, {});
        CHECK(at09.source == BoundSource::Blind);
        CHECK(at09.value == std::max(delta1(), blind_bound(0.9)));
        const auto at03 = best_upper(0.3, {});
        CHECK(at03.source == BoundSource::Florian);
        CHECK(at03.value == florian_bound(0.3));
        CHECK(best_upper(r_blind(), {}).value <= delta1() + 1e-9);
        const auto env = best_upper(0.3, {BoundSample(0.3, 0.92)});
        CHECK(env.source == BoundSource::Envelope);
        CHECK(env.value == 0.92);
        CHECK_THROWS_AS(best_upper(1.0, {}), DomainError);
        CHECK(to_string(BoundSource::Envelope) == "envelope");
    }

    TEST_CASE("bound sample CSV round trip") {
        const std::vector<BoundSample> samples{BoundSample(0.1, 0.95), BoundSample(1.0 / 3.0, 0.9123456789012345)};
        std::stringstream io;
        write_bound_samples(io, samples);
        const auto back = read_bound_samples(io);
        REQUIRE(back.size() == 2);
        CHECK(back[1].r() == samples[1].r());
        CHECK(back[1].value() == samples[1].value());
        std::istringstream bad("r,value\n0.5;0.93\n");
        CHECK_THROWS_AS(read_bound_samples(bad), FormatError);
        std::istringstream low("0.5,0.5\n");
        CHECK_THROWS_AS(read_bound_samples(low), DomainError);
    }
}
