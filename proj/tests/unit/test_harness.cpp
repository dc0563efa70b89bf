#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "discpack/bounds.hpp"
#include "discpack/error.hpp"
#include "discpack/flows.hpp"
#include "discpack/harness.hpp"

using namespace discpack;

TEST_SUITE("harness") {
    TEST_CASE("verdict strings") {
        CHECK(to_string(Verdict::Proven) == "proven");
        CHECK(verdict_from_string("unproven") == Verdict::Unproven);
        CHECK_THROWS_AS(verdict_from_string("maybe"), FormatError);
        CHECK(to_string(ProofTrace::Status::DepthExceeded) == "depth_exceeded");
    }

    TEST_CASE("make_certifier") {
        CHECK(make_certifier("blind")->name() == "blind");
        CHECK(make_certifier("florian")->name() == "florian");
        const auto t = make_certifier("threshold:0.95");
        CHECK(dynamic_cast<ThresholdCertifier&>(*t).threshold() == 0.95);
        CHECK_THROWS_AS(make_certifier("nope"), FormatError);
        CHECK_THROWS_AS(make_certifier("threshold:abc"), FormatError);
    }

    TEST_CASE("dichotomy brackets the threshold") {
        std::mt19937 rng(31);
        std::uniform_real_distribution<double> dist(0.5, 0.99);
        for (int k = 0; k < 200; ++k) {
            const double t = dist(rng);
            const ThresholdCertifier c(t);
            const double d = find_delta(c, Interval(0.5, 0.6), 1e-4, 0.0, 1.0);
            CHECK(d >= t);
            CHECK(d <= t + 1e-4);
        }
    }

    TEST_CASE("find_delta with the Blind certifier") {
        const BlindCertifier c;
        const double d = find_delta(c, Interval(0.75), 1e-4);
        const double target = std::max(delta1(), blind_bound(0.75));
        CHECK(d >= target);
        CHECK(d <= target + 1e-4);
        CHECK(c.check(Interval(0.75), d) == Verdict::Proven);
    }

    TEST_CASE("find_delta rejects bad starting bounds") {
        const BlindCertifier c;
        CHECK_THROWS_AS(find_delta(c, Interval(0.75), 1e-4, 0.99, 1.0), InitialBoundsInvalid);
        CHECK_THROWS_AS(find_delta(c, Interval(0.75), 1e-4, 0.8, 0.85), InitialBoundsInvalid);
        CHECK_THROWS_AS(find_delta(c, Interval(0.5), 1e-4), InitialBoundsInvalid);
        const ThresholdCertifier t(0.95);
        CHECK_THROWS_AS(find_delta(t, Interval(0.5), 1e-4, 0.96, 0.99), InitialBoundsInvalid);
    }

    TEST_CASE("certifier soundness") {
        const BlindCertifier blind;
        const FlorianCertifier florian;
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> lo(0.05, 0.98);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < 2000; ++k) {
            const double a = lo(rng);
            const double b = a + (0.999 - a) * 0.1 * unit(rng);
            const double delta = delta1() + 0.05 * unit(rng);
            const Interval r(a, b);
            if (florian.check(r, delta) == Verdict::Proven) {
                for (int j = 0; j <= 10; ++j) {
                    const double x = a + (b - a) * j / 10.0;
                    CHECK(std::max(delta1(), florian_bound(x)) <= delta);
                }
            }
            if (a >= kBlindThreshold && blind.check(r, delta) == Verdict::Proven) {
                for (int j = 0; j <= 10; ++j) {
                    const double x = a + (b - a) * j / 10.0;
                    CHECK(std::max(delta1(), blind_bound(x)) <= delta);
                }
            }
            if (blind.refutes(r, delta)) CHECK(blind.check(Interval(b), delta) == Verdict::Unproven);
            if (florian.refutes(r, delta)) CHECK(florian.check(Interval(b), delta) == Verdict::Unproven);
        }
        CHECK(blind.check(Interval(0.6, 0.9), 0.99) == Verdict::Unproven);
        CHECK(blind.check(Interval(0.9, 0.95), delta1() - 1e-9) == Verdict::Unproven);
    }

    TEST_CASE("certify the Blind range") {
        const BlindCertifier c;
        const Interval range(0.743, 0.99);
        const auto trace = certify_interval(c, range, delta1());
        CHECK(trace.success());
        const auto leaves = trace.leaves();
        CHECK(leaves.size() == trace.leaf_count);
        REQUIRE(!leaves.empty());
        CHECK(leaves.front()->r.lo() == range.lo());
        CHECK(leaves.back()->r.hi() == range.hi());
        for (std::size_t i = 0; i + 1 < leaves.size(); ++i) CHECK(leaves[i]->r.hi() == leaves[i + 1]->r.lo());
        for (const auto* leaf : leaves) CHECK(leaf->verdict == Verdict::Proven);
        CHECK(trace.node_count == 2 * trace.leaf_count - 1);
    }

    TEST_CASE("certification fails below r_B") {
        const BlindCertifier c;
        const auto narrow = certify_interval(c, Interval(0.70, 0.72), delta1());
        CHECK(narrow.status == ProofTrace::Status::DepthExceeded);

        const auto wide = certify_interval(c, Interval(0.70, 0.99), delta1());
        CHECK(!wide.success());
        // r_B is only known to its enclosure.
        const Interval rb = r_blind_interval();
        for (const auto* leaf : wide.leaves()) {
            if (leaf->verdict == Verdict::Unproven) CHECK(leaf->r.lo() < rb.hi());
            if (leaf->r.hi() < rb.lo()) CHECK(leaf->verdict == Verdict::Unproven);
        }
    }

    TEST_CASE("depth limit of one") {
        const BlindCertifier c;
        const auto ok = certify_interval(c, Interval(0.8, 0.9), delta1(), 1);
        CHECK(ok.success());
        CHECK(ok.leaf_count == 1);
        const auto bad = certify_interval(c, Interval(0.7, 0.9), delta1(), 1);
        CHECK(!bad.success());
        CHECK(bad.leaf_count == 1);
        const auto point = certify_interval(c, Interval(0.8), delta1());
        CHECK(point.success());
        CHECK(point.leaf_count == 1);
    }

    TEST_CASE("trace JSON and CSV round trips") {
        const BlindCertifier c;
        const auto trace = certify_interval(c, Interval(0.70, 0.80), delta1(), 6);
        const auto j = to_json(trace);
        CHECK(j.at("status") == "depth_exceeded");
        const auto back = trace_from_json(nlohmann::json::parse(j.dump()));
        CHECK(to_json(back) == j);
        CHECK(back.leaf_count == trace.leaf_count);

        std::stringstream io;
        write_trace_csv(io, trace);
        CHECK(io.str().rfind("lo,hi,delta,verdict\n", 0) == 0);
        const auto rows = read_trace_csv(io);
        const auto leaves = trace.leaves();
        REQUIRE(rows.size() == leaves.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].r.lo() == leaves[i]->r.lo());
            CHECK(rows[i].r.hi() == leaves[i]->r.hi());
            CHECK(rows[i].delta == leaves[i]->delta);
            CHECK(rows[i].verdict == leaves[i]->verdict);
        }
        std::istringstream bad("lo,hi,delta,verdict\n0.1,0.2,0.9\n");
        CHECK_THROWS_AS(read_trace_csv(bad), FormatError);
    }

    TEST_CASE("sweep") {
        const BlindCertifier c;
        CHECK(sweep(c, {}, 1e-4).samples.empty());
        std::vector<double> grid;
        for (int i = 0; i <= 24; ++i) grid.push_back(0.75 + 0.01 * i);
        const auto result = sweep(c, grid, 1e-4);
        CHECK(result.failures.empty());
        REQUIRE(result.samples.size() == grid.size());
        for (const auto& s : result.samples) {
            const double bound = std::max(delta1(), blind_bound(s.r()));
            CHECK(s.value() >= bound);
            CHECK(s.value() <= bound + 1e-4);
        }
        const auto mixed = sweep(c, {0.5, 0.8}, 1e-4);
        CHECK(mixed.samples.size() == 1);
        REQUIRE(mixed.failures.size() == 1);
        CHECK(mixed.failures[0].r == 0.5);
    }

    TEST_CASE("sweep samples feed a sound envelope") {
        const FlorianCertifier c;
        std::vector<double> grid;
        for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
        const auto result = sweep(c, grid, 1e-5);
        REQUIRE(result.samples.size() == grid.size());
        std::vector<FlowRecipe> recipes;
        for (const auto& name : builtin_recipe_names()) recipes.push_back(builtin_recipe(name));
        LowerBoundModel lower(recipes);
        for (int i = 0; i <= 200; ++i) {
            const double r = 0.05 + i * (0.95 - 0.05) / 200.0;
            CHECK(lipschitz_envelope(result.samples, r) >= lower.at(r).value);
        }
    }
}
