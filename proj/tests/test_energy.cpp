#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "apiwatt/callgraph.hpp"
#include "apiwatt/energy.hpp"
#include "support/oracles.hpp"

using namespace apiwatt;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace {

PowerProfile constant(double mw, double until_us, double step_us = 50.0) {
    PowerProfile p;
    p.test_name = "p.T::t";
    for (double t = 0.0; t <= until_us + 1e-9; t += step_us) p.samples.push_back({t, mw});
    return p;
}

MethodInterval iv(std::int64_t start_ns, std::int64_t dur_ns, std::size_t depth, std::optional<std::size_t> parent) {
    return {{"p", "C", "m"}, 1, start_ns, dur_ns, depth, parent, 0};
}

}  // namespace

TEST_CASE("parse_power") {
    const auto p = parse_power("#power v1;p.T::t;2;20000\n0;100.0\n50;100.0\n");
    CHECK(p.test_name == "p.T::t");
    CHECK(p.sample_index == 2);
    CHECK(p.nominal_rate_hz == 20000.0);
    REQUIRE(p.samples.size() == 2);
    CHECK(p.samples[1] == PowerSample{50.0, 100.0});

    CHECK(parse_power("#power v1;p.T::t;0;20000\n# nothing recorded\n").samples.empty());

    auto kind = [](const char* text) {
        try {
            parse_power(text);
        } catch (const ParseError& e) {
            return e.kind();
        }
        FAIL("no error");
        return ParseError::Kind::Malformed;
    };
    using K = ParseError::Kind;
    CHECK(kind("#power v1;p.T::t;0;20000\n0;1\n0;2\n") == K::NonMonotone);
    CHECK(kind("#power v1;p.T::t;0;20000\n0;-1\n") == K::Value);
    CHECK(kind("#power v1;p.T::t;0;20000\n0;nan\n") == K::Malformed);
    CHECK(kind("#power v1;p.T::t;0;20000\n0;1;2\n") == K::Malformed);
    CHECK(kind("#power v9;p.T::t;0;20000\n") == K::Version);
    CHECK(kind("#power v1;p.T::t;0;0\n") == K::Malformed);
    CHECK(kind("#power v1;p.T::t;0\n") == K::Malformed);
    CHECK(kind("0;1\n") == K::Malformed);
}

TEST_CASE("power round trip") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2000.0);
    PowerProfile p;
    p.test_name = "a.b.C::d";
    p.sample_index = 4;
    p.nominal_rate_hz = 19999.5;
    double t = 0.0;
    for (int i = 0; i < 500; ++i) {
        t += 0.001 + u(rng) / 7.0;
        p.samples.push_back({t, u(rng) / 3.0});
    }
    CHECK(parse_power(write_power(p)) == p);
    p.samples[3].power_mw = -1.0;
    CHECK_THROWS_AS(write_power(p), InvariantError);
}

TEST_CASE("integrate analytic cases") {
    const auto flat = constant(100.0, 10'000.0);
    CHECK_THAT(integrate(flat, 0.0, 10'000.0), WithinRel(1.0, 1e-9));
    // P mW over d ms is P*d/1000 mJ
    CHECK_THAT(integrate(flat, 1234.5, 1234.5 + 3000.0), WithinRel(0.3, 1e-9));

    PowerProfile ramp;
    for (int i = 0; i <= 200; ++i) ramp.samples.push_back({i * 50.0, i * 0.5});
    CHECK_THAT(integrate(ramp, 0.0, 10'000.0), WithinRel(0.5, 1e-9));
    // sub-window with interpolated edges: integral of t/100 over [1025, 7310] us
    CHECK_THAT(integrate(ramp, 1025.0, 7310.0), WithinRel((7310.0 * 7310.0 - 1025.0 * 1025.0) / 200.0 * 1e-6, 1e-9));

    CHECK_THROWS_AS(integrate(flat, -5.0, 5.0), RangeError);
    CHECK_THROWS_AS(integrate(flat, 0.0, 10'050.0), RangeError);
    CHECK_THROWS_AS(integrate(flat, 10.0, 5.0), RangeError);
    CHECK(integrate(flat, 20.0, 20.0) == 0.0);
    PowerProfile one;
    one.samples = {{0.0, 1.0}};
    CHECK_THROWS_AS(integrate(one, 0.0, 0.0), RangeError);
}

TEST_CASE("trapezoid is exact on random piecewise-linear power") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        PowerProfile p;
        double t = u(rng) * 10.0;
        for (int i = 0; i < 50; ++i) {
            p.samples.push_back({t, 1000.0 * u(rng)});
            t += 1.0 + 99.0 * u(rng);
        }
        // closed form of the piecewise-linear integral between knots i and j
        auto exact = [&](std::size_t i, std::size_t j) {
            double s = 0.0;
            for (std::size_t k = i; k < j; ++k)
                s += (p.samples[k + 1].t_us - p.samples[k].t_us) * (p.samples[k].power_mw + p.samples[k + 1].power_mw) / 2.0;
            return s * 1e-6;
        };
        const auto i = std::uniform_int_distribution<std::size_t>(0, 20)(rng);
        const auto j = std::uniform_int_distribution<std::size_t>(25, 49)(rng);
        CHECK_THAT(integrate(p, p.samples[i].t_us, p.samples[j].t_us), WithinRel(exact(i, j), 1e-12));

        const double a = p.samples.front().t_us + u(rng) * 100.0;
        const double c = p.samples.back().t_us - u(rng) * 100.0;
        const double b = a + (c - a) * u(rng);
        CHECK_THAT(integrate(p, a, c), WithinRel(integrate(p, a, b) + integrate(p, b, c), 1e-9));
    }
}

TEST_CASE("attribute") {
    const auto p = constant(100.0, 10'000.0);
    const std::vector<MethodInterval> ivs = {iv(0, 10'000'000, 0, std::nullopt), iv(2'000'000, 4'000'000, 1, 0)};
    const auto rec = attribute(ivs, p);
    REQUIRE(rec.size() == 2);
    CHECK_THAT(rec[0].energy_mj_inclusive, WithinRel(1.0, 1e-12));
    CHECK_THAT(rec[1].energy_mj_inclusive, WithinRel(0.4, 1e-12));
    CHECK_THAT(rec[0].energy_mj_exclusive, WithinRel(0.6, 1e-12));
    CHECK_THAT(rec[1].energy_mj_exclusive, WithinRel(0.4, 1e-12));
    CHECK_THAT(rec[0].avg_power_mw, WithinRel(100.0, 1e-12));

    const auto zero = attribute(std::vector{iv(0, 10'000'000, 0, std::nullopt), iv(3'000'000, 0, 1, 0)}, p);
    CHECK(zero[1].energy_mj_inclusive == 0.0);
    CHECK(zero[1].energy_mj_exclusive == 0.0);
    CHECK(zero[1].avg_power_mw == 0.0);

    const auto tiled = attribute(
        std::vector{iv(0, 10'000'000, 0, std::nullopt), iv(0, 4'000'000, 1, 0), iv(4'000'000, 6'000'000, 1, 0)}, p);
    CHECK_THAT(tiled[0].energy_mj_exclusive, WithinAbs(0.0, 1e-9));

    CHECK_THROWS_AS(attribute(std::vector{iv(9'000'000, 2'000'000, 0, std::nullopt)}, p), RangeError);
    // a clock offset moves the window onto the power clock
    const auto shifted = attribute(std::vector{iv(9'000'000, 2'000'000, 0, std::nullopt)}, p, -2000.0);
    CHECK_THAT(shifted[0].energy_mj_inclusive, WithinRel(0.2, 1e-12));
}

TEST_CASE("exclusive energies conserve the root on random trees") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const auto tree = oracle::random_tree(rng, {200, 8, 0.2});
        const auto ivs = method_intervals(tree);
        const auto root_end = tree.roots[0].t_end_ns();
        PowerProfile p;
        // power clock in us; trace in ns scaled so one unit = 37 us
        for (std::int64_t k = 0; k <= root_end * 37 + 37; k += 13) p.samples.push_back({static_cast<double>(k), 2000.0 * u(rng)});
        std::vector<MethodInterval> scaled = ivs;
        for (auto& x : scaled) {
            x.t_start_ns *= 37'000;
            x.duration_ns *= 37'000;
        }
        const auto rec = attribute(scaled, p);
        double excl = 0.0;
        for (const auto& r : rec) {
            CHECK(r.energy_mj_exclusive >= 0.0);
            CHECK(r.energy_mj_exclusive <= r.energy_mj_inclusive + 1e-12);
            excl += r.energy_mj_exclusive;
        }
        if (rec[0].energy_mj_inclusive > 0.0) CHECK_THAT(excl, WithinRel(rec[0].energy_mj_inclusive, 1e-6));
    }
}

TEST_CASE("test_energy and aggregation") {
    CallTree t;
    t.test_name = "p.T::t";
    CallNode root;
    root.method = {"p", "T", "t"};
    root.t_start_ns = 1'000'000;
    root.duration_ns = 5'000'000;
    t.roots.push_back(root);
    const auto p = constant(200.0, 10'000.0);
    const auto r = test_energy(t, p, "1.0");
    CHECK_THAT(r.energy_mj, WithinRel(1.0, 1e-12));
    CHECK_THAT(r.duration_ms, WithinRel(5.0, 1e-12));
    CHECK_THAT(r.avg_power_mw, WithinRel(200.0, 1e-12));
    CHECK(r.revision == "1.0");

    CallTree empty;
    CHECK_THAT(test_energy(empty, p, "1.0").energy_mj, WithinRel(2.0, 1e-12));

    TestEnergyRecord a{"p.T::t", "1.0", 1.0, 10.0, 2.0, 1};
    TestEnergyRecord b{"p.T::t", "1.0", 3.0, 30.0, 4.0, 1};
    CHECK(aggregate_samples(std::vector{a}) == a);
    const auto m = aggregate_samples(std::vector{a, b});
    CHECK(m.energy_mj == 2.0);
    CHECK(m.avg_power_mw == 20.0);
    CHECK(m.duration_ms == 3.0);
    CHECK(m.n_samples_averaged == 2);
    TestEnergyRecord c{"p.T::t", "1.0", 100.0, 0.0, 0.0, 1};
    CHECK(aggregate_samples(std::vector{a, b, c}, Aggregation::Median).energy_mj == 3.0);

    TestEnergyRecord other = b;
    other.test_name = "p.T::u";
    CHECK_THROWS_AS(aggregate_samples(std::vector{a, other}), InvariantError);
    other = b;
    other.revision = "2.0";
    CHECK_THROWS_AS(aggregate_samples(std::vector{a, other}), InvariantError);
    CHECK_THROWS_AS(aggregate_samples(std::vector<TestEnergyRecord>{}), InvariantError);
}
