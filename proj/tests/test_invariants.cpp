#include "bv/generators.hpp"
#include "bv/invariants.hpp"

#include <doctest.h>

#include <bit>
#include <numeric>
#include <random>

using namespace bv;

namespace {

// lambda^i(x_max) on an odometer is the counter value i - 1 modulo the
// product of the radices, least significant digit first.
std::vector<std::size_t> odometer_digits(long value, const std::vector<std::size_t> &radices, std::size_t depth) {
    long modulus = 1;
    for (std::size_t k = 0; k < depth; ++k)
        modulus *= static_cast<long>(radices[k]);
    long v = ((value % modulus) + modulus) % modulus;
    std::vector<std::size_t> digits;
    for (std::size_t k = 0; k < depth; ++k) {
        digits.push_back(static_cast<std::size_t>(v % static_cast<long>(radices[k])));
        v /= static_cast<long>(radices[k]);
    }
    return digits;
}

std::vector<char> odometer_window(const std::vector<std::size_t> &radices, const FinitePath &cyl, long n,
                                  long offset = 0) {
    std::vector<char> w;
    for (long i = offset - n; i <= offset + n; ++i)
        w.push_back(odometer_digits(i - 1, radices, cyl.depth()) == cyl.edges());
    return w;
}

std::vector<bool> bits(const std::string &s) {
    std::vector<bool> out;
    for (char c : s)
        out.push_back(c == '1');
    return out;
}

OrderedBratteliDiagram skau_sample(std::uint64_t seed) {
    const auto d = random_simple_diagram(seed, {9, 3, 2, 3});
    return skau_order(d, d.depth());
}

std::vector<std::size_t> random_cuts(std::mt19937_64 &rng, std::size_t depth) {
    std::vector<std::size_t> cuts{0};
    // x_max is pinned only below the last level, so keep depth - 1 as a cut
    for (std::size_t level = 1; level + 1 < depth; ++level)
        if (rng() % 2)
            cuts.push_back(level);
    cuts.push_back(depth - 1);
    cuts.push_back(depth);
    return cuts;
}

} // namespace

TEST_CASE("binary odometer return window of the depth-one cylinder") {
    const std::vector<std::size_t> radices(10, 2);
    const auto od = odometer(radices);
    const FinitePath cyl({0});
    const auto expected = odometer_window(radices, cyl, 4);
    CHECK(expected == std::vector<char>{0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK(vershik_return_window(od, cyl, 4) == expected);
    CHECK(vershik_return_window(od, FinitePath({1}), 4) == odometer_window(radices, FinitePath({1}), 4));
}

TEST_CASE("whole space cylinder returns every time") {
    const auto od = odometer(std::vector<std::size_t>(8, 2));
    CHECK(vershik_return_window(od, FinitePath(), 20) == std::vector<char>(41, 1));
}

TEST_CASE("odometer windows against counter arithmetic") {
    for (const auto &radices : {std::vector<std::size_t>(12, 2), std::vector<std::size_t>{3, 2, 4, 2, 3, 2, 2, 3}}) {
        const auto od = odometer(radices);
        const auto family = CylinderFamily::all_of_depth(od, 3);
        for (long offset : {0L, 1L, -5L, 17L}) {
            const auto windows = return_windows(family, 40, offset);
            CHECK(windows.radius == 40);
            for (std::size_t u = 0; u < family.size(); ++u)
                CHECK(windows.words[u] == odometer_window(radices, family.cylinders()[u], 40, offset));
        }
    }
}

TEST_CASE("orbit windows deepen as needed") {
    const auto od = odometer(std::vector<std::size_t>(12, 2));
    const auto orbit = xmax_orbit(od, 100, 1);
    CHECK(orbit.first == -100);
    CHECK(orbit.last == 100);
    CHECK((std::size_t{1} << orbit.depth) > 100);
    for (long i = -100; i <= 100; ++i)
        CHECK(orbit.at(i).edges() == odometer_digits(i - 1, std::vector<std::size_t>(12, 2), orbit.depth));
    CHECK_THROWS_AS(xmax_orbit(odometer({2, 2, 2}), 100, 1), ProviderExhausted);

    // a stationary diagram extends through its provider
    const auto deep = OrderedBratteliDiagram::by_rule(stationary_diagram({{1, 1}, {1, 1}}, 2), OrderRule::skau);
    const auto far = xmax_orbit(deep, 500, 1);
    CHECK(far.prefixes.size() == 1001);
}

TEST_CASE("base point and equivariance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto od = skau_sample(seed);
        const auto family = CylinderFamily::all_of_depth(od, 2);
        const long n = 16;
        const auto w0 = return_windows(family, n, 0);
        const auto w1 = return_windows(family, n, 1);
        const auto top = max_path(od, od.depth(), 0);
        for (std::size_t u = 0; u < family.size(); ++u) {
            const auto &cyl = family.cylinders()[u];
            const bool at_base = std::equal(cyl.edges().begin(), cyl.edges().end(), top.edges().begin());
            CHECK((w0.words[u][n] == 1) == at_base);
            // time i seen from lambda(x_max) is time i + 1 seen from x_max
            for (std::size_t k = 0; k + 1 < w0.words[u].size(); ++k)
                CHECK(w1.words[u][k] == w0.words[u][k + 1]);
        }
    }
}

TEST_CASE("return codes") {
    const auto od = odometer(std::vector<std::size_t>(10, 2));
    SUBCASE("depth-one cylinders set exactly one bit per position") {
        const auto family = CylinderFamily::all_of_depth(od, 1);
        const auto code = ret_code(family, 30);
        REQUIRE(code.size() == 61);
        const auto parity = vershik_return_window(od, FinitePath({1}), 30);
        for (std::size_t k = 0; k < code.size(); ++k) {
            CHECK(std::popcount(code[k]) == 1);
            CHECK((code[k] == 2) == (parity[k] == 1));
        }
    }
    SUBCASE("codes are the transposed windows and shift with the base") {
        const auto family = CylinderFamily::all_of_depth(od, 3);
        const auto windows = return_windows(family, 25);
        const auto code = ret_code(family, 25);
        const auto shifted = ret_code(family, 25, 1);
        for (std::size_t k = 0; k < code.size(); ++k)
            for (std::size_t u = 0; u < family.size(); ++u)
                CHECK(((code[k] >> u) & 1) == static_cast<std::uint64_t>(windows.words[u][k]));
        for (std::size_t k = 0; k + 1 < code.size(); ++k)
            CHECK(shifted[k] == code[k + 1]);
    }
    SUBCASE("letters separate distinct prefixes") {
        const auto sample = skau_sample(5);
        const auto family = CylinderFamily::all_of_depth(sample, 2);
        if (family.size() <= 64) {
            const auto code = ret_code(family, 20);
            const auto orbit = xmax_orbit(sample, 20, 2);
            for (long i = -20; i <= 20; ++i)
                for (long j = -20; j <= 20; ++j) {
                    const auto pi = orbit.at(i).edges(), pj = orbit.at(j).edges();
                    const bool same = std::equal(pi.begin(), pi.begin() + 2, pj.begin());
                    CHECK((code[static_cast<std::size_t>(i + 20)] == code[static_cast<std::size_t>(j + 20)]) == same);
                }
        }
    }
}

TEST_CASE("cylinder families") {
    const auto od = odometer({2, 2, 2});
    CHECK_THROWS_AS(CylinderFamily(od, {FinitePath({0}), FinitePath({0})}), DiagramError);
    CHECK_THROWS_AS(CylinderFamily(od, {FinitePath({5})}), DiagramError);
    CHECK(CylinderFamily::all_of_depth(od, 2).size() == 4);
    CHECK(CylinderFamily(od, {FinitePath({0}), FinitePath({1, 1})}).max_depth() == 2);
}

TEST_CASE("return windows are syndetic with a stable gap") {
    const auto od = odometer(std::vector<std::size_t>(14, 2));
    for (const auto &cyl : {FinitePath({1}), FinitePath({0, 1, 1}), FinitePath({1, 0, 0, 1})}) {
        std::vector<long> gaps;
        for (long n = 40; n <= 640; n *= 2) {
            const auto w = vershik_return_window(od, cyl, n);
            std::vector<long> members;
            for (long i = -n; i <= n; ++i)
                if (w[static_cast<std::size_t>(i + n)])
                    members.push_back(i);
            gaps.push_back(syndetic_gap(members, n).gap);
        }
        CHECK(gaps.front() == (1L << cyl.depth()));
        CHECK(std::adjacent_find(gaps.begin(), gaps.end(), std::not_equal_to<>()) == gaps.end());
    }
}

TEST_CASE("conjugacy window checks") {
    SUBCASE("identity cuts") {
        const auto od = skau_sample(1);
        std::vector<std::size_t> cuts(od.depth() + 1);
        std::iota(cuts.begin(), cuts.end(), std::size_t{0});
        const auto report = conjugacy_window_check(od, cuts, CylinderFamily::all_of_depth(od, 2), 16);
        CHECK(report.passed());
        CHECK(report.failures.empty());
    }
    SUBCASE("binary odometer telescoped by pairs") {
        const auto od = odometer(std::vector<std::size_t>(8, 2));
        const std::vector<std::size_t> cuts{0, 2, 4, 6, 8};
        const auto report = conjugacy_window_check(od, cuts, CylinderFamily::all_of_depth(od, 2), 16);
        CHECK(report.passed());
        CHECK(report.cylinders_checked == 4);
        CHECK(report.paths_checked > 0);
    }
    SUBCASE("random skau diagrams with random cuts") {
        std::mt19937_64 rng(67);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto od = skau_sample(seed);
            const auto cuts = random_cuts(rng, od.depth());
            const auto family = CylinderFamily::all_of_depth(od, 1 + seed % 3);
            const auto report = conjugacy_window_check(od, cuts, family, 32);
            CHECK(report.passed());
            for (const auto &f : report.failures)
                MESSAGE(f);
        }
    }
}

TEST_CASE("reduction pipeline") {
    const auto p = bits("00000000");
    const auto q = bits("10000000");
    PipelineParams params{bits("01000000"), 1, 1, 300};

    SUBCASE("equal sets") {
        const auto r = reduction_pipeline({p}, {p}, params);
        CHECK(r.verdict == PipelineResult::Verdict::indistinguishable_at_depth);
        CHECK(r.algebras_identical);
        CHECK_FALSE(r.witness.has_value());
        CHECK(to_string(r.verdict) == "IndistinguishableAtDepth");
    }
    SUBCASE("different singletons") {
        const auto r = reduction_pipeline({p}, {q}, params);
        REQUIRE(r.verdict == PipelineResult::Verdict::distinguished);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->same_form(qtree_reals({p}).front()));
        CHECK(r.witness_side == "S");
        for (const auto &d : r.densities_s_prime)
            CHECK(compare(*r.witness, d, params.max_precision) != Comparison::unresolved);
        CHECK(to_string(r.verdict) == "Distinguished");
    }
    SUBCASE("a superset is told apart by its extra member") {
        const auto r = reduction_pipeline({p, q}, {p}, params);
        REQUIRE(r.verdict == PipelineResult::Verdict::distinguished);
        CHECK(r.witness->same_form(qtree_reals({q}).front()));
    }
    SUBCASE("equal sets never come out distinguished") {
        std::mt19937_64 rng(71);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::vector<bool>> s;
            for (int k = 0; k < 2; ++k) {
                std::vector<bool> path{true, true};
                for (int i = 0; i < 6; ++i)
                    path.push_back(rng() & 1);
                if (std::find(s.begin(), s.end(), path) == s.end())
                    s.push_back(path);
            }
            auto reversed = s;
            std::reverse(reversed.begin(), reversed.end());
            // members may first differ deep in the tree, at digit (label+1)^2 with label < 2^9
            PipelineParams deep = params;
            deep.max_precision = 512L * 512L + 64;
            const auto r = reduction_pipeline(s, reversed, deep);
            CHECK(r.verdict == PipelineResult::Verdict::indistinguishable_at_depth);
            CHECK(r.algebras_identical);
        }
    }
    SUBCASE("bad parameters") {
        CHECK_THROWS_AS(reduction_pipeline({p}, {q}, PipelineParams{p, 1, 1, 300}), std::invalid_argument);
        CHECK_THROWS_AS(reduction_pipeline({p}, {bits("1000")}, params), std::invalid_argument);
    }
}
