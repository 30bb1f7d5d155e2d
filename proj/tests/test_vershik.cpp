#include "bv/generators.hpp"
#include "bv/vershik.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace bv;

TEST_CASE("path notation") {
    CHECK(FinitePath::parse("3.0.12").edges() == std::vector<std::size_t>{3, 0, 12});
    CHECK(FinitePath::parse("3.0.12").to_string() == "3.0.12");
    CHECK(FinitePath::parse("").depth() == 0);
    CHECK_THROWS_AS(FinitePath::parse("1..2"), DiagramError);
    CHECK_THROWS_AS(FinitePath::parse("1.x"), DiagramError);
    CHECK_THROWS_AS(FinitePath::parse("-1"), DiagramError);
}

TEST_CASE("validity of paths") {
    const auto d = fixtures::figure_one();
    // edge 0 of E_2 is 1 -> 0 in the drawn example, so it cannot follow edge 0 of E_1 (0 -> 0)
    CHECK_THROWS_AS(validate_path(d, FinitePath({0, 0})), DiagramError);
    CHECK_NOTHROW(validate_path(d, FinitePath({1, 0})));
    CHECK_THROWS_AS(validate_path(d, FinitePath({0, 99})), DiagramError);
}

TEST_CASE("odometer fiber in counter order") {
    const auto od = odometer({2, 2, 2});
    const auto fiber = enumerate_fiber(od, 3, 0);
    REQUIRE(fiber.paths.size() == 8);
    std::vector<std::size_t> digits(3, 0);
    for (const auto &p : fiber.paths) {
        CHECK(p.edges() == digits);
        oracle::mixed_radix_increment(digits, {2, 2, 2});
    }
}

TEST_CASE("depth-one fibers are rank-sorted edge fibers") {
    const auto od = random_ordered_diagram(4, {3, 4, 3, 3});
    for (std::size_t v = 0; v < od.base().vertex_count(1); ++v) {
        const auto fiber = enumerate_fiber(od, 1, v);
        auto edges = od.fiber(1, v);
        REQUIRE(fiber.paths.size() == edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i)
            CHECK(fiber.paths[i].edges() == std::vector<std::size_t>{edges[i]});
    }
}

TEST_CASE("fiber sizes follow the incidence product") {
    const auto d = fixtures::from_matrices({{{1}, {1}}, {{2, 3}, {1, 3}}});
    const auto od = OrderedBratteliDiagram::by_rule(d, OrderRule::edge_index);
    CHECK(enumerate_fiber(od, 2, 0).paths.size() == 5);
    CHECK(enumerate_fiber(od, 2, 1).paths.size() == 4);
    CHECK(oracle::sorted_fiber(od, 2, 0).size() == 5);
    CHECK_THROWS_AS(enumerate_fiber(od, 2, 0, 4), SizeGuardExceeded);
}

TEST_CASE("odometer successor and predecessor") {
    const auto od = odometer({2, 2, 2, 2});
    CHECK(std::get<FinitePath>(vershik_successor(od, FinitePath({0, 0, 0, 0}))).edges() ==
          std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(std::get<FinitePath>(vershik_successor(od, FinitePath({1, 1, 0, 1}))).edges() ==
          std::vector<std::size_t>{0, 0, 1, 1});
    CHECK(std::holds_alternative<FiberMaximum>(vershik_successor(od, FinitePath({1, 1, 1, 1}))));
    CHECK(std::get<FinitePath>(vershik_predecessor(od, FinitePath({1, 0, 0, 0}))).edges() ==
          std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(std::holds_alternative<FiberMinimum>(vershik_predecessor(od, FinitePath({0, 0, 0, 0}))));
}

TEST_CASE("odometer law on mixed radices") {
    const std::vector<std::size_t> radices{3, 2, 4, 2};
    const auto od = odometer(radices);
    std::vector<std::size_t> digits(radices.size(), 0);
    FinitePath p(digits);
    std::size_t count = 1;
    while (true) {
        auto next = vershik_successor(od, p);
        const bool more = oracle::mixed_radix_increment(digits, radices);
        if (!more) {
            CHECK(std::holds_alternative<FiberMaximum>(next));
            break;
        }
        REQUIRE(std::holds_alternative<FinitePath>(next));
        p = std::get<FinitePath>(next);
        CHECK(p.edges() == digits);
        ++count;
    }
    CHECK(count == 3 * 2 * 4 * 2);
}

TEST_CASE("successor is the lexicographic successor in the fiber") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const auto od = random_ordered_diagram(seed, {4, 4, 2, 3});
        for (std::size_t k = 1; k <= od.depth(); ++k)
            for (std::size_t v = 0; v < od.base().vertex_count(k); ++v) {
                const auto fiber = oracle::sorted_fiber(od, k, v);
                const auto listed = enumerate_fiber(od, k, v);
                REQUIRE(listed.paths.size() == fiber.size());
                for (std::size_t i = 0; i < fiber.size(); ++i) {
                    CHECK(listed.paths[i].edges() == fiber[i]);
                    const FinitePath p(fiber[i]);
                    auto next = vershik_successor(od, p);
                    auto prev = vershik_predecessor(od, p);
                    if (i + 1 < fiber.size()) {
                        REQUIRE(std::holds_alternative<FinitePath>(next));
                        CHECK(std::get<FinitePath>(next).edges() == fiber[i + 1]);
                        CHECK(range_vertex(od.base(), std::get<FinitePath>(next)) == v);
                    } else {
                        CHECK(std::holds_alternative<FiberMaximum>(next));
                    }
                    if (i > 0) {
                        REQUIRE(std::holds_alternative<FinitePath>(prev));
                        CHECK(std::get<FinitePath>(prev).edges() == fiber[i - 1]);
                    } else {
                        CHECK(std::holds_alternative<FiberMinimum>(prev));
                    }
                }
                CHECK(min_path(od, k, v).edges() == fiber.front());
                CHECK(max_path(od, k, v).edges() == fiber.back());
            }
    }
}

TEST_CASE("successor then predecessor is the identity") {
    const auto od = random_ordered_diagram(77, {5, 3, 2, 3});
    for (std::size_t v = 0; v < od.base().vertex_count(5); ++v)
        for (const auto &p : enumerate_fiber(od, 5, v).paths) {
            auto next = vershik_successor(od, p);
            if (auto *q = std::get_if<FinitePath>(&next)) {
                auto back = vershik_predecessor(od, *q);
                CHECK(std::get<FinitePath>(back) == p);
            }
        }
}

TEST_CASE("orbits") {
    const auto od = odometer({2, 2, 2});
    SUBCASE("wrapping returns to the start after the fiber size") {
        auto orbit = vershik_orbit(od, FinitePath({0, 0, 0}), 8, true);
        REQUIRE(orbit.paths.size() == 9);
        CHECK(orbit.paths.back() == orbit.paths.front());
        CHECK(orbit.wraps == 1);
        std::set<FinitePath> seen(orbit.paths.begin(), orbit.paths.end() - 1);
        CHECK(seen.size() == 8);
    }
    SUBCASE("without wrap the min path walks the fiber and stops") {
        const auto rod = random_ordered_diagram(9, {4, 3, 2, 3});
        for (std::size_t v = 0; v < rod.base().vertex_count(4); ++v) {
            const auto fiber = enumerate_fiber(rod, 4, v).paths;
            auto orbit = vershik_orbit(rod, min_path(rod, 4, v), fiber.size() - 1, false);
            CHECK(orbit.paths == fiber);
            CHECK_FALSE(orbit.stopped_at_boundary);
            auto longer = vershik_orbit(rod, min_path(rod, 4, v), fiber.size() + 3, false);
            CHECK(longer.stopped_at_boundary);
            CHECK(longer.paths.size() == fiber.size());
        }
    }
    SUBCASE("zero steps") {
        auto orbit = vershik_orbit(od, FinitePath({1, 0, 1}), 0, true);
        CHECK(orbit.paths.size() == 1);
    }
}

TEST_CASE("path metric is an ultrametric") {
    const auto od = random_ordered_diagram(31, {4, 3, 2, 3});
    std::vector<FinitePath> paths;
    for (std::size_t v = 0; v < od.base().vertex_count(4); ++v)
        for (const auto &p : enumerate_fiber(od, 4, v).paths)
            paths.push_back(p);
    if (paths.size() > 40)
        paths.resize(40);
    for (const auto &a : paths)
        for (const auto &b : paths) {
            CHECK((path_distance(a, b) == 0.0) == (a == b));
            CHECK(path_distance(a, b) == path_distance(b, a));
            for (const auto &c : paths)
                CHECK(path_distance(a, c) <= std::max(path_distance(a, b), path_distance(b, c)));
        }
    CHECK(path_distance(FinitePath({0, 1}), FinitePath({1, 1})) == 0.5);
    CHECK(path_distance(FinitePath({0, 1}), FinitePath({0, 0})) == 0.25);
}

TEST_CASE("telescoping bijection intertwines successors") {
    for (std::uint64_t seed = 200; seed < 230; ++seed) {
        const auto od = random_ordered_diagram(seed, {6, 3, 2, 3});
        const std::vector<std::size_t> cuts{0, 1, 3, 6};
        const auto t = lex_telescope(od, cuts);
        for (std::size_t j = 1; j < cuts.size(); ++j)
            for (std::size_t v = 0; v < od.base().vertex_count(cuts[j]); ++v)
                for (const auto &p : enumerate_fiber(od, cuts[j], v).paths) {
                    const FinitePath q = telescope_path(t.base(), p);
                    CHECK(q.depth() == j);
                    CHECK(untelescope_path(t.base(), q) == p);
                    auto lhs = vershik_successor(od, p);
                    auto rhs = vershik_successor(t, q);
                    REQUIRE(lhs.index() == rhs.index());
                    if (auto *lp = std::get_if<FinitePath>(&lhs))
                        CHECK(telescope_path(t.base(), *lp) == std::get<FinitePath>(rhs));
                }
        CHECK_THROWS_AS(telescope_path(t.base(), min_path(od, 2, 0)), DiagramError);
    }
}
