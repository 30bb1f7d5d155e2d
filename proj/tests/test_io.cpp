#include "bv/generators.hpp"
#include "bv/io.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace bv;

namespace {

std::string round_trip(const std::string &text) {
    return dump(diagram_to_json(diagram_from_json(ordered_json::parse(text))));
}

} // namespace

TEST_CASE("diagram documents round-trip byte for byte") {
    SUBCASE("unordered") {
        const auto first = dump(diagram_to_json(fixtures::figure_one()));
        CHECK(round_trip(first) == first);
    }
    SUBCASE("ordered with metadata") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto od = random_ordered_diagram(seed, {4, 3, 2, 3});
            const auto text = dump(diagram_to_json(od, {{"seed", seed}}));
            CHECK(round_trip(text) == text);
            const auto doc = diagram_from_json(ordered_json::parse(text));
            REQUIRE(doc.ordered.has_value());
            CHECK(*doc.ordered == od);
            CHECK(doc.meta["seed"] == seed);
        }
    }
    SUBCASE("odometer") {
        const auto text = dump(diagram_to_json(odometer({2, 3, 2})));
        CHECK(round_trip(text) == text);
        CHECK(text.back() == '\n');
    }
}

TEST_CASE("malformed documents are rejected") {
    const std::vector<std::string> bad{
        R"({})",
        R"({"levels": [1, 1]})",
        R"({"levels": [1, 1], "edges": [[[0, 0]]], "extra": 1})",
        R"({"levels": [1, 1], "edges": [[[0, 3]]]})",
        R"({"levels": [1, 1], "edges": [[[0]]]})",
        R"({"levels": [1, 1], "edges": [[[0, 0]]], "ranks": [[[1]]]})",
        R"({"levels": [1, 1], "edges": [[[0, 0]]], "ranks": [[]]})",
        R"({"levels": [1, 1], "edges": [[[0, 0], [0, 0]]], "ranks": [[[0, 0]]]})",
        R"({"levels": "one", "edges": []})",
        R"([1, 2, 3])",
    };
    for (const auto &text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(diagram_from_json(ordered_json::parse(text)), DiagramError);
    }
}

TEST_CASE("dot export") {
    const auto dot = to_dot(odometer({2, 2}));
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("->") != std::string::npos);
    CHECK(to_dot(fixtures::figure_one()).find("->") != std::string::npos);
}

TEST_CASE("run-length text") {
    CHECK(run_length({1, 1, 1, 0, 0, 1}) == "1x3 0x2 1x1");
    CHECK(run_length({}).empty());
    CHECK(run_length({0}) == "0x1");
}

TEST_CASE("reals and interval sets as JSON") {
    const auto x = CertifiedReal::quadratic(-1, 1, 2, 1);
    const auto j = real_json(x, 10);
    CHECK(j["symbolic"] == x.symbolic());
    CHECK(j["decimal"] == "0.4142135623");
    const auto u = CircleIntervalSet::single(CertifiedReal::integer(0), x);
    CHECK(interval_set_json(u).dump().find("0.4142") != std::string::npos);
}

TEST_CASE("atomic writes replace the target") {
    const auto dir = std::filesystem::temp_directory_path() / "bv_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "second\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto &entry : std::filesystem::directory_iterator(dir))
        ++files;
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
}
