#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run bvtool(const std::string &args) {
    const std::string command = std::string(BVTOOL_PATH) + " " + args + " 2>/dev/null";
    Run run;
    FILE *pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        run.out.append(buf.data(), got);
    const int status = pclose(pipe);
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("bvtool_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gen") {
    TempDir tmp;
    auto odo = bvtool("gen odometer 2 2 2");
    CHECK(odo.code == 0);
    auto j = nlohmann::json::parse(odo.out);
    CHECK(j["levels"] == nlohmann::json::array({1, 1, 1, 1}));
    CHECK(j.contains("ranks"));

    auto stat = bvtool("gen stationary '[[2,3],[1,3]]' --depth 5");
    CHECK(stat.code == 0);
    auto s = nlohmann::json::parse(stat.out);
    CHECK(s["levels"].size() == 7);
    // every level past the first holds 2+3+1+3 edges
    for (std::size_t n = 1; n < s["edges"].size(); ++n)
        CHECK(s["edges"][n].size() == 9);

    const auto a = bvtool("gen random-simple --seed 7");
    const auto b = bvtool("gen random-simple --seed 7");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["meta"]["seed"] == 7);
    CHECK(bvtool("gen random-simple --seed 8").out != a.out);

    CHECK(bvtool("gen odometer 2 0 2").code == 2);
}

TEST_CASE("order then check") {
    TempDir tmp;
    for (int seed : {1, 2, 3, 11, 42}) {
        CHECK(bvtool("gen random-simple --seed " + std::to_string(seed) + " --out " + tmp / "d.json").code == 0);
        CHECK(bvtool("check --simple --in " + tmp / "d.json").code == 0);
        CHECK(bvtool("order --in " + tmp / "d.json" + " --out " + tmp / "o.json").code == 0);
        const auto checked = bvtool("check --proper --in " + tmp / "o.json");
        CHECK(checked.code == 0);
        CHECK(nlohmann::json::parse(checked.out)["proper"]["verdict"] == "Proper");
    }
}

TEST_CASE("check failures and errors") {
    TempDir tmp;
    {
        std::ofstream f(tmp / "chains.json");
        f << R"({"levels": [1, 2, 2, 2], "edges": [[[0, 0], [0, 1]], [[0, 0], [1, 1]], [[0, 0], [1, 1]]]})";
    }
    const auto r = bvtool("check --simple --in " + tmp / "chains.json");
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["simple"]["verdict"] == "NoWitnessWithinHorizon");
    CHECK(bvtool("check --in " + tmp / "missing.json").code == 2);
    {
        std::ofstream f(tmp / "broken.json");
        f << "{ not json";
    }
    CHECK(bvtool("check --in " + tmp / "broken.json").code == 2);
    CHECK(bvtool("no-such-command").code == 2);
}

TEST_CASE("telescope and export") {
    TempDir tmp;
    {
        std::ofstream f(tmp / "fig.json");
        f << R"({"levels": [1, 2, 4, 2], "edges": [[[0, 0], [0, 1]],
               [[1, 0], [0, 1], [0, 1], [1, 1], [0, 2], [1, 3], [1, 3]],
               [[0, 0], [0, 0], [1, 0], [0, 1], [2, 1], [3, 1]]]})";
    }
    const auto t = bvtool("telescope --in " + tmp / "fig.json" + " --cuts 0,1,3");
    REQUIRE(t.code == 0);
    const auto j = nlohmann::json::parse(t.out);
    CHECK(j["levels"] == nlohmann::json::array({1, 2, 2}));
    CHECK(j["edges"][1].size() == 9);

    CHECK(bvtool("gen random-simple --seed 5 --ordered --out " + tmp / "r.json").code == 0);
    CHECK(bvtool("export --in " + tmp / "r.json" + " --out " + tmp / "r2.json").code == 0);
    CHECK(slurp(tmp / "r.json") == slurp(tmp / "r2.json"));
    const auto dot = bvtool("export --in " + tmp / "r.json" + " --format dot");
    CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("orbit") {
    TempDir tmp;
    CHECK(bvtool("gen odometer 2 2 2 --out " + tmp / "o.json").code == 0);
    const auto r = bvtool("orbit --in " + tmp / "o.json" + " --path 1.1.1 --steps 2 --wrap --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["paths"] == nlohmann::json::array({"1.1.1", "0.0.0", "1.0.0"}));
}

TEST_CASE("retset") {
    const auto r = bvtool("retset --gamma sqrt2m1 --interval 0,0.5 --window 3");
    CHECK(r.code == 0);
    CHECK(r.out == "{-2,0,1,3}\n");
    const auto j = nlohmann::json::parse(bvtool("retset --gamma sqrt2m1 --interval 0,0.5 --window 3 --format json").out);
    CHECK(j["members"] == nlohmann::json::array({-2, 0, 1, 3}));
    CHECK(j["density"] == "4/7");
    CHECK(bvtool("retset --gamma sqrt2m1 --interval 0.5,0.2 --window 3").code == 2);
}

TEST_CASE("density") {
    const auto r = bvtool("density --gamma sqrt2m1 --alpha 1/3 --shift-range 0 --boolean-depth 1 --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["algebra_size"] == 4);
    REQUIRE(j["densities"].size() == 4);
    CHECK(j["densities"][1]["symbolic"] == "1/3");
    CHECK(j["densities"][2]["symbolic"] == "2/3");
}

TEST_CASE("reduce") {
    const auto r = bvtool("reduce --S 00000000 --Sprime 10000000");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "Distinguished");
    const auto same = bvtool("reduce --S 00000000 --Sprime 00000000");
    CHECK(same.code == 0);
    CHECK(nlohmann::json::parse(same.out)["verdict"] == "IndistinguishableAtDepth");
    CHECK(bvtool("reduce --S 00000000 --Sprime 00000000 --expect distinguished").code == 1);
    CHECK(bvtool("reduce --S 00000000 --Sprime 10000000 --expect distinguished").code == 0);
}
