// bvtool: command-line front end for the Bratteli-Vershik toolkit.
//
// Exit codes: 0 success, 1 a check ran and failed, 2 the check could not
// be carried out (bad input, unresolved comparison, exhausted provider).

#include "bv/generators.hpp"
#include "bv/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using bv::ordered_json;

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_error = 2 };

struct Output {
    std::string path;
    std::string format = "json";

    void emit(const std::string &content) const {
        if (path.empty() || path == "-")
            std::cout << content;
        else
            bv::write_atomic(path, content);
    }
};

void add_output(CLI::App *cmd, Output &out, std::vector<std::string> formats = {"json", "text"}) {
    cmd->add_option("--out", out.path, "Output file (default stdout)");
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
}

ordered_json read_json(const std::string &path) {
    std::stringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot read " + path);
        buffer << in.rdbuf();
    }
    try {
        return ordered_json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

bv::DiagramDocument read_diagram(const std::string &path) { return bv::diagram_from_json(read_json(path)); }

// Horizons beyond the stored depth only make sense when a provider can
// supply more levels.
std::size_t effective_horizon(const bv::BratteliDiagram &d, std::size_t horizon) {
    return d.can_extend_to(horizon) ? horizon : std::min(horizon, d.depth());
}

const bv::OrderedBratteliDiagram &require_order(const bv::DiagramDocument &doc) {
    if (!doc.ordered)
        throw std::invalid_argument("input diagram carries no \"ranks\"; run `order` first");
    return *doc.ordered;
}

std::vector<std::size_t> parse_cuts(const std::string &text) {
    std::vector<std::size_t> cuts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ','))
        cuts.push_back(std::stoul(part));
    return cuts;
}

std::string set_text(const std::vector<long> &members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i)
        out += (i ? "," : "") + std::to_string(members[i]);
    return out + "}";
}

bv::CircleIntervalSet parse_intervals(const std::vector<std::string> &specs, long cap) {
    std::vector<bv::Interval> parts;
    for (const auto &spec : specs) {
        const auto comma = spec.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("interval '" + spec + "' must be written lo,hi");
        parts.push_back({bv::parse_real(spec.substr(0, comma)), bv::parse_real(spec.substr(comma + 1))});
    }
    return bv::CircleIntervalSet::from_intervals(std::move(parts), cap);
}

// First path of the given length, of the form b1 b2 0 0 ..., whose first two
// steps differ from those of every member.
std::vector<bool> default_gamma_path(const std::vector<std::vector<bool>> &members, std::size_t length) {
    if (length < 2)
        throw std::invalid_argument("paths must have length >= 2 to choose a default gamma path");
    for (int head = 0; head < 4; ++head) {
        std::vector<bool> candidate(length, false);
        candidate[0] = head & 2;
        candidate[1] = head & 1;
        bool clash = false;
        for (const auto &m : members)
            clash = clash || (m[0] == candidate[0] && m[1] == candidate[1]);
        if (!clash)
            return candidate;
    }
    throw std::invalid_argument("no default gamma path available; pass --gamma-path");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bratteli-Vershik diagrams, rotation return sets and density invariants"};
    app.require_subcommand(1);

    // gen
    auto *gen = app.add_subcommand("gen", "Generate a diagram");
    gen->require_subcommand(1);
    Output gen_out;
    std::vector<std::size_t> radices;
    auto *gen_odo = gen->add_subcommand("odometer", "Odometer with the given radices");
    gen_odo->add_option("radices", radices, "Radix per level")->required();
    add_output(gen_odo, gen_out, {"json"});
    std::string matrix_text;
    std::size_t stat_depth = 5;
    auto *gen_stat = gen->add_subcommand("stationary", "Stationary diagram from a square matrix");
    gen_stat->add_option("matrix", matrix_text, "Matrix as JSON, e.g. [[2,3],[1,3]]")->required();
    gen_stat->add_option("--depth", stat_depth, "Number of matrix levels")->capture_default_str();
    add_output(gen_stat, gen_out, {"json"});
    std::uint64_t seed = 1;
    bv::RandomSimpleParams rparams;
    bool ordered_random = false;
    auto *gen_rand = gen->add_subcommand("random-simple", "Seeded random simple diagram");
    gen_rand->add_option("--seed", seed)->capture_default_str();
    gen_rand->add_option("--depth", rparams.depth)->check(CLI::Range(2, 64))->capture_default_str();
    gen_rand->add_option("--max-vertices", rparams.max_vertices)->check(CLI::Range(1, 16))->capture_default_str();
    gen_rand->add_option("--max-multiplicity", rparams.max_multiplicity)->check(CLI::Range(1, 16))->capture_default_str();
    gen_rand->add_flag("--ordered", ordered_random, "Attach a seeded random order");
    add_output(gen_rand, gen_out, {"json"});

    // telescope
    auto *tele = app.add_subcommand("telescope", "Telescope a diagram along cut levels");
    std::string input, cuts_text;
    Output tele_out;
    tele->add_option("--in", input, "Diagram JSON ('-' for stdin)")->required();
    tele->add_option("--cuts", cuts_text, "Comma-separated cuts starting at 0")->required();
    add_output(tele, tele_out, {"json"});

    // order
    auto *order = app.add_subcommand("order", "Attach a proper order by telescoping to positive blocks");
    std::size_t horizon = 16;
    Output order_out;
    order->add_option("--in", input)->required();
    order->add_option("--horizon", horizon)->capture_default_str();
    add_output(order, order_out, {"json"});

    // check
    auto *check = app.add_subcommand("check", "Check simplicity or proper ordering");
    bool want_simple = false, want_proper = false;
    std::size_t check_depth = 0;
    Output check_out;
    check->add_option("--in", input)->required();
    check->add_flag("--simple", want_simple);
    check->add_flag("--proper", want_proper);
    check->add_option("--horizon", horizon, "Simplicity horizon")->capture_default_str();
    check->add_option("--depth", check_depth, "Proper-ordering depth (default: diagram depth)");
    add_output(check, check_out, {"json"});

    // orbit
    auto *orbit = app.add_subcommand("orbit", "Iterate the Vershik successor on a finite path");
    std::string path_text;
    std::size_t steps = 10;
    bool wrap = false;
    Output orbit_out;
    orbit->add_option("--in", input)->required();
    orbit->add_option("--path", path_text, "Start path e1.e2...")->required();
    orbit->add_option("--steps", steps)->capture_default_str();
    orbit->add_flag("--wrap", wrap, "Restart from the fiber minimum at the fiber maximum");
    add_output(orbit, orbit_out);

    // retset
    auto *retset = app.add_subcommand("retset", "Return set of a rotation to an interval union");
    std::string gamma_text = "sqrt2m1", base_text = "0";
    std::vector<std::string> interval_specs;
    long window = 10;
    long precision = bv::default_precision_cap;
    Output retset_out;
    retset_out.format = "text";
    retset->add_option("--gamma", gamma_text)->capture_default_str();
    retset->add_option("--interval", interval_specs, "Interval lo,hi (repeatable)")->required();
    retset->add_option("--base", base_text)->capture_default_str();
    retset->add_option("--window", window)->check(CLI::NonNegativeNumber)->capture_default_str();
    retset->add_option("--precision", precision)->check(CLI::Range(32L, 1L << 20))->capture_default_str();
    add_output(retset, retset_out);

    // density
    auto *density = app.add_subcommand("density", "Density set of a generated rotation algebra");
    std::vector<std::string> alpha_texts;
    long shift_range = 0;
    int boolean_depth = 1;
    Output density_out;
    density->add_option("--gamma", gamma_text)->capture_default_str();
    density->add_option("--alpha", alpha_texts, "Generator endpoint (repeatable)")->required();
    density->add_option("--shift-range", shift_range)->check(CLI::Range(0L, 64L))->capture_default_str();
    density->add_option("--boolean-depth", boolean_depth)->check(CLI::Range(0, 4))->capture_default_str();
    density->add_option("--precision", precision)->check(CLI::Range(32L, 1L << 20))->capture_default_str();
    add_output(density, density_out);

    // reduce
    auto *reduce = app.add_subcommand("reduce", "Separate two generator sets by their density sets");
    std::vector<std::string> s_texts, sp_texts;
    std::string gamma_path_text, expect;
    long reduce_shift = 1;
    int reduce_depth = 1;
    long reduce_precision = 300;
    Output reduce_out;
    reduce->add_option("--S", s_texts, "Binary path (repeatable)")->required();
    reduce->add_option("--Sprime", sp_texts, "Binary path (repeatable)")->required();
    reduce->add_option("--gamma-path", gamma_path_text, "Binary path for gamma");
    reduce->add_option("--shift-range", reduce_shift)->check(CLI::Range(0L, 16L))->capture_default_str();
    reduce->add_option("--boolean-depth", reduce_depth)->check(CLI::Range(0, 3))->capture_default_str();
    reduce->add_option("--precision", reduce_precision)->check(CLI::Range(32L, 1L << 16))->capture_default_str();
    reduce->add_option("--expect", expect, "Exit 1 unless the verdict matches")
        ->check(CLI::IsMember({"distinguished", "indistinguishable"}));
    add_output(reduce, reduce_out, {"json"});

    // export
    auto *exporter = app.add_subcommand("export", "Re-emit a diagram as normalized JSON or DOT");
    Output export_out;
    exporter->add_option("--in", input)->required();
    add_output(exporter, export_out, {"json", "dot"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (gen->parsed()) {
            if (gen_odo->parsed()) {
                gen_out.emit(bv::dump(bv::diagram_to_json(bv::odometer(radices),
                                                          {{"generator", "odometer"}, {"radices", radices}})));
            } else if (gen_stat->parsed()) {
                auto matrix = ordered_json::parse(matrix_text).get<std::vector<std::vector<std::uint64_t>>>();
                gen_out.emit(bv::dump(bv::diagram_to_json(bv::stationary_diagram(matrix, stat_depth),
                                                          {{"generator", "stationary"}, {"matrix", matrix}})));
            } else {
                ordered_json meta = {{"generator", "random-simple"},
                                     {"seed", seed},
                                     {"depth", rparams.depth},
                                     {"max_vertices", rparams.max_vertices},
                                     {"max_multiplicity", rparams.max_multiplicity}};
                if (ordered_random)
                    gen_out.emit(bv::dump(bv::diagram_to_json(bv::random_ordered_diagram(seed, rparams), meta)));
                else
                    gen_out.emit(bv::dump(bv::diagram_to_json(bv::random_simple_diagram(seed, rparams), meta)));
            }
            return exit_ok;
        }

        if (tele->parsed()) {
            const auto doc = read_diagram(input);
            const auto cuts = parse_cuts(cuts_text);
            ordered_json meta = {{"telescoped_by", cuts}};
            if (doc.ordered)
                tele_out.emit(bv::dump(bv::diagram_to_json(bv::lex_telescope(*doc.ordered, cuts), meta)));
            else
                tele_out.emit(bv::dump(bv::diagram_to_json(bv::telescope(doc.diagram, cuts), meta)));
            return exit_ok;
        }

        if (order->parsed()) {
            const auto doc = read_diagram(input);
            order_out.emit(bv::dump(bv::diagram_to_json(bv::skau_order(doc.diagram, effective_horizon(doc.diagram, horizon)),
                                                        {{"ordered_by", "skau"}, {"horizon", horizon}})));
            return exit_ok;
        }

        if (check->parsed()) {
            const auto doc = read_diagram(input);
            if (!want_simple && !want_proper)
                want_proper = doc.ordered.has_value();
            ordered_json report;
            int code = exit_ok;
            if (want_simple || !want_proper) {
                auto result = bv::is_simple_within(doc.diagram, effective_horizon(doc.diagram, horizon));
                if (auto *w = std::get_if<bv::SimpleWitness>(&result)) {
                    report["simple"] = {{"verdict", "SimpleWitness"}, {"cuts", w->cuts}};
                } else {
                    report["simple"] = {{"verdict", "NoWitnessWithinHorizon"},
                                        {"horizon", std::get<bv::NoWitnessWithinHorizon>(result).horizon}};
                    code = exit_check_failed;
                }
            }
            if (want_proper) {
                const auto &od = require_order(doc);
                auto result = bv::properly_ordered_within(od, check_depth ? check_depth : od.depth());
                report["proper"] = bv::proper_result_json(result);
                if (std::holds_alternative<bv::NotProper>(result))
                    code = std::max<int>(code, exit_check_failed);
                else if (std::holds_alternative<bv::UndeterminedAtDepth>(result))
                    code = exit_error;
            }
            check_out.emit(bv::dump(report));
            return code;
        }

        if (orbit->parsed()) {
            const auto doc = read_diagram(input);
            auto result = bv::vershik_orbit(require_order(doc), bv::FinitePath::parse(path_text), steps, wrap);
            orbit_out.emit(orbit_out.format == "json" ? bv::dump(bv::orbit_json(result)) : bv::orbit_text(result));
            return exit_ok;
        }

        if (retset->parsed()) {
            const auto gamma = bv::parse_real(gamma_text);
            const auto u = parse_intervals(interval_specs, precision);
            const auto members = bv::return_set(u, gamma, bv::parse_real(base_text), window, precision);
            if (retset_out.format == "json") {
                std::vector<char> word(static_cast<std::size_t>(2 * window + 1), 0);
                for (long k : members)
                    word[static_cast<std::size_t>(k + window)] = 1;
                retset_out.emit(bv::dump({{"gamma", bv::real_json(gamma)},
                                          {"set", bv::interval_set_json(u)},
                                          {"window", window},
                                          {"members", members},
                                          {"density", bv::window_density(members, window).get_str()},
                                          {"run_length", bv::run_length(word)}}));
            } else {
                retset_out.emit(set_text(members) + "\n");
            }
            return exit_ok;
        }

        if (density->parsed()) {
            bv::ReturnAlgebraSpec spec{bv::parse_real(gamma_text), {}, shift_range, boolean_depth, precision};
            for (const auto &a : alpha_texts)
                spec.generators.push_back(bv::parse_real(a));
            const auto algebra = bv::generate_algebra(spec);
            const auto values = bv::density_set(algebra, precision);
            if (density_out.format == "json") {
                ordered_json vals = ordered_json::array();
                for (const auto &v : values)
                    vals.push_back(bv::real_json(v));
                density_out.emit(bv::dump({{"gamma", bv::real_json(spec.gamma)},
                                           {"shift_range", shift_range},
                                           {"boolean_depth", boolean_depth},
                                           {"algebra_size", algebra.size()},
                                           {"densities", vals}}));
            } else {
                std::string text;
                for (const auto &v : values)
                    text += v.decimal(12) + "  " + v.symbolic() + "\n";
                density_out.emit(text);
            }
            return exit_ok;
        }

        if (reduce->parsed()) {
            std::vector<std::vector<bool>> s, sp;
            for (const auto &t : s_texts)
                s.push_back(bv::parse_bit_path(t));
            for (const auto &t : sp_texts)
                sp.push_back(bv::parse_bit_path(t));
            bv::PipelineParams params;
            std::vector<std::vector<bool>> members = s;
            members.insert(members.end(), sp.begin(), sp.end());
            params.gamma_path = gamma_path_text.empty() ? default_gamma_path(members, s.front().size())
                                                        : bv::parse_bit_path(gamma_path_text);
            params.shift_range = reduce_shift;
            params.boolean_depth = reduce_depth;
            params.max_precision = reduce_precision;
            const auto result = bv::reduction_pipeline(s, sp, params);
            reduce_out.emit(bv::dump(bv::pipeline_json(result, s, sp, params)));
            if (!expect.empty()) {
                const bool got = result.verdict == bv::PipelineResult::Verdict::distinguished;
                if (got != (expect == "distinguished"))
                    return exit_check_failed;
            }
            return exit_ok;
        }

        if (exporter->parsed()) {
            const auto doc = read_diagram(input);
            if (export_out.format == "dot")
                export_out.emit(doc.ordered ? bv::to_dot(*doc.ordered) : bv::to_dot(doc.diagram));
            else
                export_out.emit(bv::dump(bv::diagram_to_json(doc)));
            return exit_ok;
        }
    } catch (const std::exception &e) {
        std::cerr << "bvtool: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
