#include "bv/io.hpp"

#include <fstream>
#include <sstream>

namespace bv {

namespace {

ordered_json structure_json(const BratteliDiagram &d) {
    ordered_json j;
    j["levels"] = d.vertex_counts();
    ordered_json edges = ordered_json::array();
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        ordered_json level = ordered_json::array();
        for (const Edge &e : d.edges(n))
            level.push_back({e.source, e.range});
        edges.push_back(std::move(level));
    }
    j["edges"] = std::move(edges);
    return j;
}

ordered_json ranks_json(const OrderedBratteliDiagram &od) {
    ordered_json ranks = ordered_json::array();
    const BratteliDiagram &d = od.base();
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        ordered_json level = ordered_json::array();
        for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
            ordered_json fiber = ordered_json::array();
            for (std::size_t e : d.in_edges(n, v))
                fiber.push_back(od.rank(n, e));
            level.push_back(std::move(fiber));
        }
        ranks.push_back(std::move(level));
    }
    return ranks;
}

} // namespace

ordered_json diagram_to_json(const BratteliDiagram &d, const ordered_json &meta) {
    ordered_json j = structure_json(d);
    if (!meta.is_null())
        j["meta"] = meta;
    return j;
}

ordered_json diagram_to_json(const OrderedBratteliDiagram &od, const ordered_json &meta) {
    ordered_json j = structure_json(od.base());
    j["ranks"] = ranks_json(od);
    if (!meta.is_null())
        j["meta"] = meta;
    return j;
}

ordered_json diagram_to_json(const DiagramDocument &doc) {
    return doc.ordered ? diagram_to_json(*doc.ordered, doc.meta) : diagram_to_json(doc.diagram, doc.meta);
}

DiagramDocument diagram_from_json(const ordered_json &j) {
    try {
        if (!j.is_object() || !j.contains("levels") || !j.contains("edges"))
            throw DiagramError("diagram JSON needs \"levels\" and \"edges\"");
        for (const auto &[key, value] : j.items())
            if (key != "levels" && key != "edges" && key != "ranks" && key != "meta")
                throw DiagramError("unknown diagram field \"" + key + "\"");

        auto counts = j.at("levels").get<std::vector<std::size_t>>();
        std::vector<std::vector<Edge>> edges;
        for (const auto &level : j.at("edges")) {
            std::vector<Edge> row;
            for (const auto &e : level) {
                if (!e.is_array() || e.size() != 2)
                    throw DiagramError("edge must be a [source, range] pair");
                row.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
            }
            edges.push_back(std::move(row));
        }
        DiagramDocument doc{BratteliDiagram(std::move(counts), std::move(edges)), std::nullopt,
                            j.contains("meta") ? j.at("meta") : ordered_json()};

        if (j.contains("ranks")) {
            const auto &ranks_in = j.at("ranks");
            const BratteliDiagram &d = doc.diagram;
            if (!ranks_in.is_array() || ranks_in.size() != d.depth())
                throw DiagramError("\"ranks\" needs one entry per level");
            std::vector<std::vector<std::size_t>> ranks;
            for (std::size_t n = 1; n <= d.depth(); ++n) {
                const auto &level = ranks_in[n - 1];
                if (!level.is_array() || level.size() != d.vertex_count(n))
                    throw DiagramError("ranks at level " + std::to_string(n) + " need one array per vertex");
                std::vector<std::size_t> level_ranks(d.edge_count(n));
                for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
                    auto in = d.in_edges(n, v);
                    const auto &fiber = level[v];
                    if (!fiber.is_array() || fiber.size() != in.size())
                        throw DiagramError("rank array size mismatch at level " + std::to_string(n) + ", vertex " +
                                           std::to_string(v));
                    for (std::size_t i = 0; i < in.size(); ++i)
                        level_ranks[in[i]] = fiber[i].get<std::size_t>();
                }
                ranks.push_back(std::move(level_ranks));
            }
            doc.ordered.emplace(doc.diagram, std::move(ranks));
        }
        return doc;
    } catch (const nlohmann::json::exception &e) {
        throw DiagramError(std::string("malformed diagram JSON: ") + e.what());
    }
}

std::string dump(const ordered_json &j) { return j.dump(2) + "\n"; }

namespace {

std::string dot_body(const BratteliDiagram &d, const OrderedBratteliDiagram *od) {
    std::ostringstream out;
    out << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle, label=\"\"];\n";
    for (std::size_t n = 0; n <= d.depth(); ++n) {
        out << "  { rank=same;";
        for (std::size_t v = 0; v < d.vertex_count(n); ++v)
            out << " v" << n << "_" << v << ";";
        out << " }\n";
    }
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        auto level = d.edges(n);
        for (std::size_t i = 0; i < level.size(); ++i) {
            out << "  v" << n - 1 << "_" << level[i].source << " -> v" << n << "_" << level[i].range;
            if (od)
                out << " [label=\"" << od->rank(n, i) << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace

std::string to_dot(const BratteliDiagram &d) { return dot_body(d, nullptr); }

std::string to_dot(const OrderedBratteliDiagram &od) { return dot_body(od.base(), &od); }

ordered_json real_json(const CertifiedReal &x, int digits) {
    return {{"symbolic", x.symbolic()}, {"decimal", x.decimal(digits)}};
}

ordered_json interval_set_json(const CircleIntervalSet &u) {
    ordered_json intervals = ordered_json::array();
    for (const auto &iv : u.intervals())
        intervals.push_back({{"lo", real_json(iv.lo)}, {"hi", real_json(iv.hi)}});
    return {{"text", u.to_decimal_string()}, {"symbolic", u.to_symbolic_string()}, {"intervals", intervals}};
}

ordered_json proper_result_json(const ProperResult &result) {
    if (auto *w = std::get_if<ProperWitness>(&result))
        return {{"verdict", "Proper"},
                {"min_prefix", w->min_prefix},
                {"max_prefix", w->max_prefix},
                {"simplicity_cuts", w->simplicity_cuts}};
    if (auto *np = std::get_if<NotProper>(&result)) {
        std::string violation = "not_simple";
        if (np->violation == NotProper::Violation::several_min_paths)
            violation = "several_min_paths";
        else if (np->violation == NotProper::Violation::several_max_paths)
            violation = "several_max_paths";
        return {{"verdict", "NotProper"}, {"violation", violation}, {"reason", np->reason}};
    }
    const auto &u = std::get<UndeterminedAtDepth>(result);
    return {{"verdict", "UndeterminedAtDepth"}, {"depth", u.depth}, {"reason", u.reason}};
}

ordered_json orbit_json(const Orbit &orbit) {
    ordered_json paths = ordered_json::array();
    for (const auto &p : orbit.paths)
        paths.push_back(p.to_string());
    return {{"paths", paths}, {"stopped_at_boundary", orbit.stopped_at_boundary}, {"wraps", orbit.wraps}};
}

std::string orbit_text(const Orbit &orbit) {
    std::string out;
    for (const auto &p : orbit.paths)
        out += p.to_string() + "\n";
    if (orbit.stopped_at_boundary)
        out += "# stopped at fiber maximum\n";
    return out;
}

std::string run_length(const std::vector<char> &word) {
    std::string out;
    for (std::size_t i = 0; i < word.size();) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i])
            ++j;
        if (!out.empty())
            out += ' ';
        out += (word[i] ? "1x" : "0x") + std::to_string(j - i);
        i = j;
    }
    return out;
}

ordered_json conjugacy_json(const ConjugacyReport &report) {
    return {{"cuts", report.cuts},
            {"window", report.radius},
            {"paths_checked", report.paths_checked},
            {"cylinders_checked", report.cylinders_checked},
            {"successors_intertwine", report.successors_intertwine},
            {"windows_equal", report.windows_equal},
            {"passed", report.passed()},
            {"failures", report.failures}};
}

ordered_json pipeline_json(const PipelineResult &result, const std::vector<std::vector<bool>> &s,
                           const std::vector<std::vector<bool>> &s_prime, const PipelineParams &params) {
    auto paths = [](const std::vector<std::vector<bool>> &ps) {
        ordered_json out = ordered_json::array();
        for (const auto &p : ps)
            out.push_back(path_string(p));
        return out;
    };
    auto reals = [](const std::vector<CertifiedReal> &xs) {
        ordered_json out = ordered_json::array();
        for (const auto &x : xs)
            out.push_back(real_json(x));
        return out;
    };
    ordered_json j;
    j["inputs"] = {{"S", paths(s)},
                   {"S'", paths(s_prime)},
                   {"gamma_path", path_string(params.gamma_path)},
                   {"shift_range", params.shift_range},
                   {"boolean_depth", params.boolean_depth},
                   {"precision_cap", params.max_precision}};
    j["gamma"] = real_json(result.gamma);
    j["density_sets"] = {{"S", reals(result.densities_s)}, {"S'", reals(result.densities_s_prime)}};
    j["verdict"] = to_string(result.verdict);
    if (result.witness)
        j["witness"] = {{"side", result.witness_side}, {"value", real_json(*result.witness)}};
    else
        j["witness"] = nullptr;
    j["algebras_identical"] = result.algebras_identical;
    return j;
}

void write_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace bv
