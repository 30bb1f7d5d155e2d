#pragma once

#include "bv/invariants.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bv {

using ordered_json = nlohmann::ordered_json;

/// Contents of a diagram file: {"levels", "edges", ["ranks"], ["meta"]}.
struct DiagramDocument {
    BratteliDiagram diagram;
    std::optional<OrderedBratteliDiagram> ordered;
    ordered_json meta;
};

/// "levels" lists |V_0|..|V_N|; "edges" lists [s, r] per edge, per level,
/// in index order; "ranks" lists, per level and per range vertex, the ranks
/// of that vertex's incoming edges in increasing edge-index order.
ordered_json diagram_to_json(const BratteliDiagram &d, const ordered_json &meta = nullptr);
ordered_json diagram_to_json(const OrderedBratteliDiagram &od, const ordered_json &meta = nullptr);
ordered_json diagram_to_json(const DiagramDocument &doc);

/// Throws DiagramError on malformed input.
DiagramDocument diagram_from_json(const ordered_json &j);

/// Two-space indentation with a trailing newline.
std::string dump(const ordered_json &j);

std::string to_dot(const BratteliDiagram &d);
std::string to_dot(const OrderedBratteliDiagram &od);

ordered_json real_json(const CertifiedReal &x, int digits = 20);
ordered_json interval_set_json(const CircleIntervalSet &u);
ordered_json proper_result_json(const ProperResult &result);
ordered_json orbit_json(const Orbit &orbit);
std::string orbit_text(const Orbit &orbit);

/// "1x3 0x2 1x1" for 1,1,1,0,0,1.
std::string run_length(const std::vector<char> &word);

ordered_json conjugacy_json(const ConjugacyReport &report);
ordered_json pipeline_json(const PipelineResult &result, const std::vector<std::vector<bool>> &s,
                           const std::vector<std::vector<bool>> &s_prime, const PipelineParams &params);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace bv
