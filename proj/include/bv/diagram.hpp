#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bv {

class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a level provider cannot supply a requested level.
class ProviderExhausted : public DiagramError {
public:
    using DiagramError::DiagramError;
};

/// Raised when an exhaustive search or enumeration would exceed its bound.
class SizeGuardExceeded : public DiagramError {
public:
    using DiagramError::DiagramError;
};

struct Edge {
    std::size_t source = 0;
    std::size_t range = 0;

    bool operator==(const Edge &) const = default;
};

/// Vertex count of V_n and the edge list of E_n for a single level n >= 1.
struct LevelData {
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;

    bool operator==(const LevelData &) const = default;
};

enum class ProviderKind { stationary, eventually_periodic, explicit_table };

std::string to_string(ProviderKind kind);

/// Deterministic source of levels for a diagram that is conceptually infinite.
/// Implementations must be pure: the same n always yields the same level.
class LevelProvider {
public:
    virtual ~LevelProvider() = default;

    virtual ProviderKind kind() const = 0;

    /// Level n >= 1. Throws ProviderExhausted beyond last_level().
    virtual LevelData level(std::size_t n) const = 0;

    virtual std::optional<std::size_t> last_level() const { return std::nullopt; }

    /// Periodic kinds repeat levels prefix_length()+1 ... with period().
    /// Both are zero for explicit tables.
    virtual std::size_t prefix_length() const { return 0; }
    virtual std::size_t period() const { return 0; }
};

/// Level 1 is `first`; every level n >= 2 equals `repeated`.
std::shared_ptr<const LevelProvider> make_stationary_provider(LevelData first, LevelData repeated);

/// Levels 1..prefix.size() come from `prefix`, then `cycle` repeats forever.
std::shared_ptr<const LevelProvider> make_periodic_provider(std::vector<LevelData> prefix,
                                                            std::vector<LevelData> cycle);

std::shared_ptr<const LevelProvider> make_table_provider(std::vector<LevelData> levels);

/// Level data whose incidence matrix is `matrix` (rows = range vertices,
/// columns = source vertices). Edges are listed range-major, then by source.
LevelData level_from_matrix(const std::vector<std::vector<std::uint64_t>> &matrix);

class IncidenceMatrix {
public:
    IncidenceMatrix() = default;
    IncidenceMatrix(std::size_t rows, std::size_t cols);
    explicit IncidenceMatrix(std::vector<std::vector<std::uint64_t>> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    std::uint64_t &at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    /// Sum of every entry.
    std::uint64_t total() const;
    bool entrywise_positive() const;
    bool rows_nonzero() const;
    bool cols_nonzero() const;

    std::vector<std::vector<std::uint64_t>> to_rows() const;

    /// Throws std::overflow_error if an entry does not fit in 64 bits.
    IncidenceMatrix operator*(const IncidenceMatrix &rhs) const;
    bool operator==(const IncidenceMatrix &) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> entries_;
};

/// Provenance of a diagram produced by telescope(): cut sequence and, per
/// level and edge, the constituent edge indices in the source diagram.
struct TelescopeTrace {
    std::vector<std::size_t> cuts;
    std::vector<std::vector<std::vector<std::size_t>>> constituents;
};

/// Finite truncation V_0..V_N of a Bratteli diagram. Edge identity is
/// positional: (level, index within E_n).
class BratteliDiagram {
public:
    BratteliDiagram(std::vector<std::size_t> vertex_counts, std::vector<std::vector<Edge>> edges,
                    std::shared_ptr<const LevelProvider> provider = nullptr);

    /// First `depth` levels of the provider.
    static BratteliDiagram from_provider(std::shared_ptr<const LevelProvider> provider,
                                         std::size_t depth);

    std::size_t depth() const { return edges_.size(); }
    std::size_t vertex_count(std::size_t level) const { return vertex_counts_.at(level); }
    const std::vector<std::size_t> &vertex_counts() const { return vertex_counts_; }

    /// E_n for 1 <= n <= depth().
    std::span<const Edge> edges(std::size_t level) const;
    const Edge &edge(std::size_t level, std::size_t index) const;
    std::size_t edge_count(std::size_t level) const { return edges(level).size(); }

    /// Edge indices of E_n ranging at v, in index order.
    std::span<const std::size_t> in_edges(std::size_t level, std::size_t vertex) const;
    /// Edge indices of E_{n+1} sourced at v in V_n, in index order.
    std::span<const std::size_t> out_edges(std::size_t level, std::size_t vertex) const;

    const std::shared_ptr<const LevelProvider> &provider() const { return provider_; }
    const std::optional<TelescopeTrace> &trace() const { return trace_; }

    /// True if a provider can supply levels beyond depth up to `target`.
    bool can_extend_to(std::size_t target) const;

    /// Same diagram with at least `target` levels, pulled from the provider.
    BratteliDiagram extended_to(std::size_t target) const;

    /// First `target` levels. The provider, if any, is kept.
    BratteliDiagram truncated_to(std::size_t target) const;

    bool operator==(const BratteliDiagram &other) const {
        return vertex_counts_ == other.vertex_counts_ && edges_ == other.edges_;
    }

private:
    friend BratteliDiagram telescope(const BratteliDiagram &, std::span<const std::size_t>);

    void validate() const;
    void build_indices();

    std::vector<std::size_t> vertex_counts_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<std::vector<std::vector<std::size_t>>> in_;
    std::vector<std::vector<std::vector<std::size_t>>> out_;
    std::shared_ptr<const LevelProvider> provider_;
    std::optional<TelescopeTrace> trace_;
};

IncidenceMatrix incidence_matrix(const BratteliDiagram &d, std::size_t level);

/// Product M_to ... M_{from+1}: incidence of the path set from V_from to V_to.
IncidenceMatrix path_matrix(const BratteliDiagram &d, std::size_t from, std::size_t to);

/// Number of root paths ending at each vertex of V_k.
std::vector<std::uint64_t> root_path_counts(const BratteliDiagram &d, std::size_t k);

/// Throws DiagramError unless cuts is 0 = m_0 < m_1 < ... < m_k = depth.
void validate_cuts(const BratteliDiagram &d, std::span<const std::size_t> cuts);

/// Telescoping along `cuts`. Composite edges of each new level are listed in
/// lexicographic order of their constituent edge indices.
BratteliDiagram telescope(const BratteliDiagram &d, std::span<const std::size_t> cuts);

struct SimpleWitness {
    std::vector<std::size_t> cuts;
};

struct NoWitnessWithinHorizon {
    std::size_t horizon = 0;
};

using SimplicityResult = std::variant<SimpleWitness, NoWitnessWithinHorizon>;

/// Greedy search for cuts 0 = m_0 < 1 = m_1 < m_2 < ... <= horizon whose
/// blocks M_{m_{j+1}} ... M_{m_j + 1} are entrywise positive, for j >= 1.
/// Reports a witness if at least one such block exists; the witness ends at
/// the deepest reachable cut. Extends through the provider when horizon
/// exceeds the truncation.
SimplicityResult is_simple_within(const BratteliDiagram &d, std::size_t horizon);

struct IsomorphismWitness {
    /// vertex_maps[n][v] is the image of v in V'_n.
    std::vector<std::vector<std::size_t>> vertex_maps;
    /// edge_maps[n-1][e] is the image of e in E'_n.
    std::vector<std::vector<std::size_t>> edge_maps;
};

struct IsomorphismResult {
    std::optional<IsomorphismWitness> witness;
    std::string refutation;

    bool isomorphic() const { return witness.has_value(); }
};

struct IsomorphismLimits {
    std::size_t max_vertices_per_level = 10;
    std::uint64_t max_search_nodes = 20'000'000;
};

/// Exhaustive levelwise search. Throws SizeGuardExceeded past the limits.
IsomorphismResult are_isomorphic(const BratteliDiagram &lhs, const BratteliDiagram &rhs,
                                 IsomorphismLimits limits = {});

/// True if `w` satisfies s' o g = f o s and r' o g = f o r on every level.
bool verify_isomorphism(const BratteliDiagram &lhs, const BratteliDiagram &rhs,
                        const IsomorphismWitness &w);

} // namespace bv
