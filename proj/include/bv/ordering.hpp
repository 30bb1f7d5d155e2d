#pragma once

#include "bv/diagram.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bv {

/// Deterministic rules for ranking each fiber r^{-1}(v). Used to order
/// levels pulled from a provider.
enum class OrderRule {
    /// Rank by edge index.
    edge_index,
    /// Rank by source vertex index, then edge index.
    skau,
};

std::string to_string(OrderRule rule);

/// Bratteli diagram with a total order on every range fiber, stored as a
/// rank per edge. Edges are comparable exactly when they share a range.
class OrderedBratteliDiagram {
public:
    /// ranks[n-1][e] is the rank of edge e of E_n inside its fiber. Each
    /// fiber's ranks must be a bijection onto 0..size-1.
    OrderedBratteliDiagram(BratteliDiagram base, std::vector<std::vector<std::size_t>> ranks);

    /// Orders every level with `rule`. The rule is remembered, so the result
    /// can be extended through the base diagram's provider.
    static OrderedBratteliDiagram by_rule(BratteliDiagram base, OrderRule rule);

    const BratteliDiagram &base() const { return base_; }
    std::size_t depth() const { return base_.depth(); }
    const std::optional<OrderRule> &rule() const { return rule_; }

    std::size_t rank(std::size_t level, std::size_t edge) const;
    const std::vector<std::vector<std::size_t>> &ranks() const { return ranks_; }

    /// Edges of r^{-1}(v) at `level`, sorted by rank.
    std::span<const std::size_t> fiber(std::size_t level, std::size_t vertex) const;

    std::size_t min_edge(std::size_t level, std::size_t vertex) const { return fiber(level, vertex).front(); }
    std::size_t max_edge(std::size_t level, std::size_t vertex) const { return fiber(level, vertex).back(); }

    bool is_min(std::size_t level, std::size_t edge) const { return rank(level, edge) == 0; }
    bool is_max(std::size_t level, std::size_t edge) const;

    /// Next (previous) edge in the fiber of `edge`, if any.
    std::optional<std::size_t> next_edge(std::size_t level, std::size_t edge) const;
    std::optional<std::size_t> previous_edge(std::size_t level, std::size_t edge) const;

    bool can_extend_to(std::size_t target) const;

    /// Pulls levels from the base provider and orders them with rule().
    /// Throws ProviderExhausted if either is missing.
    OrderedBratteliDiagram extended_to(std::size_t target) const;

    OrderedBratteliDiagram truncated_to(std::size_t target) const;

    bool operator==(const OrderedBratteliDiagram &other) const {
        return base_ == other.base_ && ranks_ == other.ranks_;
    }

private:
    OrderedBratteliDiagram(BratteliDiagram base, std::vector<std::vector<std::size_t>> ranks,
                           std::optional<OrderRule> rule);

    void build_fibers();

    BratteliDiagram base_;
    std::vector<std::vector<std::size_t>> ranks_;
    std::vector<std::vector<std::vector<std::size_t>>> fibers_;
    std::optional<OrderRule> rule_;
};

/// Ranks of one level under `rule`.
std::vector<std::size_t> rank_level(const BratteliDiagram &d, std::size_t level, OrderRule rule);

/// Telescoping with the induced lexicographic order: composites compare by
/// their deepest differing constituent.
OrderedBratteliDiagram lex_telescope(const OrderedBratteliDiagram &od, std::span<const std::size_t> cuts);

/// Tree of minimal (or maximal) edges: one incoming tree edge per vertex.
struct MinMaxTree {
    /// edges[n-1][v] is the tree edge of E_n entering v.
    std::vector<std::vector<std::size_t>> edges;
    /// parents[n-1][v] is the source vertex of that edge in V_{n-1}.
    std::vector<std::vector<std::size_t>> parents;

    std::size_t edge_into(std::size_t level, std::size_t vertex) const { return edges.at(level - 1).at(vertex); }
    std::size_t parent(std::size_t level, std::size_t vertex) const { return parents.at(level - 1).at(vertex); }
    std::size_t edge_count() const;
};

std::pair<MinMaxTree, MinMaxTree> min_max_trees(const OrderedBratteliDiagram &od);

struct ProperWitness {
    /// Edge indices of the uniquely determined prefixes of x_min and x_max.
    std::vector<std::size_t> min_prefix;
    std::vector<std::size_t> max_prefix;
    std::vector<std::size_t> simplicity_cuts;
};

struct NotProper {
    enum class Violation { not_simple, several_min_paths, several_max_paths };
    Violation violation;
    std::string reason;
};

struct UndeterminedAtDepth {
    std::size_t depth = 0;
    std::string reason;
};

using ProperResult = std::variant<ProperWitness, NotProper, UndeterminedAtDepth>;

/// Finite-window proper-ordering check. NotProper is returned only when the
/// violation is certain for the infinite diagram, which requires a periodic
/// provider together with an order rule; a finite window alone can only
/// yield ProperWitness or UndeterminedAtDepth.
ProperResult properly_ordered_within(const OrderedBratteliDiagram &od, std::size_t depth);

/// Telescopes to entrywise-positive incidence matrices and ranks each fiber
/// by (source index, edge index).
OrderedBratteliDiagram skau_order(const BratteliDiagram &d, std::size_t horizon);

} // namespace bv
