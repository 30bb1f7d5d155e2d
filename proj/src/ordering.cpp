#include "bv/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bv {

std::string to_string(OrderRule rule) {
    switch (rule) {
    case OrderRule::edge_index:
        return "edge-index";
    case OrderRule::skau:
        return "skau";
    }
    return "unknown";
}

std::vector<std::size_t> rank_level(const BratteliDiagram &d, std::size_t level, OrderRule rule) {
    std::vector<std::size_t> ranks(d.edge_count(level), 0);
    for (std::size_t v = 0; v < d.vertex_count(level); ++v) {
        auto in = d.in_edges(level, v);
        std::vector<std::size_t> fiber(in.begin(), in.end());
        if (rule == OrderRule::skau)
            std::stable_sort(fiber.begin(), fiber.end(), [&](std::size_t a, std::size_t b) {
                return d.edge(level, a).source < d.edge(level, b).source;
            });
        for (std::size_t r = 0; r < fiber.size(); ++r)
            ranks[fiber[r]] = r;
    }
    return ranks;
}

OrderedBratteliDiagram::OrderedBratteliDiagram(BratteliDiagram base, std::vector<std::vector<std::size_t>> ranks)
    : OrderedBratteliDiagram(std::move(base), std::move(ranks), std::nullopt) {}

OrderedBratteliDiagram::OrderedBratteliDiagram(BratteliDiagram base, std::vector<std::vector<std::size_t>> ranks,
                                               std::optional<OrderRule> rule)
    : base_(std::move(base)), ranks_(std::move(ranks)), rule_(rule) {
    if (ranks_.size() != base_.depth())
        throw DiagramError("need one rank list per level");
    for (std::size_t n = 1; n <= base_.depth(); ++n)
        if (ranks_[n - 1].size() != base_.edge_count(n))
            throw DiagramError("rank list size differs from edge count at level " + std::to_string(n));
    build_fibers();
}

OrderedBratteliDiagram OrderedBratteliDiagram::by_rule(BratteliDiagram base, OrderRule rule) {
    std::vector<std::vector<std::size_t>> ranks;
    for (std::size_t n = 1; n <= base.depth(); ++n)
        ranks.push_back(rank_level(base, n, rule));
    return OrderedBratteliDiagram(std::move(base), std::move(ranks), rule);
}

void OrderedBratteliDiagram::build_fibers() {
    fibers_.assign(base_.depth(), {});
    for (std::size_t n = 1; n <= base_.depth(); ++n) {
        auto &level = fibers_[n - 1];
        level.assign(base_.vertex_count(n), {});
        for (std::size_t v = 0; v < base_.vertex_count(n); ++v) {
            auto in = base_.in_edges(n, v);
            std::vector<std::size_t> fiber(in.size(), in.size());
            for (std::size_t e : in) {
                const std::size_t r = ranks_[n - 1][e];
                if (r >= in.size() || fiber[r] != in.size())
                    throw DiagramError("ranks of fiber " + std::to_string(v) + " at level " + std::to_string(n) +
                                       " are not a bijection onto 0.." + std::to_string(in.size() - 1));
                fiber[r] = e;
            }
            level[v] = std::move(fiber);
        }
    }
}

std::size_t OrderedBratteliDiagram::rank(std::size_t level, std::size_t edge) const {
    if (level == 0 || level > depth())
        throw DiagramError("level out of range");
    return ranks_[level - 1].at(edge);
}

std::span<const std::size_t> OrderedBratteliDiagram::fiber(std::size_t level, std::size_t vertex) const {
    if (level == 0 || level > depth())
        throw DiagramError("level out of range");
    return fibers_[level - 1].at(vertex);
}

bool OrderedBratteliDiagram::is_max(std::size_t level, std::size_t edge) const {
    const Edge &e = base_.edge(level, edge);
    return rank(level, edge) + 1 == fiber(level, e.range).size();
}

std::optional<std::size_t> OrderedBratteliDiagram::next_edge(std::size_t level, std::size_t edge) const {
    const Edge &e = base_.edge(level, edge);
    auto f = fiber(level, e.range);
    const std::size_t r = rank(level, edge);
    if (r + 1 >= f.size())
        return std::nullopt;
    return f[r + 1];
}

std::optional<std::size_t> OrderedBratteliDiagram::previous_edge(std::size_t level, std::size_t edge) const {
    const Edge &e = base_.edge(level, edge);
    const std::size_t r = rank(level, edge);
    if (r == 0)
        return std::nullopt;
    return fiber(level, e.range)[r - 1];
}

bool OrderedBratteliDiagram::can_extend_to(std::size_t target) const {
    return target <= depth() || (rule_ && base_.can_extend_to(target));
}

OrderedBratteliDiagram OrderedBratteliDiagram::extended_to(std::size_t target) const {
    if (target <= depth())
        return *this;
    if (!rule_)
        throw ProviderExhausted("ordered diagram has no order rule for levels past " + std::to_string(depth()));
    BratteliDiagram longer = base_.extended_to(target);
    auto ranks = ranks_;
    for (std::size_t n = depth() + 1; n <= target; ++n)
        ranks.push_back(rank_level(longer, n, *rule_));
    return OrderedBratteliDiagram(std::move(longer), std::move(ranks), rule_);
}

OrderedBratteliDiagram OrderedBratteliDiagram::truncated_to(std::size_t target) const {
    if (target >= depth())
        return *this;
    std::vector<std::vector<std::size_t>> ranks(ranks_.begin(), ranks_.begin() + target);
    return OrderedBratteliDiagram(base_.truncated_to(target), std::move(ranks), rule_);
}

OrderedBratteliDiagram lex_telescope(const OrderedBratteliDiagram &od, std::span<const std::size_t> cuts) {
    BratteliDiagram tele = telescope(od.base(), cuts);
    const TelescopeTrace &trace = *tele.trace();
    std::vector<std::vector<std::size_t>> ranks;
    for (std::size_t j = 1; j <= tele.depth(); ++j) {
        const std::size_t first_level = cuts[j - 1] + 1;
        const auto &parts = trace.constituents[j - 1];
        std::vector<std::size_t> level_ranks(tele.edge_count(j), 0);
        for (std::size_t v = 0; v < tele.vertex_count(j); ++v) {
            auto in = tele.in_edges(j, v);
            std::vector<std::size_t> fiber(in.begin(), in.end());
            std::sort(fiber.begin(), fiber.end(), [&](std::size_t a, std::size_t b) {
                const auto &pa = parts[a];
                const auto &pb = parts[b];
                for (std::size_t i = pa.size(); i-- > 0;) {
                    if (pa[i] != pb[i])
                        return od.rank(first_level + i, pa[i]) < od.rank(first_level + i, pb[i]);
                }
                return false;
            });
            for (std::size_t r = 0; r < fiber.size(); ++r)
                level_ranks[fiber[r]] = r;
        }
        ranks.push_back(std::move(level_ranks));
    }
    return OrderedBratteliDiagram(std::move(tele), std::move(ranks));
}

std::size_t MinMaxTree::edge_count() const {
    std::size_t total = 0;
    for (const auto &level : edges)
        total += level.size();
    return total;
}

std::pair<MinMaxTree, MinMaxTree> min_max_trees(const OrderedBratteliDiagram &od) {
    MinMaxTree lo;
    MinMaxTree hi;
    const BratteliDiagram &d = od.base();
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        std::vector<std::size_t> lo_edges, hi_edges, lo_par, hi_par;
        for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
            const std::size_t a = od.min_edge(n, v);
            const std::size_t b = od.max_edge(n, v);
            lo_edges.push_back(a);
            hi_edges.push_back(b);
            lo_par.push_back(d.edge(n, a).source);
            hi_par.push_back(d.edge(n, b).source);
        }
        lo.edges.push_back(std::move(lo_edges));
        lo.parents.push_back(std::move(lo_par));
        hi.edges.push_back(std::move(hi_edges));
        hi.parents.push_back(std::move(hi_par));
    }
    return {std::move(lo), std::move(hi)};
}

namespace {

/// Vertices of each level 0..depth with a tree descendant at `depth`.
std::vector<std::vector<char>> survivors(const BratteliDiagram &d, const MinMaxTree &tree, std::size_t depth) {
    std::vector<std::vector<char>> alive(depth + 1);
    alive[depth].assign(d.vertex_count(depth), 1);
    for (std::size_t n = depth; n >= 1; --n) {
        alive[n - 1].assign(d.vertex_count(n - 1), 0);
        for (std::size_t v = 0; v < d.vertex_count(n); ++v)
            if (alive[n][v])
                alive[n - 1][tree.parent(n, v)] = 1;
    }
    return alive;
}

/// Unique surviving branch through levels 1..depth-1, extended through
/// `depth` when that level is also unique. Empty optional if two branches
/// survive at some level below `depth`.
std::optional<std::vector<std::size_t>> unique_branch(const BratteliDiagram &d, const MinMaxTree &tree,
                                                      std::size_t depth, std::size_t &split_level) {
    auto alive = survivors(d, tree, depth);
    std::vector<std::size_t> prefix;
    for (std::size_t n = 1; n <= depth; ++n) {
        const auto count = std::count(alive[n].begin(), alive[n].end(), 1);
        if (count != 1) {
            if (n == depth)
                break;
            split_level = n;
            return std::nullopt;
        }
        const auto v = static_cast<std::size_t>(std::find(alive[n].begin(), alive[n].end(), 1) - alive[n].begin());
        prefix.push_back(tree.edge_into(n, v));
    }
    return prefix;
}

/// Number of infinite branches of a tree whose levels repeat with the
/// provider's period: size of the eventual image of the one-period parent map.
std::size_t periodic_branch_count(const MinMaxTree &tree, std::size_t start, std::size_t period,
                                  std::size_t width) {
    std::vector<std::size_t> step(width);
    for (std::size_t v = 0; v < width; ++v) {
        std::size_t x = v;
        for (std::size_t n = start + period; n > start; --n)
            x = tree.parent(n, x);
        step[v] = x;
    }
    std::set<std::size_t> image;
    for (std::size_t v = 0; v < width; ++v)
        image.insert(v);
    for (std::size_t round = 0; round < width; ++round) {
        std::set<std::size_t> next;
        for (std::size_t v : image)
            next.insert(step[v]);
        image = std::move(next);
    }
    return image.size();
}

bool primitive(const IncidenceMatrix &m) {
    const std::size_t r = m.rows();
    std::vector<std::vector<char>> base(r, std::vector<char>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            base[i][j] = m.at(i, j) != 0;
    auto power = base;
    // Wielandt: a primitive r x r matrix has a positive power at (r-1)^2 + 1.
    const std::size_t bound = (r - 1) * (r - 1) + 1;
    for (std::size_t k = 1; k < bound; ++k) {
        std::vector<std::vector<char>> next(r, std::vector<char>(r, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t l = 0; l < r; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < r; ++j)
                        next[i][j] |= base[l][j];
        power = std::move(next);
    }
    for (const auto &row : power)
        for (char c : row)
            if (!c)
                return false;
    return true;
}

std::optional<NotProper> certified_violation(const OrderedBratteliDiagram &od) {
    const auto &provider = od.base().provider();
    if (!provider || !od.rule() || provider->kind() == ProviderKind::explicit_table)
        return std::nullopt;
    const std::size_t start = provider->prefix_length();
    const std::size_t period = provider->period();
    const OrderedBratteliDiagram full = od.extended_to(start + period);
    const BratteliDiagram &d = full.base();
    const std::size_t width = d.vertex_count(start);

    // The cycle product is square because the provider closes its cycle.
    IncidenceMatrix cycle = path_matrix(d, start, start + period);
    if (!primitive(cycle))
        return NotProper{NotProper::Violation::not_simple,
                         "the periodic part's incidence product is not primitive, so no telescoping is positive"};

    auto [lo, hi] = min_max_trees(full);
    if (auto count = periodic_branch_count(lo, start, period, width); count > 1)
        return NotProper{NotProper::Violation::several_min_paths,
                         std::to_string(count) + " infinite branches survive in the min-edge tree"};
    if (auto count = periodic_branch_count(hi, start, period, width); count > 1)
        return NotProper{NotProper::Violation::several_max_paths,
                         std::to_string(count) + " infinite branches survive in the max-edge tree"};
    return std::nullopt;
}

} // namespace

ProperResult properly_ordered_within(const OrderedBratteliDiagram &input, std::size_t depth) {
    if (depth == 0)
        return UndeterminedAtDepth{0, "depth 0 shows no edges"};
    const OrderedBratteliDiagram od = input.extended_to(depth);

    if (auto violation = certified_violation(od))
        return *violation;

    auto simple = is_simple_within(od.base(), depth);
    if (std::holds_alternative<NoWitnessWithinHorizon>(simple))
        return UndeterminedAtDepth{depth, "no entrywise-positive telescoping block within depth"};

    std::uint64_t paths = 0;
    for (std::uint64_t c : root_path_counts(od.base(), depth))
        paths += c;
    if (paths < 2)
        return UndeterminedAtDepth{depth, "path space has a single point at this depth"};

    auto [lo, hi] = min_max_trees(od);
    std::size_t split = 0;
    auto min_prefix = unique_branch(od.base(), lo, depth, split);
    if (!min_prefix)
        return UndeterminedAtDepth{depth, "two min-edge branches survive at level " + std::to_string(split)};
    auto max_prefix = unique_branch(od.base(), hi, depth, split);
    if (!max_prefix)
        return UndeterminedAtDepth{depth, "two max-edge branches survive at level " + std::to_string(split)};

    return ProperWitness{std::move(*min_prefix), std::move(*max_prefix), std::get<SimpleWitness>(simple).cuts};
}

OrderedBratteliDiagram skau_order(const BratteliDiagram &d, std::size_t horizon) {
    auto simple = is_simple_within(d, horizon);
    if (auto *none = std::get_if<NoWitnessWithinHorizon>(&simple))
        throw DiagramError("diagram has no positive telescoping within horizon " + std::to_string(none->horizon));
    const auto &cuts = std::get<SimpleWitness>(simple).cuts;
    const std::size_t last = cuts.back();
    BratteliDiagram window = d.extended_to(last).truncated_to(last);

    bool identity = true;
    for (std::size_t i = 0; i < cuts.size(); ++i)
        identity = identity && cuts[i] == i;
    if (identity)
        return OrderedBratteliDiagram::by_rule(std::move(window), OrderRule::skau);

    BratteliDiagram tele = telescope(window, cuts);
    std::vector<std::vector<std::size_t>> ranks;
    for (std::size_t n = 1; n <= tele.depth(); ++n)
        ranks.push_back(rank_level(tele, n, OrderRule::skau));
    return OrderedBratteliDiagram(std::move(tele), std::move(ranks));
}

} // namespace bv
