#include "bv/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace bv {

std::string to_string(ProviderKind kind) {
    switch (kind) {
    case ProviderKind::stationary:
        return "stationary";
    case ProviderKind::eventually_periodic:
        return "eventually-periodic";
    case ProviderKind::explicit_table:
        return "explicit-table";
    }
    return "unknown";
}

namespace {

class PeriodicProvider final : public LevelProvider {
public:
    PeriodicProvider(ProviderKind kind, std::vector<LevelData> prefix, std::vector<LevelData> cycle)
        : kind_(kind), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
        if (cycle_.empty())
            throw DiagramError("periodic provider needs a nonempty cycle");
        if (prefix_.empty())
            throw DiagramError("periodic provider needs level 1 in its prefix");
        // The cycle must close up on the vertex set it starts from.
        if (cycle_.back().vertex_count != prefix_.back().vertex_count)
            throw DiagramError("provider cycle does not return to its starting vertex count");
        std::size_t previous = 1;
        for (const auto &level : prefix_) {
            check_level(level, previous);
            previous = level.vertex_count;
        }
        for (const auto &level : cycle_) {
            check_level(level, previous);
            previous = level.vertex_count;
        }
    }

    ProviderKind kind() const override { return kind_; }

    LevelData level(std::size_t n) const override {
        if (n == 0)
            throw DiagramError("levels are numbered from 1");
        if (n <= prefix_.size())
            return prefix_[n - 1];
        return cycle_[(n - prefix_.size() - 1) % cycle_.size()];
    }

    std::size_t prefix_length() const override { return prefix_.size(); }
    std::size_t period() const override { return cycle_.size(); }

private:
    static void check_level(const LevelData &level, std::size_t sources) {
        for (const auto &e : level.edges)
            if (e.source >= sources || e.range >= level.vertex_count)
                throw DiagramError("provider level has an edge endpoint out of range");
    }

    ProviderKind kind_;
    std::vector<LevelData> prefix_;
    std::vector<LevelData> cycle_;
};

class TableProvider final : public LevelProvider {
public:
    explicit TableProvider(std::vector<LevelData> levels) : levels_(std::move(levels)) {}

    ProviderKind kind() const override { return ProviderKind::explicit_table; }

    LevelData level(std::size_t n) const override {
        if (n == 0)
            throw DiagramError("levels are numbered from 1");
        if (n > levels_.size())
            throw ProviderExhausted("explicit table has no level " + std::to_string(n));
        return levels_[n - 1];
    }

    std::optional<std::size_t> last_level() const override { return levels_.size(); }

private:
    std::vector<LevelData> levels_;
};

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix support(const IncidenceMatrix &m) {
    BoolMatrix out(m.rows(), std::vector<char>(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m.at(i, j) != 0;
    return out;
}

BoolMatrix bool_product(const BoolMatrix &a, const BoolMatrix &b) {
    const std::size_t inner = b.size();
    const std::size_t cols = inner == 0 ? 0 : b[0].size();
    BoolMatrix out(a.size(), std::vector<char>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < cols; ++j)
                    out[i][j] |= b[k][j];
    return out;
}

bool all_positive(const BoolMatrix &m) {
    return std::all_of(m.begin(), m.end(),
                       [](const auto &row) { return std::all_of(row.begin(), row.end(), [](char c) { return c != 0; }); });
}

} // namespace

std::shared_ptr<const LevelProvider> make_stationary_provider(LevelData first, LevelData repeated) {
    return std::make_shared<PeriodicProvider>(ProviderKind::stationary, std::vector<LevelData>{std::move(first)},
                                              std::vector<LevelData>{std::move(repeated)});
}

std::shared_ptr<const LevelProvider> make_periodic_provider(std::vector<LevelData> prefix,
                                                            std::vector<LevelData> cycle) {
    return std::make_shared<PeriodicProvider>(ProviderKind::eventually_periodic, std::move(prefix),
                                              std::move(cycle));
}

std::shared_ptr<const LevelProvider> make_table_provider(std::vector<LevelData> levels) {
    return std::make_shared<TableProvider>(std::move(levels));
}

LevelData level_from_matrix(const std::vector<std::vector<std::uint64_t>> &matrix) {
    LevelData level;
    level.vertex_count = matrix.size();
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < matrix[i].size(); ++j)
            for (std::uint64_t k = 0; k < matrix[i][j]; ++k)
                level.edges.push_back({j, i});
    return level;
}

// IncidenceMatrix

IncidenceMatrix::IncidenceMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

IncidenceMatrix::IncidenceMatrix(std::vector<std::vector<std::uint64_t>> entries) {
    rows_ = entries.size();
    cols_ = rows_ == 0 ? 0 : entries[0].size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : entries) {
        if (row.size() != cols_)
            throw DiagramError("ragged incidence matrix");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

std::uint64_t IncidenceMatrix::total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

bool IncidenceMatrix::entrywise_positive() const {
    return std::all_of(entries_.begin(), entries_.end(), [](std::uint64_t x) { return x > 0; });
}

bool IncidenceMatrix::rows_nonzero() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < cols_; ++j)
            any = any || at(i, j) > 0;
        if (!any)
            return false;
    }
    return true;
}

bool IncidenceMatrix::cols_nonzero() const {
    for (std::size_t j = 0; j < cols_; ++j) {
        bool any = false;
        for (std::size_t i = 0; i < rows_; ++i)
            any = any || at(i, j) > 0;
        if (!any)
            return false;
    }
    return true;
}

std::vector<std::vector<std::uint64_t>> IncidenceMatrix::to_rows() const {
    std::vector<std::vector<std::uint64_t>> out(rows_, std::vector<std::uint64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i][j] = at(i, j);
    return out;
}

IncidenceMatrix IncidenceMatrix::operator*(const IncidenceMatrix &rhs) const {
    if (cols_ != rhs.rows_)
        throw DiagramError("incidence matrix shapes do not compose");
    IncidenceMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                std::uint64_t term = 0;
                if (__builtin_mul_overflow(a, rhs.at(k, j), &term) ||
                    __builtin_add_overflow(out.at(i, j), term, &out.at(i, j)))
                    throw std::overflow_error("incidence matrix product overflows 64 bits");
            }
        }
    return out;
}

// BratteliDiagram

BratteliDiagram::BratteliDiagram(std::vector<std::size_t> vertex_counts, std::vector<std::vector<Edge>> edges,
                                 std::shared_ptr<const LevelProvider> provider)
    : vertex_counts_(std::move(vertex_counts)), edges_(std::move(edges)), provider_(std::move(provider)) {
    validate();
    build_indices();
}

BratteliDiagram BratteliDiagram::from_provider(std::shared_ptr<const LevelProvider> provider, std::size_t depth) {
    if (!provider)
        throw DiagramError("null level provider");
    std::vector<std::size_t> counts{1};
    std::vector<std::vector<Edge>> edges;
    for (std::size_t n = 1; n <= depth; ++n) {
        LevelData level = provider->level(n);
        counts.push_back(level.vertex_count);
        edges.push_back(std::move(level.edges));
    }
    return BratteliDiagram(std::move(counts), std::move(edges), std::move(provider));
}

void BratteliDiagram::validate() const {
    if (vertex_counts_.empty() || vertex_counts_[0] != 1)
        throw DiagramError("level 0 must be a single root vertex");
    if (vertex_counts_.size() != edges_.size() + 1)
        throw DiagramError("need exactly one edge list per level below the root");
    for (std::size_t n = 1; n < vertex_counts_.size(); ++n) {
        if (vertex_counts_[n] == 0)
            throw DiagramError("level " + std::to_string(n) + " has no vertices");
        std::vector<char> has_in(vertex_counts_[n], 0);
        std::vector<char> has_out(vertex_counts_[n - 1], 0);
        for (const Edge &e : edges_[n - 1]) {
            if (e.source >= vertex_counts_[n - 1] || e.range >= vertex_counts_[n])
                throw DiagramError("edge endpoint out of range at level " + std::to_string(n));
            has_in[e.range] = 1;
            has_out[e.source] = 1;
        }
        for (std::size_t v = 0; v < has_in.size(); ++v)
            if (!has_in[v])
                throw DiagramError("vertex " + std::to_string(v) + " of level " + std::to_string(n) +
                                   " has no incoming edge");
        for (std::size_t v = 0; v < has_out.size(); ++v)
            if (!has_out[v])
                throw DiagramError("vertex " + std::to_string(v) + " of level " + std::to_string(n - 1) +
                                   " has no outgoing edge");
    }
}

void BratteliDiagram::build_indices() {
    in_.assign(edges_.size(), {});
    out_.assign(edges_.size(), {});
    for (std::size_t n = 1; n <= edges_.size(); ++n) {
        in_[n - 1].assign(vertex_counts_[n], {});
        out_[n - 1].assign(vertex_counts_[n - 1], {});
        const auto &level = edges_[n - 1];
        for (std::size_t i = 0; i < level.size(); ++i) {
            in_[n - 1][level[i].range].push_back(i);
            out_[n - 1][level[i].source].push_back(i);
        }
    }
}

std::span<const Edge> BratteliDiagram::edges(std::size_t level) const {
    if (level == 0 || level > depth())
        throw DiagramError("level " + std::to_string(level) + " out of range 1.." + std::to_string(depth()));
    return edges_[level - 1];
}

const Edge &BratteliDiagram::edge(std::size_t level, std::size_t index) const {
    auto level_edges = edges(level);
    if (index >= level_edges.size())
        throw DiagramError("edge " + std::to_string(index) + " out of range at level " + std::to_string(level));
    return level_edges[index];
}

std::span<const std::size_t> BratteliDiagram::in_edges(std::size_t level, std::size_t vertex) const {
    if (level == 0 || level > depth())
        throw DiagramError("level out of range");
    return in_[level - 1].at(vertex);
}

std::span<const std::size_t> BratteliDiagram::out_edges(std::size_t level, std::size_t vertex) const {
    if (level >= depth())
        throw DiagramError("no level below " + std::to_string(level));
    return out_[level].at(vertex);
}

bool BratteliDiagram::can_extend_to(std::size_t target) const {
    if (target <= depth())
        return true;
    if (!provider_)
        return false;
    auto last = provider_->last_level();
    return !last || *last >= target;
}

BratteliDiagram BratteliDiagram::extended_to(std::size_t target) const {
    if (target <= depth())
        return *this;
    if (!provider_)
        throw ProviderExhausted("diagram has no level provider; cannot extend past depth " +
                                std::to_string(depth()));
    auto counts = vertex_counts_;
    auto edges = edges_;
    for (std::size_t n = depth() + 1; n <= target; ++n) {
        LevelData level = provider_->level(n);
        counts.push_back(level.vertex_count);
        edges.push_back(std::move(level.edges));
    }
    return BratteliDiagram(std::move(counts), std::move(edges), provider_);
}

BratteliDiagram BratteliDiagram::truncated_to(std::size_t target) const {
    if (target >= depth())
        return *this;
    std::vector<std::size_t> counts(vertex_counts_.begin(), vertex_counts_.begin() + target + 1);
    std::vector<std::vector<Edge>> edges(edges_.begin(), edges_.begin() + target);
    BratteliDiagram out(std::move(counts), std::move(edges), provider_);
    if (trace_) {
        TelescopeTrace t;
        t.cuts.assign(trace_->cuts.begin(), trace_->cuts.begin() + target + 1);
        t.constituents.assign(trace_->constituents.begin(), trace_->constituents.begin() + target);
        out.trace_ = std::move(t);
    }
    return out;
}

// Operations

IncidenceMatrix incidence_matrix(const BratteliDiagram &d, std::size_t level) {
    auto edges = d.edges(level);
    IncidenceMatrix m(d.vertex_count(level), d.vertex_count(level - 1));
    for (const Edge &e : edges)
        ++m.at(e.range, e.source);
    return m;
}

IncidenceMatrix path_matrix(const BratteliDiagram &d, std::size_t from, std::size_t to) {
    if (from >= to || to > d.depth())
        throw DiagramError("path_matrix needs from < to <= depth");
    IncidenceMatrix product = incidence_matrix(d, from + 1);
    for (std::size_t n = from + 2; n <= to; ++n)
        product = incidence_matrix(d, n) * product;
    return product;
}

std::vector<std::uint64_t> root_path_counts(const BratteliDiagram &d, std::size_t k) {
    if (k > d.depth())
        throw DiagramError("level out of range");
    if (k == 0)
        return {1};
    IncidenceMatrix m = path_matrix(d, 0, k);
    std::vector<std::uint64_t> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        out[i] = m.at(i, 0);
    return out;
}

void validate_cuts(const BratteliDiagram &d, std::span<const std::size_t> cuts) {
    if (cuts.empty() || cuts.front() != 0)
        throw DiagramError("cut sequence must start at 0");
    if (cuts.back() != d.depth())
        throw DiagramError("cut sequence must end at the truncation depth " + std::to_string(d.depth()));
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] <= cuts[i - 1])
            throw DiagramError("cut sequence must be strictly increasing");
}

BratteliDiagram telescope(const BratteliDiagram &d, std::span<const std::size_t> cuts) {
    validate_cuts(d, cuts);
    std::vector<std::size_t> counts{1};
    std::vector<std::vector<Edge>> edges;
    TelescopeTrace trace;
    trace.cuts.assign(cuts.begin(), cuts.end());

    for (std::size_t j = 1; j < cuts.size(); ++j) {
        const std::size_t from = cuts[j - 1];
        const std::size_t to = cuts[j];
        std::vector<Edge> level;
        std::vector<std::vector<std::size_t>> parts;
        std::vector<std::size_t> stack;

        std::function<void(std::size_t, std::size_t, std::size_t)> extend =
            [&](std::size_t n, std::size_t edge_index, std::size_t start) {
                stack.push_back(edge_index);
                const Edge &e = d.edge(n, edge_index);
                if (n == to) {
                    level.push_back({start, e.range});
                    parts.push_back(stack);
                } else {
                    for (std::size_t next : d.out_edges(n, e.range))
                        extend(n + 1, next, start);
                }
                stack.pop_back();
            };
        for (std::size_t i = 0; i < d.edge_count(from + 1); ++i)
            extend(from + 1, i, d.edge(from + 1, i).source);

        counts.push_back(d.vertex_count(to));
        edges.push_back(std::move(level));
        trace.constituents.push_back(std::move(parts));
    }
    BratteliDiagram out(std::move(counts), std::move(edges));
    out.trace_ = std::move(trace);
    return out;
}

SimplicityResult is_simple_within(const BratteliDiagram &input, std::size_t horizon) {
    const BratteliDiagram d = input.extended_to(horizon);
    if (horizon == 0)
        return SimpleWitness{{0}};
    std::vector<std::size_t> cuts{0, 1};
    if (horizon == 1)
        return SimpleWitness{cuts};

    std::size_t current = 1;
    BoolMatrix block;
    for (std::size_t m = current + 1; m <= horizon; ++m) {
        BoolMatrix step = support(incidence_matrix(d, m));
        block = block.empty() ? step : bool_product(step, block);
        if (all_positive(block)) {
            cuts.push_back(m);
            current = m;
            block.clear();
        }
    }
    if (cuts.size() < 3)
        return NoWitnessWithinHorizon{horizon};
    return SimpleWitness{cuts};
}

// Isomorphism

namespace {

struct IsoSearch {
    const BratteliDiagram &lhs;
    const BratteliDiagram &rhs;
    IsomorphismLimits limits;
    std::vector<IncidenceMatrix> left_m;
    std::vector<IncidenceMatrix> right_m;
    std::vector<std::vector<std::size_t>> maps;
    std::uint64_t nodes = 0;

    std::size_t out_degree(const BratteliDiagram &d, std::size_t n, std::size_t v) const {
        return n < d.depth() ? d.out_edges(n, v).size() : 0;
    }

    bool level(std::size_t n) {
        if (n > lhs.depth())
            return true;
        const std::size_t size = lhs.vertex_count(n);
        maps[n].assign(size, 0);
        std::vector<char> used(size, 0);
        return assign(n, 0, used);
    }

    bool assign(std::size_t n, std::size_t i, std::vector<char> &used) {
        if (++nodes > limits.max_search_nodes)
            throw SizeGuardExceeded("isomorphism search exceeded its node budget");
        const std::size_t size = lhs.vertex_count(n);
        if (i == size)
            return level(n + 1);
        const auto &ml = left_m[n - 1];
        const auto &mr = right_m[n - 1];
        for (std::size_t t = 0; t < size; ++t) {
            if (used[t])
                continue;
            if (out_degree(lhs, n, i) != out_degree(rhs, n, t))
                continue;
            bool row_ok = true;
            for (std::size_t j = 0; j < ml.cols() && row_ok; ++j)
                row_ok = ml.at(i, j) == mr.at(t, maps[n - 1][j]);
            if (!row_ok)
                continue;
            used[t] = 1;
            maps[n][i] = t;
            if (assign(n, i + 1, used))
                return true;
            used[t] = 0;
        }
        return false;
    }
};

} // namespace

IsomorphismResult are_isomorphic(const BratteliDiagram &lhs, const BratteliDiagram &rhs, IsomorphismLimits limits) {
    IsomorphismResult result;
    if (lhs.depth() != rhs.depth()) {
        result.refutation = "depths differ";
        return result;
    }
    for (std::size_t n = 0; n <= lhs.depth(); ++n) {
        if (lhs.vertex_count(n) > limits.max_vertices_per_level)
            throw SizeGuardExceeded("level " + std::to_string(n) + " exceeds the isomorphism size guard");
        if (lhs.vertex_count(n) != rhs.vertex_count(n)) {
            result.refutation = "vertex counts differ at level " + std::to_string(n);
            return result;
        }
        if (n > 0 && lhs.edge_count(n) != rhs.edge_count(n)) {
            result.refutation = "edge counts differ at level " + std::to_string(n);
            return result;
        }
    }

    IsoSearch search{lhs, rhs, limits, {}, {}, {}, 0};
    for (std::size_t n = 1; n <= lhs.depth(); ++n) {
        search.left_m.push_back(incidence_matrix(lhs, n));
        search.right_m.push_back(incidence_matrix(rhs, n));
    }
    search.maps.assign(lhs.depth() + 1, {});
    search.maps[0] = {0};
    if (!search.level(1)) {
        result.refutation = "no levelwise vertex bijection matches the incidence matrices";
        return result;
    }

    IsomorphismWitness w;
    w.vertex_maps = search.maps;
    for (std::size_t n = 1; n <= lhs.depth(); ++n) {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> targets;
        auto right_edges = rhs.edges(n);
        for (std::size_t i = 0; i < right_edges.size(); ++i)
            targets[{right_edges[i].source, right_edges[i].range}].push_back(i);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> taken;
        std::vector<std::size_t> edge_map;
        for (const Edge &e : lhs.edges(n)) {
            const std::pair<std::size_t, std::size_t> key{w.vertex_maps[n - 1][e.source], w.vertex_maps[n][e.range]};
            edge_map.push_back(targets.at(key).at(taken[key]++));
        }
        w.edge_maps.push_back(std::move(edge_map));
    }
    result.witness = std::move(w);
    return result;
}

bool verify_isomorphism(const BratteliDiagram &lhs, const BratteliDiagram &rhs, const IsomorphismWitness &w) {
    if (lhs.depth() != rhs.depth() || w.vertex_maps.size() != lhs.depth() + 1 || w.edge_maps.size() != lhs.depth())
        return false;
    for (std::size_t n = 0; n <= lhs.depth(); ++n) {
        const auto &f = w.vertex_maps[n];
        if (f.size() != lhs.vertex_count(n) || lhs.vertex_count(n) != rhs.vertex_count(n))
            return false;
        std::vector<char> hit(f.size(), 0);
        for (std::size_t x : f) {
            if (x >= f.size() || hit[x])
                return false;
            hit[x] = 1;
        }
    }
    for (std::size_t n = 1; n <= lhs.depth(); ++n) {
        const auto &g = w.edge_maps[n - 1];
        if (g.size() != lhs.edge_count(n) || g.size() != rhs.edge_count(n))
            return false;
        std::vector<char> hit(g.size(), 0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] >= g.size() || hit[g[i]])
                return false;
            hit[g[i]] = 1;
            const Edge &e = lhs.edge(n, i);
            const Edge &image = rhs.edge(n, g[i]);
            if (image.source != w.vertex_maps[n - 1][e.source] || image.range != w.vertex_maps[n][e.range])
                return false;
        }
    }
    return true;
}

} // namespace bv
