#include "bv/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bv {

OrderedBratteliDiagram odometer(const std::vector<std::size_t> &radices) {
    std::vector<std::size_t> counts(radices.size() + 1, 1);
    std::vector<std::vector<Edge>> edges;
    for (std::size_t r : radices) {
        if (r == 0)
            throw std::invalid_argument("odometer radix must be positive");
        edges.emplace_back(r, Edge{0, 0});
    }
    return OrderedBratteliDiagram::by_rule(BratteliDiagram(std::move(counts), std::move(edges)),
                                           OrderRule::edge_index);
}

BratteliDiagram stationary_diagram(const std::vector<std::vector<std::uint64_t>> &matrix, std::size_t depth) {
    if (matrix.empty() || matrix.size() != matrix[0].size())
        throw std::invalid_argument("stationary matrix must be square and nonempty");
    LevelData first;
    first.vertex_count = matrix.size();
    for (std::size_t v = 0; v < matrix.size(); ++v)
        first.edges.push_back({0, v});
    return BratteliDiagram::from_provider(make_stationary_provider(std::move(first), level_from_matrix(matrix)),
                                          depth + 1);
}

namespace {

std::uint64_t draw(std::mt19937_64 &rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

} // namespace

BratteliDiagram random_simple_diagram(std::uint64_t seed, const RandomSimpleParams &params) {
    if (params.depth < 2)
        throw std::invalid_argument("random simple diagrams need depth >= 2");
    if (params.max_vertices == 0 || params.max_multiplicity == 0 || params.positive_every == 0)
        throw std::invalid_argument("random simple parameters must be positive");
    std::mt19937_64 rng(seed);

    std::vector<std::size_t> counts{1};
    for (std::size_t n = 1; n <= params.depth; ++n)
        counts.push_back(draw(rng, 1, params.max_vertices));

    std::vector<std::vector<Edge>> edges;
    std::vector<std::vector<std::uint64_t>> first(counts[1], std::vector<std::uint64_t>(1));
    for (auto &row : first)
        row[0] = draw(rng, 1, params.max_multiplicity);
    if (counts[1] == 1 && first[0][0] < 2)
        first[0][0] = 2;
    edges.push_back(level_from_matrix(first).edges);

    for (std::size_t n = 2; n <= params.depth; ++n) {
        const bool positive = n % params.positive_every == 0 || n == params.depth;
        std::vector<std::vector<std::uint64_t>> m(counts[n], std::vector<std::uint64_t>(counts[n - 1]));
        for (auto &row : m)
            for (auto &x : row)
                x = draw(rng, positive ? 1 : 0, params.max_multiplicity);
        for (auto &row : m) {
            if (std::accumulate(row.begin(), row.end(), std::uint64_t{0}) < 2)
                row[draw(rng, 0, row.size() - 1)] += 1;
            if (std::accumulate(row.begin(), row.end(), std::uint64_t{0}) < 2)
                row[0] += 1;
        }
        for (std::size_t j = 0; j < counts[n - 1]; ++j) {
            bool used = false;
            for (const auto &row : m)
                used = used || row[j] > 0;
            if (!used)
                m[draw(rng, 0, m.size() - 1)][j] = 1;
        }
        edges.push_back(level_from_matrix(m).edges);
    }
    return BratteliDiagram(std::move(counts), std::move(edges));
}

OrderedBratteliDiagram random_ordered_diagram(std::uint64_t seed, const RandomSimpleParams &params) {
    BratteliDiagram d = random_simple_diagram(seed, params);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::vector<std::size_t>> ranks;
    for (std::size_t n = 1; n <= d.depth(); ++n) {
        std::vector<std::size_t> level(d.edge_count(n));
        for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
            auto in = d.in_edges(n, v);
            std::vector<std::size_t> order(in.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t i = 0; i < in.size(); ++i)
                level[in[i]] = order[i];
        }
        ranks.push_back(std::move(level));
    }
    return OrderedBratteliDiagram(std::move(d), std::move(ranks));
}

} // namespace bv
