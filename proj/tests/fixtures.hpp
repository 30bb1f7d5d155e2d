#pragma once

#include "bv/diagram.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace fixtures {

using Matrix = std::vector<std::vector<std::uint64_t>>;

/// Diagram with the given incidence matrices; matrices[0] must be a column.
inline bv::BratteliDiagram from_matrices(const std::vector<Matrix> &matrices) {
    std::vector<std::size_t> counts{1};
    std::vector<std::vector<bv::Edge>> edges;
    for (const auto &m : matrices) {
        counts.push_back(m.size());
        edges.push_back(bv::level_from_matrix(m).edges);
    }
    return bv::BratteliDiagram(std::move(counts), std::move(edges));
}

/// Three levels of the drawn example: V_1 has 2 vertices, V_2 has 4, V_3 has 2.
inline bv::BratteliDiagram figure_one() {
    return from_matrices({{{1}, {1}},
                          {{0, 1}, {2, 1}, {1, 0}, {0, 2}},
                          {{2, 1, 0, 0}, {1, 0, 1, 1}}});
}

/// Random matrix with no zero row or column.
inline Matrix random_matrix(std::mt19937_64 &rng, std::size_t rows, std::size_t cols, std::uint64_t max_entry) {
    std::uniform_int_distribution<std::uint64_t> entry(0, max_entry);
    Matrix m(rows, std::vector<std::uint64_t>(cols));
    for (auto &row : m)
        for (auto &x : row)
            x = entry(rng);
    for (std::size_t i = 0; i < rows; ++i)
        if (std::all_of(m[i].begin(), m[i].end(), [](auto x) { return x == 0; }))
            m[i][i % cols] = 1;
    for (std::size_t j = 0; j < cols; ++j) {
        bool used = false;
        for (const auto &row : m)
            used = used || row[j] > 0;
        if (!used)
            m[j % rows][j] = 1;
    }
    return m;
}

inline bv::BratteliDiagram random_diagram(std::mt19937_64 &rng, std::size_t depth, std::size_t max_vertices,
                                          std::uint64_t max_entry = 2) {
    std::uniform_int_distribution<std::size_t> width(1, max_vertices);
    std::vector<Matrix> ms;
    std::size_t prev = 1;
    for (std::size_t n = 1; n <= depth; ++n) {
        const std::size_t w = width(rng);
        ms.push_back(random_matrix(rng, w, prev, max_entry));
        prev = w;
    }
    return from_matrices(ms);
}

} // namespace fixtures
