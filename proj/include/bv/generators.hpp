#pragma once

#include "bv/ordering.hpp"

#include <cstdint>
#include <vector>

namespace bv {

/// One vertex per level with radices[n-1] edges at level n, ordered by edge
/// index. The Vershik map is add-with-carry in the mixed radix.
OrderedBratteliDiagram odometer(const std::vector<std::size_t> &radices);

/// Root to every vertex by one edge each, then `depth` copies of `matrix`
/// (rows index the range level). The diagram keeps a stationary provider.
BratteliDiagram stationary_diagram(const std::vector<std::vector<std::uint64_t>> &matrix, std::size_t depth);

struct RandomSimpleParams {
    std::size_t depth = 6;
    std::size_t max_vertices = 3;
    std::uint64_t max_multiplicity = 2;
    /// Levels whose index is a multiple of this are entrywise positive.
    std::size_t positive_every = 3;
};

/// Seeded random diagram. Level 1 has at least two edges, every vertex
/// beyond level 1 receives at least two edges, and every `positive_every`-th
/// level as well as the last one is entrywise positive, so the diagram
/// passes is_simple_within at its own depth.
BratteliDiagram random_simple_diagram(std::uint64_t seed, const RandomSimpleParams &params = {});

/// random_simple_diagram with every fiber ranked by a seeded shuffle.
OrderedBratteliDiagram random_ordered_diagram(std::uint64_t seed, const RandomSimpleParams &params = {});

} // namespace bv
