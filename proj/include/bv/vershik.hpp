#pragma once

#include "bv/ordering.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bv {

/// Root path e_1 ... e_k, stored as edge indices per level.
class FinitePath {
public:
    FinitePath() = default;
    explicit FinitePath(std::vector<std::size_t> edges) : edges_(std::move(edges)) {}

    std::size_t depth() const { return edges_.size(); }
    const std::vector<std::size_t> &edges() const { return edges_; }

    /// Edge at level n, 1-based.
    std::size_t at_level(std::size_t n) const { return edges_.at(n - 1); }

    /// First k edges.
    FinitePath prefix(std::size_t k) const;

    /// "e1.e2.e3"; the empty path prints as "".
    std::string to_string() const;
    static FinitePath parse(std::string_view text);

    auto operator<=>(const FinitePath &) const = default;

private:
    std::vector<std::size_t> edges_;
};

/// Throws DiagramError unless edges exist and r(e_i) = s(e_{i+1}).
void validate_path(const BratteliDiagram &d, const FinitePath &p);

/// r(e_k), or the root for the empty path.
std::size_t range_vertex(const BratteliDiagram &d, const FinitePath &p);

/// Induced lexicographic comparison of two paths sharing their range:
/// the deepest differing coordinate decides.
std::strong_ordering lex_compare(const OrderedBratteliDiagram &od, const FinitePath &a, const FinitePath &b);

struct PathFiber {
    std::size_t level = 0;
    std::size_t vertex = 0;
    std::vector<FinitePath> paths;
};

inline constexpr std::uint64_t default_fiber_guard = 1'000'000;

/// All depth-k root paths ending at v, sorted by the induced order.
/// Throws SizeGuardExceeded if the fiber is larger than `guard`.
PathFiber enumerate_fiber(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v,
                          std::uint64_t guard = default_fiber_guard);

/// Unique path of depth k into v made of minimal (maximal) edges.
FinitePath min_path(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v);
FinitePath max_path(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v);

/// Every coordinate maximal: the true image depends on deeper levels.
struct FiberMaximum {
    bool operator==(const FiberMaximum &) const = default;
};
struct FiberMinimum {
    bool operator==(const FiberMinimum &) const = default;
};

using SuccessorResult = std::variant<FinitePath, FiberMaximum>;
using PredecessorResult = std::variant<FinitePath, FiberMinimum>;

/// Vershik successor on a finite prefix: bump the first non-maximal edge and
/// reset everything above it to the minimal path into its new source.
SuccessorResult vershik_successor(const OrderedBratteliDiagram &od, const FinitePath &p);
PredecessorResult vershik_predecessor(const OrderedBratteliDiagram &od, const FinitePath &p);

struct Orbit {
    std::vector<FinitePath> paths;
    /// Set when the orbit stopped at a fiber maximum without wrapping.
    bool stopped_at_boundary = false;
    /// Number of times wrap mode jumped from the fiber maximum to the minimum.
    std::size_t wraps = 0;
};

/// Iterates vershik_successor `steps` times. With `wrap`, a fiber maximum
/// continues at the fiber minimum (a cyclic model of the fiber).
Orbit vershik_orbit(const OrderedBratteliDiagram &od, const FinitePath &p, std::size_t steps, bool wrap);

/// 1-based index of the first differing coordinate, or nullopt if equal.
std::optional<std::size_t> first_difference(const FinitePath &a, const FinitePath &b);

/// d_B(a, b) = 2^{-k} with k the first differing coordinate; 0 if equal.
double path_distance(const FinitePath &a, const FinitePath &b);

/// Canonical bijection between depth-m_j paths of a diagram and depth-j paths
/// of its telescoping `tele` (which must carry a TelescopeTrace).
FinitePath telescope_path(const BratteliDiagram &tele, const FinitePath &p);
FinitePath untelescope_path(const BratteliDiagram &tele, const FinitePath &q);

} // namespace bv
