#include "bv/vershik.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bv {

FinitePath FinitePath::prefix(std::size_t k) const {
    if (k > depth())
        throw DiagramError("prefix longer than path");
    return FinitePath(std::vector<std::size_t>(edges_.begin(), edges_.begin() + k));
}

std::string FinitePath::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (i)
            out << '.';
        out << edges_[i];
    }
    return out.str();
}

FinitePath FinitePath::parse(std::string_view text) {
    std::vector<std::size_t> edges;
    if (text.empty())
        return FinitePath{};
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = text.find('.', pos);
        const std::string_view part = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
            throw DiagramError("bad path notation '" + std::string(text) + "'");
        edges.push_back(value);
        if (dot == std::string_view::npos)
            break;
        pos = dot + 1;
    }
    return FinitePath(std::move(edges));
}

void validate_path(const BratteliDiagram &d, const FinitePath &p) {
    if (p.depth() > d.depth())
        throw DiagramError("path of depth " + std::to_string(p.depth()) + " exceeds diagram depth " +
                           std::to_string(d.depth()));
    std::size_t vertex = 0;
    for (std::size_t n = 1; n <= p.depth(); ++n) {
        const Edge &e = d.edge(n, p.at_level(n));
        if (e.source != vertex)
            throw DiagramError("path " + p.to_string() + " is not composable at level " + std::to_string(n));
        vertex = e.range;
    }
}

std::size_t range_vertex(const BratteliDiagram &d, const FinitePath &p) {
    if (p.depth() == 0)
        return 0;
    return d.edge(p.depth(), p.at_level(p.depth())).range;
}

std::strong_ordering lex_compare(const OrderedBratteliDiagram &od, const FinitePath &a, const FinitePath &b) {
    if (a.depth() != b.depth())
        throw DiagramError("lexicographic comparison needs equal depths");
    for (std::size_t n = a.depth(); n >= 1; --n) {
        const std::size_t x = a.at_level(n);
        const std::size_t y = b.at_level(n);
        if (x != y) {
            if (od.base().edge(n, x).range != od.base().edge(n, y).range)
                throw DiagramError("paths are not comparable: ranges differ at level " + std::to_string(n));
            return od.rank(n, x) <=> od.rank(n, y);
        }
    }
    return std::strong_ordering::equal;
}

PathFiber enumerate_fiber(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v, std::uint64_t guard) {
    const BratteliDiagram &d = od.base();
    if (k > d.depth())
        throw DiagramError("fiber level exceeds diagram depth");
    if (v >= d.vertex_count(k))
        throw DiagramError("fiber vertex out of range");
    const auto counts = root_path_counts(d, k);
    if (counts[v] > guard)
        throw SizeGuardExceeded("fiber of size " + std::to_string(counts[v]) + " exceeds guard " +
                                std::to_string(guard));

    // fibers[u] holds the sorted depth-n fiber of u, built level by level
    // only for vertices that lead to v.
    std::vector<std::vector<char>> needed(k + 1);
    needed[k].assign(d.vertex_count(k), 0);
    needed[k][v] = 1;
    for (std::size_t n = k; n >= 1; --n) {
        needed[n - 1].assign(d.vertex_count(n - 1), 0);
        for (std::size_t u = 0; u < d.vertex_count(n); ++u)
            if (needed[n][u])
                for (std::size_t e : d.in_edges(n, u))
                    needed[n - 1][d.edge(n, e).source] = 1;
    }

    std::vector<std::vector<FinitePath>> fibers{{FinitePath{}}};
    for (std::size_t n = 1; n <= k; ++n) {
        std::vector<std::vector<FinitePath>> next(d.vertex_count(n));
        for (std::size_t u = 0; u < d.vertex_count(n); ++u) {
            if (!needed[n][u])
                continue;
            for (std::size_t e : od.fiber(n, u)) {
                for (const FinitePath &below : fibers[d.edge(n, e).source]) {
                    auto edges = below.edges();
                    edges.push_back(e);
                    next[u].emplace_back(std::move(edges));
                }
            }
        }
        fibers = std::move(next);
    }
    return PathFiber{k, v, std::move(fibers[v])};
}

namespace {

FinitePath extremal_path(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v, bool minimal) {
    const BratteliDiagram &d = od.base();
    if (k > d.depth())
        throw DiagramError("path depth exceeds diagram depth");
    std::vector<std::size_t> edges(k);
    std::size_t vertex = v;
    for (std::size_t n = k; n >= 1; --n) {
        const std::size_t e = minimal ? od.min_edge(n, vertex) : od.max_edge(n, vertex);
        edges[n - 1] = e;
        vertex = d.edge(n, e).source;
    }
    return FinitePath(std::move(edges));
}

} // namespace

FinitePath min_path(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v) {
    return extremal_path(od, k, v, true);
}

FinitePath max_path(const OrderedBratteliDiagram &od, std::size_t k, std::size_t v) {
    return extremal_path(od, k, v, false);
}

SuccessorResult vershik_successor(const OrderedBratteliDiagram &od, const FinitePath &p) {
    validate_path(od.base(), p);
    for (std::size_t i = 1; i <= p.depth(); ++i) {
        auto next = od.next_edge(i, p.at_level(i));
        if (!next)
            continue;
        const std::size_t source = od.base().edge(i, *next).source;
        auto edges = min_path(od, i - 1, source).edges();
        edges.push_back(*next);
        edges.insert(edges.end(), p.edges().begin() + static_cast<std::ptrdiff_t>(i), p.edges().end());
        return FinitePath(std::move(edges));
    }
    return FiberMaximum{};
}

PredecessorResult vershik_predecessor(const OrderedBratteliDiagram &od, const FinitePath &p) {
    validate_path(od.base(), p);
    for (std::size_t i = 1; i <= p.depth(); ++i) {
        auto prev = od.previous_edge(i, p.at_level(i));
        if (!prev)
            continue;
        const std::size_t source = od.base().edge(i, *prev).source;
        auto edges = max_path(od, i - 1, source).edges();
        edges.push_back(*prev);
        edges.insert(edges.end(), p.edges().begin() + static_cast<std::ptrdiff_t>(i), p.edges().end());
        return FinitePath(std::move(edges));
    }
    return FiberMinimum{};
}

Orbit vershik_orbit(const OrderedBratteliDiagram &od, const FinitePath &p, std::size_t steps, bool wrap) {
    validate_path(od.base(), p);
    Orbit orbit;
    orbit.paths.reserve(steps + 1);
    orbit.paths.push_back(p);
    const std::size_t v = range_vertex(od.base(), p);
    for (std::size_t s = 0; s < steps; ++s) {
        auto next = vershik_successor(od, orbit.paths.back());
        if (auto *path = std::get_if<FinitePath>(&next)) {
            orbit.paths.push_back(std::move(*path));
        } else if (wrap) {
            orbit.paths.push_back(min_path(od, p.depth(), v));
            ++orbit.wraps;
        } else {
            orbit.stopped_at_boundary = true;
            break;
        }
    }
    return orbit;
}

std::optional<std::size_t> first_difference(const FinitePath &a, const FinitePath &b) {
    const std::size_t common = std::min(a.depth(), b.depth());
    for (std::size_t i = 0; i < common; ++i)
        if (a.edges()[i] != b.edges()[i])
            return i + 1;
    if (a.depth() != b.depth())
        return common + 1;
    return std::nullopt;
}

double path_distance(const FinitePath &a, const FinitePath &b) {
    auto k = first_difference(a, b);
    return k ? std::ldexp(1.0, -static_cast<int>(*k)) : 0.0;
}

namespace {

const TelescopeTrace &trace_of(const BratteliDiagram &tele) {
    if (!tele.trace())
        throw DiagramError("diagram was not produced by telescoping");
    return *tele.trace();
}

} // namespace

FinitePath telescope_path(const BratteliDiagram &tele, const FinitePath &p) {
    const TelescopeTrace &trace = trace_of(tele);
    auto at = std::find(trace.cuts.begin(), trace.cuts.end(), p.depth());
    if (at == trace.cuts.end())
        throw DiagramError("path depth " + std::to_string(p.depth()) + " is not a cut level");
    const std::size_t j = static_cast<std::size_t>(at - trace.cuts.begin());
    std::vector<std::size_t> edges;
    for (std::size_t level = 1; level <= j; ++level) {
        const auto first = p.edges().begin() + static_cast<std::ptrdiff_t>(trace.cuts[level - 1]);
        const auto last = p.edges().begin() + static_cast<std::ptrdiff_t>(trace.cuts[level]);
        const std::vector<std::size_t> segment(first, last);
        const auto &parts = trace.constituents[level - 1];
        auto hit = std::lower_bound(parts.begin(), parts.end(), segment);
        if (hit == parts.end() || *hit != segment)
            throw DiagramError("path segment at telescoped level " + std::to_string(level) + " is not a path");
        edges.push_back(static_cast<std::size_t>(hit - parts.begin()));
    }
    FinitePath out(std::move(edges));
    validate_path(tele, out);
    return out;
}

FinitePath untelescope_path(const BratteliDiagram &tele, const FinitePath &q) {
    const TelescopeTrace &trace = trace_of(tele);
    validate_path(tele, q);
    std::vector<std::size_t> edges;
    for (std::size_t level = 1; level <= q.depth(); ++level) {
        const auto &segment = trace.constituents[level - 1].at(q.at_level(level));
        edges.insert(edges.end(), segment.begin(), segment.end());
    }
    return FinitePath(std::move(edges));
}

} // namespace bv
