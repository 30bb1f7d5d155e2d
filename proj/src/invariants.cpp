#include "bv/invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bv {

namespace {

struct Extremes {
    std::vector<std::size_t> min_prefix;
    std::vector<std::size_t> max_prefix;
    std::size_t available() const { return std::min(min_prefix.size(), max_prefix.size()); }
};

Extremes extremes_of(const OrderedBratteliDiagram &od) {
    ProperResult result = properly_ordered_within(od, od.depth());
    if (auto *w = std::get_if<ProperWitness>(&result))
        return {w->min_prefix, w->max_prefix};
    if (auto *np = std::get_if<NotProper>(&result))
        throw DiagramError("diagram is not properly ordered: " + np->reason);
    throw DiagramError("x_min and x_max are not determined within depth " + std::to_string(od.depth()) + ": " +
                       std::get<UndeterminedAtDepth>(result).reason);
}

// Orbit of x_max over [back, fwd] (back <= 0 <= fwd) at depth k, or nullopt
// when a fiber boundary cuts the walk short.
std::optional<std::vector<FinitePath>> walk(const OrderedBratteliDiagram &od, const Extremes &ext, std::size_t k,
                                            long back, long fwd) {
    const FinitePath xmax(std::vector<std::size_t>(ext.max_prefix.begin(), ext.max_prefix.begin() + k));
    const FinitePath xmin(std::vector<std::size_t>(ext.min_prefix.begin(), ext.min_prefix.begin() + k));
    std::vector<FinitePath> out(static_cast<std::size_t>(fwd - back + 1));
    auto slot = [&](long i) -> FinitePath & { return out[static_cast<std::size_t>(i - back)]; };
    slot(0) = xmax;
    if (fwd >= 1)
        slot(1) = xmin;
    for (long i = 2; i <= fwd; ++i) {
        auto next = vershik_successor(od, slot(i - 1));
        auto *path = std::get_if<FinitePath>(&next);
        if (!path)
            return std::nullopt;
        slot(i) = std::move(*path);
    }
    for (long i = -1; i >= back; --i) {
        auto prev = vershik_predecessor(od, slot(i + 1));
        auto *path = std::get_if<FinitePath>(&prev);
        if (!path)
            return std::nullopt;
        slot(i) = std::move(*path);
    }
    return out;
}

} // namespace

OrbitWindow xmax_orbit(const OrderedBratteliDiagram &od, long n, std::size_t min_depth, long offset) {
    if (n < 0)
        throw std::invalid_argument("window radius must be non-negative");
    const long first = offset - n;
    const long last = offset + n;
    const long back = std::min(first, 0L);
    const long fwd = std::max(last, 0L);

    OrderedBratteliDiagram work = od;
    std::size_t k = std::max<std::size_t>(min_depth, 1);
    while (true) {
        const Extremes ext = extremes_of(work);
        while (k <= ext.available()) {
            if (auto orbit = walk(work, ext, k, back, fwd)) {
                OrbitWindow window{k, first, last, {}};
                window.prefixes.assign(orbit->begin() + (first - back), orbit->begin() + (last - back + 1));
                return window;
            }
            if (k == ext.available())
                break;
            k = std::min(2 * k, ext.available());
        }
        const std::size_t target = std::max(2 * work.depth(), k + 1);
        if (!work.can_extend_to(target))
            throw ProviderExhausted("orbit window [" + std::to_string(first) + ", " + std::to_string(last) +
                                    "] not covered within depth " + std::to_string(work.depth()));
        work = work.extended_to(target);
    }
}

CylinderFamily::CylinderFamily(const OrderedBratteliDiagram &od, std::vector<FinitePath> cylinders)
    : od_(&od), cylinders_(std::move(cylinders)) {
    std::set<FinitePath> seen;
    for (const auto &c : cylinders_) {
        validate_path(od.base(), c);
        if (!seen.insert(c).second)
            throw DiagramError("duplicate cylinder " + c.to_string());
    }
}

CylinderFamily CylinderFamily::all_of_depth(const OrderedBratteliDiagram &od, std::size_t j) {
    std::vector<FinitePath> all;
    for (std::size_t v = 0; v < od.base().vertex_count(j); ++v) {
        auto fiber = enumerate_fiber(od, j, v);
        for (auto &p : fiber.paths)
            all.push_back(std::move(p));
    }
    return CylinderFamily(od, std::move(all));
}

std::size_t CylinderFamily::max_depth() const {
    std::size_t depth = 0;
    for (const auto &c : cylinders_)
        depth = std::max(depth, c.depth());
    return depth;
}

std::string ReturnWindow::base_tag() const {
    if (offset == 0)
        return "x_max";
    return "lambda^" + std::to_string(offset) + "(x_max)";
}

namespace {

std::vector<char> word_of(const OrbitWindow &orbit, const FinitePath &cylinder) {
    std::vector<char> word;
    word.reserve(orbit.prefixes.size());
    for (const auto &p : orbit.prefixes)
        word.push_back(p.prefix(cylinder.depth()) == cylinder ? 1 : 0);
    return word;
}

} // namespace

std::vector<char> vershik_return_window(const OrderedBratteliDiagram &od, const FinitePath &cylinder, long n,
                                        long offset) {
    validate_path(od.base(), cylinder);
    return word_of(xmax_orbit(od, n, cylinder.depth(), offset), cylinder);
}

ReturnWindow return_windows(const CylinderFamily &family, long n, long offset) {
    const OrbitWindow orbit = xmax_orbit(family.diagram(), n, family.max_depth(), offset);
    ReturnWindow out{offset, n, {}};
    for (const auto &c : family.cylinders())
        out.words.push_back(word_of(orbit, c));
    return out;
}

std::vector<std::uint64_t> ret_code(const CylinderFamily &family, long n, long offset) {
    if (family.size() > 64)
        throw std::invalid_argument("ret_code supports at most 64 cylinders");
    const ReturnWindow windows = return_windows(family, n, offset);
    std::vector<std::uint64_t> code(static_cast<std::size_t>(2 * n + 1), 0);
    for (std::size_t u = 0; u < windows.words.size(); ++u)
        for (std::size_t i = 0; i < code.size(); ++i)
            if (windows.words[u][i])
                code[i] |= std::uint64_t{1} << u;
    return code;
}

namespace {

void extensions(const BratteliDiagram &d, std::vector<std::size_t> &edges, std::size_t target,
                std::vector<FinitePath> &out) {
    if (edges.size() == target) {
        out.emplace_back(edges);
        return;
    }
    const std::size_t level = edges.size();
    const std::size_t vertex = level == 0 ? 0 : d.edge(level, edges.back()).range;
    for (std::size_t e : d.out_edges(level, vertex)) {
        edges.push_back(e);
        extensions(d, edges, target, out);
        edges.pop_back();
    }
}

void note(ConjugacyReport &report, std::string message) {
    if (report.failures.size() < 20)
        report.failures.push_back(std::move(message));
}

} // namespace

ConjugacyReport conjugacy_window_check(const OrderedBratteliDiagram &od, std::span<const std::size_t> cuts,
                                       const CylinderFamily &family, long n) {
    const OrderedBratteliDiagram tele = lex_telescope(od, cuts);
    ConjugacyReport report;
    report.cuts.assign(cuts.begin(), cuts.end());
    report.radius = n;

    for (std::size_t m = 1; m < cuts.size(); ++m) {
        const std::size_t level = cuts[m];
        for (std::size_t v = 0; v < od.base().vertex_count(level); ++v) {
            for (const FinitePath &p : enumerate_fiber(od, level, v).paths) {
                ++report.paths_checked;
                const FinitePath q = telescope_path(tele.base(), p);
                const SuccessorResult lhs = vershik_successor(od, p);
                const SuccessorResult rhs = vershik_successor(tele, q);
                const auto *lp = std::get_if<FinitePath>(&lhs);
                const auto *rp = std::get_if<FinitePath>(&rhs);
                const bool ok = (!lp && !rp) || (lp && rp && telescope_path(tele.base(), *lp) == *rp);
                if (!ok) {
                    report.successors_intertwine = false;
                    note(report, "successor of " + p.to_string() + " does not match successor of " + q.to_string());
                }
            }
        }
    }

    // Each cylinder of depth j becomes the union of telescoped cylinders at
    // the first cut at or below j.
    std::vector<std::pair<std::size_t, std::set<FinitePath>>> images;
    std::size_t tele_depth = 0;
    for (const auto &c : family.cylinders()) {
        const auto m = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), c.depth()) - cuts.begin());
        std::set<FinitePath> image;
        std::vector<FinitePath> ext;
        std::vector<std::size_t> edges = c.edges();
        extensions(od.base(), edges, cuts[m], ext);
        for (const auto &p : ext)
            image.insert(telescope_path(tele.base(), p));
        images.emplace_back(m, std::move(image));
        tele_depth = std::max(tele_depth, m);
    }

    const OrbitWindow lhs_orbit = xmax_orbit(od, n, family.max_depth());
    const OrbitWindow rhs_orbit = xmax_orbit(tele, n, tele_depth);
    for (std::size_t u = 0; u < family.size(); ++u) {
        ++report.cylinders_checked;
        const FinitePath &c = family.cylinders()[u];
        const auto &[m, image] = images[u];
        for (long i = -n; i <= n; ++i) {
            const bool lhs = lhs_orbit.at(i).prefix(c.depth()) == c;
            const bool rhs = image.contains(rhs_orbit.at(i).prefix(m));
            if (lhs != rhs) {
                report.windows_equal = false;
                note(report, "cylinder " + c.to_string() + " disagrees at time " + std::to_string(i));
                break;
            }
        }
    }
    return report;
}

std::string to_string(PipelineResult::Verdict verdict) {
    switch (verdict) {
    case PipelineResult::Verdict::distinguished:
        return "Distinguished";
    case PipelineResult::Verdict::indistinguishable_at_depth:
        return "IndistinguishableAtDepth";
    }
    return "?";
}

namespace {

// First candidate certified distinct from every value of `others`.
std::optional<CertifiedReal> separating_value(const std::vector<CertifiedReal> &generators,
                                              const std::vector<CertifiedReal> &densities,
                                              const std::vector<CertifiedReal> &others, long cap) {
    auto separated = [&](const CertifiedReal &v) {
        return std::all_of(others.begin(), others.end(),
                           [&](const CertifiedReal &w) { return compare(v, w, cap) != Comparison::unresolved; });
    };
    for (const auto &v : generators)
        if (separated(v))
            return v;
    for (const auto &v : densities)
        if (separated(v))
            return v;
    return std::nullopt;
}

} // namespace

PipelineResult reduction_pipeline(const std::vector<std::vector<bool>> &s,
                                  const std::vector<std::vector<bool>> &s_prime, const PipelineParams &params) {
    const std::size_t length = params.gamma_path.size();
    if (length == 0)
        throw std::invalid_argument("gamma path is empty");
    std::set<std::vector<bool>> members;
    for (const auto *side : {&s, &s_prime})
        for (const auto &p : *side) {
            if (p.size() != length)
                throw std::invalid_argument("path " + path_string(p) + " has length " + std::to_string(p.size()) +
                                            ", expected " + std::to_string(length));
            if (p == params.gamma_path)
                throw std::invalid_argument("gamma path " + path_string(p) + " also appears among the generators");
            members.insert(p);
        }

    std::vector<std::vector<bool>> all{params.gamma_path};
    all.insert(all.end(), members.begin(), members.end());
    const std::vector<CertifiedReal> reals = qtree_reals(all);
    auto real_of = [&](const std::vector<bool> &p) {
        return reals[static_cast<std::size_t>(std::find(all.begin(), all.end(), p) - all.begin())];
    };

    PipelineResult result;
    result.gamma = reals.front();
    for (const auto &p : s)
        result.generators_s.push_back(real_of(p));
    for (const auto &p : s_prime)
        result.generators_s_prime.push_back(real_of(p));

    const long cap = params.max_precision;
    const ReturnAlgebraSpec spec_s{result.gamma, result.generators_s, params.shift_range, params.boolean_depth, cap};
    const ReturnAlgebraSpec spec_sp{result.gamma, result.generators_s_prime, params.shift_range,
                                    params.boolean_depth, cap};
    const std::vector<CircleIntervalSet> algebra_s = generate_algebra(spec_s);
    const std::vector<CircleIntervalSet> algebra_sp = generate_algebra(spec_sp);
    result.densities_s = density_set(algebra_s, cap);
    result.densities_s_prime = density_set(algebra_sp, cap);

    if (std::set(s.begin(), s.end()) == std::set(s_prime.begin(), s_prime.end())) {
        bool identical = algebra_s.size() == algebra_sp.size();
        for (std::size_t i = 0; identical && i < algebra_s.size(); ++i)
            identical = algebra_s[i].identical(algebra_sp[i]);
        if (!identical)
            throw std::logic_error("equal generator sets produced different algebras");
        result.algebras_identical = true;
        return result;
    }

    if (auto w = separating_value(result.generators_s, result.densities_s, result.densities_s_prime, cap)) {
        result.verdict = PipelineResult::Verdict::distinguished;
        result.witness = std::move(w);
        result.witness_side = "S";
    } else if (auto w2 = separating_value(result.generators_s_prime, result.densities_s_prime, result.densities_s,
                                          cap)) {
        result.verdict = PipelineResult::Verdict::distinguished;
        result.witness = std::move(w2);
        result.witness_side = "S'";
    }
    return result;
}

} // namespace bv
