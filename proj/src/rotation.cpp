#include "bv/rotation.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>

namespace bv {

UnresolvedMembership::UnresolvedMembership(std::vector<long> offending, const std::string &what)
    : UnresolvedComparison(what), offending_(std::move(offending)) {}

void validate(const ReturnAlgebraSpec &spec) {
    if (spec.gamma.is_rational())
        throw SpecError("rotation number " + spec.gamma.symbolic() + " is rational");
    if (spec.shift_range < 0)
        throw SpecError("shift range must be non-negative");
    if (spec.boolean_depth < 0)
        throw SpecError("boolean depth must be non-negative");
    const CertifiedReal zero = CertifiedReal::integer(0);
    const CertifiedReal one = CertifiedReal::integer(1);
    for (const auto &alpha : spec.generators)
        if (resolve_order(alpha, zero, spec.max_precision) <= 0 || resolve_order(alpha, one, spec.max_precision) >= 0)
            throw SpecError("generator " + alpha.symbolic() + " is not in (0,1)");
}

namespace {

struct FixedInterval {
    mpz_class lo;
    mpz_class hi;
};

// Membership by fixed-point arithmetic; nullopt when some endpoint (or the
// wrap point 0) is too close for the accumulated error of k*gamma.
std::optional<bool> fast_member(const std::vector<FixedInterval> &intervals, const mpz_class &value,
                                long precision, long k, mpz_class &scratch) {
    const mpz_class margin = mpz_class(std::labs(k)) + 3;
    mpz_fdiv_r_2exp(scratch.get_mpz_t(), value.get_mpz_t(), static_cast<mp_bitcnt_t>(precision));
    const mpz_class &r = scratch;
    if (r < margin)
        return std::nullopt;
    mpz_class top;
    mpz_ui_pow_ui(top.get_mpz_t(), 2, static_cast<unsigned long>(precision));
    if (top - r < margin)
        return std::nullopt;
    bool inside = false;
    for (const auto &iv : intervals) {
        if (abs(r - iv.lo) < margin || abs(r - iv.hi) < margin)
            return std::nullopt;
        if (iv.lo < r && r < iv.hi)
            inside = true;
    }
    return inside;
}

} // namespace

RotationWindow rotation_window(const CircleIntervalSet &u, const CertifiedReal &gamma, const CertifiedReal &base,
                               long n, long max_precision) {
    if (n < 0)
        throw std::invalid_argument("window radius must be non-negative");
    RotationWindow window;
    window.radius = n;
    window.word.assign(static_cast<std::size_t>(2 * n + 1), 0);

    const long bits = static_cast<long>(std::bit_width(static_cast<unsigned long>(n)));
    const long precision = 64 + 3 * bits;
    const mpz_class g = gamma.query(precision).mantissa;
    const mpz_class x = base.query(precision).mantissa;
    std::vector<FixedInterval> fixed;
    for (const auto &iv : u.intervals())
        fixed.push_back({iv.lo.query(precision).mantissa, iv.hi.query(precision).mantissa});

    mpz_class value, scratch;
    for (long k = -n; k <= n; ++k) {
        value = g * k + x;
        std::optional<bool> member;
        if (!u.is_empty() && !u.is_full())
            member = fast_member(fixed, value, precision, k, scratch);
        else
            member = u.is_full();
        if (!member) {
            try {
                member = u.contains(frac(base + mpq_class(k) * gamma, max_precision), max_precision);
            } catch (const UnresolvedComparison &) {
                window.unresolved.push_back(k);
                continue;
            }
        }
        window.word[static_cast<std::size_t>(k + n)] = *member ? 1 : 0;
    }
    return window;
}

std::vector<long> return_set(const CircleIntervalSet &u, const CertifiedReal &gamma, long n, long max_precision) {
    return return_set(u, gamma, CertifiedReal::integer(0), n, max_precision);
}

std::vector<long> return_set(const CircleIntervalSet &u, const CertifiedReal &gamma, const CertifiedReal &base,
                             long n, long max_precision) {
    RotationWindow window = rotation_window(u, gamma, base, n, max_precision);
    if (!window.unresolved.empty())
        throw UnresolvedMembership(window.unresolved,
                                   "membership of frac(" + base.symbolic() + " + k*(" + gamma.symbolic() + ")) in " +
                                       u.to_symbolic_string() + " unresolved for k = " +
                                       std::to_string(window.unresolved.front()) +
                                       (window.unresolved.size() > 1 ? " and others" : ""));
    std::vector<long> out;
    for (long k = -n; k <= n; ++k)
        if (window.at(k))
            out.push_back(k);
    return out;
}

std::vector<char> sturmian_word(const CertifiedReal &gamma, const CertifiedReal &x, long n, long max_precision) {
    if (gamma.is_rational())
        throw SpecError("Sturmian words need an irrational rotation number, got " + gamma.symbolic());
    const CircleIntervalSet u =
        CircleIntervalSet::single(CertifiedReal::integer(0), frac(gamma, max_precision), max_precision);
    RotationWindow window = rotation_window(u, gamma, x, n, max_precision);
    if (!window.unresolved.empty())
        throw UnresolvedMembership(window.unresolved, "Sturmian word has unresolved positions");
    return window.word;
}

mpq_class window_density(const std::vector<long> &a, long n) {
    if (n < 0)
        throw std::invalid_argument("window radius must be non-negative");
    mpq_class density(static_cast<long>(a.size()), 2 * n + 1);
    density.canonicalize();
    return density;
}

SyndeticGap syndetic_gap(const std::vector<long> &a, long n) {
    if (a.empty())
        throw std::invalid_argument("syndetic gap of an empty set");
    std::vector<long> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() == 1)
        return {std::max(sorted[0] + n, n - sorted[0]) + 1, true};
    long gap = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        gap = std::max(gap, sorted[i] - sorted[i - 1]);
    return {gap, false};
}

std::vector<CircleIntervalSet> generator_sets(const ReturnAlgebraSpec &spec) {
    validate(spec);
    std::vector<CircleIntervalSet> out;
    for (const auto &alpha : spec.generators) {
        const CircleIntervalSet base =
            CircleIntervalSet::single(CertifiedReal::integer(0), alpha, spec.max_precision);
        for (long k = -spec.shift_range; k <= spec.shift_range; ++k)
            out.push_back(rotate(base, spec.gamma, k, spec.max_precision));
    }
    return out;
}

namespace {

using Cells = boost::dynamic_bitset<>;

struct CellAlgebra {
    std::vector<Interval> cells;
    std::vector<Cells> members;
};

bool cells_less(const Cells &a, const Cells &b) {
    if (a.count() != b.count())
        return a.count() < b.count();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i];
    return false;
}

std::vector<Interval> elementary_cells(const std::vector<CircleIntervalSet> &sets, long max_precision) {
    std::vector<CertifiedReal> points;
    for (const auto &s : sets)
        for (auto &p : s.boundary())
            points.push_back(std::move(p));
    std::sort(points.begin(), points.end(), [&](const CertifiedReal &a, const CertifiedReal &b) {
        return resolve_order(a, b, max_precision) < 0;
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [&](const CertifiedReal &a, const CertifiedReal &b) {
                                 return resolve_order(a, b, max_precision) == 0;
                             }),
                 points.end());

    std::vector<Interval> cells;
    CertifiedReal left = CertifiedReal::integer(0);
    for (auto &p : points) {
        cells.push_back({left, p});
        left = p;
    }
    cells.push_back({left, CertifiedReal::integer(1)});
    return cells;
}

Cells cell_pattern(const CircleIntervalSet &s, const std::vector<Interval> &cells, long max_precision) {
    Cells bits(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        bits[i] = s.contains(cells[i].lo, max_precision);
    return bits;
}

CircleIntervalSet to_interval_set(const Cells &bits, const std::vector<Interval> &cells, long max_precision) {
    std::vector<Interval> parts;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (bits[i])
            parts.push_back(cells[i]);
    return CircleIntervalSet::from_intervals(std::move(parts), max_precision);
}

CellAlgebra build_algebra(const ReturnAlgebraSpec &spec, const AlgebraLimits &limits) {
    const std::vector<CircleIntervalSet> gens = generator_sets(spec);
    CellAlgebra algebra;
    algebra.cells = elementary_cells(gens, spec.max_precision);
    const std::size_t width = algebra.cells.size();
    if (width > limits.max_cells)
        throw std::length_error(std::to_string(width) + " elementary cells exceed the limit of " +
                                std::to_string(limits.max_cells));

    std::set<Cells> seen;
    std::vector<Cells> current;
    auto admit = [&](Cells bits) {
        if (seen.insert(bits).second) {
            if (seen.size() > limits.max_members)
                throw std::length_error("generated algebra exceeds " + std::to_string(limits.max_members) +
                                        " members");
            current.push_back(std::move(bits));
        }
    };
    admit(Cells(width));
    admit(~Cells(width));
    for (const auto &g : gens)
        admit(cell_pattern(g, algebra.cells, spec.max_precision));

    for (int depth = 0; depth < spec.boolean_depth; ++depth) {
        const std::vector<Cells> previous = current;
        for (std::size_t i = 0; i < previous.size(); ++i)
            for (std::size_t j = i + 1; j < previous.size(); ++j) {
                admit(previous[i] | previous[j]);
                admit(previous[i] & previous[j]);
            }
        for (std::size_t i = 0; i < current.size(); ++i)
            admit(~current[i]);
    }
    std::sort(current.begin(), current.end(), cells_less);
    algebra.members = std::move(current);
    return algebra;
}

} // namespace

std::vector<CircleIntervalSet> generate_algebra(const ReturnAlgebraSpec &spec, AlgebraLimits limits) {
    const CellAlgebra algebra = build_algebra(spec, limits);
    std::vector<CircleIntervalSet> out;
    out.reserve(algebra.members.size());
    for (const auto &bits : algebra.members)
        out.push_back(to_interval_set(bits, algebra.cells, spec.max_precision));
    return out;
}

std::vector<CertifiedReal> density_set(const std::vector<CircleIntervalSet> &algebra, long max_precision) {
    std::vector<CertifiedReal> values;
    values.reserve(algebra.size());
    for (const auto &u : algebra)
        values.push_back(measure(u));
    std::sort(values.begin(), values.end(), [&](const CertifiedReal &a, const CertifiedReal &b) {
        return resolve_order(a, b, max_precision) < 0;
    });
    values.erase(std::unique(values.begin(), values.end(),
                             [&](const CertifiedReal &a, const CertifiedReal &b) {
                                 return resolve_order(a, b, max_precision) == 0;
                             }),
                 values.end());
    return values;
}

std::vector<CertifiedReal> density_set(const ReturnAlgebraSpec &spec, AlgebraLimits limits) {
    return density_set(generate_algebra(spec, limits), spec.max_precision);
}

namespace {

std::vector<Cells> minimal_patterns(const std::vector<Cells> &members) {
    std::vector<Cells> out;
    for (const auto &a : members) {
        if (a.none())
            continue;
        const bool minimal = std::none_of(members.begin(), members.end(), [&](const Cells &b) {
            return b.any() && b.is_proper_subset_of(a);
        });
        if (minimal)
            out.push_back(a);
    }
    return out;
}

} // namespace

std::vector<CircleIntervalSet> algebra_atoms(const ReturnAlgebraSpec &spec, AlgebraLimits limits) {
    const CellAlgebra algebra = build_algebra(spec, limits);
    std::vector<CircleIntervalSet> out;
    for (const auto &bits : minimal_patterns(algebra.members))
        out.push_back(to_interval_set(bits, algebra.cells, spec.max_precision));
    return out;
}

std::vector<AtomSplit> atom_refinement(const ReturnAlgebraSpec &small, const ReturnAlgebraSpec &large,
                                       AlgebraLimits limits) {
    validate(large);
    const long cap = std::max(small.max_precision, large.max_precision);
    const std::vector<CircleIntervalSet> splitters = generator_sets(large);
    std::vector<AtomSplit> out;
    for (auto &atom : algebra_atoms(small, limits)) {
        AtomSplit split{atom, std::nullopt};
        for (const auto &g : splitters) {
            const CircleIntervalSet inside = set_intersection(atom, g, cap);
            if (!inside.is_empty() && !inside.identical(atom)) {
                split.splitter = g;
                break;
            }
        }
        out.push_back(std::move(split));
    }
    return out;
}

} // namespace bv
