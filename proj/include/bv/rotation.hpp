#pragma once

#include "bv/certified_real.hpp"
#include "bv/interval_set.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bv {

class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// frac(x + k*gamma) hit an endpoint of U (or 0) within the precision cap
/// for every k in `offending`.
class UnresolvedMembership : public UnresolvedComparison {
public:
    UnresolvedMembership(std::vector<long> offending, const std::string &what);
    const std::vector<long> &offending() const { return offending_; }

private:
    std::vector<long> offending_;
};

/// Rotation by gamma with generators T^k[0, alpha) for |k| <= shift_range,
/// alpha in generators, closed to `boolean_depth` rounds of Boolean operations.
struct ReturnAlgebraSpec {
    CertifiedReal gamma;
    std::vector<CertifiedReal> generators;
    long shift_range = 0;
    int boolean_depth = 0;
    long max_precision = default_precision_cap;
};

/// Throws SpecError when gamma is rational or a generator is not in (0,1).
void validate(const ReturnAlgebraSpec &spec);

/// 0/1 memberships of frac(x + k*gamma) in U for k in [-n, n], plus the k
/// whose membership could not be certified (their slots hold 0).
struct RotationWindow {
    long radius = 0;
    std::vector<char> word;
    std::vector<long> unresolved;

    char at(long k) const { return word.at(static_cast<std::size_t>(k + radius)); }
};

RotationWindow rotation_window(const CircleIntervalSet &u, const CertifiedReal &gamma, const CertifiedReal &base,
                               long n, long max_precision = default_precision_cap);

/// {k in [-n, n] : frac(base + k*gamma) in U}. Throws UnresolvedMembership.
std::vector<long> return_set(const CircleIntervalSet &u, const CertifiedReal &gamma, long n,
                             long max_precision = default_precision_cap);
std::vector<long> return_set(const CircleIntervalSet &u, const CertifiedReal &gamma, const CertifiedReal &base,
                             long n, long max_precision = default_precision_cap);

/// w(k) = 1 iff frac(x + k*gamma) in [0, gamma), k in [-n, n], index k+n.
/// Rejects rational gamma.
std::vector<char> sturmian_word(const CertifiedReal &gamma, const CertifiedReal &x, long n,
                                long max_precision = default_precision_cap);

/// |A| / (2n+1).
mpq_class window_density(const std::vector<long> &a, long n);

struct SyndeticGap {
    long gap = 0;
    /// Set for singletons, whose gap is measured against the window edges.
    bool window_bounded = false;
};

/// Largest distance between consecutive members of A within [-n, n].
/// Throws std::invalid_argument on an empty set.
SyndeticGap syndetic_gap(const std::vector<long> &a, long n);

/// The generators T^k[0, alpha), k = -s..s for each alpha in turn.
std::vector<CircleIntervalSet> generator_sets(const ReturnAlgebraSpec &spec);

struct AlgebraLimits {
    std::size_t max_cells = 4096;
    std::size_t max_members = 200000;
};

/// Depth-bounded closure: S_0 = generators + {empty, full};
/// S_{j+1} = S_j + pairwise unions and intersections, then every complement,
/// so each round is closed under complement.
/// Members come back deduplicated, ordered by size of the cell set and then
/// by cell pattern. Throws std::length_error past the limits.
std::vector<CircleIntervalSet> generate_algebra(const ReturnAlgebraSpec &spec, AlgebraLimits limits = {});

/// Sorted, duplicate-free {mu(U) : U in generate_algebra(spec)}.
std::vector<CertifiedReal> density_set(const ReturnAlgebraSpec &spec, AlgebraLimits limits = {});
std::vector<CertifiedReal> density_set(const std::vector<CircleIntervalSet> &algebra,
                                       long max_precision = default_precision_cap);

/// Minimal nonempty members of generate_algebra(spec).
std::vector<CircleIntervalSet> algebra_atoms(const ReturnAlgebraSpec &spec, AlgebraLimits limits = {});

struct AtomSplit {
    CircleIntervalSet atom;
    /// A generator of the larger spec meeting both the atom and its complement.
    std::optional<CircleIntervalSet> splitter;
};

/// For each atom of generate_algebra(small), looks for a member of
/// generate_algebra(large) that splits it properly. Only the generators of
/// `large` are searched: if none of them splits an atom, no Boolean
/// combination of them does either.
std::vector<AtomSplit> atom_refinement(const ReturnAlgebraSpec &small, const ReturnAlgebraSpec &large,
                                       AlgebraLimits limits = {});

} // namespace bv
