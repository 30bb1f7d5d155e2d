#pragma once

#include "bv/certified_real.hpp"

#include <string>
#include <vector>

namespace bv {

/// Half-open interval [lo, hi).
struct Interval {
    CertifiedReal lo;
    CertifiedReal hi;
};

/// Finite union of half-open subintervals of [0,1) in canonical form:
/// sorted, pairwise disjoint, nonempty, with touching intervals merged.
class CircleIntervalSet {
public:
    CircleIntervalSet() = default;

    static CircleIntervalSet empty() { return {}; }
    static CircleIntervalSet full();
    static CircleIntervalSet single(CertifiedReal lo, CertifiedReal hi, long max_precision = default_precision_cap);

    /// Canonicalizes any list of intervals inside [0,1]; empty intervals are
    /// dropped, overlapping or touching ones merged. Throws
    /// UnresolvedComparison when an endpoint order cannot be certified and
    /// std::invalid_argument for endpoints outside [0,1] or lo > hi.
    static CircleIntervalSet from_intervals(std::vector<Interval> intervals,
                                            long max_precision = default_precision_cap);

    const std::vector<Interval> &intervals() const { return intervals_; }
    bool is_empty() const { return intervals_.empty(); }
    bool is_full() const;

    bool contains(const CertifiedReal &x, long max_precision = default_precision_cap) const;

    /// Endpoints of the canonical intervals, in order, with 0 and 1 dropped.
    std::vector<CertifiedReal> boundary() const;

    /// Identical canonical forms.
    bool identical(const CircleIntervalSet &other) const;

    /// "[a,b)∪[c,d)" with decimal endpoints; "∅" when empty.
    std::string to_decimal_string(int digits = 6) const;
    /// Same layout with symbolic endpoints.
    std::string to_symbolic_string() const;

private:
    std::vector<Interval> intervals_;
};

CircleIntervalSet set_union(const CircleIntervalSet &a, const CircleIntervalSet &b,
                            long max_precision = default_precision_cap);
CircleIntervalSet set_intersection(const CircleIntervalSet &a, const CircleIntervalSet &b,
                                   long max_precision = default_precision_cap);
CircleIntervalSet set_complement(const CircleIntervalSet &a, long max_precision = default_precision_cap);

/// Lebesgue measure, exact as an affine form of the endpoints.
CertifiedReal measure(const CircleIntervalSet &u);

/// Translate by k*gamma modulo 1, splitting intervals that wrap past 1.
CircleIntervalSet rotate(const CircleIntervalSet &u, const CertifiedReal &gamma, long k,
                         long max_precision = default_precision_cap);

} // namespace bv
