#include "bv/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace bv {

namespace {

const CertifiedReal &zero() {
    static const CertifiedReal z = CertifiedReal::integer(0);
    return z;
}

const CertifiedReal &one() {
    static const CertifiedReal o = CertifiedReal::integer(1);
    return o;
}

std::string join(const std::vector<Interval> &intervals, auto &&format) {
    if (intervals.empty())
        return "∅";
    std::string out;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i)
            out += "∪";
        out += "[" + format(intervals[i].lo) + "," + format(intervals[i].hi) + ")";
    }
    return out;
}

} // namespace

CircleIntervalSet CircleIntervalSet::full() {
    CircleIntervalSet s;
    s.intervals_.push_back({zero(), one()});
    return s;
}

CircleIntervalSet CircleIntervalSet::single(CertifiedReal lo, CertifiedReal hi, long max_precision) {
    return from_intervals({{std::move(lo), std::move(hi)}}, max_precision);
}

CircleIntervalSet CircleIntervalSet::from_intervals(std::vector<Interval> intervals, long max_precision) {
    std::vector<Interval> kept;
    for (auto &iv : intervals) {
        if (resolve_order(iv.lo, zero(), max_precision) < 0 || resolve_order(iv.hi, one(), max_precision) > 0)
            throw std::invalid_argument("interval [" + iv.lo.symbolic() + "," + iv.hi.symbolic() +
                                        ") leaves [0,1]");
        const int order = resolve_order(iv.lo, iv.hi, max_precision);
        if (order > 0)
            throw std::invalid_argument("interval [" + iv.lo.symbolic() + "," + iv.hi.symbolic() +
                                        ") has lo > hi");
        if (order < 0)
            kept.push_back(std::move(iv));
    }
    std::stable_sort(kept.begin(), kept.end(), [&](const Interval &a, const Interval &b) {
        return resolve_order(a.lo, b.lo, max_precision) < 0;
    });

    CircleIntervalSet out;
    for (auto &iv : kept) {
        if (!out.intervals_.empty() && resolve_order(iv.lo, out.intervals_.back().hi, max_precision) <= 0) {
            Interval &last = out.intervals_.back();
            if (resolve_order(iv.hi, last.hi, max_precision) > 0)
                last.hi = std::move(iv.hi);
        } else {
            out.intervals_.push_back(std::move(iv));
        }
    }
    return out;
}

bool CircleIntervalSet::is_full() const {
    return intervals_.size() == 1 && intervals_[0].lo.same_form(zero()) && intervals_[0].hi.same_form(one());
}

bool CircleIntervalSet::contains(const CertifiedReal &x, long max_precision) const {
    for (const auto &iv : intervals_)
        if (resolve_order(iv.lo, x, max_precision) <= 0 && resolve_order(x, iv.hi, max_precision) < 0)
            return true;
    return false;
}

std::vector<CertifiedReal> CircleIntervalSet::boundary() const {
    std::vector<CertifiedReal> out;
    for (const auto &iv : intervals_) {
        if (!iv.lo.same_form(zero()))
            out.push_back(iv.lo);
        if (!iv.hi.same_form(one()))
            out.push_back(iv.hi);
    }
    return out;
}

bool CircleIntervalSet::identical(const CircleIntervalSet &other) const {
    if (intervals_.size() != other.intervals_.size())
        return false;
    for (std::size_t i = 0; i < intervals_.size(); ++i)
        if (!intervals_[i].lo.same_form(other.intervals_[i].lo) || !intervals_[i].hi.same_form(other.intervals_[i].hi))
            return false;
    return true;
}

std::string CircleIntervalSet::to_decimal_string(int digits) const {
    return join(intervals_, [digits](const CertifiedReal &x) { return x.decimal(digits); });
}

std::string CircleIntervalSet::to_symbolic_string() const {
    return join(intervals_, [](const CertifiedReal &x) { return x.symbolic(); });
}

CircleIntervalSet set_union(const CircleIntervalSet &a, const CircleIntervalSet &b, long max_precision) {
    std::vector<Interval> all = a.intervals();
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return CircleIntervalSet::from_intervals(std::move(all), max_precision);
}

CircleIntervalSet set_intersection(const CircleIntervalSet &a, const CircleIntervalSet &b, long max_precision) {
    std::vector<Interval> pieces;
    for (const auto &x : a.intervals())
        for (const auto &y : b.intervals()) {
            const CertifiedReal &lo = resolve_order(x.lo, y.lo, max_precision) >= 0 ? x.lo : y.lo;
            const CertifiedReal &hi = resolve_order(x.hi, y.hi, max_precision) <= 0 ? x.hi : y.hi;
            if (resolve_order(lo, hi, max_precision) < 0)
                pieces.push_back({lo, hi});
        }
    return CircleIntervalSet::from_intervals(std::move(pieces), max_precision);
}

CircleIntervalSet set_complement(const CircleIntervalSet &a, long max_precision) {
    std::vector<Interval> gaps;
    CertifiedReal cursor = zero();
    for (const auto &iv : a.intervals()) {
        gaps.push_back({cursor, iv.lo});
        cursor = iv.hi;
    }
    gaps.push_back({cursor, one()});
    return CircleIntervalSet::from_intervals(std::move(gaps), max_precision);
}

CertifiedReal measure(const CircleIntervalSet &u) {
    CertifiedReal total = zero();
    for (const auto &iv : u.intervals())
        total = total + (iv.hi - iv.lo);
    return total;
}

CircleIntervalSet rotate(const CircleIntervalSet &u, const CertifiedReal &gamma, long k, long max_precision) {
    if (k == 0)
        return u;
    const CertifiedReal shift = frac(mpq_class(k) * gamma, max_precision);
    std::vector<Interval> pieces;
    for (const auto &iv : u.intervals()) {
        CertifiedReal lo = iv.lo + shift;
        CertifiedReal hi = iv.hi + shift;
        if (resolve_order(lo, one(), max_precision) >= 0) {
            pieces.push_back({lo - one(), hi - one()});
        } else if (resolve_order(hi, one(), max_precision) > 0) {
            pieces.push_back({lo, one()});
            pieces.push_back({zero(), hi - one()});
        } else {
            pieces.push_back({lo, hi});
        }
    }
    return CircleIntervalSet::from_intervals(std::move(pieces), max_precision);
}

} // namespace bv
