#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's ordering, Vershik or certified-real code paths.

#include "bv/diagram.hpp"
#include "bv/ordering.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using Path = std::vector<std::size_t>;

/// Every root path of length k, by depth-first search over edge lists.
inline std::vector<Path> all_paths(const bv::BratteliDiagram &d, std::size_t k) {
    std::vector<Path> out;
    std::vector<std::pair<Path, std::size_t>> stack{{{}, 0}};
    while (!stack.empty()) {
        auto [path, vertex] = stack.back();
        stack.pop_back();
        if (path.size() == k) {
            out.push_back(path);
            continue;
        }
        const std::size_t level = path.size() + 1;
        auto edges = d.edges(level);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (edges[e].source == vertex) {
                Path next = path;
                next.push_back(e);
                stack.push_back({next, edges[e].range});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t end_vertex(const bv::BratteliDiagram &d, const Path &p) {
    return p.empty() ? 0 : d.edge(p.size(), p.back()).range;
}

/// a < b in the reverse-lexicographic order of ranks (deepest level decides).
inline bool lex_less(const bv::OrderedBratteliDiagram &od, const Path &a, const Path &b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return od.rank(i + 1, a[i]) < od.rank(i + 1, b[i]);
    return false;
}

/// Paths of length k ending at v, sorted by lex_less.
inline std::vector<Path> sorted_fiber(const bv::OrderedBratteliDiagram &od, std::size_t k, std::size_t v) {
    std::vector<Path> fiber;
    for (auto &p : all_paths(od.base(), k))
        if (end_vertex(od.base(), p) == v)
            fiber.push_back(p);
    std::sort(fiber.begin(), fiber.end(), [&](const Path &a, const Path &b) { return lex_less(od, a, b); });
    return fiber;
}

/// Mixed-radix increment with carry; false on overflow (all digits maximal).
inline bool mixed_radix_increment(std::vector<std::size_t> &digits, const std::vector<std::size_t> &radices) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] + 1 < radices[i]) {
            ++digits[i];
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

/// Owning handle for an MPFR value, 256 bits by default.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t bits = 256) { mpfr_init2(v_, bits); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr &) = delete;
    Mpfr &operator=(const Mpfr &) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

/// (a + b*sqrt(c)) / d.
inline void quadratic(Mpfr &out, long a, long b, unsigned long c, long d) {
    mpfr_sqrt_ui(out.get(), c, MPFR_RNDN);
    mpfr_mul_si(out.get(), out.get(), b, MPFR_RNDN);
    mpfr_add_si(out.get(), out.get(), a, MPFR_RNDN);
    mpfr_div_si(out.get(), out.get(), d, MPFR_RNDN);
}

inline void frac_affine(Mpfr &out, const Mpfr &x, const Mpfr &gamma, long k) {
    mpfr_mul_si(out.get(), gamma.get(), k, MPFR_RNDN);
    mpfr_add(out.get(), out.get(), x.get(), MPFR_RNDN);
    Mpfr fl;
    mpfr_floor(fl.get(), out.get());
    mpfr_sub(out.get(), out.get(), fl.get(), MPFR_RNDN);
}

/// Membership in a union of [lo, hi) with rational endpoints.
inline bool in_union(const Mpfr &value, const std::vector<std::pair<mpq_class, mpq_class>> &intervals) {
    for (const auto &[lo, hi] : intervals)
        if (mpfr_cmp_q(value.get(), lo.get_mpq_t()) >= 0 && mpfr_cmp_q(value.get(), hi.get_mpq_t()) < 0)
            return true;
    return false;
}

/// sum of 2^-p over positions, exactly.
inline mpq_class digit_sum(const std::vector<std::uint64_t> &positions) {
    mpq_class total = 0;
    for (auto p : positions) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, p);
        total += mpq_class(1, den);
    }
    total.canonicalize();
    return total;
}

/// Breadth-first labels along a bit path, recomputed from scratch: the
/// children of label m are 2m+1 (bit 0) and 2m+2 (bit 1).
inline std::vector<std::uint64_t> bfs_labels(const std::string &bits) {
    std::vector<std::uint64_t> labels{0};
    for (char c : bits)
        labels.push_back(2 * labels.back() + (c == '1' ? 2 : 1));
    return labels;
}

} // namespace oracle
