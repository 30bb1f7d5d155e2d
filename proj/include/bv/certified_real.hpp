#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bv {

class UnresolvedComparison : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dyadic approximant m * 2^-precision with |x - m * 2^-precision| <= 2^-precision.
struct Approximation {
    mpz_class mantissa;
    long precision = 0;

    mpq_class value() const;
};

/// Irreducible real that certified reals are built from. Two atoms with the
/// same key denote the same number.
class Atom {
public:
    virtual ~Atom() = default;

    virtual std::string key() const = 0;
    virtual std::string name() const = 0;

    /// Approximation at `precision` bits, cached across calls.
    Approximation approximate(long precision) const;

protected:
    virtual mpz_class compute(long precision) const = 0;

private:
    mutable std::mutex cache_mutex_;
    mutable mpz_class cached_;
    mutable long cached_precision_ = -1;
};

/// sqrt(c) for a square-free integer c > 1.
class SqrtAtom final : public Atom {
public:
    explicit SqrtAtom(unsigned long radicand) : radicand_(radicand) {}

    std::string key() const override { return "sqrt" + std::to_string(radicand_); }
    std::string name() const override { return key(); }
    unsigned long radicand() const { return radicand_; }

protected:
    mpz_class compute(long precision) const override;

private:
    unsigned long radicand_;
};

/// Sum of 2^-p over a finite set of binary digit positions p >= 1.
class DigitSetAtom final : public Atom {
public:
    DigitSetAtom(std::string label, std::vector<std::uint64_t> positions);

    std::string key() const override { return "digits:" + label_; }
    std::string name() const override { return label_; }
    const std::vector<std::uint64_t> &positions() const { return positions_; }

protected:
    mpz_class compute(long precision) const override;

private:
    std::string label_;
    std::vector<std::uint64_t> positions_;
};

/// Real number of the form q_0 + sum q_i * atom_i with rational q_i. All
/// arithmetic stays in this form, so equality of normalized forms is exact
/// equality, and order is decided by refining approximations.
class CertifiedReal {
public:
    enum class Kind { rational, quadratic, qtree, affine };

    CertifiedReal() = default;

    static CertifiedReal rational(mpq_class q);
    static CertifiedReal integer(long n) { return rational(mpq_class(n)); }
    /// (a + b*sqrt(c)) / d.
    static CertifiedReal quadratic(long a, long b, unsigned long c, long d);
    /// Real with binary digits at `positions` (each >= 1), named `label`.
    static CertifiedReal digits(std::string label, std::vector<std::uint64_t> positions);
    /// a + b*x.
    static CertifiedReal affine(const mpq_class &a, const mpq_class &b, const CertifiedReal &x);

    Kind kind() const { return kind_; }
    /// No irrational atoms: the value is exactly constant().
    bool is_rational() const { return terms_.empty(); }
    const mpq_class &constant() const { return constant_; }
    const std::vector<std::pair<std::shared_ptr<const Atom>, mpq_class>> &terms() const { return terms_; }

    Approximation query(long precision) const;

    /// Identical normalized forms, which certifies equality.
    bool same_form(const CertifiedReal &other) const;

    /// Affine form such as "2*sqrt2 - 3/2".
    std::string symbolic() const;
    /// Decimal approximant with `digits` fractional digits (not rounded for display).
    std::string decimal(int digits = 12) const;
    double to_double() const;

    CertifiedReal operator-() const;
    friend CertifiedReal operator+(const CertifiedReal &a, const CertifiedReal &b);
    friend CertifiedReal operator-(const CertifiedReal &a, const CertifiedReal &b);
    friend CertifiedReal operator*(const mpq_class &q, const CertifiedReal &x);

private:
    void normalize();

    Kind kind_ = Kind::rational;
    mpq_class constant_{0};
    std::vector<std::pair<std::shared_ptr<const Atom>, mpq_class>> terms_;
};

enum class Comparison { less, greater, unresolved };

std::string to_string(Comparison c);

inline constexpr long default_precision_cap = 1024;

/// Refines both until their approximation intervals separate or precision
/// reaches max_precision. Equal forms are always unresolved.
Comparison compare(const CertifiedReal &x, const CertifiedReal &y, long max_precision);

/// -1, 0 or 1 where 0 is certified by identical forms. Throws
/// UnresolvedComparison if neither equality nor order can be certified.
int resolve_order(const CertifiedReal &x, const CertifiedReal &y, long max_precision = default_precision_cap);

/// floor(x), certified. Throws UnresolvedComparison if x may be an integer
/// whose form is not rational.
mpz_class certified_floor(const CertifiedReal &x, long max_precision = default_precision_cap);

/// x - floor(x).
CertifiedReal frac(const CertifiedReal &x, long max_precision = default_precision_cap);

/// Reals r_alpha for distinct binary paths of equal length D. The full binary
/// tree is labelled breadth-first (root 0, children of m are 2m+1 and 2m+2);
/// r_alpha = sum of 2^-(i+1)^2 over the labels i along alpha.
std::vector<CertifiedReal> qtree_reals(const std::vector<std::vector<bool>> &paths);

/// Labels visited by a path, root first.
std::vector<std::uint64_t> qtree_labels(const std::vector<bool> &path);

std::string path_string(const std::vector<bool> &path);
std::vector<bool> parse_bit_path(const std::string &text);

/// Parses "sqrt2m1", "golden", "qtree:0110", "p/q", decimals and integers.
CertifiedReal parse_real(const std::string &text);

} // namespace bv
