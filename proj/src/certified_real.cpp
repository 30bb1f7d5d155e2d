#include "bv/certified_real.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bv {

namespace {

mpz_class pow2(unsigned long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
}

/// Nearest integer to q, ties upward.
mpz_class round_nearest(const mpq_class &q) {
    mpz_class num = 2 * q.get_num() + q.get_den();
    mpz_class den = 2 * q.get_den();
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

/// Rounds an approximation at `from` bits down to `to` bits.
mpz_class rescale(const mpz_class &m, long from, long to) {
    if (from == to)
        return m;
    mpq_class q(m, pow2(static_cast<unsigned long>(from - to)));
    q.canonicalize();
    return round_nearest(q);
}

std::string rational_string(const mpq_class &q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace

mpq_class Approximation::value() const {
    mpq_class q(mantissa, pow2(static_cast<unsigned long>(precision)));
    q.canonicalize();
    return q;
}

Approximation Atom::approximate(long precision) const {
    if (precision < 0)
        precision = 0;
    std::lock_guard lock(cache_mutex_);
    if (cached_precision_ < precision + 1) {
        const long target = std::max(precision + 8, 2 * cached_precision_);
        cached_ = compute(target);
        cached_precision_ = target;
    }
    return {rescale(cached_, cached_precision_, precision), precision};
}

mpz_class SqrtAtom::compute(long precision) const {
    mpz_class scaled = mpz_class(radicand_) * pow2(2 * static_cast<unsigned long>(precision));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return root;
}

DigitSetAtom::DigitSetAtom(std::string label, std::vector<std::uint64_t> positions)
    : label_(std::move(label)), positions_(std::move(positions)) {
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    if (!positions_.empty() && positions_.front() == 0)
        throw std::invalid_argument("digit positions start at 1");
}

mpz_class DigitSetAtom::compute(long precision) const {
    // The dropped tail is a sparse sum below 2^-precision.
    mpz_class m = 0;
    for (std::uint64_t p : positions_) {
        if (static_cast<long>(p) > precision)
            break;
        m += pow2(static_cast<unsigned long>(precision - static_cast<long>(p)));
    }
    return m;
}

// CertifiedReal

CertifiedReal CertifiedReal::rational(mpq_class q) {
    q.canonicalize();
    CertifiedReal x;
    x.constant_ = q;
    return x;
}

CertifiedReal CertifiedReal::quadratic(long a, long b, unsigned long c, long d) {
    if (d == 0)
        throw std::invalid_argument("quadratic irrational with zero denominator");
    unsigned long square = 1;
    unsigned long free = c;
    for (unsigned long f = 2; f * f <= free; ++f)
        while (free % (f * f) == 0) {
            free /= f * f;
            square *= f;
        }
    CertifiedReal x;
    x.constant_ = mpq_class(a, d);
    x.constant_.canonicalize();
    if (free == 1 || b == 0 || c == 0) {
        if (c != 0)
            x.constant_ += mpq_class(mpz_class(b) * mpz_class(square), mpz_class(d));
        x.constant_.canonicalize();
        return x;
    }
    mpq_class coeff(mpz_class(b) * mpz_class(square), mpz_class(d));
    coeff.canonicalize();
    x.terms_.emplace_back(std::make_shared<SqrtAtom>(free), coeff);
    x.kind_ = Kind::quadratic;
    return x;
}

CertifiedReal CertifiedReal::digits(std::string label, std::vector<std::uint64_t> positions) {
    auto atom = std::make_shared<DigitSetAtom>(std::move(label), std::move(positions));
    CertifiedReal x;
    if (atom->positions().empty())
        return x;
    x.terms_.emplace_back(std::move(atom), mpq_class(1));
    x.kind_ = Kind::qtree;
    return x;
}

CertifiedReal CertifiedReal::affine(const mpq_class &a, const mpq_class &b, const CertifiedReal &x) {
    CertifiedReal out = rational(a) + b * x;
    if (!out.is_rational())
        out.kind_ = Kind::affine;
    return out;
}

void CertifiedReal::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto &l, const auto &r) { return l.first->key() < r.first->key(); });
    std::vector<std::pair<std::shared_ptr<const Atom>, mpq_class>> merged;
    for (auto &term : terms_) {
        if (!merged.empty() && merged.back().first->key() == term.first->key())
            merged.back().second += term.second;
        else
            merged.push_back(std::move(term));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto &t) { return t.second == 0; }),
                 merged.end());
    terms_ = std::move(merged);
    constant_.canonicalize();
    if (terms_.empty())
        kind_ = Kind::rational;
}

CertifiedReal CertifiedReal::operator-() const {
    return mpq_class(-1) * *this;
}

CertifiedReal operator+(const CertifiedReal &a, const CertifiedReal &b) {
    CertifiedReal out;
    out.constant_ = a.constant_ + b.constant_;
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.kind_ = CertifiedReal::Kind::affine;
    out.normalize();
    return out;
}

CertifiedReal operator-(const CertifiedReal &a, const CertifiedReal &b) {
    return a + (-b);
}

CertifiedReal operator*(const mpq_class &q, const CertifiedReal &x) {
    CertifiedReal out;
    out.constant_ = q * x.constant_;
    out.terms_ = x.terms_;
    for (auto &term : out.terms_)
        term.second *= q;
    out.kind_ = q == 1 ? x.kind_ : CertifiedReal::Kind::affine;
    out.normalize();
    return out;
}

bool CertifiedReal::same_form(const CertifiedReal &other) const {
    if (constant_ != other.constant_ || terms_.size() != other.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].second != other.terms_[i].second || terms_[i].first->key() != other.terms_[i].first->key())
            return false;
    return true;
}

Approximation CertifiedReal::query(long precision) const {
    if (precision < 0)
        precision = 0;
    if (terms_.empty())
        return {round_nearest(constant_ * mpq_class(pow2(static_cast<unsigned long>(precision)))), precision};

    mpq_class weight = 0;
    for (const auto &term : terms_)
        weight += abs(term.second);
    // 2^headroom >= weight, so the summed atom errors stay below 2^-(precision+2).
    long headroom = 0;
    while (mpq_class(pow2(static_cast<unsigned long>(headroom))) < weight)
        ++headroom;
    const long inner = precision + headroom + 2;

    mpq_class sum = constant_;
    const mpq_class unit(1, pow2(static_cast<unsigned long>(inner)));
    for (const auto &[atom, coeff] : terms_)
        sum += coeff * mpq_class(atom->approximate(inner).mantissa) * unit;
    return {round_nearest(sum * mpq_class(pow2(static_cast<unsigned long>(precision)))), precision};
}

std::string CertifiedReal::symbolic() const {
    std::ostringstream out;
    bool first = true;
    for (const auto &[atom, coeff] : terms_) {
        mpq_class magnitude = abs(coeff);
        if (first) {
            if (coeff < 0)
                out << "-";
        } else {
            out << (coeff < 0 ? " - " : " + ");
        }
        if (magnitude != 1)
            out << rational_string(magnitude) << "*";
        out << atom->name();
        first = false;
    }
    if (first)
        return rational_string(constant_);
    if (constant_ != 0)
        out << (constant_ < 0 ? " - " : " + ") << rational_string(abs(constant_));
    return out.str();
}

std::string CertifiedReal::decimal(int digits) const {
    const long precision = static_cast<long>(std::ceil(digits * 3.3219280948873626)) + 8;
    const mpq_class v = query(precision).value();
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const mpq_class scaled = abs(v) * mpq_class(ten);
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    mpz_class int_part;
    mpz_class frac_part;
    mpz_fdiv_qr(int_part.get_mpz_t(), frac_part.get_mpz_t(), whole.get_mpz_t(), ten.get_mpz_t());
    std::string fraction = frac_part.get_str();
    fraction.insert(0, static_cast<std::size_t>(digits) - fraction.size(), '0');
    std::string sign = (v < 0 && whole != 0) ? "-" : "";
    return digits > 0 ? sign + int_part.get_str() + "." + fraction : sign + int_part.get_str();
}

double CertifiedReal::to_double() const {
    return query(64).value().get_d();
}

std::string to_string(Comparison c) {
    switch (c) {
    case Comparison::less:
        return "Less";
    case Comparison::greater:
        return "Greater";
    case Comparison::unresolved:
        return "UnresolvedAtPrecision";
    }
    return "?";
}

Comparison compare(const CertifiedReal &x, const CertifiedReal &y, long max_precision) {
    if (x.same_form(y))
        return Comparison::unresolved;
    const CertifiedReal diff = x - y;
    if (diff.is_rational())
        return diff.constant() > 0 ? Comparison::greater : Comparison::less;
    long precision = std::min<long>(32, max_precision);
    while (true) {
        const mpz_class m = diff.query(precision).mantissa;
        // diff lies in [(m-1), (m+1)] * 2^-precision.
        if (m >= 2)
            return Comparison::greater;
        if (m <= -2)
            return Comparison::less;
        if (precision >= max_precision)
            return Comparison::unresolved;
        precision = std::min(2 * precision, max_precision);
    }
}

int resolve_order(const CertifiedReal &x, const CertifiedReal &y, long max_precision) {
    if (x.same_form(y))
        return 0;
    switch (compare(x, y, max_precision)) {
    case Comparison::less:
        return -1;
    case Comparison::greater:
        return 1;
    case Comparison::unresolved:
        break;
    }
    throw UnresolvedComparison("cannot order " + x.symbolic() + " and " + y.symbolic() + " within " +
                               std::to_string(max_precision) + " bits");
}

mpz_class certified_floor(const CertifiedReal &x, long max_precision) {
    if (x.is_rational()) {
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), x.constant().get_num_mpz_t(), x.constant().get_den_mpz_t());
        return out;
    }
    long precision = std::min<long>(32, max_precision);
    while (true) {
        const mpz_class m = x.query(precision).mantissa;
        mpz_class lo;
        mpz_class hi;
        const mpz_class scale = pow2(static_cast<unsigned long>(precision));
        mpz_class lo_num = m - 1;
        mpz_class hi_num = m + 1;
        mpz_fdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), scale.get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), scale.get_mpz_t());
        if (lo == hi)
            return lo;
        if (precision >= max_precision)
            throw UnresolvedComparison("cannot certify floor of " + x.symbolic());
        precision = std::min(2 * precision, max_precision);
    }
}

CertifiedReal frac(const CertifiedReal &x, long max_precision) {
    return x - CertifiedReal::rational(mpq_class(certified_floor(x, max_precision)));
}

std::vector<std::uint64_t> qtree_labels(const std::vector<bool> &path) {
    std::vector<std::uint64_t> labels{0};
    std::uint64_t m = 0;
    for (bool bit : path) {
        m = 2 * m + 1 + (bit ? 1 : 0);
        labels.push_back(m);
    }
    return labels;
}

std::string path_string(const std::vector<bool> &path) {
    std::string out;
    for (bool b : path)
        out += b ? '1' : '0';
    return out;
}

std::vector<bool> parse_bit_path(const std::string &text) {
    std::vector<bool> out;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("binary path must contain only 0 and 1: '" + text + "'");
        out.push_back(c == '1');
    }
    return out;
}

std::vector<CertifiedReal> qtree_reals(const std::vector<std::vector<bool>> &paths) {
    std::set<std::vector<bool>> seen;
    std::vector<CertifiedReal> out;
    for (const auto &path : paths) {
        if (!paths.empty() && path.size() != paths.front().size())
            throw std::invalid_argument("qtree paths must share one length");
        if (!seen.insert(path).second)
            throw std::invalid_argument("duplicate qtree path " + path_string(path));
        std::vector<std::uint64_t> positions;
        for (std::uint64_t label : qtree_labels(path))
            positions.push_back((label + 1) * (label + 1));
        out.push_back(CertifiedReal::digits("r" + path_string(path), std::move(positions)));
    }
    return out;
}

CertifiedReal parse_real(const std::string &text) {
    if (text == "sqrt2m1")
        return CertifiedReal::quadratic(-1, 1, 2, 1);
    if (text == "golden" || text == "goldenm1")
        return CertifiedReal::quadratic(-1, 1, 5, 2);
    if (text.rfind("sqrt", 0) == 0)
        return CertifiedReal::quadratic(0, 1, std::stoul(text.substr(4)), 1);
    if (text.rfind("qtree:", 0) == 0)
        return qtree_reals({parse_bit_path(text.substr(6))}).front();
    if (text.empty())
        throw std::invalid_argument("empty real");
    if (auto slash = text.find('/'); slash != std::string::npos)
        return CertifiedReal::rational(mpq_class(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10)));
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t places = text.size() - dot - 1;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
        if (digits.empty() || digits == "-")
            throw std::invalid_argument("bad decimal '" + text + "'");
        return CertifiedReal::rational(mpq_class(mpz_class(digits, 10), den));
    }
    return CertifiedReal::rational(mpq_class(mpz_class(text, 10)));
}

} // namespace bv
