#pragma once

#include "bv/rotation.hpp"
#include "bv/vershik.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bv {

/// Depth-`depth` prefixes of lambda^i(x_max) for i in [first, last].
struct OrbitWindow {
    std::size_t depth = 0;
    long first = 0;
    long last = 0;
    std::vector<FinitePath> prefixes;

    const FinitePath &at(long i) const { return prefixes.at(static_cast<std::size_t>(i - first)); }
};

/// Orbit of x_max over [offset - n, offset + n] at a depth of at least
/// `min_depth`. The working depth starts at min_depth and doubles whenever a
/// FiberMaximum or FiberMinimum is reached before the window is covered;
/// levels come from the provider when the diagram itself is too shallow.
/// Throws ProviderExhausted when no deeper level is available and
/// DiagramError when x_min or x_max is not determined by the diagram.
OrbitWindow xmax_orbit(const OrderedBratteliDiagram &od, long n, std::size_t min_depth, long offset = 0);

/// Finite family of cylinder sets [e_1 ... e_j]. Keeps a reference to the
/// ordered diagram, which must outlive the family.
class CylinderFamily {
public:
    CylinderFamily(const OrderedBratteliDiagram &od, std::vector<FinitePath> cylinders);

    /// Every depth-j cylinder, in path order.
    static CylinderFamily all_of_depth(const OrderedBratteliDiagram &od, std::size_t j);

    const OrderedBratteliDiagram &diagram() const { return *od_; }
    const std::vector<FinitePath> &cylinders() const { return cylinders_; }
    std::size_t size() const { return cylinders_.size(); }
    std::size_t max_depth() const;

private:
    const OrderedBratteliDiagram *od_;
    std::vector<FinitePath> cylinders_;
};

/// Return words of each cylinder along the orbit of the base point
/// lambda^offset(x_max); word index i + n holds time i.
struct ReturnWindow {
    long offset = 0;
    long radius = 0;
    std::vector<std::vector<char>> words;

    std::string base_tag() const;
};

std::vector<char> vershik_return_window(const OrderedBratteliDiagram &od, const FinitePath &cylinder, long n,
                                        long offset = 0);
ReturnWindow return_windows(const CylinderFamily &family, long n, long offset = 0);

/// Letter i + n holds bit u set iff lambda^i(x_max) lies in cylinder u.
/// Needs at most 64 cylinders.
std::vector<std::uint64_t> ret_code(const CylinderFamily &family, long n, long offset = 0);

struct ConjugacyReport {
    std::vector<std::size_t> cuts;
    long radius = 0;
    std::size_t cylinders_checked = 0;
    std::size_t paths_checked = 0;
    bool windows_equal = true;
    bool successors_intertwine = true;
    std::vector<std::string> failures;

    bool passed() const { return windows_equal && successors_intertwine; }
};

/// Compares od with lex_telescope(od, cuts). Every path at every cut depth
/// is pushed through the canonical bijection and its successor compared with
/// the successor on the telescoped side; every cylinder of F is mapped to the
/// union of telescoped cylinders it becomes and its return window compared.
ConjugacyReport conjugacy_window_check(const OrderedBratteliDiagram &od, std::span<const std::size_t> cuts,
                                       const CylinderFamily &family, long n);

struct PipelineParams {
    std::vector<bool> gamma_path;
    long shift_range = 1;
    int boolean_depth = 1;
    long max_precision = 300;
};

struct PipelineResult {
    enum class Verdict { distinguished, indistinguishable_at_depth };

    Verdict verdict = Verdict::indistinguishable_at_depth;
    /// Member of one density set certified distinct from every member of the other.
    std::optional<CertifiedReal> witness;
    /// "S" or "S'" for the side the witness comes from.
    std::string witness_side;
    CertifiedReal gamma;
    std::vector<CertifiedReal> generators_s;
    std::vector<CertifiedReal> generators_s_prime;
    std::vector<CertifiedReal> densities_s;
    std::vector<CertifiedReal> densities_s_prime;
    /// Set when S = S' and both generated algebras agree member by member.
    bool algebras_identical = false;
};

std::string to_string(PipelineResult::Verdict verdict);

/// Builds density sets of the rotation algebras for the qtree reals of S and
/// S' and searches for a certified separating value. Throws
/// std::invalid_argument when the gamma path collides with S or S', or the
/// paths have different lengths.
PipelineResult reduction_pipeline(const std::vector<std::vector<bool>> &s,
                                  const std::vector<std::vector<bool>> &s_prime, const PipelineParams &params);

} // namespace bv
