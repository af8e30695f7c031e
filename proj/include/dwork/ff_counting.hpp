#ifndef DWORK_FF_COUNTING_HPP
#define DWORK_FF_COUNTING_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "dwork/cyclotomic.hpp"
#include "dwork/family.hpp"
#include "dwork/padic.hpp"

namespace dwork {

// A Frobenius orbit of (F_{q^d}^*)^s.  Coordinates are codes in the model
// F_p[t]/(h_{ad}) of F_{q^d}; logs are relative to its canonical generator.
struct ClosedPoint {
    int degree = 1;
    std::vector<std::uint64_t> logs;
    std::vector<GaloisField::Elem> coords;
    std::string orbit_id;
};

std::vector<ClosedPoint> enumerate_closed_points(const LaurentFamily& fam, int d_max);

// Point of exact degree d with the given coordinates (any orbit member).
ClosedPoint make_point(const LaurentFamily& fam, int degree, const std::vector<GaloisField::Elem>& coords);
ClosedPoint conjugate_point(const LaurentFamily& fam, const ClosedPoint& pt, int j);

// Coefficients iota(a_b) * lambda^{r_b} of the fiber polynomial, in F_{q^d}.
std::vector<GaloisField::Elem> fiber_coefficients(const LaurentFamily& fam, const ClosedPoint& pt);

// Largest field size the exact counting routines will tabulate.
constexpr std::uint64_t kExactFieldLimit = std::uint64_t(1) << 24;
bool exact_sum_affordable(const LaurentFamily& fam, const ClosedPoint& pt, int m);

CyclotomicInt exp_sum(const LaurentFamily& fam, const ClosedPoint& pt, int m);

// Coefficients c_0 = 1, c_1, ..., c_M of L(f(lambda, X), T).
std::vector<CyclotomicInt> l_series(const LaurentFamily& fam, const ClosedPoint& pt, int M);
std::vector<CyclotomicInt> l_series_from_sums(const std::vector<CyclotomicInt>& sums);

struct RationalL {
    std::vector<CyclotomicInt> numerator;    // constant term 1
    std::vector<CyclotomicInt> denominator;  // constant term 1
    int orientation = 1;                     // stored function is L^orientation
    int verified_terms = 0;                  // coefficients checked, c_0..c_{verified_terms-1}
};

struct UnstableRecurrence : std::runtime_error {
    int required_terms;
    UnstableRecurrence(const std::string& msg, int req) : std::runtime_error(msg), required_terms(req) {}
};

// Minimal rational function matching c_0..c_M, confirmed on two held-out terms.
RationalL rational_reconstruct(const std::vector<CyclotomicInt>& series);
std::vector<CyclotomicInt> expand_rational(const RationalL& L, int M);
// Power sums S_m implied by L (log-derivative), m = 1..M.
std::vector<CyclotomicInt> power_sums(const RationalL& L, int M);

struct FiberUnitRoot {
    EisensteinElement value;
    bool is_zero = true;  // reciprocal zero (true) or pole (false) of L^{(-1)^{n+1}}
};

// Unit reciprocal root of L^{(-1)^{n+1}} in Z_p[pi] by Hensel lifting.
FiberUnitRoot fiber_unit_root_exact(const RationalL& L, int n, const FieldContext& ctx);

// Number of slope-0 reciprocal roots of 1 + c_1 T + ... (Newton polygon).
int unit_root_count(const std::vector<EisensteinElement>& poly);
EisensteinElement hensel_unit_root(const std::vector<EisensteinElement>& poly);

}  // namespace dwork

#endif
