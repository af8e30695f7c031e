#ifndef DWORK_UNIT_ROOT_PIPELINE_HPP
#define DWORK_UNIT_ROOT_PIPELINE_HPP

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dwork/ff_counting.hpp"
#include "dwork/kappa.hpp"
#include "dwork/linalg.hpp"
#include "dwork/sym_power.hpp"

namespace dwork {

// Exact element sum_{j < p-1} c_j pi^j of Q(pi), pi^{p-1} = -p.
class QPi {
public:
    QPi() = default;
    QPi(int p, const mpq_class& c);
    static QPi pi_power(int p, int k);

    int p() const { return p_; }
    const std::vector<mpq_class>& coords() const { return c_; }
    bool is_zero() const;
    QPi operator+(const QPi& o) const;
    QPi operator-(const QPi& o) const;
    QPi operator*(const QPi& o) const;
    QPi& operator+=(const QPi& o);
    QPi& operator-=(const QPi& o);
    bool operator==(const QPi& o) const;

    // Image in O; throws IntegralityViolation when some coordinate has negative ord_pi.
    EisensteinElement embed(const FieldContext& ctx) const;

private:
    int p_ = 0;
    std::vector<mpq_class> c_;
};

struct IntegralityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Power series in one Y variable per support term, exact coefficients, total degree <= degree_bound.
struct YSeries {
    int vars = 0;
    int degree_bound = 0;
    std::map<Exponent, QPi> terms;
};

// J_{s,v}(Y) = sum over i >= 0 with sum_b i_b (r_b, u_b) = (s, v) of pi^{|i|} / i! Y^i.
YSeries j_series(const LaurentFamily& fam, const Exponent& target, int d_y);
YSeries g00_series(const LaurentFamily& fam, int d_y);
// Y -> Y^p
YSeries frobenius_substitute(const YSeries& f, int p);
// Formal quotient num / den, den with constant term 1.
YSeries series_quotient(const YSeries& num, const YSeries& den);
// G(Y) = g00(Y) / g00(Y^p)
YSeries g_ratio(const YSeries& g00);
// sum_m c_m y^m at a point of O^|B|; every coefficient must embed integrally.
EisensteinElement evaluate(const YSeries& f, const std::vector<EisensteinElement>& y, const FieldContext& ctx);

// Teichmueller lifts of the term coefficients over the degree-a context.
std::vector<EisensteinElement> teichmuller_point(const LaurentFamily& fam, const FieldContext& ctx);

struct UnitRootResult {
    EisensteinElement value;  // in Z_p[pi]
    int certified_pi = 0;
    std::string route;
    bool stable = false;
    std::vector<int> trail_degrees;        // truncation parameter per evaluation
    std::vector<EisensteinElement> trail;  // values along the trail
    int sign = 0;                          // +1 pole, -1 zero of L_unit^{(-1)^{s+1}}; 0 when not applicable
};

// F_a(a-hat)^kappa = (G(a-hat) G(a-hat^p) ... G(a-hat^{p^{a-1}}))^kappa, evaluated at
// Y-degrees d_y, 2 d_y, 3 d_y, ... until three consecutive values agree mod p^N.
UnitRootResult formula_eval(const LaurentFamily& fam, const KappaExponent& kappa, int N, int d_y = 12, int max_steps = 8);
// True when g00 has no term beyond the constant up to degree d_y.
bool g00_is_trivial(const LaurentFamily& fam, int d_y);

struct FiberRecord {
    ClosedPoint point;
    EisensteinElement pi0;  // in Z_p[pi]
    int certified_pi = 0;
    std::string route;       // "exact" or "padic"
    int cross_check_pi = -1;  // agreement of the two routes when both ran
};

// Unit roots of every fiber of degree <= d_max.  Degrees <= exact_degree use the
// point-count route and are also cross-checked against the p-adic route.
std::vector<FiberRecord> fiber_unit_roots(const LaurentFamily& fam, int d_max, int N, int exact_degree = 1);

struct LUnitSeries {
    TSeries product;   // prod (1 - pi0^kappa T^d)^{-1}
    TSeries moments_route;
    std::vector<EisensteinElement> moments;  // M_1..M_dmax
    int route_agreement = 0;
    int d_max = 0;
};
LUnitSeries assemble_l_unit(const std::vector<FiberRecord>& fibers, const KappaExponent& kappa, int d_max,
                            const FieldContext& ctx1);

// Slope-0 reciprocal root of L_unit^{(-1)^{s+1}} from moment ratios M_{m+1} / M_m.
UnitRootResult extract_unit_root(const LUnitSeries& l, int s, int target_pi);

// Coefficients J_{s,v}(a-hat) / J_{0,0}(a-hat) of eta at the Teichmueller point, for
// (s, v) in the lineality parts with |s| <= d_lambda, |v| <= d_x.
struct EtaSeries {
    std::map<Exponent, EisensteinElement> coeffs;  // exponent (s, v)
    int certified_pi = 0;
    int d_y = 0;
    bool stable = false;
};
// Stable once three consecutive Y-degrees agree to target_pi (-1: full precision).
EtaSeries eta_series(const LaurentFamily& fam, int d_lambda, int d_x, int N, int d_y = 12, int max_steps = 6,
                     int target_pi = -1);

struct EigenvectorReport {
    bool ok = false;
    EisensteinElement eigenvalue;  // F_a(a-hat)^kappa in the degree-a context
    int components = 0;            // compared components
    int min_agreement = 0;         // pi-units, over compared components
    int target_pi = 0;
    int witness = -1;
    int nonzero_components = 0;
    int eta_certified_pi = 0;
    int formula_certified_pi = 0;
};
// Applies [beta*]_kappa to Upsilon(eta)^kappa and compares with eigenvalue times the
// vector on the interior components: Lambda weight <= d_lambda / 2 and e-weight <= d_x / 2.
EigenvectorReport eigenvector_check(const LaurentFamily& fam, const KappaExponent& kappa, const SymTrunc& trunc, int N,
                                    int target_pi, int d_y = 12);

struct ThreeWayReport {
    bool ok = false;
    UnitRootResult point_count, operator_route, formula;
    int min_certified_pi = 0;
    int agreement_ab = 0, agreement_ac = 0, agreement_bc = 0;
    int unit_roots = 0;  // slope-0 count of the operator
    int target_pi = 0;
    int truncation_agreement = -1;  // operator root at the doubled truncation; -1 when skipped
};
struct PipelineParams {
    int N = 3;
    int d_max = 4;
    int exact_degree = 1;
    int d_y = 12;
    SymTrunc trunc;
    int target_pi = -1;          // required certified precision; -1: 2(p-1), i.e. mod p^2
    bool truncation_check = true;  // recompute the operator root with D_X and D_Lambda doubled
};
ThreeWayReport three_way_compare(const LaurentFamily& fam, const KappaExponent& kappa, const PipelineParams& params);

}  // namespace dwork

#endif
