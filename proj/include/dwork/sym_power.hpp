#ifndef DWORK_SYM_POWER_HPP
#define DWORK_SYM_POWER_HPP

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dwork/cone_series.hpp"
#include "dwork/family.hpp"
#include "dwork/kappa.hpp"
#include "dwork/linalg.hpp"

namespace dwork {

struct SymTrunc {
    int t_max = 3;
    int d_x = 4;
    int d_lambda = 4;
    int lambda_cap = -1;  // Lambda weight kept in intermediate products; -1 derives it
};

// Monomials e_u = e_{u_1} ... e_{u_t} in the nonzero X-exponents of M_2 with
// |u_i| <= d_x and t <= t_max, ordered by degree then lexicographically.
// Index 0 is the empty monomial.
class SymBasis {
public:
    SymBasis(const Cone& x_cone, int d_x, int t_max);

    int t_max() const { return t_max_; }
    const std::vector<Exponent>& vars() const { return vars_; }
    // -1 for the zero exponent, -2 when outside the basis
    int var_index(const Exponent& u) const;
    int size() const { return static_cast<int>(monos_.size()); }
    const std::vector<int>& mono(int i) const { return monos_[i]; }
    int degree(int i) const { return static_cast<int>(monos_[i].size()); }
    int weight(int i) const { return weights_[i]; }
    int find(const std::vector<int>& sorted_vars) const;
    // index of mono * e_var, -1 when the degree would exceed t_max; var < 0 is the constant
    int times_var(int mono, int var) const { return var < 0 ? mono : table_[static_cast<size_t>(mono) * vars_.size() + var]; }
    // prod of factorials of the multiplicities, the constant counted k - t times
    mpz_class multiplicity_factorial(int mono, int k) const;

private:
    int t_max_;
    std::vector<Exponent> vars_;
    std::vector<std::vector<int>> monos_;
    std::vector<int> weights_;
    std::vector<int> table_;
};

// Lambda exponents of M_1 with weight <= cap, in the Cone ordering.
class LambdaGrid {
public:
    LambdaGrid(const Cone& lambda_cone, int s, int cap);

    int s() const { return s_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<Exponent>& points() const { return points_; }
    int index(const Exponent& e) const;
    int count_within(int weight) const;

private:
    int s_, cap_;
    std::vector<Exponent> points_;
    std::vector<int> grid_;
};

// Element of the symmetric algebra over O[[Lambda]] truncated to a grid and basis.
struct SymSeries {
    std::vector<EisensteinElement> coeff;  // coeff[l * basis_size + mono]
    std::vector<int> support;              // positions with a stored coefficient
};

struct LinearTerm {
    Exponent lambda;
    int var = -1;  // -1: constant
    EisensteinElement coeff;
};
using LinearFactor = std::vector<LinearTerm>;

class SymEngine {
public:
    SymEngine(const SymBasis& basis, const LambdaGrid& grid, const FieldContext& ctx);

    const SymBasis& basis() const { return basis_; }
    const LambdaGrid& grid() const { return grid_; }
    const FieldContext& ctx() const { return ctx_; }

    SymSeries constant(const EisensteinElement& c) const;
    struct Compiled {
        std::vector<int> shift;  // grid index after adding the term's Lambda exponent
        int var;
        EisensteinElement coeff;
        int ord;
    };
    using CompiledFactor = std::vector<Compiled>;
    CompiledFactor compile(const LinearFactor& g) const;

    SymSeries times(const SymSeries& f, const LinearFactor& g) const { return times(f, compile(g)); }
    SymSeries times(const SymSeries& f, const CompiledFactor& g) const;
    // sum_l binom(c_t, l) w^l for each exponent c_t; pi-precision of the result
    // is reduced to cap_pi when the exponents are only known modulo p^digits.
    std::vector<SymSeries> binomial_powers(const LinearFactor& w, const std::vector<mpz_class>& exps) const;

private:
    const SymBasis& basis_;
    const LambdaGrid& grid_;
    const FieldContext& ctx_;
};

// Exponent of the symmetric power: a p-adic kappa, or a finite k with the
// degree cutoff.
struct SymExponent {
    bool finite = false;
    long long k = 0;
    KappaExponent kappa;

    static SymExponent p_adic(const KappaExponent& kappa);
    static SymExponent truncated(long long k);
    std::string describe() const;
};

struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, EisensteinElement>>> col;

    Vector apply(const Vector& x, const FieldContext& ctx) const;
    SparseMatrix sigma(int power) const;
    SparseMatrix transpose() const;
    EisensteinElement entry(int i, int j) const;
    Matrix dense(const FieldContext& ctx) const;
    size_t nonzeros() const;
};

SparseMatrix sparse_mul(const SparseMatrix& a, const SparseMatrix& b, const FieldContext& ctx);
TSeries sparse_fredholm(const SparseMatrix& m, int K, const FieldContext& ctx);
// Number of slope-0 roots of det(1 - M T), from the strongly connected
// components of the unit-entry graph.
int sparse_unit_root_count(const SparseMatrix& m, const FieldContext& ctx);

// [beta_a]_kappa on the basis Lambda^r e_u (primal) or Lambda^{-r} e*_u (dual),
// r in M_1 with |r| <= d_lambda; index = r_index * basis_size + mono.
struct SymOperator {
    ContextPtr ctx;
    std::shared_ptr<SymBasis> basis;
    std::shared_ptr<LambdaGrid> grid;
    int lambda_count = 0;
    int dim = 0;
    bool dual = false;
    SymExponent exponent;
    SymTrunc trunc;
    // primal: applied first to last; dual: applied last to first
    std::vector<SparseMatrix> factors;
    int cap_pi = 0;   // certified pi-precision of the entries
    int w_ord = 0;    // ord_pi of Upsilon(alpha(1)) - 1

    int index(int r_index, int mono) const { return r_index * basis->size() + mono; }
    Vector apply(const Vector& x) const;
    SparseMatrix assemble() const;
};

SymTrunc resolve_trunc(const LaurentFamily& fam, SymTrunc t);

SymOperator beta_operator(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N);
SymOperator dual_beta_operator(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N);
// [alpha_{a, lambda}]_kappa at a rational point, on the e_u basis alone.
SymOperator fiber_sym_operator(const LaurentFamily& fam, const std::vector<GaloisField::Elem>& lambda,
                               const SymExponent& e, const SymTrunc& trunc, int N);

// Images [alpha_{1,Lambda}]_kappa(e_u) for every basis monomial, as sparse
// (grid index * basis size + mono, coefficient) lists.
struct AlphaImages {
    ContextPtr ctx;
    std::shared_ptr<SymBasis> basis;
    std::shared_ptr<LambdaGrid> grid;
    std::vector<std::vector<std::pair<int, EisensteinElement>>> images;
    int cap_pi = 0;
};
AlphaImages alpha_images(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N, bool dual);

struct BetaRoot {
    EisensteinElement value;  // in Z_p[pi]
    RatioTrail trail;
    int unit_roots = 0;
    int certified_pi = 0;
    int dim = 0;
};
BetaRoot beta_unit_root(const SymOperator& op, bool check_uniqueness = true);

struct ConvergenceReport {
    bool ok = false;
    bool monotone = false;
    bool meets_bound = false;
    bool det_stable = false;
    std::vector<long long> ks;
    std::vector<double> diff_scaled;  // min scaled ord_p of image differences, in pi-tilde units
    std::vector<double> bound;        // min{tau(l), (1 - 1/q) k_l}
    std::vector<int> det_agreement;   // pi-units, det(1 - [beta]_(k_l) T) vs kappa, mod T^{K+1}
    int target_pi = 0;
};
ConvergenceReport convergence_check(const LaurentFamily& fam, const KappaExponent& kappa, const std::vector<long long>& ks,
                                    const SymTrunc& trunc, int N, int K, int det_target_pi);

struct PairingReport {
    bool ok = false;
    int pairs_checked = 0;
    int min_agreement = 0;
    int witness_row = -1, witness_col = -1;
};
PairingReport pairing_check(const LaurentFamily& fam, long long k, const SymTrunc& trunc, int N);

struct DualityReport {
    bool ok = false;
    TSeries primal, dual;  // projected to Z_p[pi]
    std::vector<int> agreement;
    int target_pi = 0;
};
DualityReport det_duality_check(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N, int K,
                                int target_pi);

struct TraceIdentityReport {
    bool ok = false;
    EisensteinElement lhs, rhs;  // (q - 1)^s Tr([beta]) and the sum of fiber traces
    int agreement = 0;
    int target_pi = 0;
    int points = 0;
};
TraceIdentityReport trace_identity_check(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N,
                                         int target_pi);

}  // namespace dwork

#endif
