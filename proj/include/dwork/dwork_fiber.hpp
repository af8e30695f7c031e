#ifndef DWORK_DWORK_FIBER_HPP
#define DWORK_DWORK_FIBER_HPP

#include <map>
#include <vector>

#include "dwork/cone_series.hpp"
#include "dwork/ff_counting.hpp"
#include "dwork/linalg.hpp"

namespace dwork {

// Degree bound ceil(N p^2 (omega_1 + omega_2) / (p - 1)^2) on X-monomials.
int default_fiber_degree(const LaurentFamily& fam, int N);

// Frobenius of the fiber at a closed point of degree d, on the X-monomials of
// M_2 with |u| <= D, over the degree a*d context.  level1 is psi o H_1 with
// entries B_{p v - u}; the operator alpha_{ad} is the ordered product
// sigma^{ad-1}(level1) ... sigma(level1) level1.
struct FiberOperator {
    ContextPtr ctx;
    std::vector<Exponent> basis;
    std::map<Exponent, int> index;
    Matrix level1;
    std::vector<Matrix> conjugates;  // sigma^i(level1), i = 0..levels-1
    int levels = 1;
    int D = 0;
    int tail_bound_pi = 0;

    Vector apply(const Vector& x) const;
    Matrix assemble() const;
};

FiberOperator fiber_frobenius(const LaurentFamily& fam, const ClosedPoint& pt, int D, int N);

// psi^{ad} o H_{ad} built from a single kernel; only practical for small p^{ad} D.
Matrix fiber_frobenius_direct(const LaurentFamily& fam, const ClosedPoint& pt, int D, int N, const FieldContext& ctx);

TSeries fredholm_det(const Matrix& m, int K, const FieldContext& ctx);

// g -> g(T) / g(c T), applied n times.
TSeries delta_op(const TSeries& g, const EisensteinElement& c, int n);

struct TraceFormulaReport {
    bool ok = false;
    bool stable = false;
    int D = 0;
    int target_pi = 0;
    TSeries exact;       // L^{(-1)^{n+1}} mod T^{K+1}
    TSeries fredholm;    // det(1 - alpha T), projected to Z_p[pi]
    TSeries delta;       // fredholm after delta^n
    std::vector<int> agreement;
    std::vector<int> stability;  // agreement of delta with the 2D run
};

TraceFormulaReport verify_trace_formula(const LaurentFamily& fam, const ClosedPoint& pt, int K, int N, int D = -1);

struct FiberRoot {
    EisensteinElement value;  // in Z_p[pi] at precision N
    RatioTrail trail;
    int unit_roots = 0;
    int D = 0;
    bool stable = false;      // D and 2D agree to the certified precision
    int certified_pi = 0;
};

// Unit eigenvalue of alpha_{ad} by vector iteration on the constant monomial.
FiberRoot fiber_unit_root_padic(const LaurentFamily& fam, const ClosedPoint& pt, int N, int D = -1,
                                bool check_uniqueness = true, bool check_stability = true);

// The same eigenvalue as the stabilized trace ratio tr(alpha^{k+1}) / tr(alpha^k).
RatioTrail fiber_unit_root_trace(const FiberOperator& op, int target_pi);

}  // namespace dwork

#endif
