#include "dwork/dwork_fiber.hpp"

#include <algorithm>
#include <stdexcept>

#include "dwork/padic_core.hpp"

namespace dwork {

namespace {

Exponent scaled_minus(const Exponent& v, long long scale, const Exponent& u)
{
    Exponent e(v.size());
    for (size_t k = 0; k < v.size(); ++k) e[k] = static_cast<int>(scale * v[k] - u[k]);
    return e;
}

TSeries project_series(const TSeries& f, const SubringEmbedding& emb)
{
    TSeries r;
    for (const auto& c : f) r.push_back(emb.project(c));
    return r;
}

}  // namespace

int default_fiber_degree(const LaurentFamily& fam, int N)
{
    const int p = fam.p();
    long long num = static_cast<long long>(N) * p * p * (fam.omega1() + fam.omega2());
    long long den = static_cast<long long>(p - 1) * (p - 1);
    return static_cast<int>((num + den - 1) / den);
}

Vector FiberOperator::apply(const Vector& x) const
{
    Vector y = x;
    for (const auto& c : conjugates) y = mat_vec(c, y, *ctx);
    return y;
}

Matrix FiberOperator::assemble() const
{
    Matrix m = conjugates.front();
    for (size_t i = 1; i < conjugates.size(); ++i) m = mat_mul(conjugates[i], m, *ctx);
    return m;
}

FiberOperator fiber_frobenius(const LaurentFamily& fam, const ClosedPoint& pt, int D, int N)
{
    if (D < 0) throw std::invalid_argument("fiber_frobenius: negative degree bound");
    const int p = fam.p();
    FiberOperator op;
    op.ctx = make_field_context(p, fam.a() * pt.degree, N);
    op.levels = fam.a() * pt.degree;
    op.D = D;
    op.basis = fam.x_cone().lattice_points(D);
    for (size_t i = 0; i < op.basis.size(); ++i) op.index[op.basis[i]] = static_cast<int>(i);
    auto terms = lift_fiber(fam, pt, *op.ctx);
    Window w{0, fam.n(), 0, -1, (p + 1) * D};
    ConeSeries H = splitting_H(terms, 1, w, *op.ctx);
    const int dim = static_cast<int>(op.basis.size());
    op.level1 = zero_matrix(dim, dim, *op.ctx);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            auto it = H.terms().find(scaled_minus(op.basis[i], p, op.basis[j]));
            if (it != H.terms().end()) op.level1(i, j) = it->second;
        }
    op.conjugates.push_back(op.level1);
    for (int i = 1; i < op.levels; ++i) op.conjugates.push_back(sigma_matrix(op.level1, i));
    // omitted rows |v| > D meet columns |u| <= D at |p v - u| >= (p - 1)(D + 1)
    long long num = static_cast<long long>(p - 1) * (p - 1) * (p - 1) * (D + 1);
    long long den = static_cast<long long>(p) * p * std::max(1, fam.omega2());
    op.tail_bound_pi = static_cast<int>((num + den - 1) / den);
    return op;
}

Matrix fiber_frobenius_direct(const LaurentFamily& fam, const ClosedPoint& pt, int D, int N, const FieldContext& ctx)
{
    const int p = fam.p();
    const int m = fam.a() * pt.degree;
    if (ctx.degree() != m || ctx.precision() != N) throw std::invalid_argument("fiber_frobenius_direct: context mismatch");
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    auto basis = fam.x_cone().lattice_points(D);
    auto terms = lift_fiber(fam, pt, ctx);
    Window w{0, fam.n(), 0, -1, static_cast<int>((pm + 1) * D)};
    ConeSeries H = splitting_H(terms, m, w, ctx);
    const int dim = static_cast<int>(basis.size());
    Matrix a = zero_matrix(dim, dim, ctx);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            auto it = H.terms().find(scaled_minus(basis[i], pm, basis[j]));
            if (it != H.terms().end()) a(i, j) = it->second;
        }
    return a;
}

TSeries fredholm_det(const Matrix& m, int K, const FieldContext& ctx) { return fredholm_coeffs(m, K, ctx); }

TSeries delta_op(const TSeries& g, const EisensteinElement& c, int n)
{
    if (n < 0) throw std::invalid_argument("delta_op: negative exponent");
    const int K = static_cast<int>(g.size()) - 1;
    TSeries r = g;
    for (int i = 0; i < n; ++i) r = series_mul(r, series_inv(series_scale(r, c), K), K);
    return r;
}

namespace {

struct FredholmRun {
    TSeries det;
    TSeries delta;
};

FredholmRun fredholm_route(const LaurentFamily& fam, const ClosedPoint& pt, int K, int N, int D, const FieldContext& ctx1)
{
    auto op = fiber_frobenius(fam, pt, D, N);
    SubringEmbedding emb(ctx1, *op.ctx);
    FredholmRun run;
    run.det = project_series(fredholm_det(op.assemble(), K, *op.ctx), emb);
    Int qd = ipow(static_cast<Int>(fam.q()), pt.degree);
    run.delta = delta_op(run.det, EisensteinElement::from_int(ctx1, qd % ctx1.modulus()), fam.n());
    return run;
}

}  // namespace

TraceFormulaReport verify_trace_formula(const LaurentFamily& fam, const ClosedPoint& pt, int K, int N, int D)
{
    if (K < 1) throw std::invalid_argument("verify_trace_formula: K must be >= 1");
    TraceFormulaReport rep;
    rep.D = D < 0 ? default_fiber_degree(fam, N) : D;
    auto ctx1 = make_field_context(fam.p(), 1, N);
    rep.target_pi = ctx1->pi_precision();

    auto L = l_series(fam, pt, K);
    std::vector<EisensteinElement> Lp;
    for (const auto& c : L) Lp.push_back(zeta_p_embed(c, *ctx1));
    rep.exact = fam.n() % 2 == 1 ? Lp : series_inv(Lp, K);

    auto run = fredholm_route(fam, pt, K, N, rep.D, *ctx1);
    auto run2 = fredholm_route(fam, pt, K, N, 2 * rep.D, *ctx1);
    rep.fredholm = run.det;
    rep.delta = run.delta;
    rep.ok = true;
    rep.stable = true;
    for (int k = 0; k <= K; ++k) {
        rep.agreement.push_back(agreement(rep.exact[k], rep.delta[k]));
        rep.stability.push_back(agreement(run.delta[k], run2.delta[k]));
        rep.ok = rep.ok && rep.agreement.back() >= rep.target_pi;
        rep.stable = rep.stable && rep.stability.back() >= rep.target_pi;
    }
    return rep;
}

namespace {

RatioTrail vector_iteration(const FiberOperator& op, int target_pi)
{
    auto it = op.index.find(Exponent(op.basis.front().size(), 0));
    if (it == op.index.end()) throw std::logic_error("fiber basis lacks the constant monomial");
    const int i0 = it->second;
    std::vector<Vector> iterates;
    Vector v = zero_vector(static_cast<int>(op.basis.size()), *op.ctx);
    v(i0) = EisensteinElement::one(*op.ctx);
    iterates.push_back(v);
    auto term = [&](int k) {
        while (static_cast<int>(iterates.size()) <= k) iterates.push_back(op.apply(iterates.back()));
        return iterates[k](i0);
    };
    return stabilize_ratios(term, target_pi, 4 * target_pi + 16);
}

}  // namespace

RatioTrail fiber_unit_root_trace(const FiberOperator& op, int target_pi)
{
    return trace_power_ratio(op.assemble(), target_pi, 4 * target_pi + 16, *op.ctx);
}

FiberRoot fiber_unit_root_padic(const LaurentFamily& fam, const ClosedPoint& pt, int N, int D, bool check_uniqueness,
                                bool check_stability)
{
    FiberRoot r;
    r.D = D < 0 ? default_fiber_degree(fam, N) : D;
    auto ctx1 = make_field_context(fam.p(), 1, N);
    const int target = ctx1->pi_precision();
    auto op = fiber_frobenius(fam, pt, r.D, N);
    SubringEmbedding emb(*ctx1, *op.ctx);
    r.trail = vector_iteration(op, target);
    r.value = emb.project(r.trail.value);
    r.certified_pi = r.trail.certified_pi;
    if (check_uniqueness) r.unit_roots = unit_root_count(fredholm_det(op.assemble(), 4, *op.ctx));
    r.stable = true;
    if (check_stability) {
        auto op2 = fiber_frobenius(fam, pt, 2 * r.D, N);
        auto t2 = vector_iteration(op2, target);
        int agree = agreement(r.trail.value, t2.value);
        r.stable = agree >= r.certified_pi;
        r.certified_pi = std::min(r.certified_pi, agree);
    }
    return r;
}

}  // namespace dwork
