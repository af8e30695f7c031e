#include "dwork/unit_root_pipeline.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "dwork/cone_series.hpp"
#include "dwork/dwork_fiber.hpp"
#include "dwork/padic_core.hpp"

namespace dwork {

// --------------------------------------------------------------------- QPi

QPi::QPi(int p, const mpq_class& c) : p_(p), c_(p - 1, mpq_class(0)) { c_[0] = c; }

QPi QPi::pi_power(int p, int k)
{
    QPi r(p, 0);
    mpz_class m;
    mpz_pow_ui(m.get_mpz_t(), mpz_class(-p).get_mpz_t(), static_cast<unsigned long>(k / (p - 1)));
    r.c_[k % (p - 1)] = m;
    return r;
}

bool QPi::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

QPi QPi::operator+(const QPi& o) const
{
    QPi r = *this;
    r += o;
    return r;
}

QPi QPi::operator-(const QPi& o) const
{
    QPi r = *this;
    r -= o;
    return r;
}

QPi& QPi::operator+=(const QPi& o)
{
    if (c_.empty()) *this = QPi(o.p_, 0);
    for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

QPi& QPi::operator-=(const QPi& o)
{
    if (c_.empty()) *this = QPi(o.p_, 0);
    for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

QPi QPi::operator*(const QPi& o) const
{
    const int e = p_ - 1;
    QPi r(p_, 0);
    for (int i = 0; i < e; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < e; ++j) {
            if (o.c_[j] == 0) continue;
            mpq_class t = c_[i] * o.c_[j];
            if (i + j >= e)
                r.c_[i + j - e] -= t * p_;
            else
                r.c_[i + j] += t;
        }
    }
    return r;
}

bool QPi::operator==(const QPi& o) const { return (*this - o).is_zero(); }

EisensteinElement QPi::embed(const FieldContext& ctx) const
{
    auto r = EisensteinElement::zero(ctx);
    const int p = ctx.p();
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        mpz_class num = c_[j].get_num(), den = c_[j].get_den();
        int v = 0;
        while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
            num /= p;
            ++v;
        }
        while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
            den /= p;
            --v;
        }
        int k = (p - 1) * v + static_cast<int>(j);
        if (k < 0) throw IntegralityViolation("integrality violation: coefficient has negative valuation");
        auto unit = from_rational(ctx, mpq_class(num, den));
        if (v % 2 != 0) unit = -unit;
        r += unit * EisensteinElement::pi_power(ctx, k);
    }
    return r;
}

// ----------------------------------------------------------------- YSeries

namespace {

int total_degree(const Exponent& e)
{
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool graded_less(const Exponent& a, const Exponent& b)
{
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

YSeries j_series(const LaurentFamily& fam, const Exponent& target, int d_y)
{
    const int B = static_cast<int>(fam.terms().size());
    const int p = fam.p();
    const int dim = fam.s() + fam.n();
    YSeries out;
    out.vars = B;
    out.degree_bound = d_y;
    std::vector<Exponent> w;
    for (int b = 0; b < B; ++b) w.push_back(fam.weight_vector(b));
    // Coordinate ranges reachable by the terms b..B-1 per unit of degree.
    std::vector<Exponent> lo(B + 1, Exponent(dim, 0)), hi(B + 1, Exponent(dim, 0));
    for (int b = B - 1; b >= 0; --b)
        for (int k = 0; k < dim; ++k) {
            lo[b][k] = std::min(lo[b + 1][k], w[b][k]);
            hi[b][k] = std::max(hi[b + 1][k], w[b][k]);
        }
    Exponent i(B, 0), acc(dim, 0);
    auto emit = [&]() {
        mpz_class fac = 1, f;
        for (int x : i) {
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(x));
            fac *= f;
        }
        out.terms[i] = QPi::pi_power(p, total_degree(i)) * QPi(p, mpq_class(1, fac));
    };
    std::function<void(int, int)> rec = [&](int b, int left) {
        for (int k = 0; k < dim; ++k) {
            long long need = target[k] - acc[k];
            if (need < static_cast<long long>(left) * lo[b][k] || need > static_cast<long long>(left) * hi[b][k]) return;
        }
        if (b == B - 1) {
            int k0 = 0;
            while (k0 < dim && w[b][k0] == 0) ++k0;
            if (k0 == dim) {
                if (acc != target) return;
                for (int x = 0; x <= left; ++x) {
                    i[b] = x;
                    emit();
                }
                i[b] = 0;
                return;
            }
            int x = 0;
            {
                int need = target[k0] - acc[k0];
                if (need % w[b][k0] != 0) return;
                x = need / w[b][k0];
                if (x < 0 || x > left) return;
            }
            for (int k = 0; k < dim; ++k)
                if (acc[k] + x * w[b][k] != target[k]) return;
            i[b] = x;
            emit();
            i[b] = 0;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            i[b] = x;
            for (int k = 0; k < dim; ++k) acc[k] += x * w[b][k];
            rec(b + 1, left - x);
            for (int k = 0; k < dim; ++k) acc[k] -= x * w[b][k];
        }
        i[b] = 0;
    };
    if (B == 0) return out;
    rec(0, d_y);
    return out;
}

YSeries g00_series(const LaurentFamily& fam, int d_y) { return j_series(fam, Exponent(fam.s() + fam.n(), 0), d_y); }

YSeries frobenius_substitute(const YSeries& f, int p)
{
    YSeries r;
    r.vars = f.vars;
    r.degree_bound = f.degree_bound;
    for (const auto& [e, c] : f.terms) {
        Exponent g = e;
        for (auto& x : g) x *= p;
        if (total_degree(g) <= f.degree_bound) r.terms[g] = c;
    }
    return r;
}

YSeries series_quotient(const YSeries& num, const YSeries& den)
{
    const Exponent zero(den.vars, 0);
    auto it0 = den.terms.find(zero);
    if (it0 == den.terms.end() || !(it0->second == QPi(it0->second.p(), 1)))
        throw std::domain_error("series_quotient: denominator must have constant term 1");
    const int bound = std::min(num.degree_bound, den.degree_bound);
    std::vector<Exponent> dsupp;
    for (const auto& [e, c] : den.terms)
        if (e != zero) dsupp.push_back(e);
    std::set<Exponent, decltype(&graded_less)> cand(&graded_less);
    std::vector<Exponent> frontier;
    for (const auto& [e, c] : num.terms)
        if (total_degree(e) <= bound && cand.insert(e).second) frontier.push_back(e);
    while (!frontier.empty()) {
        std::vector<Exponent> next;
        for (const auto& e : frontier)
            for (const auto& d : dsupp) {
                Exponent g = e;
                for (size_t k = 0; k < g.size(); ++k) g[k] += d[k];
                if (total_degree(g) <= bound && cand.insert(g).second) next.push_back(g);
            }
        frontier.swap(next);
    }
    YSeries r;
    r.vars = num.vars;
    r.degree_bound = bound;
    for (const auto& m : cand) {
        auto itn = num.terms.find(m);
        QPi v = itn == num.terms.end() ? QPi(it0->second.p(), 0) : itn->second;
        for (const auto& d : dsupp) {
            Exponent rest = m;
            bool ok = true;
            for (size_t k = 0; k < rest.size() && ok; ++k) {
                rest[k] -= d[k];
                ok = rest[k] >= 0;
            }
            if (!ok) continue;
            auto itr = r.terms.find(rest);
            if (itr == r.terms.end()) continue;
            v -= den.terms.at(d) * itr->second;
        }
        if (!v.is_zero()) r.terms[m] = v;
    }
    return r;
}

YSeries g_ratio(const YSeries& g00)
{
    int p = g00.terms.empty() ? 0 : g00.terms.begin()->second.p();
    return series_quotient(g00, frobenius_substitute(g00, p));
}

EisensteinElement evaluate(const YSeries& f, const std::vector<EisensteinElement>& y, const FieldContext& ctx)
{
    if (static_cast<int>(y.size()) != f.vars) throw std::invalid_argument("evaluate: point dimension");
    std::vector<std::vector<EisensteinElement>> pw(f.vars);
    auto power = [&](int b, int k) -> const EisensteinElement& {
        auto& v = pw[b];
        if (v.empty()) v.push_back(EisensteinElement::one(ctx));
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * y[b]);
        return v[k];
    };
    auto r = EisensteinElement::zero(ctx);
    for (const auto& [e, c] : f.terms) {
        auto term = c.embed(ctx);
        for (int b = 0; b < f.vars; ++b)
            if (e[b]) term *= power(b, e[b]);
        r += term;
    }
    return r;
}

std::vector<EisensteinElement> teichmuller_point(const LaurentFamily& fam, const FieldContext& ctx)
{
    std::vector<EisensteinElement> y;
    for (const auto& t : fam.terms()) y.push_back(EisensteinElement::from_unramified(teichmuller(t.coeff, ctx)));
    return y;
}

bool g00_is_trivial(const LaurentFamily& fam, int d_y) { return g00_series(fam, d_y).terms.size() == 1; }

namespace {

// Three consecutive values agreeing to the target.
void certify_trail(UnitRootResult& r, int target)
{
    const size_t n = r.trail.size();
    r.stable = false;
    r.certified_pi = 0;
    if (n >= 3) {
        int a1 = agreement(r.trail[n - 1], r.trail[n - 2]), a2 = agreement(r.trail[n - 2], r.trail[n - 3]);
        r.certified_pi = std::min({a1, a2, target});
        r.stable = a1 >= target && a2 >= target;
    }
}

}  // namespace

UnitRootResult formula_eval(const LaurentFamily& fam, const KappaExponent& kappa, int N, int d_y, int max_steps)
{
    UnitRootResult r;
    r.route = "formula";
    auto ctx_a = make_field_context(fam.p(), fam.a(), N);
    auto ctx1 = make_field_context(fam.p(), 1, N);
    SubringEmbedding emb(*ctx1, *ctx_a);
    auto y = teichmuller_point(fam, *ctx_a);
    int target = ctx1->pi_precision();
    for (int step = 1; step <= max_steps; ++step) {
        int D = step * d_y;
        auto G = g_ratio(g00_series(fam, D));
        auto F = EisensteinElement::one(*ctx_a);
        for (int i = 0; i < fam.a(); ++i) {
            std::vector<EisensteinElement> yi;
            for (const auto& v : y) yi.push_back(v.sigma(i));
            F *= evaluate(G, yi, *ctx_a);
        }
        auto val = emb.project(unit_pow_kappa(F, kappa));
        target = std::min(target, val.prec_pi());
        r.trail_degrees.push_back(D);
        r.trail.push_back(val);
        certify_trail(r, target);
        if (r.stable) break;
    }
    r.value = r.trail.back();
    return r;
}

// ----------------------------------------------------------------- fibers

std::vector<FiberRecord> fiber_unit_roots(const LaurentFamily& fam, int d_max, int N, int exact_degree)
{
    auto ctx1 = make_field_context(fam.p(), 1, N);
    std::vector<FiberRecord> out;
    for (const auto& pt : enumerate_closed_points(fam, d_max)) {
        FiberRecord rec;
        rec.point = pt;
        auto padic = fiber_unit_root_padic(fam, pt, N, -1, true, false);
        if (padic.unit_roots != 1)
            throw std::runtime_error("fiber " + pt.orbit_id + ": expected one unit root, found " +
                                     std::to_string(padic.unit_roots));
        rec.pi0 = padic.value;
        rec.certified_pi = padic.certified_pi;
        rec.route = "padic";
        if (pt.degree <= exact_degree) {
            int M = 4;
            for (int attempt = 0; attempt < 4; ++attempt) {
                if (!exact_sum_affordable(fam, pt, M)) break;
                try {
                    auto L = rational_reconstruct(l_series(fam, pt, M));
                    auto ex = fiber_unit_root_exact(L, fam.n(), *ctx1);
                    rec.cross_check_pi = agreement(ex.value, padic.value);
                    rec.pi0 = ex.value;
                    rec.certified_pi = ctx1->pi_precision();
                    rec.route = "exact";
                    break;
                } catch (const UnstableRecurrence& e) {
                    M = std::max(M + 2, e.required_terms);
                }
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

LUnitSeries assemble_l_unit(const std::vector<FiberRecord>& fibers, const KappaExponent& kappa, int d_max,
                            const FieldContext& ctx1)
{
    LUnitSeries l;
    l.d_max = d_max;
    l.product.assign(d_max + 1, EisensteinElement::zero(ctx1));
    l.product[0] = EisensteinElement::one(ctx1);
    l.moments.assign(d_max, EisensteinElement::zero(ctx1));
    for (const auto& f : fibers) {
        const int d = f.point.degree;
        if (d > d_max) continue;
        auto c = unit_pow_kappa(f.pi0.with_prec(f.certified_pi), kappa);
        TSeries fac(d_max + 1, EisensteinElement::zero(ctx1));
        fac[0] = EisensteinElement::one(ctx1);
        fac[d] = -c;
        l.product = series_mul(l.product, series_inv(fac, d_max), d_max);
        auto cp = c;
        for (int m = d; m <= d_max; m += d) {
            l.moments[m - 1] += cp * EisensteinElement::from_int(ctx1, d);
            cp *= c;
        }
    }
    l.moments_route.assign(d_max + 1, EisensteinElement::zero(ctx1));
    l.moments_route[0] = EisensteinElement::one(ctx1);
    for (int m = 1; m <= d_max; ++m) {
        auto acc = EisensteinElement::zero(ctx1);
        for (int j = 1; j <= m; ++j) acc += l.moments[j - 1] * l.moments_route[m - j];
        l.moments_route[m] = acc.divide_by_int(m);
    }
    l.route_agreement = ctx1.pi_precision();
    for (int m = 0; m <= d_max; ++m)
        l.route_agreement = std::min(l.route_agreement, agreement(l.product[m], l.moments_route[m]));
    return l;
}

UnitRootResult extract_unit_root(const LUnitSeries& l, int s, int target_pi)
{
    UnitRootResult r;
    r.route = "point-count";
    if (l.d_max < 2) throw std::invalid_argument("extract_unit_root: need d_max >= 2");
    auto trail = stabilize_ratios([&](int k) { return l.moments[k - 1]; }, target_pi, l.d_max - 1);
    r.value = trail.value;
    r.trail = trail.ratios;
    for (size_t i = 0; i < trail.ratios.size(); ++i) r.trail_degrees.push_back(static_cast<int>(i) + 2);
    r.stable = trail.stable;
    r.certified_pi = trail.certified_pi;
    const FieldContext& ctx = *r.value.context();
    auto e = (l.moments[0] * r.value.inverse()).residue();
    int raw = e == 1 ? 1 : e == static_cast<GaloisField::Elem>(ctx.p() - 1) ? -1 : 0;
    r.sign = (s % 2 == 1) ? raw : -raw;
    return r;
}

// -------------------------------------------------------------------- eta

EtaSeries eta_series(const LaurentFamily& fam, int d_lambda, int d_x, int N, int d_y, int max_steps, int target_pi)
{
    EtaSeries out;
    auto ctx = make_field_context(fam.p(), fam.a(), N);
    auto y = teichmuller_point(fam, *ctx);
    std::vector<Exponent> targets;
    for (const auto& s : fam.lambda_cone().lineality_points(d_lambda))
        for (const auto& v : fam.x_cone().lineality_points(d_x)) {
            Exponent e = s;
            e.insert(e.end(), v.begin(), v.end());
            targets.push_back(e);
        }
    std::vector<std::map<Exponent, EisensteinElement>> trail;
    const int target = target_pi < 0 ? ctx->pi_precision() : std::min(target_pi, ctx->pi_precision());
    for (int step = 1; step <= max_steps; ++step) {
        int D = step * d_y;
        auto j00 = g00_series(fam, D);
        std::map<Exponent, EisensteinElement> cur;
        for (const auto& t : targets) {
            auto val = evaluate(series_quotient(j_series(fam, t, D), j00), y, *ctx);
            if (!val.is_zero()) cur[t] = val;
        }
        trail.push_back(std::move(cur));
        out.d_y = D;
        if (trail.size() >= 3) {
            int worst = target;
            for (size_t k = trail.size() - 2; k < trail.size(); ++k)
                for (const auto& t : targets) {
                    auto get = [&](size_t idx) {
                        auto it = trail[idx].find(t);
                        return it == trail[idx].end() ? EisensteinElement::zero(*ctx) : it->second;
                    };
                    worst = std::min(worst, agreement(get(k), get(k - 1)));
                }
            out.certified_pi = worst;
            if (worst >= target) {
                out.stable = true;
                break;
            }
        }
    }
    out.coeffs = trail.back();
    return out;
}

EigenvectorReport eigenvector_check(const LaurentFamily& fam, const KappaExponent& kappa, const SymTrunc& trunc0, int N,
                                    int target_pi, int d_y)
{
    EigenvectorReport rep;
    rep.target_pi = target_pi;
    auto trunc = resolve_trunc(fam, trunc0);
    auto op = dual_beta_operator(fam, SymExponent::p_adic(kappa), trunc, N);
    const FieldContext& ctx = *op.ctx;
    auto ctx1 = make_field_context(fam.p(), 1, N);
    auto form = formula_eval(fam, kappa, N, d_y);
    rep.eigenvalue = SubringEmbedding(*ctx1, ctx).map(form.value);
    auto eta = eta_series(fam, trunc.lambda_cap, trunc.d_x, N, d_y, 6, target_pi);
    const int s = fam.s(), n = fam.n();
    LinearFactor w;
    for (const auto& [e, c] : eta.coeffs) {
        Exponent sv(e.begin(), e.begin() + s), v(e.begin() + s, e.begin() + s + n);
        if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) continue;
        Exponent r = Cone::negate(sv), u = Cone::negate(v);
        int var = op.basis->var_index(u);
        if (var == -2 || op.grid->index(r) < 0) continue;
        w.push_back({r, var, c});
    }
    SymEngine eng(*op.basis, *op.grid, ctx);
    auto P = eng.binomial_powers(w, {kappa.value()});
    const int M = op.basis->size();
    Vector x = zero_vector(op.dim, ctx);
    for (int pos : P[0].support) {
        int l = pos / M, m = pos % M;
        if (l < op.lambda_count) x(op.index(l, m)) = P[0].coeff[pos];
    }
    auto y = op.apply(x);
    rep.min_agreement = ctx.pi_precision();
    for (int l = 0; l < op.lambda_count; ++l) {
        if (weight(op.grid->points()[l]) > trunc.d_lambda / 2) continue;
        for (int m = 0; m < M; ++m) {
            if (op.basis->weight(m) > trunc.d_x / 2) continue;
            int i = op.index(l, m);
            ++rep.components;
            if (!x(i).is_zero()) ++rep.nonzero_components;
            int a = agreement(y(i), rep.eigenvalue * x(i));
            if (a < rep.min_agreement) {
                rep.min_agreement = a;
                rep.witness = i;
            }
        }
    }
    rep.eta_certified_pi = eta.certified_pi;
    rep.formula_certified_pi = form.certified_pi;
    rep.ok = rep.min_agreement >= target_pi && form.certified_pi >= target_pi && eta.stable;
    return rep;
}

ThreeWayReport three_way_compare(const LaurentFamily& fam, const KappaExponent& kappa, const PipelineParams& params)
{
    ThreeWayReport rep;
    auto ctx1 = make_field_context(fam.p(), 1, params.N);
    const int full = ctx1->pi_precision();
    rep.target_pi = params.target_pi < 0 ? std::min(full, 2 * (fam.p() - 1)) : params.target_pi;
    auto fibers = fiber_unit_roots(fam, params.d_max, params.N, params.exact_degree);
    auto l = assemble_l_unit(fibers, kappa, params.d_max, *ctx1);
    rep.point_count = extract_unit_root(l, fam.s(), full);

    auto op = beta_operator(fam, SymExponent::p_adic(kappa), params.trunc, params.N);
    auto br = beta_unit_root(op, true);
    rep.unit_roots = br.unit_roots;
    rep.operator_route.route = "operator";
    rep.operator_route.value = br.value;
    rep.operator_route.trail = br.trail.ratios;
    rep.operator_route.stable = br.trail.stable;
    rep.operator_route.certified_pi = br.certified_pi;
    if (params.truncation_check) {
        SymTrunc big = params.trunc;
        big.d_x *= 2;
        big.d_lambda *= 2;
        big.lambda_cap = -1;
        auto br2 = beta_unit_root(beta_operator(fam, SymExponent::p_adic(kappa), big, params.N), false);
        rep.truncation_agreement = agreement(br.value, br2.value);
        rep.operator_route.certified_pi = std::min(rep.operator_route.certified_pi, rep.truncation_agreement);
        rep.operator_route.trail_degrees = {params.trunc.d_x, big.d_x};
    }

    rep.formula = formula_eval(fam, kappa, params.N, params.d_y);

    rep.min_certified_pi = std::min({rep.point_count.certified_pi, rep.operator_route.certified_pi, rep.formula.certified_pi});
    rep.agreement_ab = agreement(rep.point_count.value, rep.operator_route.value);
    rep.agreement_ac = agreement(rep.point_count.value, rep.formula.value);
    rep.agreement_bc = agreement(rep.operator_route.value, rep.formula.value);
    const int need = rep.min_certified_pi;
    rep.ok = need >= rep.target_pi && rep.unit_roots == 1 && rep.agreement_ab >= need && rep.agreement_ac >= need &&
             rep.agreement_bc >= need;
    return rep;
}

}  // namespace dwork
