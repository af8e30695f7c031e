#include "dwork/cone_series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dwork/padic_core.hpp"
#include "dwork/serialize.hpp"

namespace dwork {

namespace {

int block_weight(const Exponent& e, int from, int len)
{
    int s = 0;
    for (int i = from; i < from + len; ++i) s += std::abs(e[i]);
    return s;
}

int bound_for(const Window& w, int coord)
{
    if (coord < w.s) return w.d_lambda;
    if (coord < w.s + w.n) return w.d_x;
    return w.d_y;
}

// Sequential product of sparse factors.  Partial products whose exponent
// can no longer reach the window box are discarded.
ConeSeries product_of_factors(const std::vector<ConeSeries>& factors, const Window& w, const FieldContext& ctx)
{
    const int dim = w.s + w.n + w.y;
    const int prec = ctx.pi_precision();
    const size_t F = factors.size();
    std::vector<Exponent> lo(F + 1, Exponent(dim, 0)), hi(F + 1, Exponent(dim, 0));
    for (size_t f = F; f-- > 0;) {
        Exponent flo(dim, 0), fhi(dim, 0);
        for (const auto& [e, c] : factors[f].terms())
            for (int k = 0; k < dim; ++k) {
                flo[k] = std::min(flo[k], e[k]);
                fhi[k] = std::max(fhi[k], e[k]);
            }
        for (int k = 0; k < dim; ++k) {
            lo[f][k] = lo[f + 1][k] + flo[k];
            hi[f][k] = hi[f + 1][k] + fhi[k];
        }
    }
    auto reachable = [&](const Exponent& e, size_t next) {
        for (int k = 0; k < dim; ++k) {
            int b = bound_for(w, k);
            if (b < 0) continue;
            if (e[k] + hi[next][k] < -b || e[k] + lo[next][k] > b) return false;
        }
        return true;
    };
    std::map<Exponent, EisensteinElement> cur;
    cur.emplace(Exponent(dim, 0), EisensteinElement::one(ctx));
    int tail = prec;
    for (size_t f = 0; f < F; ++f) {
        std::map<Exponent, EisensteinElement> nxt;
        for (const auto& [e1, c1] : cur) {
            int o1 = c1.ord_pi();
            for (const auto& [e2, c2] : factors[f].terms()) {
                if (o1 + c2.ord_pi() >= prec) continue;
                Exponent e(dim);
                for (int k = 0; k < dim; ++k) e[k] = e1[k] + e2[k];
                if (!reachable(e, f + 1)) continue;
                auto [it, fresh] = nxt.try_emplace(e, EisensteinElement::zero(ctx));
                it->second.add_product(c1, c2);
            }
        }
        cur.swap(nxt);
        tail = std::min(tail, factors[f].tail_bound());
    }
    ConeSeries out(w, tail);
    for (auto& [e, c] : cur)
        if (w.contains(e) && !c.is_zero()) out.set(e, c);
    return out;
}

}  // namespace

bool Window::contains(const Exponent& e) const
{
    if (d_lambda >= 0 && block_weight(e, 0, s) > d_lambda) return false;
    if (d_x >= 0 && block_weight(e, s, n) > d_x) return false;
    if (d_y >= 0 && block_weight(e, s + n, y) > d_y) return false;
    return true;
}

bool Window::box_contains(const Exponent& lo, const Exponent& hi) const
{
    for (int k = 0; k < s + n + y; ++k) {
        int b = bound_for(*this, k);
        if (b >= 0 && (hi[k] < -b || lo[k] > b)) return false;
    }
    return true;
}

std::vector<LiftedTerm> lift_family(const LaurentFamily& fam, const FieldContext& ctx)
{
    if (ctx.degree() != fam.a() || ctx.p() != fam.p()) throw std::invalid_argument("lift_family: context mismatch");
    std::vector<LiftedTerm> out;
    for (size_t b = 0; b < fam.terms().size(); ++b)
        out.push_back({fam.weight_vector(b), EisensteinElement::from_unramified(teichmuller(fam.terms()[b].coeff, ctx))});
    return out;
}

std::vector<LiftedTerm> lift_fiber(const LaurentFamily& fam, const ClosedPoint& pt, const FieldContext& ctx)
{
    if (ctx.degree() != fam.a() * pt.degree || ctx.p() != fam.p())
        throw std::invalid_argument("lift_fiber: context must have degree a*d");
    auto coeffs = fiber_coefficients(fam, pt);
    std::vector<LiftedTerm> out;
    for (size_t b = 0; b < coeffs.size(); ++b)
        out.push_back({fam.terms()[b].u, EisensteinElement::from_unramified(teichmuller(coeffs[b], ctx))});
    return out;
}

EisensteinElement pi_power_over_factorial(const FieldContext& ctx, int i)
{
    // pi^i / i! = (-1)^v pi^{i - (p-1) v} / (i! / p^v), v = v_p(i!)
    const int p = ctx.p();
    int v = 0;
    Int unit = 1;
    for (int k = 2; k <= i; ++k) {
        Int m = k;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        unit = mul_mod(unit, m, ctx.modulus());
    }
    Int scal = inv_mod(unit, ctx.modulus());
    if (v % 2) scal = mod_reduce(-scal, ctx.modulus());
    return EisensteinElement::pi_power(ctx, i - (p - 1) * v) * EisensteinElement::from_int(ctx, scal);
}

ConeSeries multiply(const ConeSeries& f, const ConeSeries& g, const Window& out)
{
    ConeSeries r(out, INT_MAX);
    int fmin = INT_MAX, gmin = INT_MAX;
    for (const auto& [e, c] : f.terms()) fmin = std::min(fmin, c.ord_pi());
    for (const auto& [e, c] : g.terms()) gmin = std::min(gmin, c.ord_pi());
    for (const auto& [e1, c1] : f.terms()) {
        for (const auto& [e2, c2] : g.terms()) {
            Exponent e(e1.size());
            for (size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
            if (!out.contains(e)) continue;
            EisensteinElement t = c1 * c2;
            if (t.is_zero()) continue;
            r.add(e, t);
        }
    }
    auto sat = [](int a, int b) { return (a == INT_MAX || b == INT_MAX) ? INT_MAX : a + b; };
    int tail = std::min(sat(f.tail_bound(), gmin == INT_MAX ? 0 : gmin), sat(g.tail_bound(), fmin == INT_MAX ? 0 : fmin));
    r.set_tail_bound(tail);
    r.erase_if([](const Exponent&, const EisensteinElement& c) { return c.is_zero(); });
    return r;
}

ConeSeries exp_pi_poly(const std::vector<LiftedTerm>& terms, const Window& w, int i_max, bool with_y,
                       const FieldContext& ctx)
{
    if (i_max < 0) throw std::invalid_argument("exp_pi_poly: negative index bound");
    Window win = w;
    if (with_y) win.y = static_cast<int>(terms.size());
    const int dim = win.s + win.n + win.y;
    std::vector<ConeSeries> factors;
    for (size_t b = 0; b < terms.size(); ++b) {
        const auto& t = terms[b];
        if (static_cast<int>(t.exponent.size()) != win.s + win.n) throw std::invalid_argument("exp_pi_poly: exponent length");
        // Omitted indices i > i_max have ord_pi(pi^i / i!) >= 1.
        ConeSeries fac(win, t.coeff.ord_pi() + 1);
        EisensteinElement cp = EisensteinElement::one(ctx);
        for (int i = 0; i <= i_max; ++i) {
            Exponent e(dim, 0);
            for (int k = 0; k < win.s + win.n; ++k) e[k] = i * t.exponent[k];
            if (with_y) e[win.s + win.n + b] = i;
            EisensteinElement c = pi_power_over_factorial(ctx, i) * cp;
            if (!c.is_zero()) fac.set(e, c);
            cp *= t.coeff;
        }
        factors.push_back(std::move(fac));
    }
    return product_of_factors(factors, win, ctx);
}

ConeSeries splitting_H(const std::vector<LiftedTerm>& terms, int m, const Window& w, const FieldContext& ctx)
{
    if (m < 1) throw std::invalid_argument("splitting_H: m must be >= 1");
    const auto& theta = ctx.theta();
    const int dim = w.s + w.n;
    std::vector<ConeSeries> factors;
    for (int level = 0; level < m; ++level) {
        long long scale = 1;
        for (int i = 0; i < level; ++i) scale *= ctx.p();
        for (const auto& t : terms) {
            if (static_cast<int>(t.exponent.size()) != dim) throw std::invalid_argument("splitting_H: exponent length");
            EisensteinElement c = t.coeff.sigma(level);
            ConeSeries fac(w, ctx.pi_precision());
            EisensteinElement cp = EisensteinElement::one(ctx);
            for (size_t j = 0; j < theta.size(); ++j) {
                Exponent e(dim);
                for (int k = 0; k < dim; ++k) e[k] = static_cast<int>(scale * static_cast<long long>(j) * t.exponent[k]);
                EisensteinElement v = theta[j] * cp;
                if (!v.is_zero()) fac.add(e, v);
                cp *= c;
            }
            factors.push_back(std::move(fac));
        }
    }
    return product_of_factors(factors, w, ctx);
}

ConeSeries dilation_extract(const ConeSeries& f, Block block, int m, int p)
{
    const Window& w = f.window();
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    int from = block == Block::Lambda ? 0 : w.s;
    int len = block == Block::Lambda ? w.s : w.n;
    Window out = w;
    int& bound = block == Block::Lambda ? out.d_lambda : out.d_x;
    if (bound >= 0) bound = static_cast<int>(bound / pm);
    ConeSeries r(out, f.tail_bound());
    for (const auto& [e, c] : f.terms()) {
        bool ok = true;
        for (int k = from; k < from + len; ++k) ok = ok && e[k] % pm == 0;
        if (!ok) continue;
        Exponent g = e;
        for (int k = from; k < from + len; ++k) g[k] = static_cast<int>(e[k] / pm);
        if (out.contains(g)) r.set(g, c);
    }
    return r;
}

ConeSeries power_substitute(const ConeSeries& f, Block block, int m, int p)
{
    const Window& w = f.window();
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    int from = block == Block::Lambda ? 0 : w.s;
    int len = block == Block::Lambda ? w.s : w.n;
    Window out = w;
    int& bound = block == Block::Lambda ? out.d_lambda : out.d_x;
    if (bound >= 0) bound = static_cast<int>(bound * pm);
    ConeSeries r(out, f.tail_bound());
    for (const auto& [e, c] : f.terms()) {
        Exponent g = e;
        for (int k = from; k < from + len; ++k) g[k] = static_cast<int>(e[k] * pm);
        r.set(g, c);
    }
    return r;
}

ConeSeries project_support(const ConeSeries& f, Projector pr, const Cone& m1, const Cone& m2)
{
    const Window& w = f.window();
    ConeSeries r(w, f.tail_bound());
    for (const auto& [e, c] : f.terms()) {
        Exponent lam(e.begin(), e.begin() + w.s), x(e.begin() + w.s, e.begin() + w.s + w.n);
        bool keep = false;
        switch (pr) {
        case Projector::Pr1: keep = m1.contains(Cone::negate(lam)); break;
        case Projector::Pr2: keep = m2.contains(Cone::negate(x)); break;
        case Projector::Pr0: keep = m1.in_lineality(lam) && m2.in_lineality(x); break;
        case Projector::Pr20: keep = m2.in_lineality(x); break;
        }
        if (keep) r.set(e, c);
    }
    return r;
}

ValuationReport valuation_check(const ConeSeries& f, const ValuationProfile& profile, int p)
{
    using Q = boost::rational<long long>;
    const Window& w = f.window();
    ValuationReport rep;
    for (const auto& [e, c] : f.terms()) {
        if (c.is_zero()) continue;
        Q need = profile.slope_lambda * Q(block_weight(e, 0, w.s)) + profile.slope_x * Q(block_weight(e, w.s, w.n)) +
                 profile.offset;
        int have = c.ord_pi();
        if (Q(have, p - 1) < need) {
            rep.ok = false;
            rep.witness = e;
            rep.actual_pi = have;
            rep.required_p = need;
            return rep;
        }
    }
    return rep;
}

std::string dump(const ConeSeries& f)
{
    std::ostringstream os;
    for (const auto& [e, c] : f.terms()) {
        os << "[";
        for (size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
        os << "]\t" << padic_compact(c) << "\n";
    }
    return os.str();
}

}  // namespace dwork
