#include "dwork/padic_core.hpp"

#include <stdexcept>

namespace dwork {

UnramifiedElement teichmuller(GaloisField::Elem x, const FieldContext& ctx)
{
    if (x == 0) return UnramifiedElement::zero(ctx);
    UnramifiedElement y = UnramifiedElement::lift(ctx, x);
    for (int it = 0; it < ctx.precision(); ++it) y = y.pow(ctx.q());
    return y;
}

UnramifiedElement frobenius_sigma(const UnramifiedElement& x, int power) { return x.sigma(power); }

std::vector<EisensteinElement> theta_coeffs(const FieldContext& ctx, int i_max)
{
    if (i_max < 0) throw std::invalid_argument("theta_coeffs: negative i_max");
    if (i_max > ctx.theta_cutoff())
        throw std::range_error("theta_coeffs: coefficients beyond the cutoff vanish at this precision");
    const auto& th = ctx.theta();
    return std::vector<EisensteinElement>(th.begin(), th.begin() + i_max + 1);
}

EisensteinElement zeta_p_embed(const CyclotomicInt& c, const FieldContext& ctx)
{
    const EisensteinElement& z = ctx.zeta();
    if (z == EisensteinElement::one(ctx)) throw std::range_error("zeta_p_embed: precision too small");
    EisensteinElement r = EisensteinElement::zero(ctx);
    mpz_class m = static_cast<long>(ctx.modulus());
    for (int j = static_cast<int>(c.coords().size()) - 1; j >= 0; --j) {
        mpz_class v;
        mpz_fdiv_r(v.get_mpz_t(), c.coords()[j].get_mpz_t(), m.get_mpz_t());
        r = r * z + EisensteinElement::from_int(ctx, v.get_si());
    }
    return r;
}

EisensteinElement unit_pow_kappa(const EisensteinElement& u, const KappaExponent& kappa)
{
    const FieldContext& ctx = *u.context();
    if (!u.is_one_unit()) throw std::domain_error("unit_pow_kappa: not a 1-unit");
    const mpz_class& k = kappa.value();
    if (kappa.is_exact() && k >= 0 && k <= 64) return u.pow(k.get_ui());
    EisensteinElement w = u - EisensteinElement::one(ctx);
    int prec = u.prec_pi();
    int ew = w.ord_pi();
    if (!kappa.is_exact()) prec = std::min(prec, ew + ctx.ramification() * kappa.known_digits());
    EisensteinElement result = EisensteinElement::one(ctx);
    if (ew >= prec) return result.with_prec(prec);
    mpz_class m = static_cast<long>(ctx.modulus());
    EisensteinElement wl = EisensteinElement::one(ctx);
    for (unsigned long l = 1; static_cast<long>(l) * ew < prec; ++l) {
        wl *= w;
        mpz_class c;
        mpz_bin_ui(c.get_mpz_t(), k.get_mpz_t(), l);
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c == 0) continue;
        result += wl * EisensteinElement::from_int(ctx, c.get_si());
    }
    return result.with_prec(prec);
}

std::vector<std::vector<int>> pi_digits(const EisensteinElement& x)
{
    const FieldContext& ctx = *x.context();
    const int a = ctx.degree(), p = ctx.p();
    std::vector<std::vector<int>> out;
    EisensteinElement cur = x;
    const int n = x.prec_pi();
    for (int k = 0; k < n; ++k) {
        std::vector<int> d(a);
        Coords lift((p - 1) * a, 0);
        for (int i = 0; i < a; ++i) {
            d[i] = static_cast<int>(cur.coeff(0, i) % p);
            lift[i] = d[i];
        }
        out.push_back(d);
        if (k + 1 == n) break;
        cur = (cur - EisensteinElement(&ctx, lift, ctx.pi_precision())).divide_by_pi(1);
    }
    return out;
}

EisensteinElement from_pi_digits(const FieldContext& ctx, const std::vector<std::vector<int>>& digits)
{
    const int a = ctx.degree(), p = ctx.p();
    EisensteinElement r = EisensteinElement::zero(ctx);
    EisensteinElement pi = EisensteinElement::pi_power(ctx, 1);
    for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
        Coords lift((p - 1) * a, 0);
        for (int i = 0; i < a && i < static_cast<int>(digits[k].size()); ++i) lift[i] = digits[k][i];
        r = r * pi + EisensteinElement(&ctx, lift, ctx.pi_precision());
    }
    return r.with_prec(static_cast<int>(digits.size()));
}

EisensteinElement from_rational(const FieldContext& ctx, const mpq_class& v)
{
    mpz_class m = static_cast<long>(ctx.modulus());
    mpz_class num, den = v.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ctx.p())))
        throw std::domain_error("from_rational: denominator divisible by p");
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    num = v.get_num() * den;
    mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
    return EisensteinElement::from_int(ctx, num.get_si());
}

SubringEmbedding::SubringEmbedding(const FieldContext& small, const FieldContext& big) : small_(&small), big_(&big)
{
    if (small.p() != big.p() || big.degree() % small.degree() != 0)
        throw std::invalid_argument("SubringEmbedding: not a subring");
    const int a = small.degree(), A = big.degree();
    const auto& hs = small.residue_field().modulus();
    GaloisField::Elem root = big.residue_field().smallest_root(hs);
    UnramifiedElement rho = UnramifiedElement::lift(big, root);
    auto eval = [&](const UnramifiedElement& x, bool deriv) {
        UnramifiedElement r = UnramifiedElement::zero(big);
        for (int k = static_cast<int>(hs.size()) - 1; k >= (deriv ? 1 : 0); --k)
            r = r * x + UnramifiedElement::from_int(big, deriv ? hs[k] * k : hs[k]);
        return r;
    };
    for (int it = 0; it < 2 * big.precision() + 4; ++it) {
        UnramifiedElement hv = eval(rho, false);
        if (hv.valuation() >= big.precision()) break;
        rho = rho - hv * eval(rho, true).inverse();
    }
    UnramifiedElement pw = UnramifiedElement::from_int(big, 1);
    for (int i = 0; i < a; ++i) {
        powers_.emplace_back(pw.coords().begin(), pw.coords().end());
        pw = pw * rho;
    }
    // Choose a rows of the A x a matrix [rho^i] forming a unit minor mod p.
    const int p = big.p();
    const Int M = big.modulus();
    std::vector<std::vector<Int>> red(A, std::vector<Int>(a));
    for (int r = 0; r < A; ++r)
        for (int c = 0; c < a; ++c) red[r][c] = powers_[c][r] % p;
    std::vector<int> used(A, 0);
    std::vector<std::vector<Int>> basis;
    for (int r = 0; r < A && static_cast<int>(pivots_.size()) < a; ++r) {
        std::vector<Int> v = red[r];
        for (size_t b = 0; b < basis.size(); ++b) {
            int lead = 0;
            while (basis[b][lead] == 0) ++lead;
            if (v[lead]) {
                Int f = v[lead] * inv_mod(basis[b][lead], p) % p;
                for (int c = 0; c < a; ++c) v[c] = ((v[c] - f * basis[b][c]) % p + p) % p;
            }
        }
        bool nz = false;
        for (Int x : v) nz = nz || x;
        if (nz) {
            basis.push_back(v);
            pivots_.push_back(r);
        }
    }
    if (static_cast<int>(pivots_.size()) != a) throw std::runtime_error("SubringEmbedding: degenerate basis");
    // Invert the pivot minor mod p^N by Gauss-Jordan with unit pivots.
    std::vector<std::vector<Int>> m(a, std::vector<Int>(2 * a, 0));
    for (int r = 0; r < a; ++r) {
        for (int c = 0; c < a; ++c) m[r][c] = powers_[c][pivots_[r]];
        m[r][a + r] = 1;
    }
    for (int c = 0; c < a; ++c) {
        int piv = c;
        while (piv < a && m[piv][c] % p == 0) ++piv;
        if (piv == a) throw std::runtime_error("SubringEmbedding: singular minor");
        std::swap(m[piv], m[c]);
        Int inv = inv_mod(m[c][c], M);
        for (auto& x : m[c]) x = mul_mod(x, inv, M);
        for (int r = 0; r < a; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Int f = m[r][c];
            for (int k = 0; k < 2 * a; ++k) m[r][k] = mod_reduce(m[r][k] - static_cast<Wide>(f) * m[c][k], M);
        }
    }
    solve_.assign(a, std::vector<Int>(a));
    for (int r = 0; r < a; ++r)
        for (int c = 0; c < a; ++c) solve_[r][c] = m[r][a + c];
}

UnramifiedElement SubringEmbedding::map(const UnramifiedElement& x) const
{
    const int a = small_->degree(), A = big_->degree();
    Coords out(A, 0);
    for (int r = 0; r < A; ++r) {
        Wide s = 0;
        for (int c = 0; c < a; ++c) s += static_cast<Wide>(powers_[c][r]) * x.coords()[c];
        out[r] = mod_reduce(s, big_->modulus());
    }
    return UnramifiedElement(big_, out, x.prec());
}

EisensteinElement SubringEmbedding::map(const EisensteinElement& x) const
{
    const int e = small_->ramification(), A = big_->degree();
    Coords out(e * A, 0);
    for (int j = 0; j < e; ++j) {
        UnramifiedElement comp = map(x.component(j).context() ? x.component(j) : UnramifiedElement::zero(*small_));
        for (int r = 0; r < A; ++r) out[j * A + r] = comp.coords()[r];
    }
    return EisensteinElement(big_, out, x.prec_pi());
}

EisensteinElement SubringEmbedding::project(const EisensteinElement& x) const
{
    const int e = small_->ramification(), a = small_->degree();
    const Int M = small_->modulus();
    Coords out(e * a, 0);
    for (int j = 0; j < e; ++j)
        for (int r = 0; r < a; ++r) {
            Wide s = 0;
            for (int c = 0; c < a; ++c) s += static_cast<Wide>(solve_[r][c]) * x.coeff(j, pivots_[c]);
            out[j * a + r] = mod_reduce(s, M);
        }
    EisensteinElement y(small_, out, x.prec_pi());
    if (map(y) != x) throw std::domain_error("SubringEmbedding::project: element not in subring");
    return y;
}

}  // namespace dwork
