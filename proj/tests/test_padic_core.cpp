#include "doctest.h"

#include <random>

#include "dwork/padic_core.hpp"

using namespace dwork;

namespace {

// Independent oracle: pi^i / i! coefficients of exp(pi T) exp(-pi T^p) as exact
// rationals times powers of pi, reduced with pi^{p-1} = -p.
int ord_p_theta_lower(int p, int i)
{
    // ceil((p-1)^2 i / p^2) in pi-units
    int num = (p - 1) * (p - 1) * i;
    return (num + p * p - 1) / (p * p);
}

EisensteinElement random_element(const FieldContext& ctx, std::mt19937_64& rng)
{
    Coords c((ctx.p() - 1) * ctx.degree());
    for (auto& x : c) x = static_cast<Int>(rng() % static_cast<std::uint64_t>(ctx.modulus()));
    return EisensteinElement(&ctx, c, ctx.pi_precision());
}

}  // namespace

TEST_CASE("field context construction")
{
    auto c1 = make_field_context(3, 1, 4);
    CHECK(c1->modulus() == 81);
    auto x = UnramifiedElement::from_int(*c1, 5);
    CHECK(x.sigma() == x);

    auto c2 = make_field_context(3, 2, 3);
    const auto& h = c2->defining_poly();
    REQUIRE(h.size() == 3);
    CHECK(h[0] == 1);
    CHECK(h[1] == 0);
    CHECK(h[2] == 1);
    for (int r = 0; r < 3; ++r) CHECK((r * r + 1) % 3 != 0);

    CHECK_THROWS(make_field_context(4, 1, 2));
}

TEST_CASE("teichmuller lifts")
{
    auto ctx = make_field_context(5, 1, 2);
    auto w = teichmuller(2, *ctx);
    CHECK(w.coords()[0] == 7);
    CHECK(teichmuller(1, *ctx).coords()[0] == 1);
    CHECK(teichmuller(4, *ctx).coords()[0] == 24);

    auto c9 = make_field_context(3, 2, 6);
    const auto& F = c9->residue_field();
    for (GaloisField::Elem x = 1; x < F.order(); ++x) {
        auto wx = teichmuller(x, *c9);
        CHECK(wx.pow(c9->q()) == wx);
        CHECK(wx.residue() == x);
        for (GaloisField::Elem y = 1; y < F.order(); ++y)
            CHECK(teichmuller(F.mul(x, y), *c9) == wx * teichmuller(y, *c9));
    }
}

TEST_CASE("frobenius sigma")
{
    auto ctx = make_field_context(3, 2, 6);
    const auto& F = ctx->residue_field();
    auto g = F.generator();
    CHECK(teichmuller(g, *ctx).sigma() == teichmuller(F.pow(g, 3), *ctx));
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto x = random_element(*ctx, rng).component(0);
        auto y = random_element(*ctx, rng).component(0);
        CHECK((x + y).sigma() == x.sigma() + y.sigma());
        CHECK((x * y).sigma() == x.sigma() * y.sigma());
        CHECK(x.sigma(2) == x);
    }
    auto c27 = make_field_context(3, 3, 5);
    for (GaloisField::Elem x = 1; x < 27; ++x) {
        auto w = teichmuller(x, *c27);
        CHECK(w.sigma() == teichmuller(c27->residue_field().frobenius(x), *c27));
        CHECK(w.sigma(3) == w);
    }
}

TEST_CASE("eisenstein ring")
{
    for (int p : {2, 3, 5}) {
        auto ctx = make_field_context(p, 2, 5);
        auto pi = EisensteinElement::pi_power(*ctx, 1);
        CHECK(pi.pow(p - 1) + EisensteinElement::from_int(*ctx, p) == EisensteinElement::zero(*ctx));
        std::mt19937_64 rng(p);
        for (int t = 0; t < 20; ++t) {
            auto x = random_element(*ctx, rng), y = random_element(*ctx, rng), z = random_element(*ctx, rng);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            auto u = x * pi + EisensteinElement::one(*ctx);
            CHECK(u * u.inverse() == EisensteinElement::one(*ctx));
            auto xp = x * pi.pow(3);
            CHECK(xp.divide_by_pi(3) == x.with_prec(xp.prec_pi() - 3));
            CHECK(from_pi_digits(*ctx, pi_digits(x)) == x);
        }
        auto x = pi.pow(3) * EisensteinElement::from_int(*ctx, 1 + p);
        CHECK(x.ord_pi() == 3);
    }
}

TEST_CASE("theta coefficients")
{
    for (int p : {2, 3, 5}) {
        auto ctx = make_field_context(p, 1, p == 2 ? 30 : (p == 3 ? 20 : 12));
        int n = std::min(50, ctx->theta_cutoff());
        auto th = theta_coeffs(*ctx, n);
        CHECK(th[0] == EisensteinElement::one(*ctx));
        CHECK(th[1] == EisensteinElement::pi_power(*ctx, 1));
        for (int i = 0; i <= n; ++i) CHECK(th[i].ord_pi() >= std::min(ord_p_theta_lower(p, i), ctx->pi_precision()));
    }
    auto ctx = make_field_context(3, 1, 3);
    CHECK_THROWS(theta_coeffs(*ctx, ctx->theta_cutoff() + 1));
}

TEST_CASE("zeta embedding")
{
    auto ctx = make_field_context(3, 1, 6);
    auto z = zeta_p_embed(CyclotomicInt::zeta_power(3, 1), *ctx);
    CHECK(z.pow(3) == EisensteinElement::one(*ctx));
    CHECK(z != EisensteinElement::one(*ctx));
    auto pi = EisensteinElement::pi_power(*ctx, 1);
    CHECK((z - EisensteinElement::one(*ctx) - pi).ord_pi() >= 2);
    std::vector<mpz_class> all(3, 1);
    CHECK(zeta_p_embed(CyclotomicInt::from_counts(3, all), *ctx) == EisensteinElement::zero(*ctx));
    CHECK(zeta_p_embed(CyclotomicInt::from_int(3, 1), *ctx) == EisensteinElement::one(*ctx));
    for (int p : {2, 5, 7}) {
        auto c = make_field_context(p, 1, 5);
        auto w = zeta_p_embed(CyclotomicInt::zeta_power(p, 1), *c);
        CHECK(w.pow(p) == EisensteinElement::one(*c));
        std::mt19937_64 rng(p);
        for (int t = 0; t < 10; ++t) {
            std::vector<mpz_class> a(p - 1), b(p - 1);
            for (auto& v : a) v = static_cast<long>(rng() % 41) - 20;
            for (auto& v : b) v = static_cast<long>(rng() % 41) - 20;
            CyclotomicInt x(p, a), y(p, b);
            CHECK(zeta_p_embed(x * y, *c) == zeta_p_embed(x, *c) * zeta_p_embed(y, *c));
        }
    }
}

TEST_CASE("kappa powers of 1-units")
{
    auto ctx = make_field_context(3, 1, 2);
    auto u = EisensteinElement::from_int(*ctx, 7);
    CHECK(unit_pow_kappa(u, KappaExponent::integer(4)) == EisensteinElement::from_int(*ctx, 7));
    CHECK(unit_pow_kappa(u, KappaExponent::integer(0)) == EisensteinElement::one(*ctx));
    CHECK(unit_pow_kappa(u, KappaExponent::integer(1)) == u);
    CHECK_THROWS(unit_pow_kappa(EisensteinElement::from_int(*ctx, 2), KappaExponent::integer(2)));

    auto big = make_field_context(3, 2, 8);
    std::mt19937_64 rng(7);
    auto pi = EisensteinElement::pi_power(*big, 1);
    for (int t = 0; t < 10; ++t) {
        auto r = random_element(*big, rng);
        auto v = EisensteinElement::one(*big) + r * pi;
        CHECK(unit_pow_kappa(v, KappaExponent::integer(200)) == v.pow(200));
        CHECK(unit_pow_kappa(v, KappaExponent::integer(100)) * unit_pow_kappa(v, KappaExponent::integer(-30)) ==
              unit_pow_kappa(v, KappaExponent::integer(70)));
        auto k1 = KappaExponent::from_digits(3, {1, 1, 1, 1, 1, 1, 1, 1});
        auto k2 = KappaExponent::from_digits(3, {2, 0, 1, 2, 0, 1, 2, 2});
        auto sum = KappaExponent::from_digits(3, {0, 2, 2, 0, 2, 2, 0, 1});
        CHECK(unit_pow_kappa(v, k1) * unit_pow_kappa(v, k2) == unit_pow_kappa(v, sum));
        CHECK(unit_pow_kappa(v, KappaExponent::from_digits(3, {1, 1, 1})) == unit_pow_kappa(v, KappaExponent::integer(13)).with_prec(7));
    }
}

TEST_CASE("subring embedding")
{
    auto c9 = make_field_context(3, 2, 5);
    auto c81 = make_field_context(3, 4, 5);
    SubringEmbedding emb(*c9, *c81);
    for (GaloisField::Elem x = 1; x < 9; ++x) {
        auto w = EisensteinElement::from_unramified(teichmuller(x, *c9));
        auto W = emb.map(w);
        CHECK(W == EisensteinElement::from_unramified(teichmuller(c81->residue_field().embed_from(c9->residue_field(), x), *c81)));
        CHECK(emb.project(W) == w);
    }
}
