#include "doctest.h"

#include <random>

#include "dwork/cone_series.hpp"
#include "dwork/padic_core.hpp"

using namespace dwork;

namespace {

ConeSeries random_series(const Window& w, int D, const FieldContext& ctx, std::mt19937_64& rng)
{
    ConeSeries f(w, ctx.pi_precision());
    const int dim = w.s + w.n;
    Exponent e(dim, -D);
    for (;;) {
        if (w.contains(e) && rng() % 3 == 0) {
            Coords c((ctx.p() - 1) * ctx.degree());
            for (auto& x : c) x = static_cast<Int>(rng() % static_cast<std::uint64_t>(ctx.modulus()));
            EisensteinElement v(&ctx, c, ctx.pi_precision());
            if (!v.is_zero()) f.set(e, v);
        }
        int k = 0;
        while (k < dim && e[k] == D) e[k++] = -D;
        if (k == dim) break;
        ++e[k];
    }
    return f;
}

bool same(const ConeSeries& f, const ConeSeries& g)
{
    for (const auto& [e, c] : f.terms())
        if (c != g.coeff(e)) return false;
    for (const auto& [e, c] : g.terms())
        if (c != f.coeff(e)) return false;
    return true;
}

ConeSeries restrict_to(const ConeSeries& f, const Window& w)
{
    ConeSeries r(w, f.tail_bound());
    for (const auto& [e, c] : f.terms())
        if (w.contains(e)) r.set(e, c);
    return r;
}

ConeSeries sigma_coeffs(const ConeSeries& f)
{
    ConeSeries r(f.window(), f.tail_bound());
    for (const auto& [e, c] : f.terms()) r.set(e, c.sigma());
    return r;
}

}  // namespace

TEST_CASE("psi and Phi on monomials")
{
    auto ctx = make_field_context(3, 1, 3);
    Window w{0, 1, 0, -1, 9};
    ConeSeries f(w, ctx->pi_precision());
    f.set({0}, EisensteinElement::one(*ctx));
    CHECK(same(dilation_extract(f, Block::X, 1, 3), f));
    CHECK(same(power_substitute(f, Block::X, 1, 3), f));
    for (int j = 1; j <= 9; ++j) {
        ConeSeries g(w, ctx->pi_precision());
        g.set({j}, EisensteinElement::one(*ctx));
        auto h = dilation_extract(g, Block::X, 1, 3);
        if (j % 3) {
            CHECK(h.empty());
        } else {
            REQUIRE(h.size() == 1);
            CHECK(h.terms().begin()->first == Exponent{j / 3});
        }
    }
    ConeSeries x(w, ctx->pi_precision());
    x.set({1}, EisensteinElement::one(*ctx));
    auto px = power_substitute(x, Block::X, 1, 3);
    REQUIRE(px.size() == 1);
    CHECK(px.terms().begin()->first == Exponent{3});
}

TEST_CASE("psi after Phi is the identity and the projection formula holds")
{
    auto ctx = make_field_context(3, 2, 3);
    std::mt19937_64 rng(11);
    Window w{1, 2, 0, 2, 2};
    for (int rep = 0; rep < 3; ++rep) {
        auto f = random_series(w, 2, *ctx, rng);
        CHECK(same(dilation_extract(power_substitute(f, Block::X, 1, 3), Block::X, 1, 3), f));
        CHECK(same(dilation_extract(power_substitute(f, Block::Lambda, 1, 3), Block::Lambda, 1, 3), f));

        Window wide{1, 2, 0, 2, 6};
        auto g = random_series(wide, 6, *ctx, rng);
        auto lhs = dilation_extract(multiply(power_substitute(f, Block::X, 1, 3), g, Window{1, 2, 0, 4, 12}),
                                    Block::X, 1, 3);
        auto rhs = multiply(f, dilation_extract(g, Block::X, 1, 3), Window{1, 2, 0, 4, 4});
        CHECK(same(lhs, rhs));
    }
}

TEST_CASE("ring axioms on truncations")
{
    auto ctx = make_field_context(5, 1, 2);
    std::mt19937_64 rng(5);
    Window w{1, 1, 0, 3, 3};
    auto f = random_series(w, 3, *ctx, rng);
    auto g = random_series(w, 3, *ctx, rng);
    auto h = random_series(w, 3, *ctx, rng);
    CHECK(same(multiply(f, g, w), multiply(g, f, w)));
    Window big{1, 1, 0, 9, 9};
    auto left = restrict_to(multiply(multiply(f, g, big), h, big), w);
    auto right = restrict_to(multiply(f, multiply(g, h, big), big), w);
    CHECK(same(left, right));
}

TEST_CASE("support projections")
{
    auto ctx = make_field_context(3, 1, 2);
    std::mt19937_64 rng(3);
    Cone m1(1, {{1}}), m2(1, {{1}, {-1}});
    Window w{1, 1, 0, 3, 3};
    auto f = random_series(w, 3, *ctx, rng);
    for (auto pr : {Projector::Pr1, Projector::Pr2, Projector::Pr0, Projector::Pr20}) {
        auto once = project_support(f, pr, m1, m2);
        CHECK(same(project_support(once, pr, m1, m2), once));
    }
    auto p1 = project_support(f, Projector::Pr1, m1, m2);
    for (const auto& [e, c] : p1.terms()) CHECK(e[0] <= 0);
    auto p0 = project_support(f, Projector::Pr0, m1, m2);
    for (const auto& [e, c] : p0.terms()) CHECK(e[0] == 0);

    Cone c1(1, {{1}, {1}, {-1}}), c2(1, {{1}, {-1}});
    CHECK(same(project_support(f, Projector::Pr0, c1, c2), f));
}

TEST_CASE("exp_pi_poly")
{
    auto ctx = make_field_context(3, 1, 4);
    Window w{1, 1, 0, 6, 6};
    auto one = exp_pi_poly({}, w, 6, false, *ctx);
    REQUIRE(one.size() == 1);
    CHECK(one.coeff({0, 0}) == EisensteinElement::one(*ctx));

    auto c = EisensteinElement::from_unramified(teichmuller(2, *ctx));
    auto single = exp_pi_poly({{{0, 1}, c}}, w, 6, false, *ctx);
    for (int i = 0; i <= 6; ++i)
        CHECK(single.coeff({0, i}) == pi_power_over_factorial(*ctx, i) * c.pow(i));

    // pi^i / i! checked against the rational value i!^{-1} times pi^i
    for (int i = 0; i <= 8; ++i) {
        mpz_class fact = 1;
        for (int k = 2; k <= i; ++k) fact *= k;
        int v = 0;
        while (fact % 3 == 0) {
            fact /= 3;
            ++v;
        }
        auto expect = EisensteinElement::pi_power(*ctx, i - 2 * v) * from_rational(*ctx, mpq_class(v % 2 ? -1 : 1, fact));
        CHECK(pi_power_over_factorial(*ctx, i) == expect);
    }

    std::vector<LiftedTerm> famc = {{{1, 1}, EisensteinElement::one(*ctx)},
                                    {{1, -1}, EisensteinElement::one(*ctx)},
                                    {{-1, 0}, EisensteinElement::one(*ctx)}};
    Window wy{1, 1, 0, 8, 8, 8};
    auto g = exp_pi_poly(famc, wy, 4, true, *ctx);
    auto expect = EisensteinElement::pi_power(*ctx, 4).divide_by_int(2);
    CHECK(g.coeff({0, 0, 1, 1, 2}) == expect);
    CHECK(g.coeff({0, 0, 0, 0, 0}) == EisensteinElement::one(*ctx));

    auto both = exp_pi_poly({famc[0], famc[1]}, w, 6, false, *ctx);
    auto sep = multiply(exp_pi_poly({famc[0]}, w, 6, false, *ctx), exp_pi_poly({famc[1]}, w, 6, false, *ctx), w);
    CHECK(same(both, sep));
}

TEST_CASE("splitting function coefficients")
{
    auto ctx = make_field_context(3, 1, 4);
    Window w{0, 1, 0, -1, 20};
    auto H = splitting_H({{{1}, EisensteinElement::one(*ctx)}}, 1, w, *ctx);
    const auto& theta = ctx->theta();
    for (int i = 0; i <= 20 && i < static_cast<int>(theta.size()); ++i) CHECK(H.coeff({i}) == theta[i]);
    CHECK(H.coeff({0}).is_one_unit());

    // Oracle over F_9: exp(pi c X) exp(-pi c^p X^p) expanded term by term.
    auto c9 = make_field_context(3, 2, 3);
    auto c = EisensteinElement::from_unramified(teichmuller(4, *c9));
    const int D = 18;
    Window w9{0, 1, 0, -1, D};
    auto H9 = splitting_H({{{1}, c}}, 1, w9, *c9);
    std::vector<EisensteinElement> a(D + 1, EisensteinElement::zero(*c9)), b(D + 1, EisensteinElement::zero(*c9));
    for (int i = 0; i <= D; ++i) a[i] = pi_power_over_factorial(*c9, i) * c.pow(i);
    auto cp = -c.sigma();
    for (int j = 0; 3 * j <= D; ++j) b[3 * j] = pi_power_over_factorial(*c9, j) * cp.pow(j);
    for (int k = 0; k <= D; ++k) {
        auto sum = EisensteinElement::zero(*c9);
        for (int i = 0; i <= k; ++i) sum += a[i] * b[k - i];
        CHECK(H9.coeff({k}) == sum);
    }
}

TEST_CASE("splitting identity between levels")
{
    auto ctx = make_field_context(3, 2, 3);
    std::vector<LiftedTerm> t = {{{0, 1}, EisensteinElement::from_unramified(teichmuller(4, *ctx))},
                                 {{1, 1}, EisensteinElement::one(*ctx)}};
    Window w{1, 1, 0, 9, 9};
    auto H2 = splitting_H(t, 2, w, *ctx);
    Window small{1, 1, 0, 3, 3};
    auto H1 = splitting_H(t, 1, w, *ctx);
    auto H1small = splitting_H(t, 1, small, *ctx);
    auto lifted = power_substitute(power_substitute(sigma_coeffs(H1small), Block::Lambda, 1, 3), Block::X, 1, 3);
    CHECK(same(multiply(H1, lifted, w), restrict_to(H2, w)));
    CHECK(H2.coeff({0, 0}).is_one_unit());
}

TEST_CASE("valuation profiles")
{
    auto ctx = make_field_context(3, 1, 4);
    ConeSeries zero(Window{1, 1, 0, 3, 3}, ctx->pi_precision());
    ValuationProfile steep{1000, 1000, 1000};
    CHECK(valuation_check(zero, steep, 3).ok);

    std::vector<LiftedTerm> kl = {{{0, 1}, EisensteinElement::one(*ctx)}, {{1, -1}, EisensteinElement::one(*ctx)}};
    auto H = splitting_H(kl, 1, Window{1, 1, 0, 6, 6}, *ctx);
    CHECK(H.size() > 10);
    ValuationProfile kp{{1, 9}, {1, 9}, 0};
    CHECK(valuation_check(H, kp, 3).ok);

    std::vector<LiftedTerm> xx = {{{1}, EisensteinElement::one(*ctx)}, {{2}, EisensteinElement::one(*ctx)}};
    auto Hx = splitting_H(xx, 1, Window{0, 1, 0, -1, 12}, *ctx);
    ValuationProfile xp{0, {2, 18}, 0};
    CHECK(valuation_check(Hx, xp, 3).ok);

    auto bad = Hx;
    bad.set({9}, EisensteinElement::one(*ctx));
    auto rep = valuation_check(bad, xp, 3);
    CHECK_FALSE(rep.ok);
    CHECK(rep.witness == Exponent{9});
    CHECK(rep.actual_pi == 0);
    CHECK(rep.required_p == boost::rational<long long>(1));
}

TEST_CASE("dump is sorted and line oriented")
{
    auto ctx = make_field_context(3, 1, 2);
    ConeSeries f(Window{1, 1, 0, 3, 3}, ctx->pi_precision());
    f.set({1, 0}, EisensteinElement::from_int(*ctx, 2));
    f.set({-1, 2}, EisensteinElement::one(*ctx));
    auto s = dump(f);
    CHECK(s.find("[-1,2]\t") == 0);
    CHECK(s.find("\n[1,0]\t") != std::string::npos);
    CHECK(dump(f) == s);
}
