#include "doctest.h"

#include <map>

#include "dwork/padic_core.hpp"
#include "dwork/sym_power.hpp"

using namespace dwork;

namespace {

LaurentFamily kloosterman() { return LaurentFamily(3, 1, 1, 1, {{{0}, {1}, 1}, {{1}, {-1}, 1}}); }
LaurentFamily lambda_x() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}}); }
LaurentFamily family_c() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}, {{1}, {-1}, 1}, {{-1}, {0}, 1}}); }

SymTrunc trunc(int d_x, int d_lambda, int t_max)
{
    SymTrunc t;
    t.d_x = d_x;
    t.d_lambda = d_lambda;
    t.t_max = t_max;
    return t;
}

SymExponent kappa(long long k) { return SymExponent::p_adic(KappaExponent::integer(k)); }

}  // namespace

TEST_CASE("symmetric basis enumeration and multiplication table")
{
    SymBasis b(kloosterman().x_cone(), 2, 2);
    REQUIRE(b.vars().size() == 4);
    CHECK(b.size() == 1 + 4 + 10);
    CHECK(b.var_index({0}) == -1);
    CHECK(b.var_index({3}) == -2);
    for (int m = 0; m < b.size(); ++m) {
        if (m > 0) CHECK(b.degree(m) >= b.degree(m - 1));
        for (int v = 0; v < 4; ++v) {
            int r = b.times_var(m, v);
            if (b.degree(m) == 2) {
                CHECK(r == -1);
                continue;
            }
            auto expect = b.mono(m);
            expect.push_back(v);
            std::sort(expect.begin(), expect.end());
            CHECK(b.mono(r) == expect);
        }
    }
    int sq = b.find({1, 1});
    CHECK(b.multiplicity_factorial(sq, 5) == 2 * 6);
    CHECK(b.multiplicity_factorial(0, 3) == 6);
}

TEST_CASE("binomial powers match repeated multiplication for integer exponents")
{
    auto ctx = make_field_context(3, 1, 4);
    SymBasis b(kloosterman().x_cone(), 2, 3);
    LambdaGrid g(kloosterman().lambda_cone(), 1, 6);
    SymEngine eng(b, g, *ctx);
    auto pi = EisensteinElement::pi_power(*ctx, 1);
    LinearFactor w = {{{0}, -1, pi}, {{1}, 0, pi * pi}, {{0}, 2, EisensteinElement::from_int(*ctx, 3)}};
    auto P = eng.binomial_powers(w, {mpz_class(0), mpz_class(1), mpz_class(3)});
    LinearFactor base = w;
    base.push_back({{0}, -1, EisensteinElement::one(*ctx)});
    auto direct = eng.constant(EisensteinElement::one(*ctx));
    std::vector<SymSeries> powers = {direct};
    for (int k = 1; k <= 3; ++k) powers.push_back(eng.times(powers.back(), base));
    for (int t = 0; t < 3; ++t) {
        int e = t == 0 ? 0 : t == 1 ? 1 : 3;
        for (size_t i = 0; i < P[t].coeff.size(); ++i) {
            auto lhs = P[t].coeff[i], rhs = powers[e].coeff[i];
            CHECK(agreement(lhs, rhs) >= ctx->pi_precision());
        }
    }
}

TEST_CASE("the trivial family and Kloosterman have unit root 1 modulo 9")
{
    auto ctx = make_field_context(3, 1, 3);
    for (auto fam : {lambda_x(), kloosterman()})
        for (long long k : {1, 2, 4}) {
            auto op = beta_operator(fam, kappa(k), trunc(4, 4, 2), 3);
            auto r = beta_unit_root(op);
            CHECK(r.unit_roots == 1);
            CHECK(r.certified_pi >= 4);
            CHECK(agreement(r.value, EisensteinElement::one(*ctx)) >= 4);
        }
    auto digits = SymExponent::p_adic(KappaExponent::from_digits(3, {1, 1, 1}));
    auto r = beta_unit_root(beta_operator(kloosterman(), digits, trunc(4, 4, 2), 3));
    CHECK(agreement(r.value, EisensteinElement::one(*ctx)) >= 4);
}

TEST_CASE("family C unit root against the hypergeometric ratio oracle")
{
    // G(1) for phi(x) = sum 9^k x^k / (k!^2 (2k)!) and G = phi(x) / phi(x^3),
    // summed in exact rationals; 2827 modulo 3^7.
    auto ctx = make_field_context(3, 1, 7);
    auto op = beta_operator(family_c(), kappa(1), trunc(3, 3, 2), 7);
    auto r = beta_unit_root(op);
    CHECK(r.unit_roots == 1);
    CHECK(agreement(r.value, EisensteinElement::from_int(*ctx, 2827)) >= 12);
}

TEST_CASE("k = 1 dual operator is the transpose and pairings hold for k <= 2")
{
    for (auto fam : {kloosterman(), family_c()}) {
        auto t = trunc(3, 3, 2);
        auto rep1 = pairing_check(fam, 1, t, 3);
        CHECK(rep1.ok);
        CHECK(rep1.pairs_checked > 0);
        auto rep2 = pairing_check(fam, 2, t, 3);
        CHECK(rep2.ok);
    }
}

TEST_CASE("Fredholm determinants of primal and dual operators agree")
{
    for (auto fam : {kloosterman(), family_c()})
        for (long long k : {1, 2}) {
            auto rep = det_duality_check(fam, SymExponent::truncated(k), trunc(3, 3, 2), 3, 2, 4);
            CHECK(rep.ok);
            auto rep2 = det_duality_check(fam, kappa(k), trunc(3, 3, 2), 3, 2, 4);
            CHECK(rep2.ok);
        }
}

TEST_CASE("sparse Fredholm and unit-root count agree with the dense routes")
{
    auto op = beta_operator(family_c(), kappa(1), trunc(2, 2, 1), 3);
    auto m = op.assemble();
    auto dense = m.dense(*op.ctx);
    auto d1 = sparse_fredholm(m, 4, *op.ctx);
    auto d2 = fredholm_coeffs(dense, 4, *op.ctx);
    for (int i = 0; i <= 4; ++i) CHECK(agreement(d1[i], d2[i]) >= op.ctx->pi_precision());
    CHECK(sparse_unit_root_count(m, *op.ctx) == unit_root_count(fredholm_coeffs(dense, m.rows, *op.ctx)));
}

TEST_CASE("trace identity over rational points")
{
    for (auto fam : {kloosterman(), family_c()}) {
        auto rep = trace_identity_check(fam, SymExponent::truncated(1), trunc(3, 3, 2), 3, 4);
        CHECK(rep.points == 2);
        CHECK(rep.ok);
    }
}

TEST_CASE("integer approximations converge to the p-adic exponent")
{
    auto rep = convergence_check(kloosterman(), KappaExponent::integer(2), {5, 11, 29}, trunc(3, 3, 2), 3, 2, 4);
    CHECK(rep.monotone);
    CHECK(rep.meets_bound);
    CHECK(rep.det_stable);
}
