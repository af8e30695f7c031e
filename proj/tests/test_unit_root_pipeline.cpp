#include "doctest.h"

#include "dwork/padic_core.hpp"
#include "dwork/unit_root_pipeline.hpp"

using namespace dwork;

namespace {

LaurentFamily kloosterman() { return LaurentFamily(3, 1, 1, 1, {{{0}, {1}, 1}, {{1}, {-1}, 1}}); }
LaurentFamily lambda_x() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}}); }
LaurentFamily family_c() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}, {{1}, {-1}, 1}, {{-1}, {0}, 1}}); }

// Oracle: G(x) = phi(x) / phi(x^3), phi(x) = sum_k 9^k x^k / (k!^2 (2k)!), by the
// one-variable recurrence over exact rationals.
std::vector<mpq_class> family_c_ratio(int K)
{
    std::vector<mpq_class> phi(K + 1), den(K + 1, mpq_class(0)), G(K + 1);
    for (int k = 0; k <= K; ++k) {
        mpz_class f1, f2, nine;
        mpz_fac_ui(f1.get_mpz_t(), k);
        mpz_fac_ui(f2.get_mpz_t(), 2 * k);
        mpz_ui_pow_ui(nine.get_mpz_t(), 9, k);
        phi[k] = mpq_class(nine, f1 * f1 * f2);
        phi[k].canonicalize();
    }
    for (int k = 0; 3 * k <= K; ++k) den[3 * k] = phi[k];
    for (int k = 0; k <= K; ++k) {
        G[k] = phi[k];
        for (int j = 1; j <= k; ++j) G[k] -= den[j] * G[k - j];
    }
    return G;
}

}  // namespace

TEST_CASE("Q(pi) arithmetic and embedding")
{
    auto ctx = make_field_context(3, 1, 4);
    auto pi2 = QPi::pi_power(3, 2);
    CHECK(pi2 == QPi(3, -3));
    CHECK(QPi::pi_power(3, 5) == QPi::pi_power(3, 2) * QPi::pi_power(3, 3));
    auto x = QPi(3, mpq_class(1, 3)) * pi2;
    CHECK(agreement(x.embed(*ctx), EisensteinElement::from_int(*ctx, -1)) >= ctx->pi_precision());
    CHECK_THROWS_AS(QPi(3, mpq_class(1, 3)).embed(*ctx), IntegralityViolation);
    auto y = QPi(3, mpq_class(2, 5)) * QPi::pi_power(3, 3);
    CHECK(agreement(y.embed(*ctx), EisensteinElement::pi_power(*ctx, 3) * from_rational(*ctx, mpq_class(2, 5))) >=
          ctx->pi_precision());
}

TEST_CASE("constant-term series of the corpus families")
{
    CHECK(g00_series(lambda_x(), 20).terms.size() == 1);
    CHECK(g00_series(kloosterman(), 20).terms.size() == 1);
    auto g = g00_series(family_c(), 8);
    CHECK(g.terms.size() == 3);
    CHECK(g.terms.at({1, 1, 2}) == QPi(3, mpq_class(1, 2)) * QPi::pi_power(3, 4));
    CHECK(g.terms.at({2, 2, 4}) == QPi(3, mpq_class(1, 2 * 2 * 24)) * QPi::pi_power(3, 8));
}

TEST_CASE("ratio series matches the one-variable recurrence")
{
    const int K = 12;
    auto G = g_ratio(g00_series(family_c(), 4 * K));
    auto oracle = family_c_ratio(K);
    for (int k = 0; k <= K; ++k) {
        auto it = G.terms.find({k, k, 2 * k});
        REQUIRE(it != G.terms.end());
        CHECK(it->second == QPi(3, oracle[k]));
    }
    CHECK(G.terms.size() == K + 1);
    auto ctx = make_field_context(3, 1, 6);
    for (const auto& [e, c] : G.terms) CHECK(c.embed(*ctx).ord_pi() >= 0);
}

TEST_CASE("formula evaluation")
{
    auto ctx = make_field_context(3, 1, 3);
    for (auto fam : {lambda_x(), kloosterman()})
        for (long long k : {1, 2, 4}) {
            auto r = formula_eval(fam, KappaExponent::integer(k), 3);
            CHECK(r.stable);
            CHECK(r.value == EisensteinElement::one(*ctx));
            CHECK(r.certified_pi == ctx->pi_precision());
        }
    auto ctx5 = make_field_context(3, 1, 5);
    auto r = formula_eval(family_c(), KappaExponent::integer(1), 5);
    CHECK(r.stable);
    CHECK(agreement(r.value, EisensteinElement::from_int(*ctx5, 2827)) >= r.certified_pi);
    CHECK(r.certified_pi >= 8);
    auto r2 = formula_eval(family_c(), KappaExponent::integer(2), 5);
    CHECK(agreement(r2.value, r.value * r.value) >= std::min(r.certified_pi, r2.certified_pi));
}

TEST_CASE("formula over F_9 is sigma-invariant and telescopes over F_3")
{
    LaurentFamily f9(3, 2, 1, 1, {{{1}, {1}, 1}, {{1}, {-1}, 1}, {{-1}, {0}, 4}});
    auto r = formula_eval(f9, KappaExponent::integer(1), 3);
    CHECK(r.stable);
    CHECK(r.value.is_one_unit());
    // Coefficients in F_3 over F_9: F_2(a-hat) = G(a-hat)^2.
    LaurentFamily c9(3, 2, 1, 1, {{{1}, {1}, 1}, {{1}, {-1}, 1}, {{-1}, {0}, 1}});
    auto r9 = formula_eval(c9, KappaExponent::integer(1), 3);
    auto r3 = formula_eval(family_c(), KappaExponent::integer(2), 3);
    CHECK(agreement(r9.value, r3.value) >= std::min(r9.certified_pi, r3.certified_pi));
}

TEST_CASE("unit-root L-function of the trivial family")
{
    auto fam = lambda_x();
    auto ctx1 = make_field_context(3, 1, 3);
    auto fibers = fiber_unit_roots(fam, 4, 3);
    CHECK(fibers.size() == 2 + 3 + 8 + 18);
    auto l = assemble_l_unit(fibers, KappaExponent::integer(2), 4, *ctx1);
    // (1 - T) / (1 - 3T)
    CHECK(l.product[1] == EisensteinElement::from_int(*ctx1, 2));
    CHECK(l.product[2] == EisensteinElement::from_int(*ctx1, 6));
    CHECK(l.product[3] == EisensteinElement::from_int(*ctx1, 18));
    CHECK(l.route_agreement >= 2);
    for (int m = 1; m <= 4; ++m) {
        Int qm = 1;
        for (int i = 0; i < m; ++i) qm *= 3;
        CHECK(l.moments[m - 1] == EisensteinElement::from_int(*ctx1, qm - 1));
    }
    auto r = extract_unit_root(l, 1, 2);
    CHECK(r.value.is_one_unit());
    CHECK(r.sign == -1);
}

TEST_CASE("Kloosterman fibers: exact and p-adic routes agree")
{
    auto fibers = fiber_unit_roots(kloosterman(), 3, 3, 1);
    int exact = 0;
    for (const auto& f : fibers) {
        if (f.route == "exact") {
            ++exact;
            CHECK(f.cross_check_pi >= 4);
        }
        CHECK(f.pi0.is_one_unit());
    }
    CHECK(exact == 2);
}

TEST_CASE("eta and the eigenvector identity")
{
    auto eta = eta_series(kloosterman(), 4, 4, 3);
    CHECK(eta.stable);
    auto ctx = make_field_context(3, 1, 3);
    // exp(pi X)
    CHECK(eta.coeffs.at({0, 0}) == EisensteinElement::one(*ctx));
    CHECK(eta.coeffs.at({0, 1}) == EisensteinElement::pi_power(*ctx, 1));
    CHECK(eta.coeffs.at({0, 3}) == pi_power_over_factorial(*ctx, 3));
    CHECK(eta.coeffs.count({0, -1}) == 0);
    CHECK(eta_series(lambda_x(), 4, 4, 3).coeffs.size() == 1);

    SymTrunc t;
    t.t_max = 2;
    t.d_x = 4;
    t.d_lambda = 4;
    for (auto fam : {kloosterman(), family_c()}) {
        auto rep = eigenvector_check(fam, KappaExponent::integer(1), t, 3, 2);
        CHECK(rep.ok);
        CHECK(rep.nonzero_components > 1);
    }
}
