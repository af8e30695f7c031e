#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "dwork/dwork_fiber.hpp"
#include "dwork/padic_core.hpp"

using namespace dwork;

namespace {

LaurentFamily kloosterman() { return LaurentFamily(3, 1, 1, 1, {{{0}, {1}, 1}, {{1}, {-1}, 1}}); }
LaurentFamily lambda_x() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}}); }

// Oracle: e_k = sum of principal k x k minors, each by the Leibniz formula.
EisensteinElement principal_minor_sum(const Matrix& m, int k, const FieldContext& ctx)
{
    const int n = static_cast<int>(m.rows());
    auto total = EisensteinElement::zero(ctx);
    std::vector<int> pick(n, 0);
    std::fill(pick.end() - k, pick.end(), 1);
    do {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (pick[i]) idx.push_back(i);
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int inv = 0;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) inv += perm[a] > perm[b];
            auto term = EisensteinElement::one(ctx);
            for (int a = 0; a < k; ++a) term = term * m(idx[a], idx[perm[a]]);
            total = inv % 2 ? total - term : total + term;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return total;
}

}  // namespace

TEST_CASE("truncated determinant against principal minors")
{
    auto ctx = make_field_context(3, 2, 4);
    std::mt19937_64 rng(7);
    const int n = 5;
    Matrix m = zero_matrix(n, n, *ctx);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Coords c(4);
            for (auto& x : c) x = static_cast<Int>(rng() % 81);
            m(i, j) = EisensteinElement(ctx.get(), c, ctx->pi_precision());
        }
    auto det = fredholm_coeffs(m, n, *ctx);
    REQUIRE(det.size() == n + 1);
    CHECK(det[0] == EisensteinElement::one(*ctx));
    for (int k = 1; k <= n; ++k) {
        auto e = principal_minor_sum(m, k, *ctx);
        CHECK(det[k] == (k % 2 ? -e : e));
    }
    auto short_det = fredholm_coeffs(m, 2, *ctx);
    CHECK(short_det[2] == det[2]);

    auto zero = fredholm_coeffs(zero_matrix(3, 3, *ctx), 3, *ctx);
    for (int k = 1; k <= 3; ++k) CHECK(zero[k].is_zero());
    Matrix one = zero_matrix(1, 1, *ctx);
    one(0, 0) = EisensteinElement::from_int(*ctx, 5);
    auto lin = fredholm_coeffs(one, 3, *ctx);
    CHECK(lin[1] == EisensteinElement::from_int(*ctx, -5));
    CHECK(lin[2].is_zero());
}

TEST_CASE("delta operation")
{
    auto ctx = make_field_context(3, 1, 4);
    auto I = [&](Int v) { return EisensteinElement::from_int(*ctx, v); };
    TSeries g{I(1), I(-1), I(0), I(0)};
    auto q = I(3);
    auto d0 = delta_op(g, q, 0);
    for (int k = 0; k < 4; ++k) CHECK(d0[k] == g[k]);
    auto d1 = delta_op(g, q, 1);
    CHECK(d1[1] == I(2));
    CHECK(d1[2] == I(6));
    CHECK(d1[3] == I(18));
    auto d2 = delta_op(g, q, 2);
    CHECK(d2[1] == I(-4));
    CHECK(d2[2] == I(-24));
}

TEST_CASE("fiber operator entries")
{
    auto fam = lambda_x();
    auto pt = make_point(fam, 1, {1});
    auto op = fiber_frobenius(fam, pt, 2, 3);
    REQUIRE(op.basis.size() == 3);
    CHECK((op.level1(0, 0) - EisensteinElement::one(*op.ctx)).ord_pi() >= 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 1; j < 3; ++j) CHECK(op.level1(i, j).ord_pi() >= 1);

    auto kl = kloosterman();
    for (GaloisField::Elem lam : {1, 2}) {
        auto k = fiber_frobenius(kl, make_point(kl, 1, {lam}), 6, 3);
        const int p = 3;
        for (size_t i = 0; i < k.basis.size(); ++i)
            for (size_t j = 0; j < k.basis.size(); ++j) {
                int w = std::abs(p * k.basis[i][0] - k.basis[j][0]);
                // ord_p >= (p - 1) w / p^2 with omega = 1, in pi-units
                int need = (2 * 2 * w + 8) / 9;
                CHECK(k.level1(i, j).ord_pi() >= std::min(need, k.ctx->pi_precision()));
            }
        auto c0 = k.index.at(Exponent{0});
        CHECK(k.level1(c0, c0).is_one_unit());
    }
}

TEST_CASE("composed operator agrees with the single-kernel form")
{
    auto fam = kloosterman();
    auto pts = enumerate_closed_points(fam, 2);
    const ClosedPoint* pt = nullptr;
    for (const auto& p : pts)
        if (p.degree == 2) pt = &p;
    REQUIRE(pt);
    auto op = fiber_frobenius(fam, *pt, 14, 3);
    auto full = op.assemble();
    auto direct = fiber_frobenius_direct(fam, *pt, 2, 3, *op.ctx);
    auto basis = fam.x_cone().lattice_points(2);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            CHECK(full(op.index.at(basis[i]), op.index.at(basis[j])) == direct(i, j));
}

TEST_CASE("trace formula at rational fibers")
{
    auto kl = kloosterman();
    for (GaloisField::Elem lam : {1, 2}) {
        auto rep = verify_trace_formula(kl, make_point(kl, 1, {lam}), 2, 3);
        CHECK(rep.ok);
        CHECK(rep.stable);
        CHECK(rep.D == 14);
        if (lam == 1) {
            auto ctx = make_field_context(3, 1, 3);
            CHECK(rep.exact[1] == EisensteinElement::from_int(*ctx, -1));
            CHECK(rep.exact[2] == EisensteinElement::from_int(*ctx, 3));
        }
    }
    auto lx = lambda_x();
    auto ctx = make_field_context(3, 1, 3);
    auto rep = verify_trace_formula(lx, make_point(lx, 1, {1}), 2, 3);
    CHECK(rep.ok);
    CHECK(rep.stable);
    CHECK(rep.delta[1] == EisensteinElement::from_int(*ctx, -1));
    CHECK(rep.delta[2].is_zero());
}

TEST_CASE("unit root of a fiber by both routes")
{
    auto kl = kloosterman();
    auto ctx = make_field_context(3, 1, 4);
    auto pt = make_point(kl, 1, {1});
    auto r = fiber_unit_root_padic(kl, pt, 4);
    CHECK(r.unit_roots == 1);
    CHECK(r.stable);
    CHECK(r.trail.stable);
    CHECK(r.certified_pi >= ctx->pi_precision());
    CHECK(r.value.is_one_unit());
    CHECK((r.value - EisensteinElement::from_int(*ctx, 7)).ord_pi() >= 4);
    auto exact = fiber_unit_root_exact(rational_reconstruct(l_series(kl, pt, 6)), 1, *ctx);
    CHECK(exact.is_zero);
    CHECK(agreement(exact.value, r.value) >= ctx->pi_precision());

    auto op = fiber_frobenius(kl, pt, r.D, 4);
    auto tr = fiber_unit_root_trace(op, ctx->pi_precision());
    CHECK(tr.stable);
    SubringEmbedding emb(*ctx, *op.ctx);
    CHECK(emb.project(tr.value) == r.value);

    auto lx = lambda_x();
    auto one = fiber_unit_root_padic(lx, make_point(lx, 1, {2}), 3);
    CHECK(one.value.is_one_unit());
    CHECK(agreement(one.value, EisensteinElement::one(*one.value.context())) >= 4);
}

TEST_CASE("unit root at a degree two point is Galois stable")
{
    auto kl = kloosterman();
    auto ctx = make_field_context(3, 1, 3);
    auto pts = enumerate_closed_points(kl, 2);
    for (const auto& pt : pts) {
        if (pt.degree != 2) continue;
        auto r = fiber_unit_root_padic(kl, pt, 3, -1, true, false);
        auto c = fiber_unit_root_padic(kl, conjugate_point(kl, pt, 1), 3, -1, false, false);
        CHECK(r.unit_roots == 1);
        CHECK(r.value == c.value);
        auto exact = fiber_unit_root_exact(rational_reconstruct(l_series(kl, pt, 6)), 1, *ctx);
        CHECK(agreement(exact.value, r.value) >= ctx->pi_precision());
    }
}
