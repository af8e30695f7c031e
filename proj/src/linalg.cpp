#include "dwork/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dwork {

Matrix zero_matrix(int rows, int cols, const FieldContext& ctx)
{
    return Matrix::Constant(rows, cols, EisensteinElement::zero(ctx));
}

Vector zero_vector(int n, const FieldContext& ctx) { return Vector::Constant(n, EisensteinElement::zero(ctx)); }

Matrix identity_matrix(int n, const FieldContext& ctx)
{
    Matrix m = zero_matrix(n, n, ctx);
    for (int i = 0; i < n; ++i) m(i, i) = EisensteinElement::one(ctx);
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, const FieldContext& ctx)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    const int prec = ctx.pi_precision();
    Matrix r = zero_matrix(static_cast<int>(a.rows()), static_cast<int>(b.cols()), ctx);
    for (Eigen::Index k = 0; k < a.cols(); ++k)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            const auto& y = b(k, j);
            if (y.ord_pi() >= prec) continue;
            for (Eigen::Index i = 0; i < a.rows(); ++i) {
                const auto& x = a(i, k);
                if (x.ord_pi() >= prec) continue;
                r(i, j).add_product(x, y);
            }
        }
    return r;
}

Vector mat_vec(const Matrix& a, const Vector& x, const FieldContext& ctx)
{
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    const int prec = ctx.pi_precision();
    Vector r = zero_vector(static_cast<int>(a.rows()), ctx);
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        if (x(k).ord_pi() >= prec) continue;
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(i).add_product(a(i, k), x(k));
    }
    return r;
}

Matrix sigma_matrix(const Matrix& m, int power)
{
    return m.unaryExpr([power](const EisensteinElement& x) { return x.sigma(power); });
}

EisensteinElement trace(const Matrix& m, const FieldContext& ctx)
{
    auto t = EisensteinElement::zero(ctx);
    for (Eigen::Index i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

int min_ord(const Matrix& m, int prec)
{
    int best = prec;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::min(best, m(i, j).ord_pi());
    return best;
}

TSeries fredholm_coeffs(const Matrix& m, int K, const FieldContext& ctx)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("fredholm_coeffs: matrix not square");
    if (K < 0) throw std::invalid_argument("fredholm_coeffs: negative K");
    const int n = static_cast<int>(m.rows());
    TSeries q(K + 1, EisensteinElement::zero(ctx));
    q[0] = EisensteinElement::one(ctx);
    for (int r = 0; r < n; ++r) {
        // bordering row R = m(r, 0..r-1), column C = m(0..r-1, r), corner a = m(r, r)
        TSeries f(K + 1, EisensteinElement::zero(ctx));
        f[0] = EisensteinElement::one(ctx);
        if (K >= 1) f[1] = -m(r, r);
        Vector c(r);
        for (int i = 0; i < r; ++i) c(i) = m(i, r);
        for (int j = 0; j + 2 <= K && r > 0; ++j) {
            auto rc = EisensteinElement::zero(ctx);
            for (int i = 0; i < r; ++i) rc.add_product(m(r, i), c(i));
            f[j + 2] = -rc;
            if (j + 3 > K) break;
            Vector nc = zero_vector(r, ctx);
            for (int k = 0; k < r; ++k) {
                if (c(k).is_zero()) continue;
                for (int i = 0; i < r; ++i) nc(i).add_product(m(i, k), c(k));
            }
            c.swap(nc);
        }
        q = series_mul(q, f, K);
    }
    return q;
}

TSeries series_mul(const TSeries& f, const TSeries& g, int K)
{
    const FieldContext* ctx = nullptr;
    for (const auto& x : f)
        if (x.context()) ctx = x.context();
    for (const auto& x : g)
        if (x.context()) ctx = x.context();
    if (!ctx) throw std::invalid_argument("series_mul: no context");
    TSeries r(K + 1, EisensteinElement::zero(*ctx));
    for (size_t i = 0; i < f.size() && static_cast<int>(i) <= K; ++i)
        for (size_t j = 0; j < g.size() && static_cast<int>(i + j) <= K; ++j) r[i + j].add_product(f[i], g[j]);
    return r;
}

TSeries series_inv(const TSeries& f, int K)
{
    if (f.empty() || !f[0].context()) throw std::invalid_argument("series_inv: empty series");
    const FieldContext& ctx = *f[0].context();
    TSeries r(K + 1, EisensteinElement::zero(ctx));
    r[0] = f[0].inverse();
    for (int k = 1; k <= K; ++k) {
        auto s = EisensteinElement::zero(ctx);
        for (int i = 1; i <= k && i < static_cast<int>(f.size()); ++i) s.add_product(f[i], r[k - i]);
        r[k] = -(s * r[0]);
    }
    return r;
}

TSeries series_scale(const TSeries& f, const EisensteinElement& c)
{
    TSeries r = f;
    EisensteinElement cp = c;
    for (size_t k = 1; k < r.size(); ++k) {
        r[k] = r[k] * cp;
        cp = cp * c;
    }
    return r;
}

RatioTrail stabilize_ratios(const std::function<EisensteinElement(int)>& term, int target_pi, int max_k)
{
    RatioTrail t;
    EisensteinElement prev = term(1);
    for (int k = 1; k <= max_k; ++k) {
        EisensteinElement next = term(k + 1);
        if (prev.ord_pi() != 0) throw std::domain_error("ratio sequence: denominator is not a unit");
        t.ratios.push_back(next / prev);
        prev = next;
        size_t n = t.ratios.size();
        if (n >= 2) t.agreements.push_back(agreement(t.ratios[n - 1], t.ratios[n - 2]));
        if (t.agreements.size() >= 2) {
            int a1 = t.agreements[t.agreements.size() - 1], a2 = t.agreements[t.agreements.size() - 2];
            if (a1 >= target_pi && a2 >= target_pi) {
                t.stable = true;
                break;
            }
        }
    }
    t.value = t.ratios.back();
    if (t.agreements.size() >= 2)
        t.certified_pi = std::min(t.agreements[t.agreements.size() - 1], t.agreements[t.agreements.size() - 2]);
    t.certified_pi = std::min(t.certified_pi, target_pi);
    return t;
}

RatioTrail trace_power_ratio(const Matrix& m, int target_pi, int max_k, const FieldContext& ctx)
{
    std::vector<Matrix> powers{m};
    auto term = [&](int k) {
        while (static_cast<int>(powers.size()) < k) powers.push_back(mat_mul(powers.back(), m, ctx));
        return trace(powers[k - 1], ctx);
    };
    return stabilize_ratios(term, target_pi, max_k);
}

}  // namespace dwork
