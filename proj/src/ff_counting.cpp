#include "dwork/ff_counting.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dwork/padic_core.hpp"

namespace dwork {

namespace {

std::string make_orbit_id(int d, const std::vector<std::uint64_t>& logs)
{
    std::ostringstream os;
    os << d << ":";
    for (size_t i = 0; i < logs.size(); ++i) os << (i ? "," : "") << logs[i];
    return os.str();
}

std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Orbit of a log vector under e -> q e mod G; returns the degree and the
// lexicographically smallest member.
std::pair<int, std::vector<std::uint64_t>> orbit_of(const std::vector<std::uint64_t>& e, std::uint64_t q, std::uint64_t G,
                                                    int max_len)
{
    std::vector<std::uint64_t> cur = e, best = e;
    for (int k = 1; k <= max_len; ++k) {
        for (auto& x : cur) x = mulmod_u(x, q, G);
        if (cur == e) return {k, best};
        best = std::min(best, cur);
    }
    return {max_len + 1, best};
}

std::uint64_t discrete_log(const GaloisField& F, GaloisField::Elem x)
{
    if (F.has_tables()) return F.log_of(x);
    GaloisField::Elem y = 1;
    for (std::uint64_t j = 0; j + 1 < F.order(); ++j) {
        if (y == x) return j;
        y = F.mul(y, F.generator());
    }
    throw std::domain_error("discrete_log: zero has no logarithm");
}

}  // namespace

std::vector<ClosedPoint> enumerate_closed_points(const LaurentFamily& fam, int d_max)
{
    if (d_max < 1) throw std::invalid_argument("enumerate_closed_points: d_max must be >= 1");
    std::vector<ClosedPoint> out;
    const int s = fam.s();
    const std::uint64_t q = fam.q();
    for (int d = 1; d <= d_max; ++d) {
        auto F = galois_field(fam.p(), fam.a() * d);
        const std::uint64_t G = F->order() - 1;
        std::vector<std::uint64_t> e(s, 0);
        while (true) {
            auto [deg, best] = orbit_of(e, q, G, d);
            if (deg == d && best == e) {
                ClosedPoint pt;
                pt.degree = d;
                pt.logs = e;
                for (auto x : e) pt.coords.push_back(F->pow(F->generator(), x));
                pt.orbit_id = make_orbit_id(d, e);
                out.push_back(std::move(pt));
            }
            int i = s - 1;
            while (i >= 0 && e[i] + 1 == G) {
                e[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++e[i];
        }
    }
    return out;
}

ClosedPoint make_point(const LaurentFamily& fam, int degree, const std::vector<GaloisField::Elem>& coords)
{
    auto F = galois_field(fam.p(), fam.a() * degree);
    if (static_cast<int>(coords.size()) != fam.s()) throw std::invalid_argument("make_point: wrong dimension");
    ClosedPoint pt;
    pt.degree = degree;
    pt.coords = coords;
    for (auto c : coords) {
        if (c == 0) throw std::invalid_argument("make_point: coordinate is zero");
        pt.logs.push_back(discrete_log(*F, c));
    }
    auto [deg, best] = orbit_of(pt.logs, fam.q(), F->order() - 1, degree);
    if (deg != degree) throw std::invalid_argument("make_point: orbit size differs from degree");
    pt.orbit_id = make_orbit_id(degree, best);
    return pt;
}

ClosedPoint conjugate_point(const LaurentFamily& fam, const ClosedPoint& pt, int j)
{
    auto F = galois_field(fam.p(), fam.a() * pt.degree);
    ClosedPoint r = pt;
    std::uint64_t qj = 1;
    for (int i = 0; i < j; ++i) qj = mulmod_u(qj, fam.q(), F->order() - 1);
    for (size_t i = 0; i < r.logs.size(); ++i) {
        r.logs[i] = mulmod_u(r.logs[i], qj, F->order() - 1);
        r.coords[i] = F->pow(F->generator(), r.logs[i]);
    }
    return r;
}

std::vector<GaloisField::Elem> fiber_coefficients(const LaurentFamily& fam, const ClosedPoint& pt)
{
    auto F = galois_field(fam.p(), fam.a() * pt.degree);
    std::vector<GaloisField::Elem> out;
    for (const auto& t : fam.terms()) {
        GaloisField::Elem c = F->embed_from(fam.base_field(), t.coeff);
        for (int i = 0; i < fam.s(); ++i) {
            int r = t.r[i];
            GaloisField::Elem base = r >= 0 ? pt.coords[i] : F->inv(pt.coords[i]);
            c = F->mul(c, F->pow(base, static_cast<std::uint64_t>(r >= 0 ? r : -r)));
        }
        out.push_back(c);
    }
    return out;
}

bool exact_sum_affordable(const LaurentFamily& fam, const ClosedPoint& pt, int m)
{
    long double size = 1;
    for (int i = 0; i < fam.a() * pt.degree * m; ++i) size *= fam.p();
    if (size > static_cast<long double>(kExactFieldLimit)) return false;
    long double points = 1;
    for (int i = 0; i < fam.n(); ++i) points *= size;
    return points <= 4.0e8L;
}

CyclotomicInt exp_sum(const LaurentFamily& fam, const ClosedPoint& pt, int m)
{
    if (m < 1) throw std::invalid_argument("exp_sum: m must be >= 1");
    if (!exact_sum_affordable(fam, pt, m)) throw std::length_error("exp_sum: field beyond exact counting budget");
    const int p = fam.p(), n = fam.n();
    auto Fd = galois_field(p, fam.a() * pt.degree);
    auto F = galois_field(p, fam.a() * pt.degree * m);
    F->build_tables();
    const std::uint64_t G = F->order() - 1;
    const auto& trl = F->trace_by_log();
    auto coeffs = fiber_coefficients(fam, pt);
    const size_t B = coeffs.size();
    std::vector<std::uint64_t> base(B);
    std::vector<std::vector<std::uint64_t>> step(B, std::vector<std::uint64_t>(n));
    for (size_t b = 0; b < B; ++b) {
        base[b] = F->log_of(F->embed_from(*Fd, coeffs[b]));
        for (int i = 0; i < n; ++i) {
            long long u = fam.terms()[b].u[i];
            long long g = static_cast<long long>(G);
            step[b][i] = static_cast<std::uint64_t>(((u % g) + g) % g);
        }
    }
    std::vector<std::uint64_t> counts(p, 0);
    // Odometer over j in [0, G)^n with running indices per term.
    std::vector<std::uint64_t> j(n, 0);
    std::vector<std::vector<std::uint64_t>> idx(n + 1, base);
    while (true) {
        const auto& cur = idx[n];
        int tr = 0;
        for (size_t b = 0; b < B; ++b) tr += trl[cur[b]];
        ++counts[tr % p];
        int i = n - 1;
        while (i >= 0 && j[i] + 1 == G) {
            j[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++j[i];
        // rebuild running indices from level i
        for (size_t b = 0; b < B; ++b) {
            std::uint64_t v = idx[i][b];
            v = (v + mulmod_u(j[i], step[b][i], G)) % G;
            idx[i + 1][b] = v;
        }
        for (int k = i + 1; k < n; ++k) idx[k + 1] = idx[k];
    }
    std::vector<mpz_class> cz(p);
    for (int k = 0; k < p; ++k) cz[k] = static_cast<unsigned long>(counts[k]);
    return CyclotomicInt::from_counts(p, cz);
}

std::vector<CyclotomicInt> l_series_from_sums(const std::vector<CyclotomicInt>& sums)
{
    const int p = sums.front().p();
    const int M = static_cast<int>(sums.size());
    std::vector<CyclotomicInt> c(M + 1, CyclotomicInt(p));
    c[0] = CyclotomicInt::from_int(p, 1);
    for (int k = 1; k <= M; ++k) {
        CyclotomicInt acc(p);
        for (int m = 1; m <= k; ++m) acc += sums[m - 1] * c[k - m];
        try {
            c[k] = acc.divided_by(k);
        } catch (const std::domain_error&) {
            throw std::logic_error("l_series: non-integral coefficient (exponential sums inconsistent)");
        }
    }
    return c;
}

std::vector<CyclotomicInt> l_series(const LaurentFamily& fam, const ClosedPoint& pt, int M)
{
    if (M < 1) throw std::invalid_argument("l_series: M must be >= 1");
    std::vector<CyclotomicInt> sums;
    for (int m = 1; m <= M; ++m) sums.push_back(exp_sum(fam, pt, m));
    return l_series_from_sums(sums);
}

RationalL rational_reconstruct(const std::vector<CyclotomicInt>& series)
{
    const int p = series.front().p();
    const int terms = static_cast<int>(series.size());
    std::vector<CyclotomicNumber> s;
    for (const auto& c : series) s.emplace_back(c);
    CyclotomicNumber one(CyclotomicInt::from_int(p, 1));
    std::vector<CyclotomicNumber> C{one}, B{one};
    int L = 0, m = 1;
    CyclotomicNumber b = one;
    std::vector<int> history;
    for (int n = 0; n < terms; ++n) {
        CyclotomicNumber d = s[n];
        for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i) d = d + C[i] * s[n - i];
        if (d.is_zero()) {
            ++m;
        } else {
            CyclotomicNumber f = d / b;
            std::vector<CyclotomicNumber> T = C;
            if (C.size() < B.size() + m) C.resize(B.size() + m, CyclotomicNumber(p));
            for (size_t i = 0; i < B.size(); ++i) C[i + m] = C[i + m] - f * B[i];
            if (2 * L <= n) {
                L = n + 1 - L;
                B = T;
                b = d;
                m = 1;
            } else {
                ++m;
            }
        }
        history.push_back(L);
    }
    if (terms < 3 || history[terms - 3] != L || 2 * L > terms)
        throw UnstableRecurrence("rational_reconstruct: recurrence not yet stable", std::max(2 * L + 2, terms + 1));
    C.resize(L + 1, CyclotomicNumber(p));
    std::vector<CyclotomicNumber> P(L, CyclotomicNumber(p));
    for (int k = 0; k < L; ++k)
        for (int i = 0; i <= k; ++i) P[k] = P[k] + C[i] * s[k - i];
    while (!P.empty() && P.back().is_zero()) P.pop_back();
    while (C.size() > 1 && C.back().is_zero()) C.pop_back();
    RationalL r;
    for (auto& x : P) r.numerator.push_back(x.to_int());
    for (auto& x : C) r.denominator.push_back(x.to_int());
    if (r.numerator.empty()) throw std::domain_error("rational_reconstruct: zero series");
    r.verified_terms = terms;
    auto check = expand_rational(r, terms - 1);
    for (int k = 0; k < terms; ++k)
        if (check[k] != series[k]) throw std::logic_error("rational_reconstruct: expansion mismatch");
    return r;
}

std::vector<CyclotomicInt> expand_rational(const RationalL& L, int M)
{
    const int p = L.numerator.front().p();
    std::vector<CyclotomicInt> out(M + 1, CyclotomicInt(p));
    for (int k = 0; k <= M; ++k) {
        CyclotomicInt acc = k < static_cast<int>(L.numerator.size()) ? L.numerator[k] : CyclotomicInt(p);
        for (int i = 1; i <= k && i < static_cast<int>(L.denominator.size()); ++i) acc = acc - L.denominator[i] * out[k - i];
        out[k] = acc;
    }
    return out;
}

namespace {

std::vector<CyclotomicInt> newton_power_sums(const std::vector<CyclotomicInt>& e, int M, int p)
{
    // poly = 1 + e_1 T + ... = prod (1 - alpha T); returns sum alpha^m.
    std::vector<CyclotomicInt> ps(M + 1, CyclotomicInt(p));
    auto coef = [&](int i) { return i < static_cast<int>(e.size()) ? e[i] : CyclotomicInt(p); };
    for (int m = 1; m <= M; ++m) {
        CyclotomicInt acc = coef(m).scaled(-m);
        for (int i = 1; i < m; ++i) acc = acc - coef(i) * ps[m - i];
        ps[m] = acc;
    }
    return ps;
}

}  // namespace

std::vector<CyclotomicInt> power_sums(const RationalL& L, int M)
{
    const int p = L.numerator.front().p();
    auto pp = newton_power_sums(L.numerator, M, p);
    auto pq = newton_power_sums(L.denominator, M, p);
    std::vector<CyclotomicInt> out;
    for (int m = 1; m <= M; ++m) {
        CyclotomicInt s = pq[m] - pp[m];
        out.push_back(L.orientation == 1 ? s : -s);
    }
    return out;
}

int unit_root_count(const std::vector<EisensteinElement>& poly)
{
    int count = 0;
    for (size_t i = 1; i < poly.size(); ++i)
        if (poly[i].ord_pi() == 0) count = static_cast<int>(i);
    return count;
}

EisensteinElement hensel_unit_root(const std::vector<EisensteinElement>& poly)
{
    if (unit_root_count(poly) != 1) throw std::domain_error("hensel_unit_root: need exactly one unit root");
    const FieldContext& ctx = *poly[1].context();
    const int d = static_cast<int>(poly.size()) - 1;
    // reversed polynomial P*(x) = sum_i c_i x^{d-i}
    auto eval = [&](const EisensteinElement& x, bool deriv) {
        EisensteinElement r = EisensteinElement::zero(ctx);
        for (int i = 0; i <= d; ++i) {
            int deg = d - i;
            if (deriv) {
                if (deg == 0) continue;
                r = r * x + poly[i] * EisensteinElement::from_int(ctx, deg);
            } else {
                r = r * x + poly[i];
            }
        }
        return r;
    };
    EisensteinElement x = -poly[1];
    for (int it = 0; it < 64; ++it) {
        EisensteinElement fx = eval(x, false);
        if (fx.is_zero()) break;
        x = x - fx / eval(x, true);
    }
    return x;
}

FiberUnitRoot fiber_unit_root_exact(const RationalL& L, int n, const FieldContext& ctx)
{
    if (ctx.degree() != 1) throw std::invalid_argument("fiber_unit_root_exact: expects a Z_p[pi] context");
    auto embed = [&](const std::vector<CyclotomicInt>& poly) {
        std::vector<EisensteinElement> out;
        for (const auto& c : poly) out.push_back(zeta_p_embed(c, ctx));
        return out;
    };
    // L^{(-1)^{n+1}}: zeros come from the numerator of L when n is odd.
    bool numerator_is_zero = ((n + 1) % 2 == 0) == (L.orientation == 1);
    auto P = embed(L.numerator), Q = embed(L.denominator);
    int cp = unit_root_count(P), cq = unit_root_count(Q);
    if (cp + cq == 0) throw std::domain_error("no unit root");
    if (cp + cq > 1) throw std::domain_error("multiple unit roots");
    FiberUnitRoot r;
    if (cp == 1) {
        r.value = hensel_unit_root(P);
        r.is_zero = numerator_is_zero;
    } else {
        r.value = hensel_unit_root(Q);
        r.is_zero = !numerator_is_zero;
    }
    return r;
}

}  // namespace dwork
