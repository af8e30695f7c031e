#include "dwork/galois_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dwork/modular.hpp"

namespace dwork {

namespace {

void trim(FpPoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly poly_mod(FpPoly f, const FpPoly& g, int p)
{
    trim(f);
    int dg = static_cast<int>(g.size()) - 1;
    int lead_inv = static_cast<int>(inv_mod(g.back(), p));
    while (static_cast<int>(f.size()) - 1 >= dg && !f.empty()) {
        int shift = static_cast<int>(f.size()) - 1 - dg;
        int c = f.back() * lead_inv % p;
        for (int i = 0; i <= dg; ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
        trim(f);
    }
    return f;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& h, int p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(r, h, p);
}

FpPoly poly_powmod(FpPoly b, std::uint64_t e, const FpPoly& h, int p)
{
    FpPoly r{1};
    b = poly_mod(b, h, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, b, h, p);
        b = poly_mulmod(b, b, h, p);
        e >>= 1;
    }
    return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, int p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        FpPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, int p)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    trim(a);
    return a;
}

}  // namespace

bool fp_is_irreducible(const FpPoly& h, int p)
{
    int k = static_cast<int>(h.size()) - 1;
    if (k < 1) return false;
    if (k == 1) return true;
    FpPoly x{0, 1};
    auto frob_iter = [&](int times) {
        FpPoly y = x;
        for (int i = 0; i < times; ++i) y = poly_powmod(y, static_cast<std::uint64_t>(p), h, p);
        return y;
    };
    if (poly_sub(frob_iter(k), x, p).size() != 0) return false;
    for (auto r : prime_factors(static_cast<std::uint64_t>(k))) {
        FpPoly g = poly_gcd(h, poly_sub(frob_iter(k / static_cast<int>(r)), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

FpPoly smallest_irreducible(int p, int k)
{
    if (k < 1) throw std::invalid_argument("smallest_irreducible: degree must be positive");
    std::uint64_t count = upow(static_cast<std::uint64_t>(p), k);
    for (std::uint64_t n = 0; n < count; ++n) {
        FpPoly h(k + 1, 0);
        std::uint64_t m = n;
        for (int i = 0; i < k; ++i) {
            h[i] = static_cast<int>(m % p);
            m /= p;
        }
        h[k] = 1;
        if (fp_is_irreducible(h, p)) return h;
    }
    throw std::runtime_error("smallest_irreducible: none found");
}

GaloisField::GaloisField(int p, int k) : p_(p), k_(k)
{
    if (!is_prime(p)) throw std::invalid_argument("GaloisField: p must be prime");
    if (k < 1) throw std::invalid_argument("GaloisField: degree must be positive");
    q_ = upow(static_cast<std::uint64_t>(p), k);
    h_ = smallest_irreducible(p, k);
    if (!fp_is_irreducible(h_, p)) throw std::runtime_error("GaloisField: reducible modulus");
    trace_basis_.assign(k, 0);
    for (int i = 0; i < k; ++i) {
        std::vector<int> d(k, 0);
        d[i] = 1;
        Elem y = from_digits(d);
        int s = 0;
        for (int j = 0; j < k; ++j) {
            s += digits(y)[0];
            y = frobenius(y);
        }
        trace_basis_[i] = s % p;
    }
    group_factors_ = prime_factors(q_ - 1);
    for (Elem g = 1; g < q_; ++g)
        if (is_primitive(g)) {
            gen_ = g;
            break;
        }
}

std::vector<int> GaloisField::digits(Elem x) const
{
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
        d[i] = static_cast<int>(x % p_);
        x /= p_;
    }
    return d;
}

GaloisField::Elem GaloisField::from_digits(const std::vector<int>& d) const
{
    Elem x = 0;
    for (int i = k_ - 1; i >= 0; --i) {
        int c = i < static_cast<int>(d.size()) ? ((d[i] % p_) + p_) % p_ : 0;
        x = x * p_ + c;
    }
    return x;
}

GaloisField::Elem GaloisField::from_int(long v) const
{
    return static_cast<Elem>(((v % p_) + p_) % p_);
}

GaloisField::Elem GaloisField::add(Elem x, Elem y) const
{
    Elem r = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        r += scale * ((x % p_ + y % p_) % p_);
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return r;
}

GaloisField::Elem GaloisField::neg(Elem x) const
{
    Elem r = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        r += scale * ((p_ - x % p_) % p_);
        x /= p_;
        scale *= p_;
    }
    return r;
}

GaloisField::Elem GaloisField::sub(Elem x, Elem y) const { return add(x, neg(y)); }

void GaloisField::mul_digits(const int* x, const int* y, int* out) const
{
    std::vector<long> r(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < k_; ++j) r[i + j] += static_cast<long>(x[i]) * y[j];
    }
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        long c = r[d] % p_;
        if (!c) continue;
        for (int i = 0; i < k_; ++i) r[d - k_ + i] -= c * h_[i];
    }
    for (int i = 0; i < k_; ++i) out[i] = static_cast<int>(((r[i] % p_) + p_) % p_);
}

GaloisField::Elem GaloisField::mul(Elem x, Elem y) const
{
    auto dx = digits(x), dy = digits(y);
    std::vector<int> out(k_);
    mul_digits(dx.data(), dy.data(), out.data());
    return from_digits(out);
}

GaloisField::Elem GaloisField::pow(Elem x, std::uint64_t e) const
{
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

GaloisField::Elem GaloisField::inv(Elem x) const
{
    if (x == 0) throw std::domain_error("GaloisField::inv of zero");
    return pow(x, q_ - 2);
}

int GaloisField::trace(Elem x) const
{
    int s = 0;
    for (int i = 0; i < k_; ++i) {
        s += static_cast<int>(x % p_) * trace_basis_[i];
        x /= p_;
    }
    return s % p_;
}

bool GaloisField::is_primitive(Elem x) const
{
    if (x == 0) return false;
    if (q_ == 2) return x == 1;
    for (auto r : group_factors_)
        if (pow(x, (q_ - 1) / r) == 1) return false;
    return true;
}

GaloisField::Elem GaloisField::eval(const FpPoly& f, Elem x) const
{
    Elem r = 0;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) r = add(mul(r, x), from_int(f[i]));
    return r;
}

GaloisField::Elem GaloisField::smallest_root(const FpPoly& f) const
{
    int df = static_cast<int>(f.size()) - 1;
    if (df < 1) throw std::invalid_argument("smallest_root: constant polynomial");
    bool found = false;
    Elem best = 0;
    if (eval(f, 0) == 0) return 0;
    // Roots of an irreducible degree-df polynomial lie in the unique subfield
    // of order p^df; search its multiplicative group.
    std::uint64_t sub = upow(static_cast<std::uint64_t>(p_), df);
    if ((q_ - 1) % (sub - 1) != 0) throw std::invalid_argument("smallest_root: degree does not divide");
    Elem gamma = pow(gen_, (q_ - 1) / (sub - 1));
    Elem y = 1;
    for (std::uint64_t i = 0; i + 1 < sub; ++i) {
        if (eval(f, y) == 0 && (!found || y < best)) {
            best = y;
            found = true;
        }
        y = mul(y, gamma);
    }
    if (!found) throw std::runtime_error("smallest_root: no root in field");
    return best;
}

GaloisField::Elem GaloisField::embed_from(const GaloisField& sub, Elem x) const
{
    if (sub.p_ != p_ || k_ % sub.k_ != 0) throw std::invalid_argument("embed_from: not a subfield");
    if (sub.k_ == k_) return x;
    Elem root = smallest_root(sub.h_);
    auto d = sub.digits(x);
    Elem r = 0, pw = 1;
    for (int i = 0; i < sub.k_; ++i) {
        r = add(r, mul(from_int(d[i]), pw));
        pw = mul(pw, root);
    }
    return r;
}

void GaloisField::build_tables() const
{
    if (has_tables()) return;
    if (q_ > (std::uint64_t(1) << 31)) throw std::length_error("GaloisField: field too large for tables");
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    trace_by_log_.assign(q_ - 1, 0);
    std::vector<int> cur(k_, 0), g = digits(gen_), next(k_);
    cur[0] = 1;
    for (std::uint64_t j = 0; j + 1 < q_; ++j) {
        Elem code = from_digits(cur);
        exp_[j] = static_cast<std::uint32_t>(code);
        log_[code] = static_cast<std::uint32_t>(j);
        int s = 0;
        for (int i = 0; i < k_; ++i) s += cur[i] * trace_basis_[i];
        trace_by_log_[j] = static_cast<std::uint8_t>(s % p_);
        mul_digits(cur.data(), g.data(), next.data());
        std::swap(cur, next);
    }
}

std::shared_ptr<const GaloisField> galois_field(int p, int k)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const GaloisField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot = std::make_shared<GaloisField>(p, k);
    return slot;
}

}  // namespace dwork
