#include "dwork/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>
#include <stdexcept>

namespace dwork {

namespace {

constexpr int kMaxModulusBits = 50;

int max_precision(int p)
{
    int n = 0;
    Wide m = 1;
    while (true) {
        m *= p;
        if (m >= (Wide(1) << kMaxModulusBits)) break;
        ++n;
    }
    return n;
}

}  // namespace

FieldContext::FieldContext(int p, int a, int N) : p_(p), a_(a), N_(N)
{
    if (!is_prime(p)) throw std::invalid_argument("make_field_context: p must be prime");
    if (a < 1) throw std::invalid_argument("make_field_context: a must be positive");
    if (N < 1) throw std::invalid_argument("make_field_context: N must be positive");
    if (N > max_precision(p)) throw std::invalid_argument("make_field_context: precision exceeds 50-bit modulus");
    mod_ = ipow(p, N);
    residue_ = galois_field(p, a);
    const auto& hf = residue_->modulus();
    if (!fp_is_irreducible(hf, p)) throw std::runtime_error("make_field_context: h is reducible mod p");
    h_.assign(hf.begin(), hf.end());
    // reduce_[d - a] = coordinates of t^d mod h for d = a .. 2a-2.
    std::vector<Int> cur(a, 0);
    for (int i = 0; i < a; ++i) cur[i] = mod_reduce(-h_[i], mod_);
    for (int d = a; d <= 2 * a - 2; ++d) {
        reduce_.push_back(cur);
        std::vector<Int> next(a, 0);
        Int top = cur[a - 1];
        for (int i = a - 1; i >= 1; --i) next[i] = cur[i - 1];
        for (int i = 0; i < a; ++i) next[i] = mod_reduce(next[i] - static_cast<Wide>(top) * h_[i], mod_);
        cur = next;
    }
    init_frobenius();
    init_theta();
}

FieldContext::~FieldContext()
{
    delete theta_;
    delete zeta_;
}

ContextPtr FieldContext::make(int p, int a, int N)
{
    static std::mutex lock;
    static std::map<std::tuple<int, int, int>, ContextPtr> interned;
    std::lock_guard<std::mutex> guard(lock);
    auto& slot = interned[{p, a, N}];
    if (!slot) slot = ContextPtr(new FieldContext(p, a, N));
    return slot;
}

void FieldContext::zq_mul(const Int* x, const Int* y, Int* out) const
{
    const int a = a_;
    if (a == 1) {
        out[0] = mul_mod(x[0], y[0], mod_);
        return;
    }
    Wide buf[64];
    const int L = 2 * a - 1;
    std::fill(buf, buf + L, Wide(0));
    for (int i = 0; i < a; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < a; ++j) buf[i + j] += static_cast<Wide>(x[i]) * y[j];
    }
    Int r[64];
    for (int d = 0; d < L; ++d) r[d] = mod_reduce(buf[d], mod_);
    for (int i = 0; i < a; ++i) {
        Wide s = r[i];
        for (int d = a; d < L; ++d) s += static_cast<Wide>(r[d]) * reduce_[d - a][i];
        out[i] = mod_reduce(s, mod_);
    }
}

void FieldContext::eis_mul(const Int* x, const Int* y, Int* out) const
{
    const int e = p_ - 1, a = a_;
    if (a == 1) {
        if (e == 1) {
            out[0] = mul_mod(x[0], y[0], mod_);
            return;
        }
        Wide buf[128];
        const int L = 2 * e - 1;
        std::fill(buf, buf + L, Wide(0));
        for (int i = 0; i < e; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < e; ++j) buf[i + j] += static_cast<Wide>(x[i]) * y[j];
        }
        for (int k = L - 1; k >= e; --k) buf[k - e] -= static_cast<Wide>(p_) * mod_reduce(buf[k], mod_);
        for (int k = 0; k < e; ++k) out[k] = mod_reduce(buf[k], mod_);
        return;
    }
    const int L = 2 * a - 1;
    const int rows = 2 * e - 1;
    thread_local std::vector<Wide> buf;
    buf.assign(static_cast<size_t>(rows) * L, Wide(0));
    for (int j1 = 0; j1 < e; ++j1)
        for (int i1 = 0; i1 < a; ++i1) {
            Int xv = x[j1 * a + i1];
            if (!xv) continue;
            for (int j2 = 0; j2 < e; ++j2) {
                Wide* row = &buf[static_cast<size_t>(j1 + j2) * L + i1];
                const Int* yr = y + j2 * a;
                for (int i2 = 0; i2 < a; ++i2) row[i2] += static_cast<Wide>(xv) * yr[i2];
            }
        }
    for (int k = rows - 1; k >= e; --k)
        for (int d = 0; d < L; ++d)
            buf[static_cast<size_t>(k - e) * L + d] -= static_cast<Wide>(p_) * mod_reduce(buf[static_cast<size_t>(k) * L + d], mod_);
    Int r[64];
    for (int k = 0; k < e; ++k) {
        for (int d = 0; d < L; ++d) r[d] = mod_reduce(buf[static_cast<size_t>(k) * L + d], mod_);
        for (int i = 0; i < a; ++i) {
            Wide s = r[i];
            for (int d = a; d < L; ++d) s += static_cast<Wide>(r[d]) * reduce_[d - a][i];
            out[k * a + i] = mod_reduce(s, mod_);
        }
    }
}

void FieldContext::eis_add_mul(Int* acc, const Int* x, const Int* y) const
{
    const int n = (p_ - 1) * a_;
    Int tmp[256];
    eis_mul(x, y, tmp);
    for (int i = 0; i < n; ++i) {
        Int s = acc[i] + tmp[i];
        acc[i] = s >= mod_ ? s - mod_ : s;
    }
}

void FieldContext::zq_sigma(const Int* x, Int* out, int power) const
{
    const int a = a_;
    power %= a;
    if (power < 0) power += a;
    if (power == 0) {
        std::copy(x, x + a, out);
        return;
    }
    const auto& S = sigma_pow_[power];
    for (int i = 0; i < a; ++i) {
        Wide s = 0;
        for (int k = 0; k < a; ++k) s += static_cast<Wide>(S[i * a + k]) * x[k];
        out[i] = mod_reduce(s, mod_);
    }
}

void FieldContext::init_frobenius()
{
    const int a = a_;
    sigma_pow_.assign(a, std::vector<Int>(static_cast<size_t>(a) * a, 0));
    for (int i = 0; i < a; ++i) sigma_pow_[0][i * a + i] = 1;
    if (a == 1) {
        sigma_t_ = {0};
        return;
    }
    // Newton iteration for the root s of h with s = t^p mod p.
    UnramifiedElement t(this, Coords(a, 0), N_);
    {
        Coords c(a, 0);
        c[1] = 1;
        t = UnramifiedElement(this, c, N_);
    }
    UnramifiedElement s = t.pow(static_cast<std::uint64_t>(p_));
    auto eval = [&](const UnramifiedElement& x) {
        UnramifiedElement r = UnramifiedElement::zero(*this);
        for (int k = a; k >= 0; --k) r = r * x + UnramifiedElement::from_int(*this, h_[k]);
        return r;
    };
    for (int it = 0; it < 2 * N_ + 4; ++it) {
        UnramifiedElement hv = eval(s);
        if (hv.valuation() >= N_) break;
        // derivative polynomial: sum k h_k x^{k-1}
        UnramifiedElement d = UnramifiedElement::zero(*this);
        for (int k = a; k >= 1; --k) d = d * s + UnramifiedElement::from_int(*this, h_[k] * k);
        s = s - hv * d.inverse();
    }
    sigma_t_.assign(s.coords().begin(), s.coords().end());
    // Column k of the matrix of sigma is s^k.
    std::vector<Int> M(static_cast<size_t>(a) * a, 0);
    UnramifiedElement pw = UnramifiedElement::from_int(*this, 1);
    for (int k = 0; k < a; ++k) {
        for (int i = 0; i < a; ++i) M[i * a + k] = pw.coords()[i];
        pw = pw * s;
    }
    for (int power = 1; power < a; ++power) {
        const auto& prev = sigma_pow_[power - 1];
        auto& cur = sigma_pow_[power];
        for (int i = 0; i < a; ++i)
            for (int k = 0; k < a; ++k) {
                Wide acc = 0;
                for (int l = 0; l < a; ++l) acc += static_cast<Wide>(M[i * a + l]) * prev[l * a + k];
                cur[i * a + k] = mod_reduce(acc, mod_);
            }
    }
}

void FieldContext::init_theta()
{
    const int e = p_ - 1;
    // ord_p theta_i >= (p-1) i / p^2, so theta_i = 0 mod p^N once (p-1) i >= N p^2.
    theta_cutoff_ = (N_ * p_ * p_ + e - 1) / e;
    const int n = theta_cutoff_;
    // pi^i / i! = (-1)^v pi^{i - e v} / (i!/p^v) with v = v_p(i!).
    std::vector<EisensteinElement> ex(n + 1);
    Int unit_fact = 1;
    int v = 0;
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            Int k = i;
            while (k % p_ == 0) {
                k /= p_;
                ++v;
            }
            unit_fact = mul_mod(unit_fact, k, mod_);
        }
        EisensteinElement term = EisensteinElement::pi_power(*this, i - e * v);
        Int scal = inv_mod(unit_fact, mod_);
        if (v % 2) scal = mod_reduce(-scal, mod_);
        ex[i] = term * EisensteinElement::from_int(*this, scal);
    }
    theta_ = new std::vector<EisensteinElement>(n + 1, EisensteinElement::zero(*this));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + p_ * j <= n; ++j) {
            EisensteinElement t = ex[i] * ex[j];
            if (j % 2) t = -t;
            (*theta_)[i + p_ * j] += t;
        }
    EisensteinElement z = EisensteinElement::zero(*this);
    for (const auto& th : *theta_) z += th;
    zeta_ = new EisensteinElement(z);
}

const std::vector<EisensteinElement>& FieldContext::theta() const { return *theta_; }
const EisensteinElement& FieldContext::zeta() const { return *zeta_; }

// ---------------------------------------------------------------- Z_q

UnramifiedElement::UnramifiedElement(const FieldContext* ctx, Coords c, int prec)
    : ctx_(ctx), c_(std::move(c)), prec_(std::min(prec, ctx->precision()))
{
    for (auto& x : c_) x = mod_reduce(x, ctx_->modulus());
}

UnramifiedElement UnramifiedElement::zero(const FieldContext& ctx)
{
    return UnramifiedElement(&ctx, Coords(ctx.degree(), 0), ctx.precision());
}

UnramifiedElement UnramifiedElement::from_int(const FieldContext& ctx, Int v)
{
    Coords c(ctx.degree(), 0);
    c[0] = v;
    return UnramifiedElement(&ctx, c, ctx.precision());
}

UnramifiedElement UnramifiedElement::lift(const FieldContext& ctx, GaloisField::Elem x)
{
    auto d = ctx.residue_field().digits(x);
    Coords c(d.begin(), d.end());
    return UnramifiedElement(&ctx, c, ctx.precision());
}

int UnramifiedElement::valuation() const
{
    int v = prec_;
    for (auto x : c_) v = std::min(v, dwork::valuation(x, ctx_->p(), prec_));
    return v;
}

GaloisField::Elem UnramifiedElement::residue() const
{
    std::vector<int> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = static_cast<int>(c_[i] % ctx_->p());
    return ctx_->residue_field().from_digits(d);
}

UnramifiedElement UnramifiedElement::operator+(const UnramifiedElement& o) const
{
    Coords c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + o.c_[i];
    return UnramifiedElement(ctx_, c, std::min(prec_, o.prec_));
}

UnramifiedElement UnramifiedElement::operator-(const UnramifiedElement& o) const
{
    Coords c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = c_[i] - o.c_[i];
    return UnramifiedElement(ctx_, c, std::min(prec_, o.prec_));
}

UnramifiedElement UnramifiedElement::operator-() const
{
    Coords c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return UnramifiedElement(ctx_, c, prec_);
}

UnramifiedElement UnramifiedElement::operator*(const UnramifiedElement& o) const
{
    Coords c(c_.size());
    ctx_->zq_mul(c_.data(), o.c_.data(), c.data());
    return UnramifiedElement(ctx_, c, std::min(prec_, o.prec_));
}

bool UnramifiedElement::operator==(const UnramifiedElement& o) const
{
    return (*this - o).valuation() >= std::min(prec_, o.prec_);
}

UnramifiedElement UnramifiedElement::pow(std::uint64_t e) const
{
    UnramifiedElement r = from_int(*ctx_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

UnramifiedElement UnramifiedElement::inverse() const
{
    GaloisField::Elem res = residue();
    if (res == 0) throw std::domain_error("UnramifiedElement::inverse: not a unit");
    UnramifiedElement y = lift(*ctx_, ctx_->residue_field().inv(res));
    UnramifiedElement two = from_int(*ctx_, 2);
    for (int k = 1; k < 2 * ctx_->precision(); k *= 2) y = y * (two - *this * y);
    y.prec_ = prec_;
    return y;
}

UnramifiedElement UnramifiedElement::sigma(int power) const
{
    Coords c(c_.size());
    ctx_->zq_sigma(c_.data(), c.data(), power);
    return UnramifiedElement(ctx_, c, prec_);
}

// ---------------------------------------------------------------- O

EisensteinElement::EisensteinElement(const FieldContext* ctx, Coords c, int prec)
    : ctx_(ctx), c_(std::move(c)), prec_(std::min(prec, ctx->pi_precision()))
{
    for (auto& x : c_) x = mod_reduce(x, ctx_->modulus());
}

EisensteinElement EisensteinElement::zero(const FieldContext& ctx)
{
    return EisensteinElement(&ctx, Coords((ctx.p() - 1) * ctx.degree(), 0), ctx.pi_precision());
}

EisensteinElement EisensteinElement::one(const FieldContext& ctx) { return from_int(ctx, 1); }

EisensteinElement EisensteinElement::from_int(const FieldContext& ctx, Int v)
{
    Coords c((ctx.p() - 1) * ctx.degree(), 0);
    c[0] = v;
    return EisensteinElement(&ctx, c, ctx.pi_precision());
}

EisensteinElement EisensteinElement::from_unramified(const UnramifiedElement& x)
{
    const FieldContext& ctx = *x.context();
    Coords c((ctx.p() - 1) * ctx.degree(), 0);
    std::copy(x.coords().begin(), x.coords().end(), c.begin());
    return EisensteinElement(&ctx, c, (ctx.p() - 1) * x.prec());
}

EisensteinElement EisensteinElement::pi_power(const FieldContext& ctx, int k)
{
    if (k < 0) throw std::domain_error("pi_power: negative exponent");
    const int e = ctx.p() - 1;
    int j = k % e, v = k / e;
    // pi^k = pi^j (pi^e)^v = pi^j (-p)^v
    Coords c(e * ctx.degree(), 0);
    if (v < ctx.precision()) {
        Int val = ipow(ctx.p(), v);
        if (v % 2) val = -val;
        c[j * ctx.degree()] = val;
    }
    return EisensteinElement(&ctx, c, ctx.pi_precision());
}

Int EisensteinElement::coeff(int j, int i) const
{
    if (!ctx_) return (j == 0 && i == 0) ? c_[0] : 0;
    return c_[j * ctx_->degree() + i];
}

UnramifiedElement EisensteinElement::component(int j) const
{
    const int a = ctx_->degree(), e = ctx_->ramification();
    Coords c(c_.begin() + j * a, c_.begin() + (j + 1) * a);
    // component j is known modulo p^{ceil((prec - j)/e)}
    int prec = prec_ > j ? (prec_ - j + e - 1) / e : 0;
    return UnramifiedElement(ctx_, c, prec);
}

EisensteinElement EisensteinElement::with_prec(int prec) const
{
    EisensteinElement r = *this;
    r.prec_ = std::min(prec, prec_);
    return r;
}

int EisensteinElement::ord_pi() const
{
    if (!ctx_) {
        if (c_[0] == 0) return prec_;
        throw std::logic_error("ord_pi of context-free constant");
    }
    const int a = ctx_->degree(), e = ctx_->ramification(), p = ctx_->p(), N = ctx_->precision();
    int best = prec_;
    for (int j = 0; j < e; ++j) {
        int v = N;
        for (int i = 0; i < a; ++i) v = std::min(v, dwork::valuation(c_[j * a + i], p, N));
        if (v < N) best = std::min(best, e * v + j);
    }
    return best;
}

bool EisensteinElement::is_one_unit() const
{
    EisensteinElement d = *this - one(*ctx_);
    return d.ord_pi() >= 1;
}

GaloisField::Elem EisensteinElement::residue() const { return component(0).residue(); }

void EisensteinElement::promote(const FieldContext* ctx)
{
    if (ctx_ || !ctx) return;
    Int v = c_[0];
    *this = from_int(*ctx, v);
}

EisensteinElement promote_like(const EisensteinElement& x, const FieldContext* ctx)
{
    EisensteinElement r = x;
    r.promote(ctx);
    return r;
}

EisensteinElement EisensteinElement::operator+(const EisensteinElement& o) const
{
    EisensteinElement r = *this;
    r += o;
    return r;
}

EisensteinElement EisensteinElement::operator-(const EisensteinElement& o) const
{
    EisensteinElement r = *this;
    r -= o;
    return r;
}

EisensteinElement EisensteinElement::operator*(const EisensteinElement& o) const
{
    EisensteinElement r = *this;
    r *= o;
    return r;
}

EisensteinElement EisensteinElement::operator/(const EisensteinElement& o) const
{
    EisensteinElement r = *this;
    r /= o;
    return r;
}

EisensteinElement EisensteinElement::operator-() const
{
    EisensteinElement r = *this;
    if (!ctx_) {
        r.c_[0] = -c_[0];
        return r;
    }
    Int m = ctx_->modulus();
    for (auto& x : r.c_) x = x ? m - x : 0;
    return r;
}

EisensteinElement& EisensteinElement::operator+=(const EisensteinElement& o)
{
    if (!ctx_ && !o.ctx_) {
        c_[0] += o.c_[0];
        return *this;
    }
    promote(o.ctx_);
    if (!o.ctx_) return *this += promote_like(o, ctx_);
    Int m = ctx_->modulus();
    for (size_t i = 0; i < c_.size(); ++i) {
        Int s = c_[i] + o.c_[i];
        c_[i] = s >= m ? s - m : s;
    }
    prec_ = std::min(prec_, o.prec_);
    return *this;
}

EisensteinElement& EisensteinElement::operator-=(const EisensteinElement& o)
{
    if (!ctx_ && !o.ctx_) {
        c_[0] -= o.c_[0];
        return *this;
    }
    promote(o.ctx_);
    if (!o.ctx_) return *this -= promote_like(o, ctx_);
    Int m = ctx_->modulus();
    for (size_t i = 0; i < c_.size(); ++i) {
        Int s = c_[i] - o.c_[i];
        c_[i] = s < 0 ? s + m : s;
    }
    prec_ = std::min(prec_, o.prec_);
    return *this;
}

EisensteinElement& EisensteinElement::operator*=(const EisensteinElement& o)
{
    if (!ctx_ && !o.ctx_) {
        c_[0] *= o.c_[0];
        return *this;
    }
    promote(o.ctx_);
    if (!o.ctx_) return *this *= promote_like(o, ctx_);
    Coords out(c_.size());
    ctx_->eis_mul(c_.data(), o.c_.data(), out.data());
    c_ = std::move(out);
    prec_ = std::min(prec_, o.prec_);
    return *this;
}

EisensteinElement& EisensteinElement::operator/=(const EisensteinElement& o)
{
    if (!o.ctx_) {
        if (!ctx_) throw std::logic_error("division of context-free constants");
        return *this /= promote_like(o, ctx_);
    }
    promote(o.ctx_);
    return *this *= o.inverse();
}

bool EisensteinElement::operator==(const EisensteinElement& o) const
{
    if (!ctx_ && !o.ctx_) return c_[0] == o.c_[0];
    EisensteinElement d = *this - o;
    return d.ord_pi() >= d.prec_;
}

void EisensteinElement::add_product(const EisensteinElement& x, const EisensteinElement& y)
{
    if (!ctx_ || !x.ctx_ || !y.ctx_) {
        *this += x * y;
        return;
    }
    ctx_->eis_add_mul(c_.data(), x.c_.data(), y.c_.data());
    prec_ = std::min(prec_, std::min(x.prec_, y.prec_));
}

EisensteinElement EisensteinElement::pow(std::uint64_t e) const
{
    if (!ctx_) throw std::logic_error("pow of context-free constant");
    EisensteinElement r = one(*ctx_), b = *this;
    r.prec_ = prec_;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

EisensteinElement EisensteinElement::inverse() const
{
    if (!ctx_) throw std::logic_error("inverse of context-free constant");
    UnramifiedElement c0 = component(0);
    if (c0.residue() == 0) throw std::domain_error("EisensteinElement::inverse: not a unit");
    EisensteinElement y = from_unramified(c0.inverse());
    EisensteinElement two = from_int(*ctx_, 2);
    for (int k = 1; k < 2 * ctx_->pi_precision(); k *= 2) y = y * (two - *this * y);
    y.prec_ = prec_;
    return y;
}

EisensteinElement EisensteinElement::divide_by_int(Int k) const
{
    if (k == 0) throw std::domain_error("divide_by_int: zero");
    const int p = ctx_->p(), e = ctx_->ramification();
    int v = 0;
    Int w = k;
    while (w % p == 0) {
        w /= p;
        ++v;
    }
    EisensteinElement r = *this * from_int(*ctx_, inv_mod(mod_reduce(w, ctx_->modulus()), ctx_->modulus()));
    if (v == 0) return r;
    if (r.ord_pi() < std::min(e * v, r.prec_)) throw std::domain_error("divide_by_int: not divisible");
    Int pv = ipow(p, v);
    for (auto& x : r.c_) x /= pv;
    r.prec_ = std::max(0, r.prec_ - e * v);
    return r;
}

EisensteinElement EisensteinElement::divide_by_pi(int k) const
{
    const int e = ctx_->ramification(), a = ctx_->degree(), p = ctx_->p();
    EisensteinElement r = *this;
    for (int step = 0; step < k; ++step) {
        if (r.ord_pi() < std::min(1, r.prec_)) throw std::domain_error("divide_by_pi: not divisible");
        // x = c_0 + c_1 pi + ...; x / pi = c_1 + c_2 pi + ... + (c_0 / p)(-pi^{e-1}).
        Coords out(r.c_.size(), 0);
        for (int j = 1; j < e; ++j)
            for (int i = 0; i < a; ++i) out[(j - 1) * a + i] = r.c_[j * a + i];
        for (int i = 0; i < a; ++i) out[(e - 1) * a + i] -= r.c_[i] / p;
        r = EisensteinElement(ctx_, out, std::max(0, r.prec_ - 1));
    }
    return r;
}

EisensteinElement EisensteinElement::sigma(int power) const
{
    if (!ctx_) return *this;
    const int a = ctx_->degree(), e = ctx_->ramification();
    if (a == 1) return *this;
    Coords out(c_.size());
    for (int j = 0; j < e; ++j) ctx_->zq_sigma(c_.data() + j * a, out.data() + j * a, power);
    return EisensteinElement(ctx_, out, prec_);
}

EisensteinElement EisensteinElement::rebase(const FieldContext& ctx) const
{
    if (!ctx_) return promote_like(*this, &ctx);
    if (ctx.p() != ctx_->p() || ctx.degree() != ctx_->degree())
        throw std::invalid_argument("rebase: incompatible contexts");
    return EisensteinElement(&ctx, c_, std::min(prec_, ctx.pi_precision()));
}

std::ostream& operator<<(std::ostream& os, const EisensteinElement& x)
{
    os << "[";
    for (size_t i = 0; i < x.coords().size(); ++i) os << (i ? "," : "") << x.coords()[i];
    os << "]@" << x.prec_pi();
    return os;
}

int agreement(const EisensteinElement& x, const EisensteinElement& y)
{
    return (x - y).ord_pi();
}

}  // namespace dwork
