#include "dwork/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>

namespace dwork {

namespace {

template <class T>
std::vector<T> reduce_cyclic(std::vector<T> full, int p)
{
    // full has length p (exponents mod p); eliminate zeta^{p-1}.
    std::vector<T> out(p - 1);
    for (int i = 0; i < p - 1; ++i) out[i] = full[i] - full[p - 1];
    return out;
}

template <class T>
std::vector<T> mul_cyclic(const std::vector<T>& x, const std::vector<T>& y, int p)
{
    std::vector<T> full(p, T(0));
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) full[(i + j) % p] += x[i] * y[j];
    }
    return reduce_cyclic(full, p);
}

}  // namespace

CyclotomicInt::CyclotomicInt(int p) : p_(p), c_(p - 1, 0) {}

CyclotomicInt::CyclotomicInt(int p, std::vector<mpz_class> coords) : p_(p), c_(std::move(coords))
{
    if (static_cast<int>(c_.size()) != p - 1) throw std::invalid_argument("CyclotomicInt: wrong length");
}

CyclotomicInt CyclotomicInt::from_int(int p, long v)
{
    CyclotomicInt r(p);
    r.c_[0] = v;
    return r;
}

CyclotomicInt CyclotomicInt::zeta_power(int p, int k)
{
    std::vector<mpz_class> counts(p, 0);
    counts[((k % p) + p) % p] = 1;
    return from_counts(p, counts);
}

CyclotomicInt CyclotomicInt::from_counts(int p, const std::vector<mpz_class>& counts)
{
    return CyclotomicInt(p, reduce_cyclic(counts, p));
}

bool CyclotomicInt::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CyclotomicInt::is_integer() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const
{
    CyclotomicInt r = *this;
    r += o;
    return r;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o)
{
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const
{
    CyclotomicInt r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-() const
{
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const
{
    return CyclotomicInt(p_, mul_cyclic(c_, o.c_, p_));
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const { return p_ == o.p_ && c_ == o.c_; }

CyclotomicInt CyclotomicInt::scaled(const mpz_class& k) const
{
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
}

CyclotomicInt CyclotomicInt::divided_by(const mpz_class& k) const
{
    CyclotomicInt r = *this;
    for (auto& x : r.c_) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()))
            throw std::domain_error("CyclotomicInt: inexact division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

CyclotomicInt CyclotomicInt::galois(int j) const
{
    std::vector<mpz_class> full(p_, 0);
    for (int i = 0; i < p_ - 1; ++i) full[(static_cast<long>(i) * j % p_ + p_) % p_] += c_[i];
    return CyclotomicInt(p_, reduce_cyclic(full, p_));
}

std::string CyclotomicInt::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << "]";
    return os.str();
}

CyclotomicNumber::CyclotomicNumber(int p) : p_(p), c_(p - 1, 0) {}

CyclotomicNumber::CyclotomicNumber(const CyclotomicInt& x) : p_(x.p()), c_(x.p() - 1)
{
    for (int i = 0; i < p_ - 1; ++i) c_[i] = mpq_class(x.coords()[i]);
}

bool CyclotomicNumber::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CyclotomicNumber::is_integral() const
{
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

CyclotomicInt CyclotomicNumber::to_int() const
{
    if (!is_integral()) throw std::domain_error("CyclotomicNumber: not integral");
    std::vector<mpz_class> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].get_num();
    return CyclotomicInt(p_, out);
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const
{
    CyclotomicNumber r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const
{
    CyclotomicNumber r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const
{
    CyclotomicNumber r(p_);
    r.c_ = mul_cyclic(c_, o.c_, p_);
    return r;
}

CyclotomicNumber CyclotomicNumber::inverse() const
{
    // Solve (multiplication-by-x matrix) y = 1 over Q.
    const int n = p_ - 1;
    if (is_zero()) throw std::domain_error("CyclotomicNumber: inverse of zero");
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1, 0));
    for (int j = 0; j < n; ++j) {
        CyclotomicNumber basis(p_);
        basis.c_[j] = 1;
        CyclotomicNumber col = *this * basis;
        for (int i = 0; i < n; ++i) m[i][j] = col.c_[i];
    }
    m[0][n] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("CyclotomicNumber: singular");
        std::swap(m[piv], m[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (int k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    CyclotomicNumber y(p_);
    for (int i = 0; i < n; ++i) y.c_[i] = m[i][n] / m[i][i];
    return y;
}

CyclotomicNumber CyclotomicNumber::operator/(const CyclotomicNumber& o) const { return *this * o.inverse(); }

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const { return p_ == o.p_ && c_ == o.c_; }

}  // namespace dwork
