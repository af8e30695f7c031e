#include "dwork/kappa.hpp"

#include <stdexcept>

namespace dwork {

KappaExponent KappaExponent::integer(long long k)
{
    KappaExponent r;
    r.exact_ = true;
    r.value_ = static_cast<long>(k);
    return r;
}

KappaExponent KappaExponent::from_digits(int p, const std::vector<int>& digits)
{
    if (digits.empty()) throw std::invalid_argument("kappa: empty digit string");
    KappaExponent r;
    r.exact_ = false;
    r.p_ = p;
    r.digits_known_ = static_cast<int>(digits.size());
    mpz_class scale = 1;
    for (int d : digits) {
        if (d < 0 || d >= p) throw std::invalid_argument("kappa: digit out of range");
        r.value_ += scale * d;
        scale *= p;
    }
    return r;
}

std::vector<int> KappaExponent::digits(int p, int n) const
{
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    mpz_class v;
    mpz_fdiv_r(v.get_mpz_t(), value_.get_mpz_t(), m.get_mpz_t());
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
        mpz_class d;
        mpz_fdiv_r_ui(d.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
        out[i] = static_cast<int>(d.get_si());
        mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return out;
}

KappaExponent KappaExponent::shifted(long long t) const
{
    KappaExponent r = *this;
    r.value_ += static_cast<long>(t);
    if (!exact_ && r.value_ < 0) {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(digits_known_));
        mpz_fdiv_r(r.value_.get_mpz_t(), r.value_.get_mpz_t(), m.get_mpz_t());
    }
    return r;
}

KappaExponent KappaExponent::times(long long m) const
{
    KappaExponent r = *this;
    r.value_ *= static_cast<long>(m);
    if (!exact_ && m != 0) {
        long long k = m;
        while (k % p_ == 0) {
            k /= p_;
            ++r.digits_known_;
        }
    }
    return r;
}

std::string KappaExponent::to_string() const
{
    if (exact_) return value_.get_str();
    std::string s;
    for (int d : digits(p_, digits_known_)) s += static_cast<char>('0' + d);
    return "p-adic digits " + s;
}

}  // namespace dwork
