#ifndef DWORK_CYCLOTOMIC_HPP
#define DWORK_CYCLOTOMIC_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace dwork {

// Exact element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}.
class CyclotomicInt {
public:
    CyclotomicInt() = default;
    explicit CyclotomicInt(int p);
    CyclotomicInt(int p, std::vector<mpz_class> coords);

    static CyclotomicInt from_int(int p, long v);
    static CyclotomicInt zeta_power(int p, int k);
    // sum_k counts[k] zeta^k for k = 0..p-1.
    static CyclotomicInt from_counts(int p, const std::vector<mpz_class>& counts);

    int p() const { return p_; }
    const std::vector<mpz_class>& coords() const { return c_; }
    bool is_zero() const;
    bool is_integer() const;

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;
    CyclotomicInt operator-() const;
    CyclotomicInt& operator+=(const CyclotomicInt& o);
    bool operator==(const CyclotomicInt& o) const;
    bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

    CyclotomicInt scaled(const mpz_class& k) const;
    // Exact division by an integer; throws if not divisible.
    CyclotomicInt divided_by(const mpz_class& k) const;
    // Galois action zeta -> zeta^j.
    CyclotomicInt galois(int j) const;

    std::string to_string() const;

private:
    int p_ = 0;
    std::vector<mpz_class> c_;
};

// Element of Q(zeta_p), same basis, rational coordinates.
class CyclotomicNumber {
public:
    CyclotomicNumber() = default;
    explicit CyclotomicNumber(int p);
    explicit CyclotomicNumber(const CyclotomicInt& x);

    int p() const { return p_; }
    const std::vector<mpq_class>& coords() const { return c_; }
    bool is_zero() const;
    bool is_integral() const;
    CyclotomicInt to_int() const;

    CyclotomicNumber operator+(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const CyclotomicNumber& o) const;
    CyclotomicNumber operator/(const CyclotomicNumber& o) const;
    CyclotomicNumber inverse() const;
    bool operator==(const CyclotomicNumber& o) const;

private:
    int p_ = 0;
    std::vector<mpq_class> c_;
};

}  // namespace dwork

#endif
