#ifndef DWORK_KAPPA_HPP
#define DWORK_KAPPA_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace dwork {

// A p-adic integer exponent: either an exact integer or a residue mod p^digits.
class KappaExponent {
public:
    KappaExponent() = default;

    static KappaExponent integer(long long k);
    // Base-p digits, least significant first.
    static KappaExponent from_digits(int p, const std::vector<int>& digits);

    bool is_exact() const { return exact_; }
    bool is_plain_integer() const { return exact_ && value_ >= 0; }
    const mpz_class& value() const { return value_; }
    int known_digits() const { return digits_known_; }
    int p() const { return p_; }
    std::vector<int> digits(int p, int n) const;

    KappaExponent shifted(long long t) const;
    KappaExponent times(long long m) const;

    std::string to_string() const;

private:
    bool exact_ = true;
    int p_ = 0;
    int digits_known_ = 0;
    mpz_class value_ = 0;
};

}  // namespace dwork

#endif
