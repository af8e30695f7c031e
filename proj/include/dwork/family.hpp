#ifndef DWORK_FAMILY_HPP
#define DWORK_FAMILY_HPP

#include <memory>
#include <string>
#include <vector>

#include "dwork/cone.hpp"
#include "dwork/galois_field.hpp"

namespace dwork {

struct FamilyTerm {
    Exponent r;               // Lambda exponent, length s
    Exponent u;               // X exponent, length n
    GaloisField::Elem coeff;  // nonzero element of F_q
};

// f(Lambda, X) = sum a_{r,u} Lambda^r X^u over F_q.
class LaurentFamily {
public:
    LaurentFamily(int p, int a, int s, int n, std::vector<FamilyTerm> terms);

    int p() const { return p_; }
    int a() const { return a_; }
    int s() const { return s_; }
    int n() const { return n_; }
    std::uint64_t q() const { return field_->order(); }
    const std::vector<FamilyTerm>& terms() const { return terms_; }
    int omega1() const { return omega1_; }
    int omega2() const { return omega2_; }
    const Cone& lambda_cone() const { return cone1_; }
    const Cone& x_cone() const { return cone2_; }
    const GaloisField& base_field() const { return *field_; }

    // Combined exponent (r, u) of each term, length s + n.
    Exponent weight_vector(size_t term) const;

private:
    int p_, a_, s_, n_;
    std::vector<FamilyTerm> terms_;
    int omega1_ = 0, omega2_ = 0;
    Cone cone1_, cone2_;
    std::shared_ptr<const GaloisField> field_;
};

}  // namespace dwork

#endif
