#ifndef DWORK_PADIC_CORE_HPP
#define DWORK_PADIC_CORE_HPP

#include <vector>

#include "dwork/cyclotomic.hpp"
#include "dwork/kappa.hpp"
#include "dwork/padic.hpp"

namespace dwork {

UnramifiedElement teichmuller(GaloisField::Elem x, const FieldContext& ctx);
UnramifiedElement frobenius_sigma(const UnramifiedElement& x, int power = 1);

std::vector<EisensteinElement> theta_coeffs(const FieldContext& ctx, int i_max);

EisensteinElement zeta_p_embed(const CyclotomicInt& c, const FieldContext& ctx);

EisensteinElement unit_pow_kappa(const EisensteinElement& u, const KappaExponent& kappa);

// pi-adic digit expansion x = sum_k delta_k pi^k, each delta_k given by its
// coordinates in {0..p-1} with respect to 1, t, ..., t^{a-1}.
std::vector<std::vector<int>> pi_digits(const EisensteinElement& x);
EisensteinElement from_pi_digits(const FieldContext& ctx, const std::vector<std::vector<int>>& digits);

EisensteinElement from_rational(const FieldContext& ctx, const mpq_class& v);

// Z_q inside Z_{q^d}: t -> the Hensel lift of the smallest root of h_q.
class SubringEmbedding {
public:
    SubringEmbedding(const FieldContext& small, const FieldContext& big);

    UnramifiedElement map(const UnramifiedElement& x) const;
    EisensteinElement map(const EisensteinElement& x) const;
    // Inverse on the image; throws if x is not in the image to its precision.
    EisensteinElement project(const EisensteinElement& x) const;

private:
    const FieldContext* small_;
    const FieldContext* big_;
    std::vector<std::vector<Int>> powers_;  // coordinates of rho^i in Z_{q^d}
    std::vector<int> pivots_;
    std::vector<std::vector<Int>> solve_;   // a x a inverse on pivot rows
};

}  // namespace dwork

#endif
