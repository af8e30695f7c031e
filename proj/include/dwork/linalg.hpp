#ifndef DWORK_LINALG_HPP
#define DWORK_LINALG_HPP

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "dwork/padic.hpp"

namespace Eigen {
template <>
struct NumTraits<dwork::EisensteinElement> : GenericNumTraits<dwork::EisensteinElement> {
    using Real = dwork::EisensteinElement;
    using NonInteger = dwork::EisensteinElement;
    using Literal = dwork::EisensteinElement;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 64
    };
};
}  // namespace Eigen

namespace dwork {

using Matrix = Eigen::Matrix<EisensteinElement, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<EisensteinElement, Eigen::Dynamic, 1>;
// Truncated power series in T, lowest degree first.
using TSeries = std::vector<EisensteinElement>;

Matrix zero_matrix(int rows, int cols, const FieldContext& ctx);
Vector zero_vector(int n, const FieldContext& ctx);
Matrix identity_matrix(int n, const FieldContext& ctx);

Matrix mat_mul(const Matrix& a, const Matrix& b, const FieldContext& ctx);
Vector mat_vec(const Matrix& a, const Vector& x, const FieldContext& ctx);
Matrix sigma_matrix(const Matrix& m, int power = 1);
EisensteinElement trace(const Matrix& m, const FieldContext& ctx);
// Smallest ord_pi over entries that are nonzero to their precision; prec if none.
int min_ord(const Matrix& m, int prec);

// 1, c_1, ..., c_K of det(1 - M T), by the division-free bordering recursion
// det(1 - M_{r+1} T) = det(1 - M_r T) (1 - a T - sum_j R M_r^j C T^{j+2}).
TSeries fredholm_coeffs(const Matrix& m, int K, const FieldContext& ctx);

TSeries series_mul(const TSeries& f, const TSeries& g, int K);
// 1/f for f with unit constant term.
TSeries series_inv(const TSeries& f, int K);
// f(c T)
TSeries series_scale(const TSeries& f, const EisensteinElement& c);

// Stabilization trail of a ratio sequence r_k; stable once three consecutive
// ratios agree to the target.
struct RatioTrail {
    EisensteinElement value;
    std::vector<EisensteinElement> ratios;
    std::vector<int> agreements;
    int certified_pi = 0;
    bool stable = false;
};

RatioTrail stabilize_ratios(const std::function<EisensteinElement(int)>& term, int target_pi, int max_k);

// tr(M^{k+1}) / tr(M^k) for increasing k.
RatioTrail trace_power_ratio(const Matrix& m, int target_pi, int max_k, const FieldContext& ctx);

}  // namespace dwork

#endif
