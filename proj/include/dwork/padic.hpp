#ifndef DWORK_PADIC_HPP
#define DWORK_PADIC_HPP

#include <climits>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "dwork/galois_field.hpp"
#include "dwork/modular.hpp"

namespace dwork {

using Coords = boost::container::small_vector<Int, 8>;

class UnramifiedElement;
class EisensteinElement;

// Z_q = Z_p[t]/(h) modulo p^N together with O = Z_q[pi]/(pi^{p-1} + p).
class FieldContext {
public:
    static std::shared_ptr<const FieldContext> make(int p, int a, int N);

    int p() const { return p_; }
    int degree() const { return a_; }
    int precision() const { return N_; }
    int ramification() const { return p_ - 1; }
    int pi_precision() const { return (p_ - 1) * N_; }
    Int modulus() const { return mod_; }
    std::uint64_t q() const { return residue_->order(); }
    const GaloisField& residue_field() const { return *residue_; }
    const std::vector<Int>& defining_poly() const { return h_; }
    const std::vector<Int>& frobenius_image() const { return sigma_t_; }

    // Largest index i with theta_i possibly nonzero mod p^N.
    int theta_cutoff() const { return theta_cutoff_; }
    const std::vector<EisensteinElement>& theta() const;
    const EisensteinElement& zeta() const;

    // Raw kernels on coordinate arrays.
    void zq_mul(const Int* x, const Int* y, Int* out) const;
    void zq_sigma(const Int* x, Int* out, int power) const;
    void eis_mul(const Int* x, const Int* y, Int* out) const;
    void eis_add_mul(Int* acc, const Int* x, const Int* y) const;

private:
    FieldContext(int p, int a, int N);
    void init_frobenius();
    void init_theta();

    int p_, a_, N_;
    Int mod_;
    std::shared_ptr<const GaloisField> residue_;
    std::vector<Int> h_;
    std::vector<std::vector<Int>> reduce_;
    std::vector<Int> sigma_t_;
    std::vector<std::vector<Int>> sigma_pow_;
    int theta_cutoff_ = 0;
    std::vector<EisensteinElement>* theta_ = nullptr;
    EisensteinElement* zeta_ = nullptr;

public:
    ~FieldContext();
    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;
};

using ContextPtr = std::shared_ptr<const FieldContext>;

// Contexts are interned: equal (p, a, N) share one instance for the process lifetime.
inline ContextPtr make_field_context(int p, int a, int N) { return FieldContext::make(p, a, N); }

// Element of Z_q known modulo p^prec.
class UnramifiedElement {
public:
    UnramifiedElement() = default;
    UnramifiedElement(const FieldContext* ctx, Coords c, int prec);

    static UnramifiedElement zero(const FieldContext& ctx);
    static UnramifiedElement from_int(const FieldContext& ctx, Int v);
    static UnramifiedElement lift(const FieldContext& ctx, GaloisField::Elem x);

    const FieldContext* context() const { return ctx_; }
    const Coords& coords() const { return c_; }
    int prec() const { return prec_; }
    int valuation() const;
    GaloisField::Elem residue() const;

    UnramifiedElement operator+(const UnramifiedElement& o) const;
    UnramifiedElement operator-(const UnramifiedElement& o) const;
    UnramifiedElement operator*(const UnramifiedElement& o) const;
    UnramifiedElement operator-() const;
    bool operator==(const UnramifiedElement& o) const;
    bool operator!=(const UnramifiedElement& o) const { return !(*this == o); }

    UnramifiedElement pow(std::uint64_t e) const;
    UnramifiedElement inverse() const;
    UnramifiedElement sigma(int power = 1) const;

private:
    const FieldContext* ctx_ = nullptr;
    Coords c_;
    int prec_ = 0;
};

// Element of O = Z_q[pi]/(pi^{p-1} + p), coordinates c[j*a + i] of t^i pi^j,
// known modulo pi^prec.  A default or integer-constructed element carries no
// context and behaves as an exact integer until combined with one that does.
class EisensteinElement {
public:
    EisensteinElement() : c_{0}, prec_(INT_MAX) {}
    EisensteinElement(int v) : c_{v}, prec_(INT_MAX) {}
    EisensteinElement(const FieldContext* ctx, Coords c, int prec);

    static EisensteinElement zero(const FieldContext& ctx);
    static EisensteinElement one(const FieldContext& ctx);
    static EisensteinElement from_int(const FieldContext& ctx, Int v);
    static EisensteinElement from_unramified(const UnramifiedElement& x);
    static EisensteinElement pi_power(const FieldContext& ctx, int k);

    const FieldContext* context() const { return ctx_; }
    const Coords& coords() const { return c_; }
    Int coeff(int j, int i) const;
    UnramifiedElement component(int j) const;
    int prec_pi() const { return prec_; }
    EisensteinElement with_prec(int prec) const;

    // ord_pi, capped at the precision (an element zero to its precision returns prec).
    int ord_pi() const;
    bool is_zero() const { return ord_pi() >= prec_; }
    bool is_one_unit() const;
    GaloisField::Elem residue() const;

    EisensteinElement operator+(const EisensteinElement& o) const;
    EisensteinElement operator-(const EisensteinElement& o) const;
    EisensteinElement operator*(const EisensteinElement& o) const;
    EisensteinElement operator/(const EisensteinElement& o) const;
    EisensteinElement operator-() const;
    EisensteinElement& operator+=(const EisensteinElement& o);
    EisensteinElement& operator-=(const EisensteinElement& o);
    EisensteinElement& operator*=(const EisensteinElement& o);
    EisensteinElement& operator/=(const EisensteinElement& o);
    // True when the difference vanishes to the smaller of the two precisions.
    bool operator==(const EisensteinElement& o) const;
    bool operator!=(const EisensteinElement& o) const { return !(*this == o); }

    // acc += x * y without temporaries; acc must already carry a context.
    void add_product(const EisensteinElement& x, const EisensteinElement& y);

    EisensteinElement pow(std::uint64_t e) const;
    EisensteinElement inverse() const;
    EisensteinElement divide_by_int(Int k) const;
    EisensteinElement divide_by_pi(int k) const;
    EisensteinElement sigma(int power = 1) const;

    // Re-express in a larger context whose residue field contains this one
    // only when both share p, a; used for precision changes.
    EisensteinElement rebase(const FieldContext& ctx) const;

private:
    void promote(const FieldContext* ctx);
    friend EisensteinElement promote_like(const EisensteinElement& x, const FieldContext* ctx);

    const FieldContext* ctx_ = nullptr;
    Coords c_;
    int prec_;
};

std::ostream& operator<<(std::ostream& os, const EisensteinElement& x);

// ord_pi(x - y) capped at the common precision.
int agreement(const EisensteinElement& x, const EisensteinElement& y);

}  // namespace dwork

#endif
