#ifndef DWORK_GALOIS_FIELD_HPP
#define DWORK_GALOIS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace dwork {

// F_p-polynomials as coefficient vectors, lowest degree first.
using FpPoly = std::vector<int>;

bool fp_is_irreducible(const FpPoly& h, int p);

// Lexicographically smallest monic irreducible polynomial of degree k over F_p,
// ordering candidates by the integer sum_{i<k} c_i p^i.
FpPoly smallest_irreducible(int p, int k);

// The finite field F_{p^k} = F_p[t]/(h).  Elements are coded as the integer
// sum c_i p^i of their coordinates in the basis 1, t, ..., t^{k-1}.
class GaloisField {
public:
    using Elem = std::uint64_t;

    GaloisField(int p, int k);

    int characteristic() const { return p_; }
    int degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    const FpPoly& modulus() const { return h_; }

    std::vector<int> digits(Elem x) const;
    Elem from_digits(const std::vector<int>& d) const;
    Elem from_int(long v) const;

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const;
    Elem pow(Elem x, std::uint64_t e) const;
    Elem inv(Elem x) const;
    Elem frobenius(Elem x) const { return pow(x, static_cast<std::uint64_t>(p_)); }
    int trace(Elem x) const;

    // Smallest (by code) element generating the multiplicative group.
    Elem generator() const { return gen_; }
    bool is_primitive(Elem x) const;

    // Smallest root in this field of an F_p-polynomial whose roots lie here.
    Elem smallest_root(const FpPoly& f) const;
    Elem eval(const FpPoly& f, Elem x) const;

    // Image of x in F_{p^k} under the embedding sending the generator t of
    // `sub` to the smallest root of sub's modulus.
    Elem embed_from(const GaloisField& sub, Elem x) const;

    // Discrete-log tables relative to generator(); built on demand.
    void build_tables() const;
    bool has_tables() const { return !exp_.empty(); }
    Elem exp_of(std::uint64_t j) const { return exp_[j]; }
    std::uint64_t log_of(Elem x) const { return log_[x]; }
    const std::vector<std::uint8_t>& trace_by_log() const { return trace_by_log_; }

private:
    void mul_digits(const int* x, const int* y, int* out) const;

    int p_, k_;
    std::uint64_t q_;
    FpPoly h_;
    std::vector<int> trace_basis_;
    std::vector<std::uint64_t> group_factors_;
    Elem gen_ = 1;
    mutable std::vector<std::uint32_t> exp_, log_;
    mutable std::vector<std::uint8_t> trace_by_log_;
};

std::shared_ptr<const GaloisField> galois_field(int p, int k);

}  // namespace dwork

#endif
