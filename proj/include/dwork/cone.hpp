#ifndef DWORK_CONE_HPP
#define DWORK_CONE_HPP

#include <vector>

namespace dwork {

using Exponent = std::vector<int>;

int weight(const Exponent& v);

// Rational polyhedral cone generated by finitely many integer vectors, stored
// by its linear span and facet inequalities.
class Cone {
public:
    Cone() = default;
    Cone(int dim, std::vector<Exponent> generators);

    int dim() const { return dim_; }
    const std::vector<Exponent>& generators() const { return gens_; }
    bool contains(const Exponent& v) const;
    // v and -v both in the cone: the lattice points of the lineality space.
    bool in_lineality(const Exponent& v) const { return contains(v) && contains(negate(v)); }
    bool is_pointed() const;

    // Lattice points with weight <= D, ordered by weight then lexicographically.
    std::vector<Exponent> lattice_points(int D) const;
    std::vector<Exponent> lineality_points(int D) const;

    static Exponent negate(const Exponent& v);

private:
    bool in_span(const Exponent& v) const;

    int dim_ = 0;
    std::vector<Exponent> gens_;
    std::vector<std::vector<long long>> span_basis_;
    std::vector<std::vector<long long>> facets_;
};

}  // namespace dwork

#endif
