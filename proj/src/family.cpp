#include "dwork/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace dwork {

LaurentFamily::LaurentFamily(int p, int a, int s, int n, std::vector<FamilyTerm> terms)
    : p_(p), a_(a), s_(s), n_(n), terms_(std::move(terms))
{
    if (s < 1 || n < 1) throw std::invalid_argument("family: s and n must be positive");
    if (terms_.empty()) throw std::invalid_argument("family: no terms");
    field_ = galois_field(p, a);
    std::vector<Exponent> g1, g2;
    for (size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (static_cast<int>(t.r.size()) != s || static_cast<int>(t.u.size()) != n)
            throw std::invalid_argument("family: exponent length mismatch");
        if (t.coeff == 0 || t.coeff >= field_->order()) throw std::invalid_argument("family: coefficient must be a nonzero field element");
        for (size_t j = 0; j < i; ++j)
            if (terms_[j].r == t.r && terms_[j].u == t.u) throw std::invalid_argument("family: duplicate term");
        omega1_ = std::max(omega1_, weight(t.r));
        omega2_ = std::max(omega2_, weight(t.u));
        g1.push_back(t.r);
        g2.push_back(t.u);
    }
    cone1_ = Cone(s, g1);
    cone2_ = Cone(n, g2);
}

Exponent LaurentFamily::weight_vector(size_t term) const
{
    Exponent w = terms_[term].r;
    w.insert(w.end(), terms_[term].u.begin(), terms_[term].u.end());
    return w;
}

}  // namespace dwork
