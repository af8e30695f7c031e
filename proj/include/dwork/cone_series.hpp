#ifndef DWORK_CONE_SERIES_HPP
#define DWORK_CONE_SERIES_HPP

#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dwork/cone.hpp"
#include "dwork/ff_counting.hpp"
#include "dwork/padic.hpp"

namespace dwork {

// Which exponents a truncated series keeps: per-block weight bounds on the
// Lambda block (first s coordinates), the X block (next n) and an optional
// trailing Y block.  A negative bound means unbounded.
struct Window {
    int s = 0, n = 0, y = 0;
    int d_lambda = -1, d_x = -1, d_y = -1;

    bool contains(const Exponent& e) const;
    // Necessary condition used for pruning: every coordinate within the
    // per-block bound.
    bool box_contains(const Exponent& lo, const Exponent& hi) const;
};

// Truncated Laurent series sum c_e Lambda^r X^u (Y^i), e = (r, u[, i]).
// tail_bound is a certified lower bound, in pi-units, on ord_pi of every
// coefficient that is not stored.
template <class Coeff>
class BasicConeSeries {
public:
    using Map = std::map<Exponent, Coeff>;

    BasicConeSeries() = default;
    BasicConeSeries(const Window& w, int tail_bound) : window_(w), tail_(tail_bound) {}

    const Window& window() const { return window_; }
    int tail_bound() const { return tail_; }
    void set_tail_bound(int t) { tail_ = t; }
    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Coeff coeff(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff() : it->second;
    }
    void add(const Exponent& e, const Coeff& c)
    {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) it->second += c;
    }
    void set(const Exponent& e, const Coeff& c) { terms_[e] = c; }
    void erase_if(const std::function<bool(const Exponent&, const Coeff&)>& pred)
    {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = pred(it->first, it->second) ? terms_.erase(it) : std::next(it);
    }

private:
    Window window_;
    int tail_ = INT_MAX;
    Map terms_;
};

using ConeSeries = BasicConeSeries<EisensteinElement>;

// A lifted monomial coeff * Lambda^r X^u, exponent = (r, u).
struct LiftedTerm {
    Exponent exponent;
    EisensteinElement coeff;
};

// Teichmueller-lifted terms of the family over the degree-a context.
std::vector<LiftedTerm> lift_family(const LaurentFamily& fam, const FieldContext& ctx);
// Terms of the fiber at a closed point, X block only, over a degree a*d context.
std::vector<LiftedTerm> lift_fiber(const LaurentFamily& fam, const ClosedPoint& pt, const FieldContext& ctx);

// pi^i / i! as an element of O.
EisensteinElement pi_power_over_factorial(const FieldContext& ctx, int i);

// Product of the series truncated to the window; products whose valuation
// reaches the working precision are dropped.
ConeSeries multiply(const ConeSeries& f, const ConeSeries& g, const Window& out);

// exp(pi * sum_b c_b M_b): each single-term exponential is expanded to index
// i_max.  With with_y, a Y variable per term records the index i_b.
ConeSeries exp_pi_poly(const std::vector<LiftedTerm>& terms, const Window& w, int i_max, bool with_y,
                       const FieldContext& ctx);

// exp pi (f(Lambda, X) - f^{sigma^m}(Lambda^{p^m}, X^{p^m})) as the product of
// Theta(c^{p^i} M^{p^i}) over terms and levels i < m.
ConeSeries splitting_H(const std::vector<LiftedTerm>& terms, int m, const Window& w, const FieldContext& ctx);

enum class Block { Lambda, X };

// psi^m: coefficient at e of the output is the coefficient at p^m e of the input (block only).
ConeSeries dilation_extract(const ConeSeries& f, Block block, int m, int p);
// Phi^m: block exponents multiplied by p^m.
ConeSeries power_substitute(const ConeSeries& f, Block block, int m, int p);

enum class Projector { Pr1, Pr2, Pr0, Pr20 };
// Pr1 keeps Lambda^r with -r in M1, Pr2 keeps X^u with -u in M2, Pr0 keeps
// the lineality parts of both cones, Pr20 that of the X cone.
ConeSeries project_support(const ConeSeries& f, Projector pr, const Cone& m1, const Cone& m2);

// Lower bound on ord_p: slope_lambda |r| + slope_x |u| + offset (p-units).
struct ValuationProfile {
    boost::rational<long long> slope_lambda{0}, slope_x{0}, offset{0};
};

struct ValuationReport {
    bool ok = true;
    Exponent witness;
    int actual_pi = 0;
    boost::rational<long long> required_p{0};
};

ValuationReport valuation_check(const ConeSeries& f, const ValuationProfile& profile, int p);

// One line per stored term: exponent vector, tab, p-adic serialization.
std::string dump(const ConeSeries& f);

}  // namespace dwork

#endif
