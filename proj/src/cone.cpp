#include "dwork/cone.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include <boost/rational.hpp>

namespace dwork {

namespace {

using Q = boost::rational<long long>;
using QMat = std::vector<std::vector<Q>>;

// Row echelon form; returns pivot columns.
std::vector<int> echelon(QMat& m)
{
    std::vector<int> piv;
    size_t row = 0;
    const size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t c = 0; c < cols && row < m.size(); ++c) {
        size_t r = row;
        while (r < m.size() && m[r][c].numerator() == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[row]);
        for (size_t k = 0; k < m.size(); ++k) {
            if (k == row || m[k][c].numerator() == 0) continue;
            Q f = m[k][c] / m[row][c];
            for (size_t j = 0; j < cols; ++j) m[k][j] -= f * m[row][j];
        }
        piv.push_back(static_cast<int>(c));
        ++row;
    }
    return piv;
}

// Basis of the null space of m (rows = equations), scaled to integers.
std::vector<std::vector<long long>> kernel(QMat m, int cols)
{
    std::vector<int> piv = m.empty() ? std::vector<int>{} : echelon(m);
    std::vector<std::vector<long long>> out;
    for (int free = 0; free < cols; ++free) {
        if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
        std::vector<Q> v(cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][free] / m[r][piv[r]];
        long long l = 1;
        for (auto& x : v) l = std::lcm(l, x.denominator());
        std::vector<long long> iv(cols);
        long long g = 0;
        for (int i = 0; i < cols; ++i) {
            iv[i] = (v[i] * l).numerator();
            g = std::gcd(g, std::llabs(iv[i]));
        }
        if (g > 1)
            for (auto& x : iv) x /= g;
        out.push_back(iv);
    }
    return out;
}

long long dot(const std::vector<long long>& w, const Exponent& v)
{
    long long s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
    return s;
}

}  // namespace

int weight(const Exponent& v)
{
    int s = 0;
    for (int x : v) s += std::abs(x);
    return s;
}

Exponent Cone::negate(const Exponent& v)
{
    Exponent r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

Cone::Cone(int dim, std::vector<Exponent> generators) : dim_(dim)
{
    for (auto& g : generators)
        if (weight(g) != 0 && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
    if (dim_ == 0) return;
    // The orthogonal complement of the span gives the span equations.
    QMat gm;
    for (auto& g : gens_) gm.push_back(std::vector<Q>(g.begin(), g.end()));
    auto ortho = kernel(gm, dim_);
    span_basis_ = ortho;  // equations: w . v = 0 for w in ortho
    QMat basis_rows = gm;
    std::vector<int> piv = basis_rows.empty() ? std::vector<int>{} : echelon(basis_rows);
    const int rank = static_cast<int>(piv.size());
    if (rank == 0) return;
    // Candidate facet normals: vectors in the span orthogonal to rank-1
    // independent generators.
    std::vector<std::vector<long long>> cands;
    const int ng = static_cast<int>(gens_.size());
    std::vector<int> idx(rank - 1);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == rank - 1) {
            QMat eq;
            for (auto& w : ortho) eq.push_back(std::vector<Q>(w.begin(), w.end()));
            for (int k : idx) eq.push_back(std::vector<Q>(gens_[k].begin(), gens_[k].end()));
            auto ker = kernel(eq, dim_);
            if (ker.size() == 1) cands.push_back(ker[0]);
            return;
        }
        for (int i = start; i < ng; ++i) {
            idx[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    for (auto w : cands) {
        for (int sign : {1, -1}) {
            std::vector<long long> ws(w);
            for (auto& x : ws) x *= sign;
            bool ok = true;
            for (auto& g : gens_) ok = ok && dot(ws, g) >= 0;
            if (ok && std::find(facets_.begin(), facets_.end(), ws) == facets_.end()) facets_.push_back(ws);
        }
    }
    // Drop normals that vanish on every generator (they come from the span).
    facets_.erase(std::remove_if(facets_.begin(), facets_.end(),
                                 [&](const std::vector<long long>& w) {
                                     for (auto& g : gens_)
                                         if (dot(w, g) != 0) return false;
                                     return true;
                                 }),
                  facets_.end());
}

bool Cone::in_span(const Exponent& v) const
{
    for (auto& w : span_basis_)
        if (dot(w, v) != 0) return false;
    return true;
}

bool Cone::contains(const Exponent& v) const
{
    if (static_cast<int>(v.size()) != dim_) return false;
    if (weight(v) == 0) return true;
    if (gens_.empty()) return false;
    if (!in_span(v)) return false;
    for (auto& w : facets_)
        if (dot(w, v) < 0) return false;
    return true;
}

bool Cone::is_pointed() const
{
    for (auto& g : gens_)
        if (contains(negate(g))) return false;
    return true;
}

std::vector<Exponent> Cone::lattice_points(int D) const
{
    std::vector<Exponent> out;
    Exponent v(dim_, -D);
    if (dim_ == 0) return {Exponent{}};
    while (true) {
        if (weight(v) <= D && contains(v)) out.push_back(v);
        int i = dim_ - 1;
        while (i >= 0 && v[i] == D) {
            v[i] = -D;
            --i;
        }
        if (i < 0) break;
        ++v[i];
    }
    std::stable_sort(out.begin(), out.end(), [](const Exponent& x, const Exponent& y) {
        int wx = weight(x), wy = weight(y);
        if (wx != wy) return wx < wy;
        return x < y;
    });
    return out;
}

std::vector<Exponent> Cone::lineality_points(int D) const
{
    std::vector<Exponent> out;
    for (auto& v : lattice_points(D))
        if (in_lineality(v)) out.push_back(v);
    return out;
}

}  // namespace dwork
