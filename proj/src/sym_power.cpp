#include "dwork/sym_power.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "dwork/dwork_fiber.hpp"
#include "dwork/padic_core.hpp"

namespace dwork {

// ---------------------------------------------------------------- SymBasis

SymBasis::SymBasis(const Cone& x_cone, int d_x, int t_max) : t_max_(t_max)
{
    if (t_max < 0 || d_x < 0) throw std::invalid_argument("SymBasis: negative truncation");
    for (auto& v : x_cone.lattice_points(d_x))
        if (dwork::weight(v) > 0) vars_.push_back(v);
    const int V = static_cast<int>(vars_.size());
    std::map<std::vector<int>, int> index;
    monos_.push_back({});
    for (int t = 1; t <= t_max; ++t) {
        std::vector<int> cur(t, 0);
        if (V == 0) break;
        while (true) {
            monos_.push_back(cur);
            int i = t - 1;
            while (i >= 0 && cur[i] == V - 1) --i;
            if (i < 0) break;
            ++cur[i];
            for (int k = i + 1; k < t; ++k) cur[k] = cur[i];
        }
    }
    for (size_t i = 0; i < monos_.size(); ++i) {
        index[monos_[i]] = static_cast<int>(i);
        int w = 0;
        for (int v : monos_[i]) w += dwork::weight(vars_[v]);
        weights_.push_back(w);
    }
    table_.assign(monos_.size() * vars_.size(), -1);
    for (size_t i = 0; i < monos_.size(); ++i) {
        if (static_cast<int>(monos_[i].size()) >= t_max) continue;
        for (int v = 0; v < V; ++v) {
            auto m = monos_[i];
            m.insert(std::upper_bound(m.begin(), m.end(), v), v);
            table_[i * vars_.size() + v] = index.at(m);
        }
    }
}

int SymBasis::var_index(const Exponent& u) const
{
    if (dwork::weight(u) == 0) return -1;
    auto it = std::lower_bound(vars_.begin(), vars_.end(), u, [](const Exponent& x, const Exponent& y) {
        int wx = dwork::weight(x), wy = dwork::weight(y);
        if (wx != wy) return wx < wy;
        return x < y;
    });
    if (it == vars_.end() || *it != u) return -2;
    return static_cast<int>(it - vars_.begin());
}

int SymBasis::find(const std::vector<int>& sorted_vars) const
{
    int m = 0;
    for (int v : sorted_vars) {
        if (v < 0 || v >= static_cast<int>(vars_.size())) return -1;
        m = times_var(m, v);
        if (m < 0) return -1;
    }
    return m;
}

mpz_class SymBasis::multiplicity_factorial(int mono, int k) const
{
    const auto& m = monos_[mono];
    mpz_class r = 1, f;
    if (k < static_cast<int>(m.size())) throw std::invalid_argument("multiplicity_factorial: degree exceeds k");
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k - static_cast<int>(m.size())));
    r *= f;
    for (size_t i = 0; i < m.size();) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
        r *= f;
        i = j;
    }
    return r;
}

// -------------------------------------------------------------- LambdaGrid

LambdaGrid::LambdaGrid(const Cone& lambda_cone, int s, int cap) : s_(s), cap_(cap)
{
    if (s == 0) {
        points_ = {Exponent{}};
        grid_ = {0};
        return;
    }
    points_ = lambda_cone.lattice_points(cap);
    size_t cells = 1;
    for (int k = 0; k < s; ++k) cells *= static_cast<size_t>(2 * cap + 1);
    grid_.assign(cells, -1);
    for (size_t i = 0; i < points_.size(); ++i) {
        size_t pos = 0;
        for (int k = 0; k < s; ++k) pos = pos * (2 * cap + 1) + (points_[i][k] + cap);
        grid_[pos] = static_cast<int>(i);
    }
}

int LambdaGrid::index(const Exponent& e) const
{
    if (s_ == 0) return 0;
    size_t pos = 0;
    for (int k = 0; k < s_; ++k) {
        if (e[k] < -cap_ || e[k] > cap_) return -1;
        pos = pos * (2 * cap_ + 1) + (e[k] + cap_);
    }
    return grid_[pos];
}

int LambdaGrid::count_within(int w) const
{
    int c = 0;
    for (const auto& pt : points_)
        if (weight(pt) <= w) ++c;
    return c;
}

// --------------------------------------------------------------- SymEngine

SymEngine::SymEngine(const SymBasis& basis, const LambdaGrid& grid, const FieldContext& ctx)
    : basis_(basis), grid_(grid), ctx_(ctx)
{
}

SymSeries SymEngine::constant(const EisensteinElement& c) const
{
    SymSeries f;
    f.coeff.assign(static_cast<size_t>(grid_.size()) * basis_.size(), EisensteinElement::zero(ctx_));
    int l0 = grid_.index(Exponent(grid_.s(), 0));
    f.coeff[static_cast<size_t>(l0) * basis_.size()] = c;
    f.support.push_back(l0 * basis_.size());
    return f;
}

SymEngine::CompiledFactor SymEngine::compile(const LinearFactor& g) const
{
    CompiledFactor out;
    const int prec = ctx_.pi_precision();
    for (const auto& t : g) {
        if (t.coeff.ord_pi() >= prec) continue;
        Compiled c;
        c.var = t.var;
        c.coeff = t.coeff;
        c.ord = t.coeff.ord_pi();
        c.shift.resize(grid_.size());
        for (int l = 0; l < grid_.size(); ++l) {
            Exponent e = grid_.points()[l];
            for (int k = 0; k < grid_.s(); ++k) e[k] += t.lambda[k];
            c.shift[l] = grid_.index(e);
        }
        out.push_back(std::move(c));
    }
    return out;
}

SymSeries SymEngine::times(const SymSeries& f, const CompiledFactor& comp) const
{
    const int M = basis_.size();
    const int prec = ctx_.pi_precision();
    SymSeries out;
    out.coeff.assign(f.coeff.size(), EisensteinElement::zero(ctx_));
    std::vector<char> touched(f.coeff.size(), 0);
    for (int idx : f.support) {
        const auto& c1 = f.coeff[idx];
        int o1 = c1.ord_pi();
        if (o1 >= prec) continue;
        int l = idx / M, m = idx % M;
        for (size_t k = 0; k < comp.size(); ++k) {
            if (o1 + comp[k].ord >= prec) continue;
            int l2 = comp[k].shift[l];
            if (l2 < 0) continue;
            int m2 = basis_.times_var(m, comp[k].var);
            if (m2 < 0) continue;
            int pos = l2 * M + m2;
            out.coeff[pos].add_product(c1, comp[k].coeff);
            if (!touched[pos]) {
                touched[pos] = 1;
                out.support.push_back(pos);
            }
        }
    }
    std::sort(out.support.begin(), out.support.end());
    out.support.erase(std::remove_if(out.support.begin(), out.support.end(),
                                     [&](int pos) { return out.coeff[pos].is_zero(); }),
                      out.support.end());
    return out;
}

std::vector<SymSeries> SymEngine::binomial_powers(const LinearFactor& w, const std::vector<mpz_class>& exps) const
{
    int ew = ctx_.pi_precision();
    for (const auto& t : w)
        if (t.var < 0) ew = std::min(ew, t.coeff.ord_pi());
    if (ew == 0) throw std::domain_error("binomial_powers: base is not a 1-unit");
    const size_t T = exps.size();
    std::vector<SymSeries> P;
    std::vector<std::vector<char>> flags(T);
    for (size_t t = 0; t < T; ++t) {
        P.push_back(constant(EisensteinElement::one(ctx_)));
        flags[t].assign(P[t].coeff.size(), 0);
        flags[t][P[t].support[0]] = 1;
    }
    bool all_finite = true;
    mpz_class maxc = 0;
    for (const auto& c : exps) {
        if (c < 0) all_finite = false;
        if (c > maxc) maxc = c;
    }
    mpz_class mod = static_cast<long>(ctx_.modulus());
    const auto wc = compile(w);
    SymSeries term = constant(EisensteinElement::one(ctx_));
    for (unsigned long l = 1;; ++l) {
        if (all_finite && maxc < static_cast<long>(l)) break;
        if (l > 100000) throw std::runtime_error("binomial_powers: series does not terminate");
        term = times(term, wc);
        if (term.support.empty()) break;
        for (size_t t = 0; t < T; ++t) {
            mpz_class b;
            mpz_bin_ui(b.get_mpz_t(), exps[t].get_mpz_t(), l);
            mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), mod.get_mpz_t());
            if (b == 0) continue;
            auto be = EisensteinElement::from_int(ctx_, b.get_si());
            for (int pos : term.support) {
                P[t].coeff[pos].add_product(term.coeff[pos], be);
                if (!flags[t][pos]) {
                    flags[t][pos] = 1;
                    P[t].support.push_back(pos);
                }
            }
        }
    }
    for (auto& f : P) {
        std::sort(f.support.begin(), f.support.end());
        f.support.erase(std::remove_if(f.support.begin(), f.support.end(),
                                       [&](int pos) { return f.coeff[pos].is_zero(); }),
                        f.support.end());
    }
    return P;
}

// ------------------------------------------------------------- SymExponent

SymExponent SymExponent::p_adic(const KappaExponent& kappa)
{
    SymExponent e;
    e.kappa = kappa;
    return e;
}

SymExponent SymExponent::truncated(long long k)
{
    if (k < 0) throw std::invalid_argument("SymExponent: negative k");
    SymExponent e;
    e.finite = true;
    e.k = k;
    e.kappa = KappaExponent::integer(k);
    return e;
}

std::string SymExponent::describe() const { return finite ? "(" + std::to_string(k) + ")" : kappa.to_string(); }

// ------------------------------------------------------------ SparseMatrix

Vector SparseMatrix::apply(const Vector& x, const FieldContext& ctx) const
{
    const int prec = ctx.pi_precision();
    Vector y = zero_vector(rows, ctx);
    for (int j = 0; j < cols; ++j) {
        if (x(j).ord_pi() >= prec) continue;
        for (const auto& [i, c] : col[j]) y(i).add_product(c, x(j));
    }
    return y;
}

SparseMatrix SparseMatrix::sigma(int power) const
{
    SparseMatrix r = *this;
    for (auto& c : r.col)
        for (auto& e : c) e.second = e.second.sigma(power);
    return r;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.col.resize(rows);
    for (int j = 0; j < cols; ++j)
        for (const auto& [i, c] : col[j]) t.col[i].push_back({j, c});
    return t;
}

EisensteinElement SparseMatrix::entry(int i, int j) const
{
    const auto& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == i) return it->second;
    return EisensteinElement();
}

Matrix SparseMatrix::dense(const FieldContext& ctx) const
{
    Matrix m = zero_matrix(rows, cols, ctx);
    for (int j = 0; j < cols; ++j)
        for (const auto& [i, c] : col[j]) m(i, j) = c;
    return m;
}

size_t SparseMatrix::nonzeros() const
{
    size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
}

SparseMatrix sparse_mul(const SparseMatrix& a, const SparseMatrix& b, const FieldContext& ctx)
{
    if (a.cols != b.rows) throw std::invalid_argument("sparse_mul: shape mismatch");
    SparseMatrix r;
    r.rows = a.rows;
    r.cols = b.cols;
    r.col.resize(b.cols);
    std::vector<EisensteinElement> acc(a.rows, EisensteinElement::zero(ctx));
    std::vector<char> touched(a.rows, 0);
    std::vector<int> list;
    for (int j = 0; j < b.cols; ++j) {
        list.clear();
        for (const auto& [k, bkj] : b.col[j])
            for (const auto& [i, aik] : a.col[k]) {
                acc[i].add_product(aik, bkj);
                if (!touched[i]) {
                    touched[i] = 1;
                    list.push_back(i);
                }
            }
        std::sort(list.begin(), list.end());
        for (int i : list) {
            if (!acc[i].is_zero()) r.col[j].push_back({i, acc[i]});
            acc[i] = EisensteinElement::zero(ctx);
            touched[i] = 0;
        }
    }
    return r;
}

TSeries sparse_fredholm(const SparseMatrix& m, int K, const FieldContext& ctx)
{
    if (m.rows != m.cols) throw std::invalid_argument("sparse_fredholm: matrix not square");
    const int n = m.rows;
    const auto rowsT = m.transpose();
    TSeries q(K + 1, EisensteinElement::zero(ctx));
    q[0] = EisensteinElement::one(ctx);
    std::vector<EisensteinElement> dense(n, EisensteinElement::zero(ctx));
    std::vector<char> touched(n, 0);
    for (int r = 0; r < n; ++r) {
        TSeries f(K + 1, EisensteinElement::zero(ctx));
        f[0] = EisensteinElement::one(ctx);
        std::vector<std::pair<int, EisensteinElement>> c;
        for (const auto& [i, v] : m.col[r]) {
            if (i < r) c.push_back({i, v});
            if (i == r && K >= 1) f[1] = -v;
        }
        std::vector<std::pair<int, EisensteinElement>> R;
        for (const auto& [j, v] : rowsT.col[r])
            if (j < r) R.push_back({j, v});
        for (int j = 0; j + 2 <= K && !c.empty() && !R.empty(); ++j) {
            for (const auto& [i, v] : c) dense[i] = v;
            auto rc = EisensteinElement::zero(ctx);
            for (const auto& [i, v] : R) rc.add_product(v, dense[i]);
            for (const auto& [i, v] : c) dense[i] = EisensteinElement::zero(ctx);
            f[j + 2] = -rc;
            if (j + 3 > K) break;
            std::vector<int> list;
            for (const auto& [k, ck] : c)
                for (const auto& [i, mik] : m.col[k]) {
                    if (i >= r) continue;
                    dense[i].add_product(mik, ck);
                    if (!touched[i]) {
                        touched[i] = 1;
                        list.push_back(i);
                    }
                }
            std::vector<std::pair<int, EisensteinElement>> nc;
            for (int i : list) {
                if (!dense[i].is_zero()) nc.push_back({i, dense[i]});
                dense[i] = EisensteinElement::zero(ctx);
                touched[i] = 0;
            }
            c.swap(nc);
        }
        q = series_mul(q, f, K);
    }
    return q;
}

int sparse_unit_root_count(const SparseMatrix& m, const FieldContext& ctx)
{
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
    Graph g(m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (const auto& [i, c] : m.col[j])
            if (c.ord_pi() == 0) boost::add_edge(j, i, g);
    std::vector<int> comp(m.rows);
    int nc = boost::strong_components(g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g)));
    std::vector<std::vector<int>> members(nc);
    for (int i = 0; i < m.rows; ++i) members[comp[i]].push_back(i);
    int count = 0;
    for (const auto& mem : members) {
        const int k = static_cast<int>(mem.size());
        if (k == 1) {
            auto d = m.entry(mem[0], mem[0]);
            if (d.context() && d.ord_pi() == 0) ++count;
            continue;
        }
        Matrix block = zero_matrix(k, k, ctx);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                auto e = m.entry(mem[a], mem[b]);
                if (e.context()) block(a, b) = e;
            }
        count += unit_root_count(fredholm_coeffs(block, k, ctx));
    }
    return count;
}

// ------------------------------------------------------------ SymOperator

Vector SymOperator::apply(const Vector& x) const
{
    Vector y = x;
    if (!dual)
        for (const auto& f : factors) y = f.apply(y, *ctx);
    else
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) y = it->apply(y, *ctx);
    return y;
}

SparseMatrix SymOperator::assemble() const
{
    if (!dual) {
        SparseMatrix m = factors.front();
        for (size_t i = 1; i < factors.size(); ++i) m = sparse_mul(factors[i], m, *ctx);
        return m;
    }
    SparseMatrix m = factors.back();
    for (size_t i = factors.size() - 1; i-- > 0;) m = sparse_mul(factors[i], m, *ctx);
    return m;
}

SymTrunc resolve_trunc(const LaurentFamily& fam, SymTrunc t)
{
    if (t.lambda_cap < 0) {
        t.lambda_cap = (fam.p() + 1) * t.d_lambda;
        if (!fam.lambda_cone().is_pointed()) t.lambda_cap *= 2;
    }
    return t;
}

namespace {

struct Setup {
    ContextPtr ctx;
    std::shared_ptr<SymBasis> basis;
    std::shared_ptr<LambdaGrid> grid;
    LinearFactor one;
    std::vector<LinearFactor> vars;
    std::vector<mpz_class> exps;
    std::vector<bool> active;
    int cap_pi = 0;
    int w_ord = 0;
};

// Upsilon(alpha(X^u)) (primal) or Upsilon(alpha*(X^{-u})) (dual) for u = 0 and every basis variable.
void build_factors(Setup& st, const ConeSeries& H, int s, int n, int p, bool dual)
{
    auto factor_for = [&](const Exponent& u) {
        LinearFactor f;
        for (const auto& [e, c] : H.terms()) {
            Exponent j(e.begin(), e.begin() + s), x(e.begin() + s, e.begin() + s + n), v(n);
            bool ok = true;
            for (int k = 0; k < n && ok; ++k) {
                if (!dual) {
                    int num = x[k] + u[k];
                    if (num % p != 0) ok = false;
                    v[k] = num / p;
                } else {
                    v[k] = p * u[k] - x[k];
                }
            }
            if (!ok) continue;
            int var = st.basis->var_index(v);
            if (var == -2) continue;
            if (st.grid->index(j) < 0) continue;
            f.push_back({j, var, c});
        }
        return f;
    };
    st.one = factor_for(Exponent(n, 0));
    for (const auto& u : st.basis->vars()) st.vars.push_back(factor_for(u));
}

void set_exponents(Setup& st, const SymExponent& e, int p)
{
    const int T = st.basis->t_max();
    st.exps.assign(T + 1, 0);
    st.active.assign(T + 1, true);
    for (int t = 0; t <= T; ++t) {
        if (e.finite) {
            st.active[t] = t <= e.k;
            st.exps[t] = static_cast<long>(std::max(0LL, e.k - t));
        } else {
            st.exps[t] = e.kappa.value() - t;
        }
    }
    int ew = st.ctx->pi_precision();
    for (const auto& t : st.one) {
        bool constant = t.var == -1 && std::all_of(t.lambda.begin(), t.lambda.end(), [](int x) { return x == 0; });
        auto c = constant ? t.coeff - EisensteinElement::one(*st.ctx) : t.coeff;
        ew = std::min(ew, c.ord_pi());
    }
    st.w_ord = ew;
    st.cap_pi = st.ctx->pi_precision();
    if (!e.finite && !e.kappa.is_exact()) st.cap_pi = std::min(st.cap_pi, ew + (p - 1) * e.kappa.known_digits());
}

LinearFactor minus_one(const LinearFactor& f, const FieldContext& ctx, int s)
{
    LinearFactor w = f;
    for (auto& t : w)
        if (t.var == -1 && std::all_of(t.lambda.begin(), t.lambda.end(), [](int x) { return x == 0; })) {
            t.coeff = t.coeff - EisensteinElement::one(ctx);
            return w;
        }
    w.push_back({Exponent(s, 0), -1, -EisensteinElement::one(ctx)});
    return w;
}

// Visit [alpha]_kappa(e_u) for every basis monomial u.
void for_each_image(const Setup& st, const std::function<void(int, const SymSeries&)>& visit)
{
    SymEngine eng(*st.basis, *st.grid, *st.ctx);
    auto w = minus_one(st.one, *st.ctx, st.grid->s());
    auto P = eng.binomial_powers(w, st.exps);
    const int V = static_cast<int>(st.basis->vars().size());
    std::vector<SymEngine::CompiledFactor> comp;
    for (const auto& f : st.vars) comp.push_back(eng.compile(f));
    std::vector<int> tuple;
    std::function<void(const SymSeries&, int, int, int)> dfs = [&](const SymSeries& node, int depth, int t, int start) {
        if (depth == t) {
            visit(st.basis->find(tuple), node);
            return;
        }
        for (int v = start; v < V; ++v) {
            tuple.push_back(v);
            dfs(eng.times(node, comp[v]), depth + 1, t, v);
            tuple.pop_back();
        }
    };
    for (int t = 0; t <= st.basis->t_max(); ++t)
        if (st.active[t]) dfs(P[t], 0, t, 0);
}

Setup family_setup(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N, bool dual)
{
    Setup st;
    const int p = fam.p();
    st.ctx = make_field_context(p, fam.a(), N);
    st.basis = std::make_shared<SymBasis>(fam.x_cone(), trunc.d_x, trunc.t_max);
    st.grid = std::make_shared<LambdaGrid>(fam.lambda_cone(), fam.s(), trunc.lambda_cap);
    Window w{fam.s(), fam.n(), 0, trunc.lambda_cap, (p + 1) * trunc.d_x};
    auto H = splitting_H(lift_family(fam, *st.ctx), 1, w, *st.ctx);
    build_factors(st, H, fam.s(), fam.n(), p, dual);
    set_exponents(st, e, p);
    return st;
}

SymOperator make_operator(const LaurentFamily& fam, Setup& st, const SymExponent& e, const SymTrunc& trunc, bool dual,
                          int lambda_count)
{
    const int p = fam.p();
    SymOperator op;
    op.ctx = st.ctx;
    op.basis = st.basis;
    op.grid = st.grid;
    op.lambda_count = lambda_count;
    op.dim = lambda_count * st.basis->size();
    op.dual = dual;
    op.exponent = e;
    op.trunc = trunc;
    op.cap_pi = st.cap_pi;
    op.w_ord = st.w_ord;
    const int M = st.basis->size();
    const int s = st.grid->s();
    SparseMatrix G;
    G.rows = G.cols = op.dim;
    G.col.resize(op.dim);
    for_each_image(st, [&](int mono, const SymSeries& img) {
        for (int idx : img.support) {
            const int l = idx / M, m = idx % M;
            const Exponent& j = st.grid->points()[l];
            for (int r = 0; r < lambda_count; ++r) {
                const Exponent& rr = st.grid->points()[r];
                Exponent target(s);
                bool ok = true;
                for (int k = 0; k < s && ok; ++k) {
                    if (!dual) {
                        int num = j[k] + rr[k];
                        if (num % p != 0) ok = false;
                        target[k] = num / p;
                    } else {
                        target[k] = p * rr[k] - j[k];
                    }
                }
                if (!ok) continue;
                int si = st.grid->index(target);
                if (si < 0 || si >= lambda_count) continue;
                G.col[op.index(r, mono)].push_back({op.index(si, m), img.coeff[idx]});
            }
        }
    });
    for (auto& c : G.col) std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    op.factors.push_back(G);
    for (int i = 1; i < fam.a(); ++i) op.factors.push_back(G.sigma(i));
    return op;
}

}  // namespace

SymOperator beta_operator(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc0, int N)
{
    auto trunc = resolve_trunc(fam, trunc0);
    auto st = family_setup(fam, e, trunc, N, false);
    return make_operator(fam, st, e, trunc, false, st.grid->count_within(trunc.d_lambda));
}

SymOperator dual_beta_operator(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc0, int N)
{
    auto trunc = resolve_trunc(fam, trunc0);
    auto st = family_setup(fam, e, trunc, N, true);
    return make_operator(fam, st, e, trunc, true, st.grid->count_within(trunc.d_lambda));
}

SymOperator fiber_sym_operator(const LaurentFamily& fam, const std::vector<GaloisField::Elem>& lambda,
                               const SymExponent& e, const SymTrunc& trunc, int N)
{
    Setup st;
    const int p = fam.p();
    st.ctx = make_field_context(p, fam.a(), N);
    st.basis = std::make_shared<SymBasis>(fam.x_cone(), trunc.d_x, trunc.t_max);
    st.grid = std::make_shared<LambdaGrid>(Cone(), 0, 0);
    auto pt = make_point(fam, 1, lambda);
    Window w{0, fam.n(), 0, -1, (p + 1) * trunc.d_x};
    auto H = splitting_H(lift_fiber(fam, pt, *st.ctx), 1, w, *st.ctx);
    build_factors(st, H, 0, fam.n(), p, false);
    set_exponents(st, e, p);
    return make_operator(fam, st, e, trunc, false, 1);
}

AlphaImages alpha_images(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc0, int N, bool dual)
{
    auto trunc = resolve_trunc(fam, trunc0);
    auto st = family_setup(fam, e, trunc, N, dual);
    AlphaImages out;
    out.ctx = st.ctx;
    out.basis = st.basis;
    out.grid = st.grid;
    out.cap_pi = st.cap_pi;
    out.images.resize(st.basis->size());
    for_each_image(st, [&](int mono, const SymSeries& img) {
        for (int idx : img.support) out.images[mono].push_back({idx, img.coeff[idx]});
    });
    return out;
}

BetaRoot beta_unit_root(const SymOperator& op, bool check_uniqueness)
{
    BetaRoot r;
    r.dim = op.dim;
    const FieldContext& ctx = *op.ctx;
    auto ctx1 = make_field_context(ctx.p(), 1, ctx.precision());
    const int target = std::min(ctx1->pi_precision(), op.cap_pi);
    const int i0 = op.index(0, 0);
    std::vector<Vector> iterates;
    Vector v = zero_vector(op.dim, ctx);
    v(i0) = EisensteinElement::one(ctx);
    iterates.push_back(v);
    auto term = [&](int k) {
        while (static_cast<int>(iterates.size()) <= k) iterates.push_back(op.apply(iterates.back()));
        return iterates[k](i0);
    };
    r.trail = stabilize_ratios(term, target, 4 * target + 16);
    SubringEmbedding emb(*ctx1, ctx);
    r.value = emb.project(r.trail.value.with_prec(target));
    r.certified_pi = std::min(r.trail.certified_pi, target);
    if (check_uniqueness) r.unit_roots = sparse_unit_root_count(op.assemble(), ctx);
    return r;
}

ConvergenceReport convergence_check(const LaurentFamily& fam, const KappaExponent& kappa, const std::vector<long long>& ks,
                                    const SymTrunc& trunc, int N, int K, int det_target_pi)
{
    ConvergenceReport rep;
    rep.ks = ks;
    rep.target_pi = det_target_pi;
    const int p = fam.p();
    const double ord_pt = static_cast<double>(p - 1) / (static_cast<double>(p) * p * (fam.omega1() + fam.omega2()));
    auto base = alpha_images(fam, SymExponent::p_adic(kappa), trunc, N, false);
    const int M = base.basis->size();
    auto ctx1 = make_field_context(p, 1, N);
    auto beta_k = beta_operator(fam, SymExponent::p_adic(kappa), trunc, N);
    auto det_kappa = sparse_fredholm(beta_k.assemble(), K, *beta_k.ctx);
    SubringEmbedding emb(*ctx1, *beta_k.ctx);
    const int prec = base.ctx->pi_precision();
    for (long long k : ks) {
        auto other = alpha_images(fam, SymExponent::truncated(k), trunc, N, false);
        double worst = std::numeric_limits<double>::infinity();
        for (int u = 0; u < M; ++u) {
            std::map<int, EisensteinElement> diff;
            for (const auto& [idx, c] : base.images[u]) diff[idx] = c;
            for (const auto& [idx, c] : other.images[u]) {
                auto it = diff.find(idx);
                if (it == diff.end())
                    diff[idx] = -c;
                else
                    it->second = it->second - c;
            }
            for (const auto& [idx, c] : diff) {
                int o = std::min(c.ord_pi(), base.cap_pi);
                if (o >= std::min(prec, base.cap_pi)) continue;
                const int l = idx / M, m = idx % M;
                double scaled = (static_cast<double>(o) / (p - 1)) / ord_pt + base.basis->weight(u) -
                                base.basis->weight(m) - static_cast<double>(weight(base.grid->points()[l])) / p;
                worst = std::min(worst, scaled);
            }
        }
        rep.diff_scaled.push_back(worst);
        mpz_class delta = kappa.value() - mpz_class(static_cast<long>(k));
        double tau;
        if (delta == 0) {
            tau = std::numeric_limits<double>::infinity();
        } else {
            int v = 0;
            mpz_class d = abs(delta);
            while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
                d /= p;
                ++v;
            }
            if (!kappa.is_exact()) v = std::min(v, kappa.known_digits());
            tau = v / ord_pt;
        }
        rep.bound.push_back(std::min(tau, (1.0 - 1.0 / static_cast<double>(fam.q())) * static_cast<double>(k)));
        auto beta_l = beta_operator(fam, SymExponent::truncated(k), trunc, N);
        auto det_l = sparse_fredholm(beta_l.assemble(), K, *beta_l.ctx);
        int agree = ctx1->pi_precision();
        for (int i = 0; i <= K; ++i) agree = std::min(agree, agreement(emb.project(det_l[i]), emb.project(det_kappa[i])));
        rep.det_agreement.push_back(agree);
    }
    rep.monotone = true;
    for (size_t i = 1; i < rep.diff_scaled.size(); ++i)
        if (rep.diff_scaled[i] + 1e-9 < rep.diff_scaled[i - 1]) rep.monotone = false;
    rep.meets_bound = true;
    for (size_t i = 0; i < rep.diff_scaled.size(); ++i)
        if (rep.diff_scaled[i] + 1e-9 < rep.bound[i]) rep.meets_bound = false;
    rep.det_stable = !rep.det_agreement.empty() && rep.det_agreement.back() >= det_target_pi;
    rep.ok = rep.monotone && rep.meets_bound && rep.det_stable;
    return rep;
}

PairingReport pairing_check(const LaurentFamily& fam, long long k, const SymTrunc& trunc, int N)
{
    PairingReport rep;
    auto e = SymExponent::truncated(k);
    auto B = beta_operator(fam, e, trunc, N);
    auto Bs = dual_beta_operator(fam, e, trunc, N);
    auto b = B.assemble(), bs = Bs.assemble();
    const FieldContext& ctx = *B.ctx;
    const int M = B.basis->size();
    std::vector<EisensteinElement> W(B.dim);
    mpz_class mod = static_cast<long>(ctx.modulus());
    for (int i = 0; i < B.dim; ++i) {
        int mono = i % M;
        if (B.basis->degree(mono) > k) {
            W[i] = EisensteinElement::zero(ctx);
            continue;
        }
        mpz_class w = B.basis->multiplicity_factorial(mono, static_cast<int>(k));
        mpz_fdiv_r(w.get_mpz_t(), w.get_mpz_t(), mod.get_mpz_t());
        W[i] = EisensteinElement::from_int(ctx, w.get_si());
    }
    rep.min_agreement = ctx.pi_precision();
    auto check = [&](int i, int j) {
        auto lhs = b.entry(i, j), rhs = bs.entry(j, i);
        auto L = lhs.context() ? lhs * W[i] : EisensteinElement::zero(ctx);
        auto R = rhs.context() ? rhs * W[j] : EisensteinElement::zero(ctx);
        int a = agreement(L, R);
        ++rep.pairs_checked;
        if (a < rep.min_agreement) {
            rep.min_agreement = a;
            rep.witness_row = i;
            rep.witness_col = j;
        }
    };
    for (int j = 0; j < B.dim; ++j)
        for (const auto& [i, c] : b.col[j]) check(i, j);
    for (int i = 0; i < B.dim; ++i)
        for (const auto& [j, c] : bs.col[i])
            if (!b.entry(i, j).context()) check(i, j);
    rep.ok = rep.min_agreement >= ctx.pi_precision();
    return rep;
}

DualityReport det_duality_check(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N, int K,
                                int target_pi)
{
    DualityReport rep;
    rep.target_pi = target_pi;
    auto B = beta_operator(fam, e, trunc, N);
    auto Bs = dual_beta_operator(fam, e, trunc, N);
    auto ctx1 = make_field_context(fam.p(), 1, N);
    SubringEmbedding emb(*ctx1, *B.ctx);
    auto d1 = sparse_fredholm(B.assemble(), K, *B.ctx);
    auto d2 = sparse_fredholm(Bs.assemble(), K, *B.ctx);
    rep.ok = true;
    for (int i = 0; i <= K; ++i) {
        rep.primal.push_back(emb.project(d1[i]));
        rep.dual.push_back(emb.project(d2[i]));
        rep.agreement.push_back(agreement(rep.primal.back(), rep.dual.back()));
        rep.ok = rep.ok && rep.agreement.back() >= target_pi;
    }
    return rep;
}

TraceIdentityReport trace_identity_check(const LaurentFamily& fam, const SymExponent& e, const SymTrunc& trunc, int N,
                                         int target_pi)
{
    TraceIdentityReport rep;
    rep.target_pi = target_pi;
    auto B = beta_operator(fam, e, trunc, N);
    const FieldContext& ctx = *B.ctx;
    auto trace_of = [&](const SymOperator& op) {
        auto m = op.assemble();
        auto t = EisensteinElement::zero(ctx);
        for (int i = 0; i < m.cols; ++i) {
            auto c = m.entry(i, i);
            if (c.context()) t += c;
        }
        return t;
    };
    Int q1 = static_cast<Int>(fam.q()) - 1;
    rep.lhs = trace_of(B) * EisensteinElement::from_int(ctx, ipow(q1, fam.s()) % ctx.modulus());
    rep.rhs = EisensteinElement::zero(ctx);
    std::vector<GaloisField::Elem> lam(fam.s(), 1);
    while (true) {
        auto F = fiber_sym_operator(fam, lam, e, trunc, N);
        rep.rhs += trace_of(F);
        ++rep.points;
        int i = 0;
        while (i < fam.s() && lam[i] == fam.q() - 1) lam[i++] = 1;
        if (i == fam.s()) break;
        ++lam[i];
    }
    rep.agreement = agreement(rep.lhs, rep.rhs);
    rep.ok = rep.agreement >= target_pi;
    return rep;
}

}  // namespace dwork
