#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dwork/config.hpp"
#include "dwork/dwork_fiber.hpp"
#include "dwork/padic_core.hpp"
#include "dwork/report.hpp"
#include "dwork/serialize.hpp"
#include "dwork/sym_power.hpp"
#include "dwork/unit_root_pipeline.hpp"

using namespace dwork;

namespace {

LaurentFamily kloosterman() { return LaurentFamily(3, 1, 1, 1, {{{0}, {1}, 1}, {{1}, {-1}, 1}}); }
LaurentFamily lambda_x() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}}); }
LaurentFamily family_c() { return LaurentFamily(3, 1, 1, 1, {{{1}, {1}, 1}, {{1}, {-1}, 1}, {{-1}, {0}, 1}}); }
// g Lambda X + Lambda / X + 1 / Lambda over F_9 with g = t + 1 outside F_3; the invariant
// monomial y_1 y_2 y_3^2 evaluates to the Teichmueller lift of g, which is not in Z_3.
LaurentFamily f9_family() { return LaurentFamily(3, 2, 1, 1, {{{1}, {1}, 4}, {{1}, {-1}, 1}, {{-1}, {0}, 1}}); }

SymTrunc trunc(int d_x, int d_lambda, int t_max)
{
    SymTrunc t;
    t.d_x = d_x;
    t.d_lambda = d_lambda;
    t.t_max = t_max;
    return t;
}

SymExponent kappa(long long k) { return SymExponent::p_adic(KappaExponent::integer(k)); }

// Collects failed checks and a short summary for one criterion.
struct Log {
    bool ok = true;
    std::ostringstream notes;
    void check(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Log&)>& body)
{
    Log log;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(log);
    } catch (const std::exception& e) {
        log.ok = false;
        log.notes << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) log.check(false, "runtime budget " + std::to_string(budget_s) + " s");
    if (!log.ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, " (%.1f s)", secs);
    std::cout << (log.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << timing << log.notes.str() << std::endl;
}

// Oracle: theta(t) = exp(pi t) exp(-pi t^p), theta_i = sum_{j + p k = i} (-1)^k pi^{j+k} / (j! k!) over Q(pi).
QPi theta_exact(int p, int i)
{
    QPi acc(p, 0);
    for (int k = 0; p * k <= i; ++k) {
        int j = i - p * k;
        mpz_class fj, fk;
        mpz_fac_ui(fj.get_mpz_t(), j);
        mpz_fac_ui(fk.get_mpz_t(), k);
        mpq_class c(k % 2 ? -1 : 1, 1);
        c /= fj * fk;
        acc += QPi::pi_power(p, j + k) * QPi(p, c);
    }
    return acc;
}

// Oracle: S_m of the Kloosterman fiber at lambda by enumerating F_{3^m}^*.
CyclotomicInt kloosterman_sum(GaloisField::Elem lambda, int m)
{
    GaloisField F(3, m);
    std::vector<mpz_class> counts(3, 0);
    for (GaloisField::Elem x = 1; x < F.order(); ++x) counts[F.trace(F.add(x, F.mul(lambda, F.inv(x))))] += 1;
    return CyclotomicInt::from_counts(3, counts);
}

bool files_equal(const std::string& a, const std::string& b)
{
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return fa && fb && !sa.str().empty() && sa.str() == sb.str();
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(DWORK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

int main()
{
    criterion(1, "theta valuations ord_p theta_i >= (p-1) i / p^2 for p = 2, 3, 5 and i <= 50", 1.0, [](Log& log) {
        for (int p : {2, 3, 5}) {
            const int N = (p - 1) * 50 / (p * p) + 2;
            auto ctx = make_field_context(p, 1, N);
            auto th = theta_coeffs(*ctx, 50);
            for (int i = 0; i <= 50; ++i) {
                log.check(th[i].ord_pi() * p * p >= (p - 1) * (p - 1) * i, "bound p=" + std::to_string(p) + " i=" + std::to_string(i));
                log.check(th[i] == theta_exact(p, i).embed(*ctx), "exact oracle p=" + std::to_string(p) + " i=" + std::to_string(i));
            }
        }
        log.notes << " 153 coefficients, bound and exact Q(pi) oracle";
    });

    criterion(2, "fiber trace formula mod (3^3, T^3); L = 1 - T + 3T^2 and pi_0 = 7 mod 9 at lambda = 1", 60.0, [](Log& log) {
        auto kl = kloosterman();
        for (GaloisField::Elem lam : {1, 2}) {
            auto rep = verify_trace_formula(kl, make_point(kl, 1, {lam}), 2, 3);
            log.check(rep.ok && rep.stable, "Kloosterman lambda=" + std::to_string(lam));
            auto rx = verify_trace_formula(lambda_x(), make_point(lambda_x(), 1, {lam}), 2, 3);
            log.check(rx.ok && rx.stable, "Lambda X lambda=" + std::to_string(lam));
        }
        auto L = l_series_from_sums({kloosterman_sum(1, 1), kloosterman_sum(1, 2)});
        log.check(L.size() == 3 && L[1] == CyclotomicInt::from_int(3, -1) && L[2] == CyclotomicInt::from_int(3, 3),
                  "L-polynomial from enumeration");
        auto pt = make_point(kl, 1, {1});
        auto ctx = make_field_context(3, 1, 3);
        auto seven = EisensteinElement::from_int(*ctx, 7);
        auto hensel = fiber_unit_root_exact(rational_reconstruct(l_series(kl, pt, 6)), 1, *ctx);
        log.check(agreement(hensel.value, seven) >= 4, "Hensel route");
        auto iter = fiber_unit_root_padic(kl, pt, 3);
        log.check(iter.stable && agreement(iter.value, seven) >= 4, "vector iteration route");
        auto op = fiber_frobenius(kl, pt, default_fiber_degree(kl, 3), 3);
        auto tr = fiber_unit_root_trace(op, 4);
        log.check(tr.stable && agreement(tr.value.rebase(*ctx), seven) >= 4, "trace power route");
        log.notes << " pi_0 = " << padic_compact(iter.value);
    });

    criterion(3, "Kloosterman unit root = 1 for kappa in {1, 2, 4, 1+3+9}: L_unit (deg <= 6), formula, beta", 300.0, [](Log& log) {
        auto kl = kloosterman();
        auto ctx1 = make_field_context(3, 1, 3);
        auto one = EisensteinElement::one(*ctx1);
        auto fibers = fiber_unit_roots(kl, 6, 3);
        log.check(g00_is_trivial(kl, 24), "g00 = 1");
        std::vector<KappaExponent> kappas{KappaExponent::integer(1), KappaExponent::integer(2), KappaExponent::integer(4),
                                          KappaExponent::from_digits(3, {1, 1, 1})};
        int min_cert = 99;
        for (const auto& k : kappas) {
            auto l = assemble_l_unit(fibers, k, 6, *ctx1);
            auto r = extract_unit_root(l, 1, ctx1->pi_precision());
            min_cert = std::min(min_cert, r.certified_pi);
            log.check(r.certified_pi >= 4 && agreement(r.value, one) >= 4, "L_unit root kappa=" + k.to_string());
            auto f = formula_eval(kl, k, 3);
            log.check(f.stable && agreement(f.value.rebase(*ctx1), one) >= ctx1->pi_precision(), "formula kappa=" + k.to_string());
            auto b = beta_unit_root(beta_operator(kl, SymExponent::p_adic(k), trunc(4, 4, 2), 3));
            log.check(b.unit_roots == 1 && b.certified_pi >= 4 && agreement(b.value, one) >= 4, "beta kappa=" + k.to_string());
        }
        log.notes << " " << fibers.size() << " fibers, L_unit root certified to " << min_cert << " pi-digits";
    });

    criterion(4, "three-way agreement mod p^2: Lambda X + Lambda/X + 1/Lambda over F_3 and g Lambda X + Lambda/X + 1/Lambda over F_9", 600.0,
              [](Log& log) {
                  PipelineParams params;
                  params.trunc = trunc(4, 4, 2);
                  params.d_max = 6;
                  auto c = three_way_compare(family_c(), KappaExponent::integer(1), params);
                  log.check(c.ok && c.min_certified_pi >= 4, "family over F_3");
                  params.d_max = 4;
                  auto f9 = three_way_compare(f9_family(), KappaExponent::integer(1), params);
                  log.check(f9.ok && f9.min_certified_pi >= 4, "family over F_9");
                  auto ctx = make_field_context(3, 1, 3);
                  log.check(f9_family().base_field().frobenius(4) != 4, "coefficient outside F_3");
                  for (const auto* r : {&c, &f9})
                      log.check(agreement(r->formula.value, EisensteinElement::one(*ctx)) < r->agreement_bc,
                                "unit root differs from 1 at the agreed precision");
                  for (const auto* r : {&c, &f9})
                      log.notes << " " << (r == &c ? "F_3" : "F_9") << ": " << padic_compact(r->formula.value)
                                << " certified " << r->min_certified_pi << " pi-digits (required " << r->target_pi
                                << "), pairwise agreement " << std::min({r->agreement_ab, r->agreement_ac, r->agreement_bc}) << ";";
              });

    criterion(5, "symmetric-power convergence for k_l = kappa mod 3^l, l = 1..3", 300.0, [](Log& log) {
        auto a = convergence_check(kloosterman(), KappaExponent::integer(2), {5, 11, 29}, trunc(3, 3, 2), 3, 2, 4);
        log.check(a.ok, "Kloosterman kappa=2");
        auto b = convergence_check(kloosterman(), KappaExponent::from_digits(3, {1, 1, 1}), {4, 13, 40}, trunc(3, 3, 2), 3, 2, 4);
        log.check(b.ok, "Kloosterman kappa=1+3+9");
        auto c = convergence_check(family_c(), KappaExponent::integer(1), {4, 10, 28}, trunc(3, 3, 2), 3, 2, 4);
        log.check(c.ok, "family C kappa=1");
    });

    criterion(6, "duality det(1 - beta* T) = det(1 - beta T) and adjointness, k <= 2 and kappa, mod (3^2, T^3)", 300.0,
              [](Log& log) {
                  for (auto fam : {kloosterman(), family_c()}) {
                      for (long long k : {1, 2}) {
                          log.check(pairing_check(fam, k, trunc(3, 3, 2), 3).ok, "adjointness k=" + std::to_string(k));
                          log.check(det_duality_check(fam, SymExponent::truncated(k), trunc(3, 3, 2), 3, 2, 4).ok,
                                    "duality k=" + std::to_string(k));
                      }
                      log.check(det_duality_check(fam, kappa(1), trunc(3, 3, 2), 3, 2, 4).ok, "duality kappa=1");
                      log.check(det_duality_check(fam, SymExponent::p_adic(KappaExponent::from_digits(3, {1, 1, 1})),
                                                  trunc(3, 3, 2), 3, 2, 4)
                                    .ok,
                                "duality kappa=1+3+9");
                  }
              });

    criterion(7, "trace identity (q - 1)^s Tr([beta]_kappa) = sum of fiber traces at m = 1", 120.0, [](Log& log) {
        for (auto fam : {kloosterman(), family_c()})
            for (long long k : {1, 2}) {
                auto rep = trace_identity_check(fam, kappa(k), trunc(3, 3, 2), 3, 6);
                log.check(rep.ok && rep.points == 2, "kappa=" + std::to_string(k));
            }
    });

    criterion(8, "eigenvector identity [beta*]_kappa(Upsilon eta^kappa) = F_a(a-hat)^kappa Upsilon eta^kappa mod 3, t_max = 2", 300.0,
              [](Log& log) {
                  for (const auto& path : corpus_paths()) {
                      auto cfg = load_config(path);
                      auto rep = eigenvector_check(cfg.family(), cfg.kappa, trunc(4, 4, 2), 3, cfg.p - 1);
                      log.check(rep.ok, cfg.name);
                      log.notes << " " << cfg.name << ":" << rep.components;
                  }
              });

    criterion(9, "oracle invariants: Teichmueller, sigma orbits, divisor sums, Galois invariance, CLI determinism", 60.0, [](Log& log) {
        auto ctx = make_field_context(3, 2, 5);
        const auto& F = ctx->residue_field();
        for (GaloisField::Elem x = 1; x < F.order(); ++x) {
            auto w = teichmuller(x, *ctx);
            log.check(w.pow(F.order()) == w && w.residue() == x, "Teichmueller fixed point");
            log.check(frobenius_sigma(w) == teichmuller(F.frobenius(x), *ctx), "sigma on Teichmueller");
            log.check(frobenius_sigma(w, 2) == w, "sigma^a = id");
            for (GaloisField::Elem y = 1; y < F.order(); ++y)
                log.check(w * teichmuller(y, *ctx) == teichmuller(F.mul(x, y), *ctx), "Teichmueller multiplicativity");
        }
        for (auto fam : {kloosterman(), f9_family()}) {
            const int dm = fam.a() == 1 ? 6 : 3;
            auto pts = enumerate_closed_points(fam, dm);
            std::vector<long long> by_degree(dm + 1, 0);
            for (const auto& pt : pts) ++by_degree[pt.degree];
            long long q = static_cast<long long>(fam.q());
            for (int m = 1; m <= dm; ++m) {
                long long lhs = 0, qm = 1;
                for (int d = 1; d <= m; ++d)
                    if (m % d == 0) lhs += d * by_degree[d];
                for (int i = 0; i < m; ++i) qm *= q;
                log.check(lhs == qm - 1, "divisor sum m=" + std::to_string(m));
            }
            std::vector<int> sampled(dm + 1, 0);
            for (const auto& pt : pts) {
                if (pt.degree < 2 || pt.degree > 3 || ++sampled[pt.degree] > 12) continue;
                for (int j = 1; j < pt.degree; ++j)
                    for (int m = 1; m <= 2; ++m)
                        if (exact_sum_affordable(fam, pt, m))
                            log.check(exp_sum(fam, pt, m) == exp_sum(fam, conjugate_point(fam, pt, j), m), "Galois invariance");
            }
        }
        for (const auto& path : corpus_paths()) {
            auto cfg = load_config(path);
            log.check(run_command("formula", cfg).body.dump() == run_command("formula", cfg).body.dump(), "in-process determinism");
        }
        auto tmp = std::filesystem::temp_directory_path();
        std::string a = (tmp / "dwork_det_a.json").string(), b = (tmp / "dwork_det_b.json").string();
        const std::string cfg = std::string(DWORK_CORPUS_DIR) + "/kloosterman.json";
        for (const char* cmd : {"count --dmax 3", "formula", "sympower"}) {
            log.check(run_cli(std::string(cmd) + " --config " + cfg + " --json-out " + a) == 0, std::string("exit code ") + cmd);
            log.check(run_cli(std::string(cmd) + " --config " + cfg + " --json-out " + b) == 0, std::string("exit code ") + cmd);
            log.check(files_equal(a, b), std::string("byte-identical ") + cmd);
        }
        std::string bad = (tmp / "dwork_bad.json").string();
        std::ofstream(bad) << R"({"p": 3, "s": 1, "n": 1, "terms": [{"r": [1], "u": [1], "coeff": "h^2"}]})";
        log.check(run_cli("count --config " + bad + " --json-out " + a) == 2, "malformed coefficient exit code");
        std::ifstream in(a);
        std::stringstream ss;
        ss << in.rdbuf();
        log.check(ss.str().find("/terms/0/coeff") != std::string::npos, "structured config error");
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
