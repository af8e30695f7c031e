#include "dwork/report.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dwork/dwork_fiber.hpp"
#include "dwork/ff_counting.hpp"
#include "dwork/padic_core.hpp"
#include "dwork/serialize.hpp"
#include "dwork/sym_power.hpp"
#include "dwork/unit_root_pipeline.hpp"

namespace dwork {

namespace {

using json = nlohmann::ordered_json;

// Certificates collected while a command runs, in emission order.
class Certificates {
public:
    void add(const std::string& name, bool pass, json detail = json::object())
    {
        json c;
        c["name"] = name;
        c["status"] = pass ? "PASS" : "FAIL";
        if (!detail.empty()) c["detail"] = std::move(detail);
        list_.push_back(std::move(c));
        if (!pass && first_failure_.empty()) first_failure_ = name;
    }
    bool ok() const { return first_failure_.empty(); }
    const std::string& first_failure() const { return first_failure_; }
    json to_json() const { return list_; }

private:
    json list_ = json::array();
    std::string first_failure_;
};

json series_json(const TSeries& s)
{
    json j = json::array();
    for (const auto& c : s) j.push_back(padic_to_json(c));
    return j;
}

json padic_list(const std::vector<EisensteinElement>& v) { return series_json(v); }

json cyclotomic_list(const std::vector<CyclotomicInt>& v)
{
    json j = json::array();
    for (const auto& c : v) j.push_back(cyclotomic_to_json(c));
    return j;
}

json point_json(const ClosedPoint& pt)
{
    json j;
    j["orbit_id"] = pt.orbit_id;
    j["degree"] = pt.degree;
    j["coords"] = pt.coords;
    return j;
}

json unit_root_json(const UnitRootResult& r)
{
    json j;
    j["route"] = r.route;
    j["value"] = padic_to_json(r.value);
    j["certified_pi"] = r.certified_pi;
    j["stable"] = r.stable;
    j["trail_degrees"] = r.trail_degrees;
    j["trail"] = padic_list(r.trail);
    if (r.sign != 0) j["sign"] = r.sign == 1 ? "pole" : "zero";
    return j;
}

SymTrunc sym_trunc(const FamilyConfig& cfg)
{
    SymTrunc t;
    t.t_max = cfg.t_max;
    t.d_x = cfg.D_X;
    t.d_lambda = cfg.D_Lambda;
    return t;
}

// Required precision of the invariant suites: mod p^2, capped by N.
int suite_target(const FamilyConfig& cfg) { return std::min(2, cfg.N) * (cfg.p - 1); }

json truncation_json(const FamilyConfig& cfg, const LaurentFamily& fam)
{
    json t;
    t["N"] = cfg.N;
    t["D_X"] = cfg.D_X;
    t["D_Lambda"] = cfg.D_Lambda;
    t["D_Y"] = cfg.D_Y;
    t["t_max"] = cfg.t_max;
    t["d_max"] = cfg.d_max;
    t["K"] = cfg.K;
    t["fiber_D"] = default_fiber_degree(fam, cfg.N);
    t["lambda_cap"] = resolve_trunc(fam, sym_trunc(cfg)).lambda_cap;
    t["suite_target_pi"] = suite_target(cfg);
    return t;
}

// Kappa residues mod p^l, l = 1..3, lifted to distinct positive integers.
std::vector<long long> convergent_exponents(const FamilyConfig& cfg)
{
    std::vector<long long> ks;
    const int levels = cfg.kappa.is_exact() ? 3 : std::min(3, cfg.kappa.known_digits());
    mpz_class pl = 1;
    for (int l = 1; l <= levels; ++l) {
        pl *= cfg.p;
        mpz_class r = cfg.kappa.value() % pl;
        if (r < 0) r += pl;
        ks.push_back(mpz_class(r + pl).get_si());
    }
    return ks;
}

struct LPoly {
    bool available = false;
    std::vector<CyclotomicInt> sums;
    RationalL L;
};

LPoly exact_l_function(const LaurentFamily& fam, const ClosedPoint& pt)
{
    LPoly out;
    int M = 2;
    while (exact_sum_affordable(fam, pt, M)) {
        while (static_cast<int>(out.sums.size()) < M) out.sums.push_back(exp_sum(fam, pt, static_cast<int>(out.sums.size()) + 1));
        try {
            out.L = rational_reconstruct(l_series_from_sums(out.sums));
            out.available = true;
            return out;
        } catch (const UnstableRecurrence& e) {
            M = std::max(M + 1, e.required_terms);
        }
    }
    return out;
}

json l_function_json(const LPoly& l)
{
    json j;
    j["sums"] = cyclotomic_list(l.sums);
    j["numerator"] = cyclotomic_list(l.L.numerator);
    j["denominator"] = cyclotomic_list(l.L.denominator);
    j["orientation"] = l.L.orientation;
    j["verified_terms"] = l.L.verified_terms;
    return j;
}

json cmd_count(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates&)
{
    json fibers = json::array();
    for (const auto& pt : enumerate_closed_points(fam, cfg.d_max)) {
        json f = point_json(pt);
        auto l = exact_l_function(fam, pt);
        if (l.available)
            f["l_function"] = l_function_json(l);
        else
            f["l_function"] = {{"status", "skipped: field beyond exact counting budget"}};
        fibers.push_back(std::move(f));
    }
    json out;
    out["fiber_count"] = fibers.size();
    out["fibers"] = std::move(fibers);
    return out;
}

json cmd_fiber(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates& certs)
{
    json fibers = json::array();
    for (const auto& pt : enumerate_closed_points(fam, cfg.d_max)) {
        json f = point_json(pt);
        auto root = fiber_unit_root_padic(fam, pt, cfg.N);
        json r;
        r["value"] = padic_to_json(root.value);
        r["certified_pi"] = root.certified_pi;
        r["D"] = root.D;
        r["stable"] = root.stable;
        r["unit_roots"] = root.unit_roots;
        r["trail_agreements"] = root.trail.agreements;
        f["pi0"] = r;
        const bool root_ok = root.stable && root.unit_roots == 1;
        certs.add("fiber_unit_root " + pt.orbit_id, root_ok, {{"certified_pi", root.certified_pi}});

        if (exact_sum_affordable(fam, pt, cfg.K + 2)) {
            auto l = exact_l_function(fam, pt);
            if (l.available) {
                f["l_function"] = l_function_json(l);
                auto ctx = make_field_context(fam.p(), 1, cfg.N);
                auto ex = fiber_unit_root_exact(l.L, fam.n(), *ctx);
                f["pi0_exact"] = {{"value", padic_to_json(ex.value)},
                                  {"orientation", ex.is_zero ? "zero" : "pole"},
                                  {"agreement_pi", agreement(ex.value, root.value)}};
                certs.add("fiber_routes_agree " + pt.orbit_id, agreement(ex.value, root.value) >= root.certified_pi);
            }
            auto tf = verify_trace_formula(fam, pt, cfg.K, cfg.N);
            json t;
            t["D"] = tf.D;
            t["target_pi"] = tf.target_pi;
            t["exact"] = series_json(tf.exact);
            t["fredholm"] = series_json(tf.fredholm);
            t["delta"] = series_json(tf.delta);
            t["agreement"] = tf.agreement;
            t["stability"] = tf.stability;
            f["trace_formula"] = t;
            certs.add("trace_formula " + pt.orbit_id, tf.ok && tf.stable);
        } else {
            f["trace_formula"] = {{"status", "skipped: field beyond exact counting budget"}};
        }
        fibers.push_back(std::move(f));
    }
    json out;
    out["fibers"] = std::move(fibers);
    return out;
}

json cmd_lunit(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates& certs)
{
    auto ctx1 = make_field_context(fam.p(), 1, cfg.N);
    auto fibers = fiber_unit_roots(fam, cfg.d_max, cfg.N);
    auto l = assemble_l_unit(fibers, cfg.kappa, cfg.d_max, *ctx1);
    json fj = json::array();
    for (const auto& f : fibers) {
        json r = point_json(f.point);
        r["pi0"] = padic_to_json(f.pi0);
        r["certified_pi"] = f.certified_pi;
        r["route"] = f.route;
        if (f.cross_check_pi >= 0) r["cross_check_pi"] = f.cross_check_pi;
        fj.push_back(std::move(r));
    }
    json out;
    out["fibers"] = std::move(fj);
    out["l_unit"] = series_json(l.product);
    out["l_unit_from_moments"] = series_json(l.moments_route);
    out["route_agreement_pi"] = l.route_agreement;
    out["moments"] = padic_list(l.moments);
    int tracked = ctx1->pi_precision();
    for (const auto& c : l.moments_route) tracked = std::min(tracked, c.prec_pi());
    out["moments_route_prec_pi"] = tracked;
    certs.add("l_unit_routes_agree", l.route_agreement >= tracked, {{"agreement_pi", l.route_agreement}});
    if (cfg.d_max >= 2) {
        auto root = extract_unit_root(l, fam.s(), ctx1->pi_precision());
        out["unit_root"] = unit_root_json(root);
        certs.add("unit_root_certified", root.certified_pi >= suite_target(cfg), {{"certified_pi", root.certified_pi}});
    }
    return out;
}

json cmd_formula(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates& certs)
{
    auto r = formula_eval(fam, cfg.kappa, cfg.N, cfg.D_Y);
    json out;
    out["g00_trivial"] = g00_is_trivial(fam, cfg.D_Y);
    out["formula"] = unit_root_json(r);
    certs.add("formula_stable", r.stable, {{"certified_pi", r.certified_pi}});
    return out;
}

json duality_json(const DualityReport& d)
{
    return {{"primal", series_json(d.primal)}, {"dual", series_json(d.dual)}, {"agreement", d.agreement}, {"target_pi", d.target_pi}};
}

json pairing_json(const PairingReport& r)
{
    return {{"pairs_checked", r.pairs_checked}, {"min_agreement", r.min_agreement}};
}

json convergence_json(const ConvergenceReport& c)
{
    return {{"ks", c.ks},           {"diff_scaled", c.diff_scaled}, {"bound", c.bound},       {"monotone", c.monotone},
            {"meets_bound", c.meets_bound}, {"det_agreement", c.det_agreement}, {"det_stable", c.det_stable},
            {"target_pi", c.target_pi}};
}

json trace_identity_json(const TraceIdentityReport& t)
{
    return {{"lhs", padic_to_json(t.lhs)}, {"rhs", padic_to_json(t.rhs)}, {"agreement", t.agreement},
            {"target_pi", t.target_pi}, {"points", t.points}};
}

// Duality, adjointness, convergence and the trace identity at the configured truncation.
void invariant_suites(const FamilyConfig& cfg, const LaurentFamily& fam, json& out, Certificates& certs)
{
    const SymTrunc trunc = sym_trunc(cfg);
    const int target = suite_target(cfg);
    const auto kappa = SymExponent::p_adic(cfg.kappa);

    auto dual = det_duality_check(fam, kappa, trunc, cfg.N, cfg.K, target);
    out["duality"] = duality_json(dual);
    certs.add("duality", dual.ok);

    json pairings = json::object();
    for (long long k : {1, 2}) {
        auto pr = pairing_check(fam, k, trunc, cfg.N);
        pairings["k=" + std::to_string(k)] = pairing_json(pr);
        certs.add("adjointness k=" + std::to_string(k), pr.ok);
    }
    out["adjointness"] = pairings;

    auto ks = convergent_exponents(cfg);
    auto conv = convergence_check(fam, cfg.kappa, ks, trunc, cfg.N, std::min(cfg.K, 2), target);
    out["convergence"] = convergence_json(conv);
    certs.add("convergence", conv.ok);

    auto ti = trace_identity_check(fam, kappa, trunc, cfg.N, target);
    out["trace_identity"] = trace_identity_json(ti);
    certs.add("trace_identity", ti.ok);
}

json cmd_sympower(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates& certs)
{
    const SymTrunc trunc = sym_trunc(cfg);
    auto op = beta_operator(fam, SymExponent::p_adic(cfg.kappa), trunc, cfg.N);
    auto m = op.assemble();
    std::map<int, long long> hist;
    long long zeros = 0;
    for (const auto& col : m.col)
        for (const auto& [row, c] : col) {
            if (c.is_zero())
                ++zeros;
            else
                ++hist[c.ord_pi()];
        }
    json h = json::array();
    for (const auto& [ord, count] : hist) h.push_back({{"ord_pi", ord}, {"count", count}});

    json out;
    out["dims"] = {{"basis", op.basis->size()}, {"lambda_points", op.lambda_count}, {"total", op.dim}, {"nonzeros", m.nonzeros()}};
    out["cap_pi"] = op.cap_pi;
    out["valuation_histogram"] = {{"nonzero", h}, {"zero_to_precision", zeros}};
    out["fredholm"] = series_json(sparse_fredholm(m, cfg.K, *op.ctx));

    auto br = beta_unit_root(op, true);
    out["unit_eigenvalue"] = {{"value", padic_to_json(br.value)},
                              {"certified_pi", br.certified_pi},
                              {"stable", br.trail.stable},
                              {"unit_roots", br.unit_roots}};
    certs.add("unit_eigenvalue", br.trail.stable && br.unit_roots == 1, {{"certified_pi", br.certified_pi}});

    invariant_suites(cfg, fam, out, certs);
    return out;
}

json cmd_verify(const FamilyConfig& cfg, const LaurentFamily& fam, Certificates& certs)
{
    PipelineParams params;
    params.N = cfg.N;
    params.d_max = cfg.d_max;
    params.d_y = cfg.D_Y;
    params.trunc = sym_trunc(cfg);
    auto tw = three_way_compare(fam, cfg.kappa, params);
    json t;
    t["point_count"] = unit_root_json(tw.point_count);
    t["operator"] = unit_root_json(tw.operator_route);
    t["formula"] = unit_root_json(tw.formula);
    t["operator_unit_roots"] = tw.unit_roots;
    t["truncation_agreement_pi"] = tw.truncation_agreement;
    t["min_certified_pi"] = tw.min_certified_pi;
    t["target_pi"] = tw.target_pi;
    t["agreement_pi"] = {{"point_count/operator", tw.agreement_ab},
                         {"point_count/formula", tw.agreement_ac},
                         {"operator/formula", tw.agreement_bc}};
    json out;
    out["three_way"] = t;
    if (!tw.ok && tw.min_certified_pi < tw.target_pi)
        certs.add("three_way", false, {{"reason", "insufficient stabilization"}});
    else
        certs.add("three_way", tw.ok);

    json tf = json::array();
    for (const auto& pt : enumerate_closed_points(fam, 1)) {
        if (!exact_sum_affordable(fam, pt, cfg.K + 2)) continue;
        auto rep = verify_trace_formula(fam, pt, cfg.K, cfg.N);
        tf.push_back({{"orbit_id", pt.orbit_id}, {"agreement", rep.agreement}, {"stability", rep.stability}});
        certs.add("trace_formula " + pt.orbit_id, rep.ok && rep.stable);
    }
    out["trace_formula"] = tf;
    invariant_suites(cfg, fam, out, certs);
    return out;
}

json manifest(const std::string& command, const FamilyConfig& cfg, const LaurentFamily& fam)
{
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    m["config_hash"] = cfg.hash();
    m["config"] = cfg.canonical();
    m["truncation"] = truncation_json(cfg, fam);
    return m;
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"count", "fiber", "lunit", "formula", "sympower", "verify"};
    return names;
}

CommandResult run_command(const std::string& command, const FamilyConfig& cfg)
{
    LaurentFamily fam = cfg.family();
    CommandResult res;
    Certificates certs;
    json payload;
    if (command == "count")
        payload = cmd_count(cfg, fam, certs);
    else if (command == "fiber")
        payload = cmd_fiber(cfg, fam, certs);
    else if (command == "lunit")
        payload = cmd_lunit(cfg, fam, certs);
    else if (command == "formula")
        payload = cmd_formula(cfg, fam, certs);
    else if (command == "sympower")
        payload = cmd_sympower(cfg, fam, certs);
    else if (command == "verify")
        payload = cmd_verify(cfg, fam, certs);
    else
        throw std::invalid_argument("unknown command " + command);
    res.body["manifest"] = manifest(command, cfg, fam);
    res.body["result"] = std::move(payload);
    res.body["certificates"] = certs.to_json();
    res.ok = certs.ok();
    res.first_failure = certs.first_failure();
    res.body["status"] = res.ok ? "PASS" : "FAIL";
    if (!res.ok) res.body["first_failure"] = res.first_failure;
    return res;
}

}  // namespace dwork
