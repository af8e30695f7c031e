#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwork/config.hpp"
#include "dwork/report.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string config_path;
    std::optional<int> precision, d_max, t_max;
    std::string json_out;
    bool seed_corpus = false;
};

void apply_flags(dwork::FamilyConfig& cfg, const Options& o)
{
    if (o.precision) cfg.N = *o.precision;
    if (o.d_max) cfg.d_max = *o.d_max;
    if (o.t_max) cfg.t_max = *o.t_max;
}

json error_body(const std::string& kind, const std::string& message, const std::string& field = "")
{
    json e;
    e["kind"] = kind;
    if (!field.empty()) e["field"] = field;
    e["message"] = message;
    return {{"version", dwork::kVersion}, {"status", "ERROR"}, {"error", e}};
}

int emit(const json& body, const std::string& path)
{
    const std::string text = body.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 4;
    }
    out << text;
    return 0;
}

// Exit codes: 0 all certificates pass, 1 some certificate fails, 2 config error,
// 3 computation error, 4 output error.
int run(const std::string& command, const Options& o)
{
    json body;
    int code = 0;
    try {
        if (o.seed_corpus) {
            json runs = json::array();
            bool ok = true;
            for (const auto& path : dwork::corpus_paths()) {
                auto cfg = dwork::load_config(path);
                apply_flags(cfg, o);
                auto res = dwork::run_command(command, cfg);
                ok = ok && res.ok;
                runs.push_back(std::move(res.body));
            }
            body["version"] = dwork::kVersion;
            body["seed_corpus"] = true;
            body["runs"] = std::move(runs);
            body["status"] = ok ? "PASS" : "FAIL";
            code = ok ? 0 : 1;
        } else {
            if (o.config_path.empty()) throw dwork::ConfigError("--config", "a config file or --seed-corpus is required");
            auto cfg = dwork::load_config(o.config_path);
            apply_flags(cfg, o);
            auto res = dwork::run_command(command, cfg);
            body = std::move(res.body);
            code = res.ok ? 0 : 1;
        }
    } catch (const dwork::ConfigError& e) {
        body = error_body("config", e.what(), e.field);
        code = 2;
    } catch (const std::exception& e) {
        body = error_body("computation", e.what());
        code = 3;
    }
    int out = emit(body, o.json_out);
    return out ? out : code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"L-functions of toric exponential sums and unit-root L-functions via the Dwork trace formula"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config_path, "family config (JSON)");
    app.add_option("--precision", o.precision, "p-adic precision N")->check(CLI::Range(1, 31));
    app.add_option("--dmax", o.d_max, "largest closed-point degree")->check(CLI::PositiveNumber);
    app.add_option("--tmax", o.t_max, "symmetric-power degree bound")->check(CLI::PositiveNumber);
    app.add_option("--json-out", o.json_out, "write the report here instead of stdout");
    app.add_flag("--seed-corpus", o.seed_corpus, "run on every bundled example config");

    const std::map<std::string, std::string> help{
        {"count", "closed points, exponential sums and L-functions per fiber"},
        {"fiber", "fiber Frobenius: trace formula and unit root pi_0"},
        {"lunit", "unit-root L-function from fiber unit roots"},
        {"formula", "F_a(a-hat)^kappa from the hypergeometric series"},
        {"sympower", "symmetric-power operator and its invariant reports"},
        {"verify", "three-way unit-root comparison plus invariant suites"}};
    std::string chosen;
    for (const auto& name : dwork::command_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->fallthrough();
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);
    return run(chosen, o);
}
