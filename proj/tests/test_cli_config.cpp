#include "doctest.h"

#include "dwork/config.hpp"
#include "dwork/report.hpp"

using namespace dwork;
using json = nlohmann::ordered_json;

namespace {

json kloosterman_json()
{
    return json::parse(R"({"p": 3, "s": 1, "n": 1,
        "terms": [{"r": [0], "u": [1], "coeff": "1"}, {"r": [1], "u": [-1], "coeff": 1}],
        "overrides": {"d_max": 2, "t_max": 2}})");
}

std::string field_of(const json& j)
{
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.field;
    }
    return "";
}

}  // namespace

TEST_CASE("config parsing: defaults, generator powers and kappa digits")
{
    auto cfg = parse_config(kloosterman_json());
    CHECK(cfg.N == 3);
    CHECK(cfg.d_max == 2);
    CHECK(cfg.K == 3);
    CHECK(cfg.kappa.is_plain_integer());

    auto j = kloosterman_json();
    j["a"] = 2;
    j["terms"][0]["coeff"] = "g^2";
    j["kappa"] = "112";
    auto c9 = parse_config(j);
    auto fam = c9.family();
    const auto& F = fam.base_field();
    CHECK(fam.terms()[0].coeff == F.mul(F.generator(), F.generator()));
    CHECK(F.generator() == 4);
    CHECK(!c9.kappa.is_exact());
    CHECK(c9.kappa.value() == 1 + 3 + 18);
    CHECK(c9.hash() != cfg.hash());
    CHECK(cfg.hash() == parse_config(kloosterman_json()).hash());
}

TEST_CASE("config errors name the offending field")
{
    auto j = kloosterman_json();
    j["terms"][1]["coeff"] = "h^2";
    CHECK(field_of(j) == "/terms/1/coeff");
    j = kloosterman_json();
    j["terms"][0]["coeff"] = "3";
    CHECK(field_of(j) == "/terms/0/coeff");
    j = kloosterman_json();
    j["kappa"] = "13";
    CHECK(field_of(j) == "/kappa");
    j = kloosterman_json();
    j["p"] = 4;
    CHECK(field_of(j) == "/p");
    j = kloosterman_json();
    j["terms"][0]["u"] = json::array({1, 2});
    CHECK(field_of(j) == "/terms/0/u");
    j = kloosterman_json();
    j["overrides"]["D_Z"] = 3;
    CHECK(field_of(j) == "/overrides/D_Z");
}

TEST_CASE("reports: count of the Kloosterman family, formula of Lambda X, determinism")
{
    auto cfg = parse_config(kloosterman_json());
    auto count = run_command("count", cfg);
    CHECK(count.ok);
    CHECK(count.body["result"]["fiber_count"] == 5);
    for (const auto& f : count.body["result"]["fibers"]) CHECK(f["l_function"]["numerator"].size() == 3);
    CHECK(count.body.begin().key() == "manifest");
    CHECK(count.body["manifest"]["truncation"]["d_max"] == 2);
    CHECK(run_command("count", cfg).body.dump() == count.body.dump());

    auto lx = parse_config(json::parse(R"({"p": 3, "s": 1, "n": 1, "terms": [{"r": [1], "u": [1], "coeff": "1"}]})"));
    auto formula = run_command("formula", lx);
    CHECK(formula.ok);
    CHECK(formula.body["result"]["formula"]["value"]["pi_digits"][0] == json::array({1}));
    for (size_t k = 1; k < 6; ++k) CHECK(formula.body["result"]["formula"]["value"]["pi_digits"][k] == json::array({0}));
    CHECK_THROWS(run_command("nonsense", lx));
}
