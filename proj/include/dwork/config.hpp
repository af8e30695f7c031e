#ifndef DWORK_CONFIG_HPP
#define DWORK_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dwork/family.hpp"
#include "dwork/kappa.hpp"

namespace dwork {

struct ConfigError : std::runtime_error {
    std::string field;  // JSON pointer of the offending field, or "line L, column C" for syntax errors
    ConfigError(std::string f, const std::string& msg) : std::runtime_error(msg), field(std::move(f)) {}
};

struct TermSpec {
    Exponent r, u;
    std::string coeff;  // "g^k" or an integer in F_p
};

struct FamilyConfig {
    std::string name;
    int p = 0, a = 1, s = 0, n = 0;
    std::vector<TermSpec> terms;
    KappaExponent kappa = KappaExponent::integer(1);
    int N = 3;
    int D_X = 4, D_Lambda = 4, D_Y = 12;
    int t_max = 3, d_max = 4, K = 3;

    LaurentFamily family() const;
    // Normalized form: every field present, fixed key order.
    nlohmann::ordered_json canonical() const;
    // FNV-1a of canonical().dump(), 16 hex digits.
    std::string hash() const;
};

GaloisField::Elem parse_coefficient(const GaloisField& field, const std::string& text, const std::string& where);
FamilyConfig parse_config(const nlohmann::ordered_json& j);
FamilyConfig load_config(const std::string& path);

// Bundled example configs, sorted by file name.
std::vector<std::string> corpus_paths();

}  // namespace dwork

#endif
