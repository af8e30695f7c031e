#include "dwork/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace dwork {

namespace {

using json = nlohmann::ordered_json;

int get_int(const json& j, const std::string& key, const std::string& where, int fallback, int lo, bool required = false)
{
    if (!j.contains(key)) {
        if (required) throw ConfigError(where + "/" + key, "missing required field");
        return fallback;
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "/" + key, "expected an integer");
    long long x = v.get<long long>();
    if (x < lo || x > 1000000) throw ConfigError(where + "/" + key, "value out of range");
    return static_cast<int>(x);
}

Exponent get_exponent(const json& j, const std::string& where, size_t len)
{
    if (!j.is_array()) throw ConfigError(where, "expected an array of integers");
    if (j.size() != len) throw ConfigError(where, "expected " + std::to_string(len) + " entries");
    Exponent e;
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw ConfigError(where + "/" + std::to_string(i), "expected an integer");
        e.push_back(j[i].get<int>());
    }
    return e;
}

bool is_prime(int p)
{
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

KappaExponent parse_kappa(const json& j, int p)
{
    if (j.is_number_integer()) return KappaExponent::integer(j.get<long long>());
    if (!j.is_string()) throw ConfigError("/kappa", "expected an integer or a digit string");
    std::vector<int> digits;
    for (char c : j.get<std::string>()) {
        if (c < '0' || c > '9' || c - '0' >= p) throw ConfigError("/kappa", "digit out of range for base " + std::to_string(p));
        digits.push_back(c - '0');
    }
    if (digits.empty()) throw ConfigError("/kappa", "empty digit string");
    return KappaExponent::from_digits(p, digits);
}

}  // namespace

GaloisField::Elem parse_coefficient(const GaloisField& field, const std::string& text, const std::string& where)
{
    static const std::regex gen_re(R"(g\^([0-9]+))"), int_re(R"(-?[0-9]+)");
    std::smatch m;
    GaloisField::Elem c;
    if (std::regex_match(text, m, gen_re)) {
        c = field.pow(field.generator(), std::stoull(m[1].str()));
    } else if (std::regex_match(text, int_re)) {
        c = field.from_int(std::stol(text));
    } else {
        throw ConfigError(where, "coefficient must be \"g^k\" or an integer, got \"" + text + "\"");
    }
    if (c == 0) throw ConfigError(where, "coefficient is zero in F_q");
    return c;
}

FamilyConfig parse_config(const json& j)
{
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    FamilyConfig c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ConfigError("/name", "expected a string");
        c.name = j["name"].get<std::string>();
    }
    c.p = get_int(j, "p", "", 0, 2, true);
    if (!is_prime(c.p)) throw ConfigError("/p", "p must be prime");
    c.a = get_int(j, "a", "", 1, 1);
    c.s = get_int(j, "s", "", 0, 1, true);
    c.n = get_int(j, "n", "", 0, 1, true);
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
        throw ConfigError("/terms", "expected a nonempty array of terms");
    GaloisField field(c.p, c.a);
    for (size_t b = 0; b < j["terms"].size(); ++b) {
        const auto& t = j["terms"][b];
        std::string where = "/terms/" + std::to_string(b);
        if (!t.is_object()) throw ConfigError(where, "expected an object {r, u, coeff}");
        for (const char* key : {"r", "u", "coeff"})
            if (!t.contains(key)) throw ConfigError(where + "/" + key, "missing required field");
        TermSpec spec;
        spec.r = get_exponent(t["r"], where + "/r", static_cast<size_t>(c.s));
        spec.u = get_exponent(t["u"], where + "/u", static_cast<size_t>(c.n));
        if (t["coeff"].is_number_integer())
            spec.coeff = std::to_string(t["coeff"].get<long long>());
        else if (t["coeff"].is_string())
            spec.coeff = t["coeff"].get<std::string>();
        else
            throw ConfigError(where + "/coeff", "expected a string or an integer");
        parse_coefficient(field, spec.coeff, where + "/coeff");
        c.terms.push_back(std::move(spec));
    }
    if (j.contains("kappa")) c.kappa = parse_kappa(j["kappa"], c.p);
    c.N = get_int(j, "precision", "", c.N, 1);
    if (j.contains("overrides")) {
        const auto& o = j["overrides"];
        if (!o.is_object()) throw ConfigError("/overrides", "expected an object");
        for (const auto& [key, v] : o.items())
            if (key != "D_X" && key != "D_Lambda" && key != "D_Y" && key != "t_max" && key != "d_max" && key != "K")
                throw ConfigError("/overrides/" + key, "unknown override");
        c.D_X = get_int(o, "D_X", "/overrides", c.D_X, 1);
        c.D_Lambda = get_int(o, "D_Lambda", "/overrides", c.D_Lambda, 1);
        c.D_Y = get_int(o, "D_Y", "/overrides", c.D_Y, 1);
        c.t_max = get_int(o, "t_max", "/overrides", c.t_max, 1);
        c.d_max = get_int(o, "d_max", "/overrides", c.d_max, 1);
        c.K = get_int(o, "K", "/overrides", c.K, 1);
    }
    try {
        c.family();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("/terms", e.what());
    }
    return c;
}

LaurentFamily FamilyConfig::family() const
{
    GaloisField field(p, a);
    std::vector<FamilyTerm> fts;
    for (size_t b = 0; b < terms.size(); ++b)
        fts.push_back({terms[b].r, terms[b].u, parse_coefficient(field, terms[b].coeff, "/terms/" + std::to_string(b) + "/coeff")});
    return LaurentFamily(p, a, s, n, std::move(fts));
}

nlohmann::ordered_json FamilyConfig::canonical() const
{
    json j;
    j["name"] = name;
    j["p"] = p;
    j["a"] = a;
    j["s"] = s;
    j["n"] = n;
    j["terms"] = json::array();
    for (const auto& t : terms) j["terms"].push_back({{"r", t.r}, {"u", t.u}, {"coeff", t.coeff}});
    if (kappa.is_exact()) {
        j["kappa"] = kappa.value().get_str();
    } else {
        std::string digits;
        for (int d : kappa.digits(p, kappa.known_digits())) digits += static_cast<char>('0' + d);
        j["kappa_digits"] = digits;
    }
    j["precision"] = N;
    j["overrides"] = {{"D_X", D_X}, {"D_Lambda", D_Lambda}, {"D_Y", D_Y}, {"t_max", t_max}, {"d_max", d_max}, {"K", K}};
    return j;
}

std::string FamilyConfig::hash() const
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canonical().dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FamilyConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        const std::string text = ss.str();
        size_t pos = std::min(e.byte == 0 ? size_t{0} : e.byte - 1, text.size());
        long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
        size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
        long col = static_cast<long>(nl == std::string::npos ? pos + 1 : pos - nl);
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
    }
    FamilyConfig c = parse_config(j);
    if (c.name.empty()) c.name = std::filesystem::path(path).stem().string();
    return c;
}

std::vector<std::string> corpus_paths()
{
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(DWORK_CORPUS_DIR))
        if (entry.path().extension() == ".json") out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dwork
