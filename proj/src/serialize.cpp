#include "dwork/serialize.hpp"

#include <stdexcept>

#include "dwork/padic_core.hpp"

namespace dwork {

nlohmann::ordered_json padic_to_json(const EisensteinElement& x)
{
    if (!x.context()) throw std::invalid_argument("padic_to_json: element has no context");
    nlohmann::ordered_json j;
    j["pi_digits"] = pi_digits(x);
    j["prec_pi"] = x.prec_pi();
    j["p"] = x.context()->p();
    j["a"] = x.context()->degree();
    return j;
}

EisensteinElement padic_from_json(const nlohmann::ordered_json& j, const FieldContext& ctx)
{
    if (j.at("p").get<int>() != ctx.p() || j.at("a").get<int>() != ctx.degree())
        throw std::invalid_argument("padic_from_json: context mismatch");
    auto digits = j.at("pi_digits").get<std::vector<std::vector<int>>>();
    return from_pi_digits(ctx, digits).with_prec(j.at("prec_pi").get<int>());
}

std::string padic_compact(const EisensteinElement& x) { return padic_to_json(x).dump(); }

nlohmann::ordered_json cyclotomic_to_json(const CyclotomicInt& c)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& v : c.coords()) j.push_back(v.get_str());
    return j;
}

}  // namespace dwork
