#ifndef DWORK_SERIALIZE_HPP
#define DWORK_SERIALIZE_HPP

#include <string>

#include "json.hpp"

#include "dwork/cyclotomic.hpp"
#include "dwork/padic.hpp"

namespace dwork {

// {"pi_digits": [[d_0..d_{a-1}], ...], "prec_pi": k, "p": p, "a": a}
nlohmann::ordered_json padic_to_json(const EisensteinElement& x);
EisensteinElement padic_from_json(const nlohmann::ordered_json& j, const FieldContext& ctx);
std::string padic_compact(const EisensteinElement& x);

// Coordinates of an element of Z[zeta_p] in the basis 1, zeta, ..., zeta^{p-2}, as decimal strings.
nlohmann::ordered_json cyclotomic_to_json(const CyclotomicInt& c);

}  // namespace dwork

#endif
