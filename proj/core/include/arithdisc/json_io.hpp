#pragma once

#include <json.hpp>

#include "arithdisc/group.hpp"
#include "arithdisc/regroot.hpp"
#include "arithdisc/series.hpp"

namespace arithdisc {

// Integers and rationals travel as decimal strings so arbitrary-precision
// values round-trip exactly; plain JSON integers are accepted on input.

Rational json_to_rational(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& q);
Integer json_to_integer(const nlohmann::json& j);
nlohmann::json integer_to_json(const Integer& z);

/// Builtin name string, or a custom-field document
/// {"min_poly": [...], "integral_basis": [[...]], "automorphisms": [[...]]}.
FieldPtr json_to_field(const nlohmann::json& j);

IntegerElement json_to_int_element(const nlohmann::json& j, const NumberField& K);
nlohmann::json int_element_to_json(const IntegerElement& x);
FieldElement json_to_field_element(const nlohmann::json& j, const NumberField& K);

/// {"num": [int coords], "exp": m}
LocalizedElement json_to_localized(const nlohmann::json& j, const NumberField& K);
nlohmann::json localized_to_json(const LocalizedElement& x);

/// {"ring": {"field": ..., "denom_base": [...]?, "tag": "formal"|"convergent"},
///  "order": N, "coeffs": [{"num": [...], "exp": m}, ...]}
RingPtr json_to_ring(const nlohmann::json& j);
TruncatedSeries json_to_series(const nlohmann::json& j);
TruncatedSeries json_to_series(const nlohmann::json& j, RingPtr ring);
nlohmann::json series_to_json(const TruncatedSeries& s);

FiniteGroup json_to_group(const nlohmann::json& j);

}  // namespace arithdisc
