#include "arithdisc/json_io.hpp"

#include <fstream>

#include "arithdisc/errors.hpp"

namespace arithdisc {

Rational json_to_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw SchemaError("expected integer or rational string");
}

nlohmann::json rational_to_json(const Rational& q) { return rational_to_string(q); }

Integer json_to_integer(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw SchemaError("expected integer");
}

nlohmann::json integer_to_json(const Integer& z) { return z.get_str(); }

FieldPtr json_to_field(const nlohmann::json& j) {
  if (j.is_string()) {
    // Builtin name, or a path to a custom-field JSON document.
    std::string name = j.get<std::string>();
    try {
      return NumberField::builtin(name);
    } catch (const Error&) {
      std::ifstream in(name);
      if (!in) throw SchemaError("unknown field: " + name);
      nlohmann::json doc;
      in >> doc;
      return json_to_field(doc);
    }
  }
  if (!j.is_object()) throw SchemaError("field: expected name or document");
  if (!j.contains("min_poly") || !j.contains("integral_basis"))
    throw SchemaError("field document needs min_poly and integral_basis");
  QPoly mp;
  for (const auto& c : j.at("min_poly")) mp.push_back(json_to_rational(c));
  std::vector<std::vector<Rational>> basis;
  for (const auto& row : j.at("integral_basis")) {
    std::vector<Rational> b;
    for (const auto& c : row) b.push_back(json_to_rational(c));
    basis.push_back(std::move(b));
  }
  std::vector<std::vector<Rational>> autos;
  if (j.contains("automorphisms"))
    for (const auto& row : j.at("automorphisms")) {
      std::vector<Rational> a;
      for (const auto& c : row) a.push_back(json_to_rational(c));
      autos.push_back(std::move(a));
    }
  unsigned prec = j.value("precision", 32u);
  return NumberField::create(std::move(mp), std::move(basis), std::move(autos), prec);
}

IntegerElement json_to_int_element(const nlohmann::json& j, const NumberField& K) {
  IntegerElement x;
  if (j.is_array()) {
    for (const auto& c : j) x.coords.push_back(json_to_integer(c));
  } else {
    x.coords.push_back(json_to_integer(j));
    x.coords.resize(K.degree(), Integer(0));
  }
  if (x.coords.size() != K.degree())
    throw SchemaError("element coordinate count mismatch");
  return x;
}

nlohmann::json int_element_to_json(const IntegerElement& x) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : x.coords) j.push_back(c.get_str());
  return j;
}

FieldElement json_to_field_element(const nlohmann::json& j, const NumberField& K) {
  FieldElement x;
  if (j.is_array()) {
    for (const auto& c : j) x.coords.push_back(json_to_rational(c));
  } else {
    x.coords.push_back(json_to_rational(j));
    x.coords.resize(K.degree(), Rational(0));
  }
  if (x.coords.size() != K.degree())
    throw SchemaError("element coordinate count mismatch");
  return x;
}

LocalizedElement json_to_localized(const nlohmann::json& j, const NumberField& K) {
  if (!j.is_object() || !j.contains("num"))
    throw SchemaError("localized element needs num");
  LocalizedElement x;
  x.num = json_to_int_element(j.at("num"), K);
  x.denom_exp = j.value("exp", 0u);
  return x;
}

nlohmann::json localized_to_json(const LocalizedElement& x) {
  return {{"num", int_element_to_json(x.num)}, {"exp", x.denom_exp}};
}

RingPtr json_to_ring(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("ring: expected object");
  FieldPtr field = json_to_field(j.at("field"));
  std::optional<IntegerElement> base;
  if (j.contains("denom_base") && !j.at("denom_base").is_null())
    base = json_to_int_element(j.at("denom_base"), *field);
  TailMode tag = TailMode::FormalTail;
  std::string t = j.value("tag", "formal");
  if (t == "convergent")
    tag = TailMode::ConvergentTail;
  else if (t != "formal")
    throw SchemaError("ring tag must be formal or convergent");
  return make_ring(field, base, tag);
}

TruncatedSeries json_to_series(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ring")) throw SchemaError("series needs ring");
  return json_to_series(j, json_to_ring(j.at("ring")));
}

TruncatedSeries json_to_series(const nlohmann::json& j, RingPtr ring) {
  if (!j.is_object() || !j.contains("order")) throw SchemaError("series needs order");
  unsigned order = j.at("order").get<unsigned>();
  std::vector<LocalizedElement> cs(order,
                                   LocalizedElement{ring->field->int_zero(), 0});
  if (j.contains("coeffs")) {
    const auto& arr = j.at("coeffs");
    if (arr.size() > order) throw SchemaError("series: more coefficients than order");
    for (size_t i = 0; i < arr.size(); ++i)
      cs[i] = json_to_localized(arr[i], *ring->field);
  }
  return series_from_coeffs(std::move(ring), order, std::move(cs));
}

nlohmann::json series_to_json(const TruncatedSeries& s) {
  nlohmann::json j;
  j["order"] = s.order;
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : s.coeffs) j["coeffs"].push_back(localized_to_json(c));
  return j;
}

FiniteGroup json_to_group(const nlohmann::json& j) {
  if (j.is_number_integer()) return FiniteGroup::cyclic(j.get<size_t>());
  if (!j.is_array()) throw SchemaError("group: expected cyclic order or table");
  std::vector<std::vector<size_t>> table;
  for (const auto& row : j) {
    std::vector<size_t> r;
    for (const auto& v : row) r.push_back(v.get<size_t>());
    table.push_back(std::move(r));
  }
  return FiniteGroup::from_table(std::move(table));
}

}  // namespace arithdisc
