#pragma once

// JSON documents for states, supports, transforms, measurements and reports.
//
//   state:       {"field": "prime"|"rational", "d": 2, "n": 1,
//                 "generators": [[1,0]], "valuation": [0,0]}
//   support:     {"field": "prime", "d": 2, "n": 1, "support": [[0,0],[1,0]]}
//   transform:   {"U": [[0,1],[-1,0]], "shift": [0,0]}
//   measurement: {"observables": [[1,0]]}
//
// Entries are integers or strings; rationals are written "a/b".
// Malformed documents throw Error(Schema).

#include <string>
#include <variant>

#include "json.hpp"
#include "toy/dynamics.hpp"
#include "toy/measurement.hpp"
#include "toy/scenarios.hpp"

namespace toy {

using Json = nlohmann::json;

using AnyField = std::variant<Field<Zp>, Field<Rational>>;
using AnyState = std::variant<EpistemicState<Zp>, EpistemicState<Rational>>;

namespace detail {
[[noreturn]] inline void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing \"") + key + "\"");
  return j.at(key);
}

Rational parse_rational(const Json& x);
std::int64_t parse_integer(const Json& x);

template <class S>
S parse_scalar(const Field<S>& field, const Json& x) {
  if constexpr (Field<S>::finite) {
    return field(parse_integer(x));
  } else {
    return parse_rational(x);
  }
}

template <class S>
Json scalar_json(const S& x) {
  if constexpr (std::is_same_v<S, Zp>) {
    return x.value();
  } else {
    return to_string(x);
  }
}
}  // namespace detail

/// Field and system count from the "field", "d" and "n" keys.
AnyField parse_field(const Json& j);
Index parse_systems(const Json& j);

template <class S>
Vec<S> parse_vector(const Field<S>& field, const Json& j, Index length) {
  if (!j.is_array()) detail::schema("vector must be an array");
  if (static_cast<Index>(j.size()) != length)
    detail::schema("vector has " + std::to_string(j.size()) + " entries, expected " + std::to_string(length));
  Vec<S> v(length);
  for (Index i = 0; i < length; ++i) v(i) = detail::parse_scalar(field, j[static_cast<std::size_t>(i)]);
  return v;
}

template <class S>
Json vector_json(const Vec<S>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(detail::scalar_json(v(i)));
  return out;
}

template <class S>
std::vector<Vec<S>> parse_rows(const Field<S>& field, const Json& j, Index length) {
  if (!j.is_array()) detail::schema("expected an array of vectors");
  std::vector<Vec<S>> rows;
  for (const auto& r : j) rows.push_back(parse_vector(field, r, length));
  return rows;
}

template <class S>
Json field_json(const Field<S>& field, Index systems) {
  Json out;
  if constexpr (Field<S>::finite) {
    out["field"] = "prime";
    out["d"] = field.p;
  } else {
    out["field"] = "rational";
  }
  out["n"] = systems;
  return out;
}

AnyState parse_state(const Json& j);

template <class S>
Json state_json(const EpistemicState<S>& s) {
  Json out = field_json(s.field(), s.systems());
  out["generators"] = Json::array();
  for (Index i = 0; i < s.knowledge_bits(); ++i) out["generators"].push_back(vector_json<S>(s.known().generator(i)));
  out["valuation"] = vector_json(s.valuation());
  return out;
}

Json state_json(const AnyState& s);

/// Explicit supports (prime fields only).
OnticSupport parse_support(const Json& j);
Json support_json(const OnticSupport& sup);

template <class S>
SymplecticTransform<S> parse_transform(const Json& j, const PhaseSpace<S>& space) {
  const auto rows = parse_rows(space.field, detail::member(j, "U"), space.dim());
  if (static_cast<Index>(rows.size()) != space.dim()) detail::schema("U must be square of size 2n");
  Mat<S> u(space.dim(), space.dim());
  for (Index i = 0; i < space.dim(); ++i) u.row(i) = rows[static_cast<std::size_t>(i)].transpose();
  Vec<S> shift = zero_vector(space.field, space.dim());
  if (j.contains("shift")) shift = parse_vector(space.field, j.at("shift"), space.dim());
  return make_transform(space, u, shift);
}

template <class S>
Json transform_json(const SymplecticTransform<S>& t) {
  Json out;
  out["U"] = Json::array();
  for (Index i = 0; i < t.matrix().rows(); ++i) out["U"].push_back(vector_json<S>(t.matrix().row(i).transpose()));
  out["shift"] = vector_json(t.shift());
  return out;
}

template <class S>
Measurement<S> parse_measurement(const Json& j, const PhaseSpace<S>& space) {
  const auto rows = parse_rows(space.field, detail::member(j, "observables"), space.dim());
  return make_measurement(space, std::span<const Vec<S>>(rows));
}

template <class S>
Json measurement_json(const Measurement<S>& m) {
  Json out;
  out["observables"] = Json::array();
  for (Index i = 0; i < m.rank(); ++i) out["observables"].push_back(vector_json<S>(m.observables().generator(i)));
  return out;
}

Json report_json(const ScenarioReport& r);

/// Reads a whole file as JSON; I/O and parse failures throw Error(Schema).
Json read_json_file(const std::string& path);

}  // namespace toy
