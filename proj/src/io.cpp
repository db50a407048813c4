#include "toy/io.hpp"

#include <fstream>
#include <sstream>

namespace toy {

namespace detail {

Rational parse_rational(const Json& x) {
  if (x.is_number_integer()) return Rational(x.get<std::int64_t>());
  if (!x.is_string()) schema("rational entries must be integers or \"a/b\" strings");
  try {
    return Rational::parse(x.get<std::string>());
  } catch (const Error& e) {
    schema(e.what());
  }
}

std::int64_t parse_integer(const Json& x) {
  if (x.is_number_integer()) return x.get<std::int64_t>();
  if (x.is_string()) {
    const auto r = parse_rational(x);
    if (r.den() == 1) return r.num();
  }
  schema("prime-field entries must be integers");
}

}  // namespace detail

AnyField parse_field(const Json& j) {
  const auto& f = detail::member(j, "field");
  if (!f.is_string()) detail::schema("\"field\" must be a string");
  const auto name = f.get<std::string>();
  if (name == "rational") return Field<Rational>{};
  if (name != "prime") detail::schema("unknown field \"" + name + "\"");
  const auto& d = detail::member(j, "d");
  if (!d.is_number_integer() || d.get<std::int64_t>() < 2 || d.get<std::int64_t>() > (1 << 30))
    detail::schema("\"d\" must be an integer prime");
  return Field<Zp>{static_cast<std::uint32_t>(d.get<std::int64_t>())};
}

Index parse_systems(const Json& j) {
  const auto& n = detail::member(j, "n");
  if (!n.is_number_integer() || n.get<std::int64_t>() < 1) detail::schema("\"n\" must be a positive integer");
  return n.get<Index>();
}

AnyState parse_state(const Json& j) {
  const Index n = parse_systems(j);
  return std::visit(
      [&](const auto& field) -> AnyState {
        const auto space = make_space(field, n);
        const auto gens = parse_rows(field, detail::member(j, "generators"), space.dim());
        const auto v = parse_vector(field, detail::member(j, "valuation"), space.dim());
        return make_state(space, std::span(gens), v);
      },
      parse_field(j));
}

Json state_json(const AnyState& s) {
  return std::visit([](const auto& x) { return state_json(x); }, s);
}

OnticSupport parse_support(const Json& j) {
  const auto field = parse_field(j);
  if (!std::holds_alternative<Field<Zp>>(field)) detail::schema("explicit supports need a prime field");
  const auto& f = std::get<Field<Zp>>(field);
  const auto space = make_space(f, parse_systems(j));
  ontic_space_size(space);
  std::vector<std::uint64_t> codes;
  for (const auto& v : parse_rows(f, detail::member(j, "support"), space.dim())) codes.push_back(pack(v, f.p));
  if (codes.empty()) detail::schema("empty support");
  return OnticSupport::from_codes(space, std::move(codes));
}

Json support_json(const OnticSupport& sup) {
  Json out = field_json(sup.space.field, sup.space.systems);
  out["support"] = Json::array();
  for (std::size_t i = 0; i < sup.size(); ++i) out["support"].push_back(vector_json(sup.vector(i)));
  return out;
}

Json report_json(const ScenarioReport& r) {
  Json out;
  out["scenario"] = r.name;
  out["transcript"] = Json::array();
  for (const auto& e : r.transcript) out["transcript"].push_back({{"step", e.step}, {"detail", e.detail}});
  out["counters"] = Json::object();
  for (const auto& [k, v] : r.counters) out["counters"][k] = v;
  out["claims"] = Json::array();
  for (const auto& c : r.claims) out["claims"].push_back({{"claim", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  out["verdict"] = r.passed() ? "pass" : "fail";
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::schema("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    detail::schema(path + ": " + e.what());
  }
}

}  // namespace toy
