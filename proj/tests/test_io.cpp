#include "doctest.h"

#include "toy/io.hpp"

using namespace toy;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("state documents round trip") {
  const Field<Zp> z3{3};
  const auto s = tensor(named_state(z3, "+"), named_state(z3, "mix"));
  const AnyState back = parse_state(state_json(s));
  CHECK(std::get<EpistemicState<Zp>>(back) == s);

  const auto j = Json::parse(R"({"field":"rational","n":1,"generators":[["1/2","3"]],"valuation":[0,"-2/3"]})");
  const auto q = std::get<EpistemicState<Rational>>(parse_state(j));
  CHECK(q.knowledge_bits() == 1);
  CHECK(std::get<EpistemicState<Rational>>(parse_state(state_json(q))) == q);
  CHECK(state_json(q)["valuation"][0].is_string());
}

TEST_CASE("schema errors") {
  CHECK(kind_of([] { parse_state(Json::parse(R"({"field":"prime","d":2,"n":1})")); }) == ErrorKind::Schema);
  CHECK(kind_of([] { parse_state(Json::parse(R"({"field":"real","n":1})")); }) == ErrorKind::Schema);
  CHECK(kind_of([] {
          parse_state(Json::parse(R"({"field":"prime","d":2,"n":1,"generators":[[1]],"valuation":[0,0]})"));
        }) == ErrorKind::Schema);
  CHECK(kind_of([] {
          parse_state(Json::parse(R"({"field":"prime","d":2,"n":1,"generators":[["1/2",0]],"valuation":[0,0]})"));
        }) == ErrorKind::Schema);
  CHECK(kind_of([] { read_json_file("/nonexistent/state.json"); }) == ErrorKind::Schema);
}

TEST_CASE("domain errors pass through the parser") {
  // q and p of the same system do not commute
  const auto j = Json::parse(R"({"field":"prime","d":2,"n":1,"generators":[[1,0],[0,1]],"valuation":[0,0]})");
  CHECK(kind_of([&] { parse_state(j); }) == ErrorKind::NotIsotropic);
  const auto sp = make_space(Field<Zp>{2}, 1);
  CHECK(kind_of([&] { parse_transform(Json::parse(R"({"U":[[1,1],[1,1]]})"), sp); }) == ErrorKind::NotSymplectic);
}

TEST_CASE("supports") {
  const auto j = Json::parse(R"({"field":"prime","d":2,"n":1,"support":[[0,0],[1,0],[0,1]]})");
  const auto sup = parse_support(j);
  CHECK(sup.size() == 3);
  CHECK_FALSE(is_valid_support(sup).has_value());
  const auto two = parse_support(support_json(ontic_support(named_state(Field<Zp>{2}, "+"))));
  CHECK(is_valid_support(two) == named_state(Field<Zp>{2}, "+"));
  CHECK(kind_of([] { parse_support(Json::parse(R"({"field":"rational","n":1,"support":[]})")); }) ==
        ErrorKind::Schema);
}

TEST_CASE("transforms and measurements") {
  const Field<Zp> z5{5};
  const auto sp = make_space(z5, 2);
  const auto t = compose(cnot(sp, 0, 1), make_transform(sp, identity_matrix(z5, 4), make_vector(z5, {1, 2, 3, 4})));
  const auto back = parse_transform(transform_json(t), sp);
  CHECK(back.matrix() == t.matrix());
  CHECK(back.shift() == t.shift());

  const auto m = make_measurement(sp, {make_vector(z5, {1, 0, 1, 0})});
  const auto mb = parse_measurement(measurement_json(m), sp);
  CHECK(mb.observables() == m.observables());
}

TEST_CASE("report documents") {
  ScenarioReport r;
  r.name = "demo";
  r.event("step", "detail");
  r.count("n", 2);
  r.claim("holds", true);
  const auto j = report_json(r);
  CHECK(j["verdict"] == "pass");
  CHECK(j["counters"]["n"] == 2);
  CHECK(j["claims"][0]["claim"] == "holds");
}
