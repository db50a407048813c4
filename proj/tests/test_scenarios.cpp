#include "doctest.h"

#include "toy/scenarios.hpp"

using namespace toy;

namespace {
const Field<Zp> z2{2};

Vec<Zp> at(Index i) { return unit_vector(z2, 8, i); }

Measurement<Zp> q_of(const PhaseSpace<Zp>& sp, Index system) { return local_q(sp, system); }

// All four bits prepared in 0; every agent measures q on their own system.
FRCandidate<Zp> product_candidate() {
  const auto sp = make_space(z2, 4);
  const auto zero = named_state(z2, "0");
  const std::vector<EpistemicState<Zp>> parts(4, zero);
  const auto v0 = zero_vector(z2, 8);
  return {tensor(std::span<const EpistemicState<Zp>>(parts)),
          FrBlocks{},
          q_of(sp, 0),
          q_of(sp, 2),
          q_of(sp, 0),
          q_of(sp, 2),
          v0,
          v0,
          v0,
          at(0),
          v0,
          at(4)};
}
}  // namespace

TEST_CASE("bell scenario") {
  for (std::uint32_t d : {2u, 3u, 5u}) {
    const auto r = run_bell(d);
    CHECK_MESSAGE(r.passed(), to_text(r));
    CHECK(r.counter("outcomes_checked") == d);
  }
  CHECK(to_text(run_bell(2)).find("verdict: pass") != std::string::npos);
}

TEST_CASE("wigner and forgetting scenarios") {
  const auto w = run_wigner_friend();
  CHECK_MESSAGE(w.passed(), to_text(w));
  const auto f = run_forgetting();
  CHECK_MESSAGE(f.passed(), to_text(f));
  CHECK(f.claims.size() == 5);
}

TEST_CASE("conditional preparation scenario") {
  const auto overlap = run_condprep_search("toy0", "toy+");
  CHECK(overlap.passed());
  CHECK(to_text(overlap).find("NotFound (720*16 transforms searched)") != std::string::npos);
  const auto orth = run_condprep_search("toy0", "toy1");
  CHECK(orth.passed());
  CHECK(to_text(orth).find("Found after") != std::string::npos);
  CHECK(run_condprep_search("toy+", "toy+").passed());
}

TEST_CASE("agents may not share memory") {
  CHECK_NOTHROW(check_agents({{"a", {0}}, {"b", {1}}}));
  CHECK_THROWS_AS(check_agents({{"a", {0, 1}}, {"b", {1}}}), Error);
}

TEST_CASE("report bookkeeping") {
  ScenarioReport r;
  CHECK_FALSE(r.passed());
  r.count("x", 3);
  r.count("x", 4);
  CHECK(r.counter("x") == 4);
  CHECK(r.counter("y") == 0);
  CHECK(r.claim("ok", true));
  CHECK(r.passed());
  CHECK_FALSE(r.claim("bad", false, "why"));
  CHECK_FALSE(r.passed());
  r.event("grid", "a\nb");
  const auto text = to_text(r);
  CHECK(text.find("    a\n    b\n") != std::string::npos);
  CHECK(text.find("FAIL bad (why)") != std::string::npos);
}

TEST_CASE("FR conditions on a product state") {
  auto c = product_candidate();
  const auto chain = evaluate_fr_chain(c);
  CHECK(chain.p_ok_ok);
  CHECK(chain.u_implies_b);
  CHECK(chain.b_implies_a);
  CHECK_FALSE(chain.a_implies_w);
  CHECK_FALSE(chain.paradox());

  const auto rep = check_fr_conditions(c);
  CHECK(rep.holds[0]);
  CHECK(rep.holds[1]);
  CHECK(rep.holds[2]);
  CHECK(rep.holds[3]);
  CHECK_FALSE(rep.holds[6]);
  CHECK(rep.steps_consistent);
  CHECK_FALSE(rep.derivation_applied);

  // with the fail outcome equal to ok, all seven hold and the derivation
  // confirms the two outcomes coincide
  c.w_fail = c.w_ok;
  CHECK_THROWS_AS(check_fr_conditions(c), Error);
  const auto same = check_fr_conditions(c, false);
  CHECK(same.all());
  CHECK(same.derivation_applied);
  CHECK(same.outcomes_forced_equal);
  CHECK(same.steps_consistent);
}

TEST_CASE("FR conditions on two Bell pairs") {
  const auto sp = make_space(z2, 4);
  const auto pair = make_state(make_space(z2, 2), {make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1})},
                               zero_vector(z2, 4));
  const auto v0 = zero_vector(z2, 8);
  const FRCandidate<Zp> c{tensor(pair, pair), FrBlocks{}, q_of(sp, 0), q_of(sp, 2), q_of(sp, 1), q_of(sp, 3),
                          v0, v0, v0, at(2), v0, at(6)};
  const auto rep = check_fr_conditions(c);
  CHECK_FALSE((rep.holds[0] && rep.holds[1] && rep.holds[2]));
  CHECK_FALSE(evaluate_fr_chain(c).paradox());
}

TEST_CASE("malformed FR candidates") {
  auto c = product_candidate();
  c.bob = q_of(c.initial.space(), 0);  // Bob reaching into R
  CHECK_THROWS_AS(check_fr_candidate(c), Error);
  c = product_candidate();
  c.blocks.b = 2;
  CHECK_THROWS_AS(check_fr_candidate(c), Error);
  c = product_candidate();
  c.ursula = Measurement<Zp>(c.initial.space(), Subspace<Zp>(z2, 8));
  CHECK_THROWS_AS(check_fr_candidate(c), Error);
}

TEST_CASE("FR search modes") {
  FrSearchConfig cfg;
  try {
    search_fr_paradox(cfg);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  cfg.d = 3;
  cfg.exhaustive = true;
  CHECK_THROWS_AS(search_fr_paradox(cfg), Error);

  FrSearchConfig weak;
  weak.weaken_inference = true;
  const auto w = search_fr_paradox(weak);
  CHECK_MESSAGE(w.passed(), to_text(w));
  CHECK(w.counter("false_positives_seen") >= 1);

  FrSearchConfig s;
  s.d = 3;
  s.samples = 200;
  s.seed = 5;
  const auto r = search_fr_paradox(s);
  CHECK_MESSAGE(r.passed(), to_text(r));
  CHECK(r.counter("candidates") == 200);
  CHECK(r.counter("paradoxes") == 0);
  CHECK(r.counter("condition_mismatches") == 0);
  CHECK(fr_exhaustive_candidate_count() == 79348248000ull);
}
