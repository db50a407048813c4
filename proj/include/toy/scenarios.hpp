#pragma once

// Canned multi-agent experiments (Bell, Wigner's friend, forgetting) and the
// Frauchiger-Renner checker and search. Every run produces a ScenarioReport:
// an ordered transcript plus one verdict line per claim.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "toy/dynamics.hpp"
#include "toy/measurement.hpp"

namespace toy {

struct ScenarioEvent {
  std::string step;
  std::string detail;
};

struct ScenarioClaim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string name;
  std::vector<ScenarioEvent> transcript;
  std::vector<ScenarioClaim> claims;
  std::vector<std::pair<std::string, std::uint64_t>> counters;

  void event(std::string step, std::string detail) { transcript.push_back({std::move(step), std::move(detail)}); }
  bool claim(std::string claim_name, bool pass, std::string detail = {}) {
    claims.push_back({std::move(claim_name), pass, std::move(detail)});
    return pass;
  }
  void count(const std::string& key, std::uint64_t value);
  std::uint64_t counter(const std::string& key) const;
  bool passed() const;
};

std::string to_text(const ScenarioReport& r);

/// An agent and the systems holding its memory.
struct Agent {
  std::string name;
  std::vector<Index> memory;
};

/// Throws InvalidArgument when two agents share a memory system.
void check_agents(const std::vector<Agent>& agents);

/// Bell pair q_A + q_B = 1, p_A - p_B = 0 over Z_d; Bob measures p_B and
/// infers Alice's p_A for every outcome. Includes a product-state control.
ScenarioReport run_bell(std::uint32_t d);

/// Alice measures q of a toy bit; Wigner models her as a CNOT into her memory.
ScenarioReport run_wigner_friend();

/// Two system bits copied into two memory bits; the second memory is then
/// swapped with a mixed environment.
ScenarioReport run_forgetting();

/// Outcome-conditioned preparation search for two target states of one toy bit.
ScenarioReport run_condprep_search(const std::string& first, const std::string& second, bool exhaustive = false);

// ---------------------------------------------------------------------------
// Frauchiger-Renner

/// Number of systems in the R, A, S, B blocks, in that order.
struct FrBlocks {
  Index r = 1, a = 1, s = 1, b = 1;

  Index total() const { return r + a + s + b; }
  std::vector<Index> systems_r() const { return range(0, r); }
  std::vector<Index> systems_a() const { return range(r, a); }
  std::vector<Index> systems_s() const { return range(r + a, s); }
  std::vector<Index> systems_b() const { return range(r + a + s, b); }
  std::vector<Index> systems_ra() const { return range(0, r + a); }
  std::vector<Index> systems_sb() const { return range(r + a, s + b); }

 private:
  static std::vector<Index> range(Index first, Index count) {
    std::vector<Index> out;
    for (Index i = 0; i < count; ++i) out.push_back(first + i);
    return out;
  }
};

/// Initial state, the four measurements (on the whole space) and the outcome
/// valuations of the chain. Alice measures R, Bob S, Ursula R+A, Wigner S+B.
template <class S>
struct FRCandidate {
  EpistemicState<S> initial;
  FrBlocks blocks;
  Measurement<S> alice, bob, ursula, wigner;
  Vec<S> a1, b1, u_ok, u_fail, w_ok, w_fail;
};

namespace detail {
template <class S>
bool supported_on(const Subspace<S>& s, const std::vector<Index>& systems) {
  return is_subspace_of(s, coordinate_subspace(s.field(), s.ambient_dim() / 2, systems));
}

/// The outcome's label placed on the measurement's pivot coordinates, so the
/// representative vanishes outside the measured block.
template <class S>
Vec<S> block_representative(const Measurement<S>& m, const Vec<S>& valuation) {
  const auto label = Outcome<S>::from_valuation(m, valuation).label();
  Vec<S> v = zero_vector(m.space().field, m.space().dim());
  for (Index i = 0; i < m.rank(); ++i) v(m.observables().pivots()[static_cast<std::size_t>(i)]) = label(i);
  return v;
}

template <class S>
bool annihilates(const Subspace<S>& w, const Vec<S>& x) {
  for (Index i = 0; i < w.dim(); ++i)
    if (!is_zero(w.field().bind(dot(w.generator(i), x)))) return false;
  return true;
}

/// y in `second` with x - y in `first`, given x in first + second.
template <class S>
Vec<S> split_off(const Vec<S>& x, const Subspace<S>& first, const Subspace<S>& second) {
  const auto& field = first.field();
  Mat<S> a(x.size(), first.dim() + second.dim());
  for (Index i = 0; i < first.dim(); ++i) a.col(i) = first.generator(i);
  for (Index i = 0; i < second.dim(); ++i) a.col(first.dim() + i) = second.generator(i);
  const auto c = solve_affine(field, a, x);
  if (!c) throw Error(ErrorKind::MalformedCandidate, "vector is not in the sum");
  Vec<S> y = zero_vector(field, x.size());
  for (Index i = 0; i < second.dim(); ++i) y += (*c)(first.dim() + i) * second.generator(i);
  return bind_vector(field, y);
}
}  // namespace detail

/// Throws MalformedCandidate unless the blocks, isotropy and (when asked)
/// ok/fail distinctness hold.
template <class S>
void check_fr_candidate(const FRCandidate<S>& c, bool require_distinct = true) {
  const auto& sp = c.initial.space();
  auto fail = [](const std::string& why) { throw Error(ErrorKind::MalformedCandidate, why); };
  if (sp.systems != c.blocks.total()) fail("blocks do not add up to the number of systems");
  for (const auto* m : {&c.alice, &c.bob, &c.ursula, &c.wigner})
    if (m->space() != sp) fail("measurement on a different space");
  if (!detail::supported_on(c.alice.observables(), c.blocks.systems_r())) fail("Alice must measure inside R");
  if (!detail::supported_on(c.bob.observables(), c.blocks.systems_s())) fail("Bob must measure inside S");
  if (!detail::supported_on(c.ursula.observables(), c.blocks.systems_ra())) fail("Ursula must measure inside R+A");
  if (!detail::supported_on(c.wigner.observables(), c.blocks.systems_sb())) fail("Wigner must measure inside S+B");
  if (c.ursula.rank() == 0 || c.wigner.rank() == 0) fail("Ursula and Wigner need nontrivial measurements");
  for (const auto* v : {&c.a1, &c.b1, &c.u_ok, &c.u_fail, &c.w_ok, &c.w_fail})
    if (v->size() != sp.dim()) fail("valuation of the wrong length");
  if (require_distinct) {
    if (Outcome<S>::from_valuation(c.ursula, c.u_ok) == Outcome<S>::from_valuation(c.ursula, c.u_fail))
      fail("Ursula's ok and fail are the same outcome");
    if (Outcome<S>::from_valuation(c.wigner, c.w_ok) == Outcome<S>::from_valuation(c.wigner, c.w_fail))
      fail("Wigner's ok and fail are the same outcome");
  }
}

struct FrConditionReport {
  std::array<bool, 7> holds{};
  /// Every proof step checked: a membership condition forces its residual
  /// v_X·(...) to vanish for each generator of V_W.
  bool steps_consistent = true;
  bool derivation_applied = false;     // all seven hold
  bool outcomes_forced_equal = false;  // v_W,ok - v_W,fail in V_W^⊥ derived

  bool all() const {
    for (bool h : holds)
      if (!h) return false;
    return true;
  }
};

/// The seven conditions on (V, v) and the measurements, and the derivation
/// that makes Wigner's two outcomes coincide whenever all of them hold.
template <class S>
FrConditionReport check_fr_conditions(const FRCandidate<S>& c, bool require_distinct = true) {
  check_fr_candidate(c, require_distinct);
  const auto& field = c.initial.field();
  const auto& V = c.initial.known();
  const Vec<S>& v = c.initial.valuation();
  const auto& VA = c.alice.observables();
  const auto& VB = c.bob.observables();
  const auto& VU = c.ursula.observables();
  const auto& VW = c.wigner.observables();
  const auto cA = commutant_within(V, VA), cB = commutant_within(V, VB), cU = commutant_within(V, VU);
  const Vec<S> a = detail::block_representative(c.alice, c.a1);
  const Vec<S> b = detail::block_representative(c.bob, c.b1);
  const Vec<S> u = detail::block_representative(c.ursula, c.u_ok);
  const Vec<S> wok = detail::block_representative(c.wigner, c.w_ok);
  const Vec<S> wf = detail::block_representative(c.wigner, c.w_fail);

  FrConditionReport r;
  r.holds[0] = is_subspace_of(VB, subspace_sum(cU, VU));
  r.holds[1] = is_subspace_of(VA, subspace_sum(cB, VB));
  r.holds[2] = is_subspace_of(VW, subspace_sum(cA, VA));
  auto member = [&](const Vec<S>& x, const Subspace<S>& w) { return detail::annihilates(w, bind_vector(field, x)); };
  r.holds[3] = member(u + wok - v, subspace_intersection(subspace_sum(VU, VW), V));
  r.holds[4] = member(b + u - v, subspace_intersection(subspace_sum(VB, VU), cU));
  r.holds[5] = member(a + b - v, subspace_intersection(subspace_sum(VB, VA), cB));
  r.holds[6] = member(a + wf - v, subspace_intersection(subspace_sum(VA, VW), cA));
  if (!(r.holds[0] && r.holds[1] && r.holds[2])) return r;

  auto d = [&](const Vec<S>& x, const Vec<S>& y) { return field.bind(dot(x, y)); };
  bool forced = true;
  for (Index i = 0; i < VW.dim(); ++i) {
    // v_W = v1 + v_A = v1 + v2 + v_B = v1 + v2 + v3 + v_U
    const Vec<S> vW = VW.generator(i);
    const Vec<S> vA = detail::split_off(vW, cA, VA);
    const Vec<S> vB = detail::split_off(vA, cB, VB);
    const Vec<S> vU = detail::split_off(vB, cU, VU);
    const S c2 = field.bind(-d(vB, b) + d(vU, u) + d(vB, v) - d(vU, v));
    const S c3 = field.bind(-d(vB, b) + d(vA, a) + d(vB, v) - d(vA, v));
    const S c4 = field.bind(-d(vW, wf) + d(vA, a) - d(vA, v) + d(vW, v));
    const S c7 = field.bind(-d(vW, wok) + d(vU, u) - d(vU, v) + d(vW, v));
    if ((r.holds[4] && !is_zero(c2)) || (r.holds[5] && !is_zero(c3)) || (r.holds[6] && !is_zero(c4)) ||
        (r.holds[3] && !is_zero(c7)))
      r.steps_consistent = false;
    if (field.bind(d(vW, wok - wf)) != field.bind(-(c7 - c2 + c3 - c4))) r.steps_consistent = false;
    forced = forced && is_zero(field.bind(d(vW, wok - wf)));
  }
  if (r.all()) {
    r.derivation_applied = true;
    r.outcomes_forced_equal = forced && c.wigner.cell_direction().contains(bind_vector(field, wok - wf));
  }
  return r;
}

/// The chain of inferences evaluated operationally. "initial" evaluates every
/// inference against the initial state; "sequential" lets Alice and Bob's
/// updates happen first.
struct FrChain {
  bool p_ok_ok = false;
  bool u_implies_b = false;
  bool b_implies_a = false;
  bool a_implies_w = false;
  bool sequential_available = false;
  bool seq_p_ok_ok = false;
  bool seq_u_implies_b = false;
  bool seq_b_implies_a = false;

  bool paradox() const { return p_ok_ok && u_implies_b && b_implies_a && a_implies_w; }
  bool sequential_paradox() const {
    return sequential_available && seq_p_ok_ok && seq_u_implies_b && seq_b_implies_a && a_implies_w;
  }
};

template <class S>
Measurement<S> joint_measurement(const Measurement<S>& x, const Measurement<S>& y) {
  return Measurement<S>(x.space(), subspace_sum(x.observables(), y.observables()));
}

template <class S>
FrChain evaluate_fr_chain(const FRCandidate<S>& c) {
  check_fr_candidate(c);
  using O = Outcome<S>;
  const O a = O::from_valuation(c.alice, c.a1), b = O::from_valuation(c.bob, c.b1);
  const O u = O::from_valuation(c.ursula, c.u_ok), wf = O::from_valuation(c.wigner, c.w_fail);
  const auto uw = joint_measurement(c.ursula, c.wigner);
  const O okok = O::from_valuation(uw, detail::block_representative(c.ursula, c.u_ok) +
                                           detail::block_representative(c.wigner, c.w_ok));
  const auto& s0 = c.initial;
  FrChain r;
  r.p_ok_ok = is_possible(s0, uw, okok);
  r.u_implies_b = infers(s0, c.ursula, u, c.bob, b);
  r.b_implies_a = infers(s0, c.bob, b, c.alice, a);
  r.a_implies_w = infers(s0, c.alice, a, c.wigner, wf);
  if (is_possible(s0, c.alice, a)) {
    const auto s1 = update_state(s0, c.alice, a);
    if (is_possible(s1, c.bob, b)) {
      const auto s2 = update_state(s1, c.bob, b);
      r.sequential_available = true;
      r.seq_b_implies_a = infers(s1, c.bob, b, c.alice, a);
      r.seq_u_implies_b = infers(s2, c.ursula, u, c.bob, b);
      r.seq_p_ok_ok = is_possible(s2, uw, okok);
    }
  }
  return r;
}

struct FrSearchConfig {
  std::uint32_t d = 2;
  FrBlocks blocks;
  bool exhaustive = false;      // required for the full d=2 single-bit enumeration
  std::uint64_t samples = 0;    // > 0 selects the sampled mode
  bool mixed = false;           // sampled mode: draw mixed initial states too
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t spot_checks = 1000;
  bool weaken_inference = false;  // drop the subset condition (mutation test)
  /// Called with (done, total) work units as the search advances; calls are
  /// serialized but may come from worker threads.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Exhaustive (d = 2, one system per block, `exhaustive` set) or sampled
/// search for a paradoxical chain. Throws CapExceeded when the exhaustive
/// space is requested without the flag.
ScenarioReport search_fr_paradox(const FrSearchConfig& config);

/// The full FR candidate count at d = 2 with one system per block.
std::uint64_t fr_exhaustive_candidate_count();

}  // namespace toy
