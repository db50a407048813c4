#include "toy/scenarios.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "toy/condprep.hpp"
#include "toy/grid.hpp"
#include "toy/oracle.hpp"

namespace toy {

void ScenarioReport::count(const std::string& key, std::uint64_t value) {
  for (auto& [k, v] : counters)
    if (k == key) {
      v = value;
      return;
    }
  counters.emplace_back(key, value);
}

std::uint64_t ScenarioReport::counter(const std::string& key) const {
  for (const auto& [k, v] : counters)
    if (k == key) return v;
  return 0;
}

bool ScenarioReport::passed() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const ScenarioClaim& c) { return c.pass; });
}

std::string to_text(const ScenarioReport& r) {
  std::ostringstream out;
  out << "scenario " << r.name << "\n";
  for (const auto& e : r.transcript) {
    out << "  " << e.step << ":";
    // multi-line details (grids) go on their own lines
    if (e.detail.find('\n') != std::string::npos) {
      out << "\n";
      std::istringstream lines(e.detail);
      for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
    } else {
      out << " " << e.detail << "\n";
    }
  }
  for (const auto& [k, v] : r.counters) out << "  " << k << " = " << v << "\n";
  for (const auto& c : r.claims) {
    out << (c.pass ? "  PASS " : "  FAIL ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

void check_agents(const std::vector<Agent>& agents) {
  std::set<Index> used;
  for (const auto& a : agents)
    for (auto s : a.memory)
      if (!used.insert(s).second)
        throw Error(ErrorKind::InvalidArgument, "memory system " + std::to_string(s) + " shared by two agents");
}

namespace {

std::string grid_or_state(const EpistemicState<Zp>& s) {
  if (s.field().p == 2 && s.systems() <= 2) return to_string(s) + "\n" + render_grid(s).to_text();
  return to_string(s);
}

}  // namespace

ScenarioReport run_bell(std::uint32_t d) {
  const Field<Zp> f{d};
  const auto space = make_space(f, 2);
  ScenarioReport r;
  r.name = "bell d=" + std::to_string(d);
  check_agents({{"Alice", {0}}, {"Bob", {1}}});

  const auto s = make_state(space, {make_vector(f, {1, 0, 1, 0}), make_vector(f, {0, 1, 0, -1})},
                            make_vector(f, {1, 0, 0, 0}));
  const auto ma = make_measurement(space, {make_vector(f, {0, 1, 0, 0})});
  const auto mb = make_measurement(space, {make_vector(f, {0, 0, 0, 1})});
  r.event("initial", grid_or_state(s));
  const bool oracle = checked_power(d, 4, enumeration_cap()).has_value();

  bool all = true, updates = true, oracle_ok = true;
  for (std::uint32_t p = 0; p < d; ++p) {
    const auto label = make_vector(f, {static_cast<std::int64_t>(p)});
    const Outcome<Zp> ob(mb, label), oa(ma, label);
    const auto cond = inference_conditions(s, mb, ob, ma, oa);
    const auto post = update_state(s, mb, ob);
    const auto expected = make_state(space, {make_vector(f, {0, 0, 0, 1}), make_vector(f, {0, 1, 0, -1})},
                                     make_vector(f, {0, static_cast<std::int64_t>(p), 0, static_cast<std::int64_t>(p)}));
    updates = updates && post == expected && is_certain(post, ma, oa);
    all = all && cond.holds();
    if (oracle) {
      const auto c = oracle_conditional(s, mb, ob, ma, oa);
      oracle_ok = oracle_ok && c && *c == Rational(1);
    }
    r.event("Bob p_B = " + std::to_string(p),
            "P = " + to_string(outcome_probability(s, mb, ob)) + ", post " + to_string(post) + ", subset " +
                (cond.subset ? "yes" : "no") + ", consistent " + (cond.consistent ? "yes" : "no"));
  }
  r.count("outcomes_checked", d);
  r.claim("B = p implies A = p for every p", all, std::to_string(d) + " outcomes");
  r.claim("post-measurement state matches and Alice is certain", updates);
  if (oracle) r.claim("oracle conditional probability is 1", oracle_ok);

  // control: a product state with local q measurements infers only the
  // outcome it can actually produce
  const auto zero = named_state(f, "0");
  const auto prod = tensor(zero, zero);
  const auto qa = local_q(space, 0), qb = local_q(space, 1);
  bool control = true;
  for (std::uint32_t p = 0; p < d; ++p) {
    const auto label = make_vector(f, {static_cast<std::int64_t>(p)});
    const Outcome<Zp> ob(qb, label), oa(qa, label);
    const bool holds = infers(prod, qb, ob, qa, oa);
    const bool vacuous = outcome_probability(prod, qb, ob) == Rational(0);
    control = control && holds == (p == 0) && vacuous == (p != 0);
    r.event("control q_B = " + std::to_string(p), std::string(holds ? "inference holds" : "inference fails") +
                                                        (vacuous ? ", premise impossible" : ""));
  }
  r.claim("product-state control fails exactly on the impossible premises", control);
  return r;
}

ScenarioReport run_wigner_friend() {
  const Field<Zp> f{2};
  const auto space = make_space(f, 2);
  ScenarioReport r;
  r.name = "wigner";
  check_agents({{"Alice", {1}}, {"Wigner", {}}});

  const auto initial = tensor(named_state(f, "+"), named_state(f, "0"));
  r.event("initial R,A", grid_or_state(initial));
  const auto wigner = apply_to_state(cnot(space, 0, 1), initial);
  r.event("Wigner applies CNOT", grid_or_state(wigner));
  const auto bell = make_state(space, {make_vector(f, {1, 0, 1, 0}), make_vector(f, {0, 1, 0, 1})},
                               zero_vector(f, 4));
  r.claim("Wigner holds the Bell state", wigner == bell);
  r.claim("Wigner's state is pure", wigner.is_pure());
  r.claim("Wigner's marginals are maximally mixed",
          marginal(wigner, {0}).knowledge_bits() == 0 && marginal(wigner, {1}).knowledge_bits() == 0);

  const auto mz = local_q(space, 0);
  const auto wigner_sup = ontic_support(wigner);
  bool inside = true, overlap = true, matches = true, records = true;
  for (std::int64_t a = 0; a < 2; ++a) {
    const Outcome<Zp> out(mz, make_vector(f, {a}));
    // Alice updates on her outcome and writes it into her memory
    const auto alice = apply_to_state(cnot(space, 0, 1), update_state(initial, mz, out));
    const auto bit = named_state(f, a == 0 ? "0" : "1");
    r.event("Alice sees a = " + std::to_string(a), grid_or_state(alice));
    records = records && alice == tensor(bit, bit);
    matches = matches && alice == update_state(wigner, mz, out);
    const auto sup = ontic_support(alice);
    const auto cell = enumerate(space, out.cell());
    inside = inside && std::includes(cell.members.begin(), cell.members.end(), sup.members.begin(), sup.members.end());
    overlap = overlap && std::any_of(sup.members.begin(), sup.members.end(),
                                     [&](std::uint64_t x) { return wigner_sup.contains(x); });
  }
  r.claim("Alice's states are toys{00} and toys{11}", records);
  r.claim("Alice's state equals Wigner's state updated on her outcome", matches);
  r.claim("each Alice state lies inside its outcome cell", inside);
  r.claim("Alice's and Wigner's states share ontic states", overlap);
  return r;
}

ScenarioReport run_forgetting() {
  const Field<Zp> f{2};
  ScenarioReport r;
  r.name = "forgetting";
  // systems: S1 S2 M1 M2 E
  check_agents({{"agent", {2, 3}}, {"environment", {4}}});
  const auto space = make_space(f, 5);
  const std::vector<EpistemicState<Zp>> parts{named_state(f, "1"), named_state(f, "+"), named_state(f, "0"),
                                              named_state(f, "0"), named_state(f, "mix")};
  auto s = tensor(std::span<const EpistemicState<Zp>>(parts));
  r.event("initial S1 S2 M1 M2 E", to_string(s));
  s = apply_to_state(cnot(space, 0, 2), s);
  s = apply_to_state(cnot(space, 1, 3), s);
  r.event("copy S1->M1, S2->M2", to_string(s));
  r.event("S2 M2 after the copy", grid_or_state(marginal(s, {1, 3})));
  s = apply_to_state(swap_systems(space, 3, 4), s);
  r.event("swap M2 with E", to_string(s));

  const auto sm1 = marginal(s, {0, 2});
  const auto sm2 = marginal(s, {1, 3});
  r.event("S1 M1", grid_or_state(sm1));
  r.event("S2 M2", grid_or_state(sm2));
  const auto one = named_state(f, "1");
  r.claim("S1 M1 keeps q_S1 = q_M1 = 1", sm1 == tensor(one, one));
  r.claim("S2 M2 is maximally mixed", sm2 == maximally_mixed(make_space(f, 2)) && ontic_support(sm2).size() == 16);
  r.claim("S2 stays correlated with E", marginal(s, {1, 4}).knowledge_bits() == 2);

  auto two = [&](const char* a, const char* b) { return tensor(named_state(f, a), named_state(f, b)); };
  const std::vector<EpistemicState<Zp>> pair{two("0", "0"), two("1", "0")};
  const std::vector<EpistemicState<Zp>> triple{two("0", "0"), two("1", "0"), two("1", "1")};
  const auto pair_sup = mixture_support(pair);
  const auto triple_sup = mixture_support(triple);
  r.event("toys{00} or toys{10}", render_grid(pair_sup).to_text());
  r.event("toys{00} or toys{10} or toys{11}", render_grid(triple_sup).to_text());
  const auto pair_state = is_valid_support(pair_sup);
  r.claim("forgetting between toys{00} and toys{10} is valid",
          pair_state && *pair_state == tensor(maximally_mixed(make_space(f, 1)), named_state(f, "0")));
  r.claim("the three-state union is not a valid epistemic state", !is_valid_support(triple_sup).has_value(),
          std::to_string(triple_sup.size()) + " ontic states");
  return r;
}

ScenarioReport run_condprep_search(const std::string& first, const std::string& second, bool exhaustive) {
  const Field<Zp> f{2};
  ScenarioReport r;
  r.name = "condprep-search";
  auto strip = [](std::string name) { return name.rfind("toy", 0) == 0 ? name.substr(3) : name; };
  const auto t0 = named_state(f, strip(first)), t1 = named_state(f, strip(second));
  ConditionalPrepSpec<Zp> spec{Subspace<Zp>::span(f, 2, {make_vector(f, {1, 0})}),
                               {make_vector(f, {0, 0}), make_vector(f, {1, 0})},
                               named_state(f, "0"),
                               {t0, t1}};
  r.event("targets", first + " if q_S = 0, " + second + " if q_S = 1");
  const auto res = find_conditional_transform(spec, 0, exhaustive);
  const bool identical = t0 == t1;
  const bool orthogonal = !coset_intersection(t0.support(), t1.support()).has_value();
  const std::string searched = std::to_string(res.group_size) + "*" + std::to_string(res.shifts) + " transforms";
  if (res.found) {
    r.event("result", "Found after " + std::to_string(res.searched) + " of " + searched);
    r.event("U", to_string(res.found->matrix().row(0)) + " ...");
  } else {
    r.event("result", "NotFound (" + searched + " searched)");
  }
  r.count("searched", res.searched);
  r.claim("a transform exists iff the targets are identical or orthogonal",
          res.found.has_value() == (identical || orthogonal),
          identical ? "identical" : (orthogonal ? "orthogonal" : "overlapping"));
  return r;
}

}  // namespace toy
