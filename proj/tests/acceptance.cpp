// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "toy/condprep.hpp"
#include "toy/oracle.hpp"
#include "toy/random.hpp"
#include "toy/scenarios.hpp"

using namespace toy;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

const Field<Zp> z2{2};

Outcome<Zp> label(const Measurement<Zp>& m, std::initializer_list<std::int64_t> l) {
  return Outcome<Zp>(m, make_vector(m.space().field, l));
}

template <class F>
void exhaustive_d2(F&& f) {
  for (Index n = 1; n <= 2; ++n) {
    const auto space = make_space(z2, n);
    std::vector<EpistemicState<Zp>> states;
    std::vector<Measurement<Zp>> ms;
    for_each_state(space, [&](const EpistemicState<Zp>& s) { states.push_back(s); });
    for_each_measurement(space, [&](const Measurement<Zp>& m) { ms.push_back(m); });
    f(space, states, ms);
  }
}

// 1 ------------------------------------------------------------------------
void probabilities(Result& r) {
  std::uint64_t checked = 0;
  exhaustive_d2([&](const auto&, const auto& states, const auto& ms) {
    for (const auto& s : states)
      for (const auto& m : ms) {
        Rational total(0);
        for (const auto& o : outcomes(m)) {
          const auto p = outcome_probability(s, m, o);
          r.require(p == oracle_probability(s, m, o), to_string(s) + " " + to_string(o.label()));
          total += p;
          ++checked;
        }
        r.require(total == Rational(1), "probabilities sum to 1");
      }
  });
  r.note << checked << " (state, measurement, outcome) triples";
}

// 2 ------------------------------------------------------------------------
void updates(Result& r) {
  std::uint64_t checked = 0;
  exhaustive_d2([&](const auto&, const auto& states, const auto& ms) {
    for (const auto& s : states)
      for (const auto& m : ms)
        for (const auto& o : outcomes(m)) {
          if (!is_possible(s, m, o)) continue;
          const auto post = update_state(s, m, o);
          r.require(ontic_support(post) == oracle_smallest_update(s, m, o), "update vs oracle " + to_string(s));
          r.require(outcome_probability(post, m, o) == Rational(1), "repeat measurement");
          ++checked;
        }
  });
  const auto one = make_space(z2, 1);
  const auto z = local_q(one, 0);
  r.require(update_state(named_state(z2, "+"), z, label(z, {0})) == named_state(z2, "0"), "toy+ -> toy0");
  const auto two = make_space(z2, 2);
  const auto bell = make_state(two, {make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1})}, zero_vector(z2, 4));
  const auto qa = local_q(two, 0);
  for (std::int64_t a = 0; a < 2; ++a) {
    const auto bit = named_state(z2, a == 0 ? "0" : "1");
    r.require(update_state(bell, qa, label(qa, {a})) == tensor(bit, bit), "Bell -> toys{aa}");
  }
  r.note << checked << " possible updates, worked examples reproduced";
}

// 3 ------------------------------------------------------------------------
void inference(Result& r) {
  std::uint64_t certain = 0, pairs = 0, holding = 0;
  exhaustive_d2([&](const auto&, const auto& states, const auto& ms) {
    for (const auto& s : states) {
      for (const auto& m : ms)
        for (const auto& o : outcomes(m)) {
          r.require(is_certain(s, m, o) == (outcome_probability(s, m, o) == Rational(1)), "certainty");
          ++certain;
        }
      for (const auto& ma : ms)
        for (const auto& a : outcomes(ma)) {
          // the oracle update is shared by every conclusion
          std::optional<OnticSupport> post;
          if (oracle_probability(s, ma, a) != Rational(0)) post = oracle_smallest_update(s, ma, a);
          for (const auto& mb : ms)
            for (const auto& b : outcomes(mb)) {
              const bool oracle = post && fraction_inside(*post, b.cell()) == Rational(1);
              const bool alg = infers(s, ma, a, mb, b);
              r.require(alg == oracle, "infers " + to_string(s));
              if (pairs % 97 == 0) {
                // the shared update is what the oracle's own conditional computes
                const auto c = oracle_conditional(s, ma, a, mb, b);
                r.require(c.has_value() == post.has_value() && (!c || (*c == Rational(1)) == oracle),
                          "oracle conditional");
              }
              holding += alg;
              ++pairs;
            }
        }
    }
  });
  for (std::uint32_t d : {2u, 3u, 5u}) {
    const auto rep = run_bell(d);
    r.require(rep.passed(), "Bell example d=" + std::to_string(d));
    const Field<Zp> f{d};
    const auto sp = make_space(f, 2);
    const auto s = make_state(sp, {make_vector(f, {1, 0, 1, 0}), make_vector(f, {0, 1, 0, -1})},
                              make_vector(f, {1, 0, 0, 0}));
    const auto ma = make_measurement(sp, {make_vector(f, {0, 1, 0, 0})});
    const auto mb = make_measurement(sp, {make_vector(f, {0, 0, 0, 1})});
    for (std::int64_t p = 0; p < d; ++p) {
      const auto cond = inference_conditions(s, mb, label(mb, {p}), ma, label(ma, {p}));
      r.require(cond.subset && cond.consistent, "both conditions, d=" + std::to_string(d));
    }
  }
  r.note << certain << " certainty checks, " << pairs << " inference pairs (" << holding
         << " hold), Bell example at d=2,3,5";
}

// 4 ------------------------------------------------------------------------
template <class S>
void copy_check(Result& r, const Field<S>& field, const Vec<S>& f, const Vec<S>& v, const EpistemicState<S>& info) {
  const Index m = v.size() / 2;
  const auto mem_space = make_space(field, m);
  const auto memory = EpistemicState<S>(mem_space, Subspace<S>::span(field, 2 * m, {v}), zero_vector(field, 2 * m));
  const auto out = apply_to_state(observable_copy_transform(field, f, v), tensor(memory, info));
  Vec<S> diff(v.size() + f.size());
  diff << v, -f;
  diff = bind_vector(field, diff);
  r.require(out.known().contains(diff), "copied difference known");
  r.require(is_zero(field.bind(dot(diff, out.valuation()))), "copied difference is 0");
  std::vector<Index> mem;
  for (Index i = 0; i < m; ++i) mem.push_back(i);
  const bool mixed = marginal(out, mem).knowledge_bits() == 0;
  r.require(mixed == !info.known().contains(f), "memory mixed iff f unknown");
}

void copies(Result& r) {
  std::uint64_t checks = 0;
  // position copy over every one-system state at d=2 and random ones at d=3,5
  auto position = [&](const auto& field, const EpistemicState<Zp>& info) {
    const auto sp = make_space(field, 2);
    const auto out = apply_to_state(position_copy_transform(sp), tensor(info, named_state(field, "0")));
    const auto diff = make_vector(field, {1, 0, -1, 0});
    r.require(out.known().contains(diff) && is_zero(field.bind(dot(diff, out.valuation()))), "position copy");
    const bool q_known = info.known().contains(make_vector(field, {1, 0}));
    r.require((marginal(out, {1}).knowledge_bits() == 0) == !q_known, "position copy memory");
    ++checks;
  };
  for_each_state(make_space(z2, 1), [&](const EpistemicState<Zp>& s) { position(z2, s); });

  // all 15 nonzero observables of a two-system information block at d=2,
  // against every information state
  const auto info2 = make_space(z2, 2);
  const auto v = make_vector(z2, {1, 0});
  for_each_vector(z2, 4, [&](const Vec<Zp>& f) {
    if (is_zero_vector(f)) return;
    for_each_state(info2, [&](const EpistemicState<Zp>& s) {
      copy_check(r, z2, f, v, s);
      ++checks;
    });
  });
  Rng rng(4);
  for (std::uint32_t p : {3u, 5u}) {
    const Field<Zp> fp{p};
    for (int i = 0; i < 200; ++i) {
      const auto f = random_nonzero_vector(fp, 4, rng);
      const auto mv = random_nonzero_vector(fp, 2, rng);
      copy_check(r, fp, f, mv, random_state(make_space(fp, 2), rng));
      position(fp, random_state(make_space(fp, 1), rng));
      checks += 2;
    }
  }
  r.note << checks << " copies (15 observables x all states at d=2, 200 random at d=3,5)";
}

// 5 ------------------------------------------------------------------------
template <class S>
bool completes(const Field<S>& field, const Vec<S>& w) {
  const auto m = complete_symplectic(field, w);
  return is_symplectic(m) && m.col(0) == bind_vector(field, w);
}

void completion(Result& r) {
  std::uint64_t n = 0;
  for (Index dim : {4, 8})
    for_each_vector(z2, dim, [&](const Vec<Zp>& w) {
      if (is_zero_vector(w)) return;
      r.require(completes(z2, w), "Z_2 completion " + to_string(w));
      ++n;
    });
  Rng rng(5);
  const Field<Zp> z5{5};
  const RationalField qf;
  for (int i = 0; i < 500; ++i) {
    const auto a = random_nonzero_vector(z5, 6, rng);
    r.require(completes(z5, a), "Z_5 completion " + to_string(a));
    const auto b = random_nonzero_vector(qf, 4, rng);
    r.require(completes(qf, b), "Q completion " + to_string(b));
    n += 2;
  }
  r.note << n << " completions (15 + 255 over Z_2, 500 over Z_5^6, 500 over Q^4)";
}

// 6 ------------------------------------------------------------------------
void conditional_preparation(Result& r) {
  auto search = [&](const char* a, const char* b) {
    const auto rep = run_condprep_search(a, b);
    r.require(rep.passed(), std::string("condprep ") + a + "," + b);
    return rep;
  };
  const auto overlap = search("toy0", "toy+");
  r.require(to_text(overlap).find("NotFound") != std::string::npos, "(toy0, toy+) not realizable");
  r.require(overlap.counter("searched") == 720 * 16, "whole group searched");
  r.require(to_text(search("toy0", "toy1")).find("Found after") != std::string::npos, "(toy0, toy1) realizable");
  r.require(to_text(search("toy0", "toy0")).find("Found after") != std::string::npos, "(toy0, toy0) realizable");

  Rng rng(6);
  std::uint64_t trials = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const Field<Zp> f{p};
    for (int i = 0; i < 10000; ++i) {
      std::uniform_int_distribution<Index> ancillas(0, 1), targets(1, 2);
      const Index nt = targets(rng), na = ancillas(rng);
      const auto src = make_space(f, 1);
      const auto known = random_isotropic(src, 1, rng);
      std::vector<Vec<Zp>> values;
      for (const auto& o : outcomes(Measurement<Zp>(src, known))) values.push_back(o.valuation());
      ConditionalPrepSpec<Zp> spec{known, values, random_state(make_space(f, nt), rng), {}};
      const auto t = random_transform(make_space(f, 1 + nt + na), rng);
      const auto mc = classify_conditional_marginals(spec, t);
      r.require(mc.pairwise_orthogonal, "overlapping non-identical marginals");
      r.require(mc.equal_sizes, "unequal class sizes");
      ++trials;
    }
  }
  r.note << "(toy0,toy+) NotFound after 720*16, (toy0,toy1) and (toy0,toy0) found, " << trials
         << " random classifications identical-or-orthogonal with equal classes";
}

// 7 ------------------------------------------------------------------------
void frauchiger_renner(Result& r) {
  FrSearchConfig cfg;
  cfg.exhaustive = true;
  cfg.workers = std::max(4u, std::thread::hardware_concurrency());
  const auto ex = search_fr_paradox(cfg);
  r.require(ex.passed(), "exhaustive search claims:\n" + to_text(ex));
  r.require(ex.counter("paradoxes") == 0, "no paradox");

  FrSearchConfig weak;
  weak.weaken_inference = true;
  const auto w = search_fr_paradox(weak);
  r.require(w.passed() && w.counter("false_positives_seen") >= 1, "mutation test finds a false positive");

  FrSearchConfig s;
  s.d = 3;
  s.samples = 100000;
  s.seed = 7;
  s.workers = cfg.workers;
  const auto sampled = search_fr_paradox(s);
  r.require(sampled.passed() && sampled.counter("paradoxes") == 0, "sampled d=3");

  s.mixed = true;
  s.samples = 20000;
  const auto mixed = search_fr_paradox(s);
  r.require(mixed.passed() && mixed.counter("paradoxes") == 0, "sampled d=3 with mixed states");

  r.note << ex.counter("candidates") << " candidates, " << ex.counter("structural_survivors") << " survivors, "
         << ex.counter("chain_labelings") << " labelings, " << ex.counter("paradoxes") << " paradoxes, "
         << ex.counter("seven_condition_hits") << " seven-condition hits all with equal outcomes; mutation found "
         << w.counter("false_positives_seen") << " false positive(s); d=3 sampled " << sampled.counter("candidates")
         << " + mixed " << mixed.counter("candidates") << ", 0 paradoxes";
}

// 8 ------------------------------------------------------------------------
void forgetting(Result& r) {
  const auto rep = run_forgetting();
  r.require(rep.passed(), to_text(rep));
  r.note << rep.claims.size() << " claims";
}

// 9 ------------------------------------------------------------------------
template <class S>
void identities(Result& r, const Field<S>& field, Index n, Rng& rng) {
  std::uniform_int_distribution<Index> dim(0, n);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_subspace(field, n, dim(rng), rng);
    const auto b = random_subspace(field, n, dim(rng), rng);
    const auto x = random_vector(field, n, rng);
    const auto y = random_vector(field, n, rng);

    // representative independence
    Vec<S> in_a = zero_vector(field, n);
    for (Index k = 0; k < a.dim(); ++k) in_a += random_element(field, rng) * a.generator(k);
    const Coset<S> ca(a, x);
    r.require(ca == Coset<S>(a, bind_vector(field, Vec<S>(x + in_a))), "representative independence");
    r.require(ca.contains(bind_vector(field, Vec<S>(x + in_a))), "coset membership");

    // intersection: empty iff x - y not in A + B, else (A ∩ B) + u
    const Coset<S> cb(b, y);
    const auto meet = coset_intersection(ca, cb);
    r.require(meet.has_value() == subspace_sum(a, b).contains(bind_vector(field, Vec<S>(x - y))), "intersection form");
    if (meet) {
      r.require(meet->direction() == subspace_intersection(a, b), "intersection direction");
      r.require(ca.contains(meet->shift()) && cb.contains(meet->shift()), "common point");
    }

    // complements
    r.require(orthogonal_complement(subspace_sum(a, b)) ==
                  subspace_intersection(orthogonal_complement(a), orthogonal_complement(b)),
              "complement of a sum");
    r.require(orthogonal_complement(orthogonal_complement(a)) == a, "double complement");
    r.require(orthogonal_complement(a).dim() == n - a.dim(), "complement dimension");
  }
}

void linear_algebra(Result& r) {
  Rng rng(9);
  identities(r, z2, 6, rng);
  identities(r, Field<Zp>{3}, 4, rng);
  identities(r, RationalField{}, 4, rng);
  r.note << "3 x 1000 instances over Z_2^6, Z_3^4, Q^4";
}

// 10 -----------------------------------------------------------------------
void validity(Result& r) {
  std::uint64_t pushes = 0;
  for (Index n = 1; n <= 2; ++n) {
    const auto space = make_space(z2, n);
    std::vector<EpistemicState<Zp>> states;
    for_each_state(space, [&](const EpistemicState<Zp>& s) { states.push_back(s); });
    std::vector<OnticSupport> supports;
    for (const auto& s : states) supports.push_back(ontic_support(s));
    for (auto key : symplectic_group_z2(n)) {
      const auto u = unpack_symplectic_z2(key, n);
      for_each_vector(z2, 2 * n, [&](const Vec<Zp>& a) {
        const auto t = make_transform(space, u, a);
        for (std::size_t i = 0; i < states.size(); ++i) {
          std::vector<std::uint64_t> image;
          for (std::size_t k = 0; k < supports[i].size(); ++k)
            image.push_back(pack(apply_to_ontic(t, supports[i].vector(k)), 2));
          const auto pushed = OnticSupport::from_codes(space, image);
          const auto valid = is_valid_support(pushed);
          r.require(valid && *valid == apply_to_state(t, states[i]), "pushforward valid");
          ++pushes;
        }
      });
    }
  }
  Rng rng(10);
  const Field<Zp> z3{3};
  const auto space = make_space(z3, 2);
  for (int i = 0; i < 10000; ++i) {
    const auto s = random_state(space, rng);
    const auto t = random_transform(space, rng);
    const auto sup = ontic_support(s);
    std::vector<std::uint64_t> image;
    for (std::size_t k = 0; k < sup.size(); ++k) image.push_back(pack(apply_to_ontic(t, sup.vector(k)), 3));
    const auto valid = is_valid_support(OnticSupport::from_codes(space, image));
    r.require(valid && *valid == apply_to_state(t, s), "pushforward valid at d=3");
    ++pushes;
  }
  r.note << pushes << " pushforwards (all of Sp x shifts x states at d=2 n<=2, 10^4 random at d=3 n=2)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Result&)>>> criteria{
      {"probability equals the enumeration oracle (d=2, n<=2)", probabilities},
      {"update rule equals the smallest valid update", updates},
      {"certainty and inference match the oracle; Bell example", inference},
      {"coherent copies", copies},
      {"symplectic completion", completion},
      {"conditional preparation", conditional_preparation},
      {"no FR paradox", frauchiger_renner},
      {"forgetting", forgetting},
      {"linear-algebra identities", linear_algebra},
      {"validity preservation", validity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.note << "threw: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s  %s [%s] (%.1f s)\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first,
                r.note.str().c_str(), secs);
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
