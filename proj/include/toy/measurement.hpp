#pragma once

// Measurements as isotropic observable spaces V_pi. An outcome fixes the
// values of V_pi and corresponds to the cell V_pi^⊥ + v_pi of the ontic space.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "toy/phase_space.hpp"
#include "toy/random.hpp"
#include "toy/states.hpp"

namespace toy {

template <class S>
class Measurement {
 public:
  Measurement(PhaseSpace<S> space, Subspace<S> observables)
      : space_(space), observables_(std::move(observables)), cells_(orthogonal_complement(observables_)) {
    check_space(space_, observables_);
    if (!is_isotropic(observables_))
      throw Error(ErrorKind::NotIsotropic, "measured observables must pairwise commute");
  }

  const PhaseSpace<S>& space() const { return space_; }
  const Subspace<S>& observables() const { return observables_; }
  /// V_pi^⊥: the direction of every outcome cell.
  const Subspace<S>& cell_direction() const { return cells_; }
  Index rank() const { return observables_.dim(); }

  friend bool operator==(const Measurement& a, const Measurement& b) {
    return a.space_ == b.space_ && a.observables_ == b.observables_;
  }

 private:
  PhaseSpace<S> space_;
  Subspace<S> observables_;
  Subspace<S> cells_;
};

template <class S>
Measurement<S> make_measurement(const PhaseSpace<S>& space, std::span<const Vec<S>> generators) {
  return Measurement<S>(space, Subspace<S>::span(space.field, space.dim(), generators));
}

template <class S>
Measurement<S> make_measurement(const PhaseSpace<S>& space, std::initializer_list<Vec<S>> generators) {
  std::vector<Vec<S>> g(generators);
  return make_measurement(space, std::span<const Vec<S>>(g));
}

/// Position measurement on one system.
template <class S>
Measurement<S> local_q(const PhaseSpace<S>& space, Index system) {
  return make_measurement(space, {unit_vector(space.field, space.dim(), 2 * system)});
}

template <class S>
class Outcome {
 public:
  /// Outcome whose label (values of the canonical generators f_i) is `label`.
  Outcome(const Measurement<S>& m, const Vec<S>& label) : label_(bind_vector(m.space().field, label)), cell_(make_cell(m, label_)) {}

  /// The label of a length-2n valuation vector: f_i · v.
  static Outcome from_valuation(const Measurement<S>& m, const Vec<S>& v) {
    check_space(m.space(), v);
    Vec<S> label(m.rank());
    for (Index i = 0; i < m.rank(); ++i) label(i) = m.space().field.bind(dot(m.observables().basis().row(i), v));
    return Outcome(m, label);
  }

  const Vec<S>& label() const { return label_; }
  const Coset<S>& cell() const { return cell_; }
  const Vec<S>& valuation() const { return cell_.shift(); }

  friend bool operator==(const Outcome& a, const Outcome& b) { return a.label_ == b.label_ && a.cell_ == b.cell_; }
  friend bool operator!=(const Outcome& a, const Outcome& b) { return !(a == b); }

 private:
  static Coset<S> make_cell(const Measurement<S>& m, const Vec<S>& label) {
    if (label.size() != m.rank())
      throw Error(ErrorKind::DimensionMismatch, "outcome label has " + std::to_string(label.size()) +
                                                    " entries for a rank-" + std::to_string(m.rank()) + " measurement");
    // RREF generators have a 1 at their own pivot and 0 at the others, so
    // putting label_i at pivot_i gives f_j · v = label_j
    Vec<S> v = zero_vector(m.space().field, m.space().dim());
    for (Index i = 0; i < m.rank(); ++i) v(m.observables().pivots()[static_cast<std::size_t>(i)]) = label(i);
    return Coset<S>(m.cell_direction(), v);
  }

  Vec<S> label_;
  Coset<S> cell_;
};

/// Every outcome, labels in lexicographic order. Z_p only.
template <class S>
std::vector<Outcome<S>> outcomes(const Measurement<S>& m, std::uint64_t cap = enumeration_cap()) {
  if constexpr (!Field<S>::finite) {
    throw Error(ErrorKind::ContinuousNotEnumerable, "outcomes over Q must be given explicitly");
  } else {
    const auto& field = m.space().field;
    if (!checked_power(field.order(), m.rank(), cap))
      throw Error(ErrorKind::CapExceeded, "too many outcomes to enumerate");
    std::vector<Outcome<S>> out;
    for_each_vector(field, m.rank(), [&](const Vec<S>& label) { out.emplace_back(m, label); });
    return out;
  }
}

namespace detail {
template <class S>
void check_pair(const EpistemicState<S>& s, const Measurement<S>& m) {
  if (s.space() != m.space()) throw Error(ErrorKind::DimensionMismatch, "state and measurement on different spaces");
}

inline Rational inverse_power(std::uint64_t p, Index e) {
  const auto v = checked_power(p, e, static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()));
  if (!v) throw Error(ErrorKind::Overflow, "probability denominator exceeds 64 bits");
  return Rational(1, static_cast<std::int64_t>(*v));
}
}  // namespace detail

/// Whether the outcome is compatible with at least one ontic state in the support.
template <class S>
bool is_possible(const EpistemicState<S>& s, const Measurement<S>& m, const Outcome<S>& out) {
  detail::check_pair(s, m);
  return coset_intersection(s.support(), out.cell()).has_value();
}

/// |support ∩ cell| / |support| by dimension counting.
template <class S>
Rational outcome_probability(const EpistemicState<S>& s, const Measurement<S>& m, const Outcome<S>& out) {
  if (!is_possible(s, m, out)) return Rational(0);
  const Index spread = subspace_sum(s.known(), m.observables()).dim() - s.knowledge_bits();
  if (spread == 0) return Rational(1);
  if constexpr (!Field<S>::finite) {
    throw Error(ErrorKind::NotPointMass, "outcome is neither certain nor impossible over Q");
  } else {
    return detail::inverse_power(s.field().order(), spread);
  }
}

/// Certain iff V_pi ⊆ V and the outcome cell meets the support.
template <class S>
bool is_certain(const EpistemicState<S>& s, const Measurement<S>& m, const Outcome<S>& out) {
  detail::check_pair(s, m);
  return is_subspace_of(m.observables(), s.known()) && is_possible(s, m, out);
}

/// (V_pi ⊕ V_commute, v') with v' in (V_pi^⊥ + v_pi) ∩ (V_commute^⊥ + v).
template <class S>
EpistemicState<S> update_state(const EpistemicState<S>& s, const Measurement<S>& m, const Outcome<S>& out) {
  detail::check_pair(s, m);
  const auto commute = commutant_within(s.known(), m.observables());
  const auto known = subspace_sum(m.observables(), commute);
  const auto meet =
      coset_intersection(out.cell(), Coset<S>(orthogonal_complement(commute), s.valuation()));
  if (!meet || !is_possible(s, m, out))
    throw Error(ErrorKind::ImpossibleOutcome, "outcome " + to_string(out.label()) + " has probability 0");
  return EpistemicState<S>(s.space(), known, meet->shift());
}

/// The two conditions under which outcome A certifies outcome B.
struct InferenceConditions {
  bool subset = false;      // V_B ⊆ V_commute,A ⊕ V_A
  bool consistent = false;  // (V_commute,A^⊥ + v) ∩ cell_A ∩ cell_B ≠ ∅
  bool holds() const { return subset && consistent; }
};

template <class S>
InferenceConditions inference_conditions(const EpistemicState<S>& s, const Measurement<S>& ma, const Outcome<S>& a,
                                         const Measurement<S>& mb, const Outcome<S>& b) {
  detail::check_pair(s, ma);
  detail::check_pair(s, mb);
  InferenceConditions c;
  const auto commute = commutant_within(s.known(), ma.observables());
  c.subset = is_subspace_of(mb.observables(), subspace_sum(commute, ma.observables()));
  const auto first = coset_intersection(Coset<S>(orthogonal_complement(commute), s.valuation()), a.cell());
  c.consistent = first && coset_intersection(*first, b.cell()).has_value();
  return c;
}

/// "A = a implies B = b".
template <class S>
bool infers(const EpistemicState<S>& s, const Measurement<S>& ma, const Outcome<S>& a, const Measurement<S>& mb,
            const Outcome<S>& b) {
  return inference_conditions(s, ma, a, mb, b).holds();
}

/// Draws an outcome with its exact probability.
template <class S>
Outcome<S> sample_outcome(const EpistemicState<S>& s, const Measurement<S>& m, Rng& rng) {
  if constexpr (!Field<S>::finite) {
    throw Error(ErrorKind::ContinuousNotEnumerable, "sampling needs a finite field");
  } else {
    const auto all = outcomes(m);
    std::vector<std::pair<std::size_t, Rational>> live;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto pr = outcome_probability(s, m, all[i]);
      if (pr.num() == 0) continue;
      live.emplace_back(i, pr);
      den = std::max(den, pr.den());
    }
    // all nonzero probabilities are equal powers of 1/p, so one common denominator exists
    std::uniform_int_distribution<std::int64_t> pick(0, den - 1);
    auto r = pick(rng);
    for (const auto& [i, pr] : live) {
      const auto share = (pr * Rational(den)).num();
      if (r < share) return all[i];
      r -= share;
    }
    return all[live.back().first];
  }
}

template <class S>
Outcome<S> sample_outcome(const EpistemicState<S>& s, const Measurement<S>& m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_outcome(s, m, rng);
}

// ---------------------------------------------------------------------------
// exhaustive enumeration of states and measurements (Z_p)

/// Calls f(W) for every isotropic subspace of Z_p^{2n}, by dimension.
template <class F>
void for_each_isotropic(const PhaseSpace<Zp>& space, F&& f) {
  for (Index k = 0; k <= space.systems; ++k)
    for_each_subspace(space.field, space.dim(), k, [&](const Subspace<Zp>& w) {
      if (is_isotropic(w)) f(w);
    });
}

/// Calls f(state) for every valid epistemic state on the space.
template <class F>
void for_each_state(const PhaseSpace<Zp>& space, F&& f) {
  for_each_isotropic(space, [&](const Subspace<Zp>& w) {
    const Measurement<Zp> m(space, w);
    for (const auto& o : outcomes(m)) f(EpistemicState<Zp>(space, w, o.valuation()));
  });
}

template <class F>
void for_each_measurement(const PhaseSpace<Zp>& space, F&& f) {
  for_each_isotropic(space, [&](const Subspace<Zp>& w) { f(Measurement<Zp>(space, w)); });
}

}  // namespace toy
