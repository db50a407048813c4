#pragma once

// Seeded random instances for property tests and sampled searches.

#include <random>

#include "toy/phase_space.hpp"
#include "toy/states.hpp"

namespace toy {

using Rng = std::mt19937_64;

inline Zp random_element(const Field<Zp>& field, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, field.p - 1);
  return field(d(rng));
}

/// Small rationals a/b with |a| <= 6, 1 <= b <= 3 (zero comes up often
/// enough to exercise degenerate branches).
inline Rational random_element(const Field<Rational>&, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> num(-6, 6), den(1, 3);
  return Rational(num(rng), den(rng));
}

template <class S>
Vec<S> random_vector(const Field<S>& field, Index n, Rng& rng) {
  Vec<S> v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_element(field, rng);
  return v;
}

template <class S>
Vec<S> random_nonzero_vector(const Field<S>& field, Index n, Rng& rng) {
  while (true) {
    auto v = random_vector(field, n, rng);
    if (!is_zero_vector(v)) return v;
  }
}

/// Random subspace of dimension exactly k.
template <class S>
Subspace<S> random_subspace(const Field<S>& field, Index n, Index k, Rng& rng) {
  Subspace<S> s(field, n);
  while (s.dim() < k) s = subspace_sum(s, Subspace<S>::span(field, n, {random_vector(field, n, rng)}));
  return s;
}

/// Random isotropic subspace of dimension exactly k <= n in a 2n-dimensional space.
template <class S>
Subspace<S> random_isotropic(const PhaseSpace<S>& space, Index k, Rng& rng) {
  if (k > space.systems) throw Error(ErrorKind::NotIsotropic, "isotropic dimension exceeds the number of systems");
  Subspace<S> s(space.field, space.dim());
  while (s.dim() < k) {
    const auto room = symplectic_complement(s);
    Vec<S> x = zero_vector(space.field, space.dim());
    for (Index i = 0; i < room.dim(); ++i) x += random_element(space.field, rng) * room.generator(i);
    x = bind_vector(space.field, x);
    if (!s.contains(x)) s = subspace_sum(s, Subspace<S>::span(space.field, space.dim(), {x}));
  }
  return s;
}

template <class S>
EpistemicState<S> random_state(const PhaseSpace<S>& space, Index k, Rng& rng) {
  return EpistemicState<S>(space, random_isotropic(space, k, rng), random_vector(space.field, space.dim(), rng));
}

template <class S>
EpistemicState<S> random_state(const PhaseSpace<S>& space, Rng& rng) {
  std::uniform_int_distribution<Index> k(0, space.systems);
  return random_state(space, k(rng), rng);
}

}  // namespace toy
