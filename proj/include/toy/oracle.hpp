#pragma once

// Brute-force reference: every quantity recomputed by enumerating ontic
// states and scanning explicit sets. Exponential; used for cross-checks only.

#include <optional>

#include "toy/measurement.hpp"
#include "toy/states.hpp"

namespace toy {

/// Ontic states in the outcome cell, counted over the enumerated support.
Rational oracle_probability(const EpistemicState<Zp>& s, const Measurement<Zp>& m, const Outcome<Zp>& out);

/// Smallest valid support that contains support(s) ∩ cell and lies inside
/// the cell, found by scanning every valid state of the space. Throws
/// ImpossibleOutcome when the intersection is empty and InvalidArgument if no
/// unique smallest candidate exists.
OnticSupport oracle_smallest_update(const EpistemicState<Zp>& s, const Measurement<Zp>& m, const Outcome<Zp>& out);

/// P(B = b | A = a) on the oracle's updated support; nothing when P(A = a) = 0.
std::optional<Rational> oracle_conditional(const EpistemicState<Zp>& s, const Measurement<Zp>& ma,
                                           const Outcome<Zp>& a, const Measurement<Zp>& mb, const Outcome<Zp>& b);

/// Fraction of an explicit support inside an outcome cell.
Rational fraction_inside(const OnticSupport& sup, const Coset<Zp>& cell);

}  // namespace toy
