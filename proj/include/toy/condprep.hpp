#pragma once

// Conditional preparation: a source system whose valuations tile the ontic
// space, a target, optional ancillas, and a reversible map on all of them.
// Layout is [source systems][target systems][ancilla systems]; ancillas start
// with q = 0 known.

#include <cstdint>
#include <optional>
#include <vector>

#include "toy/dynamics.hpp"
#include "toy/measurement.hpp"

namespace toy {

template <class S>
struct ConditionalPrepSpec {
  Subspace<S> source_known;             // V_S on the source systems
  std::vector<Vec<S>> source_values;    // one representative per partition cell
  EpistemicState<S> target_initial;
  std::vector<EpistemicState<S>> desired_targets;  // optional, one per source value

  Index source_systems() const { return source_known.ambient_dim() / 2; }
  Index target_systems() const { return target_initial.systems(); }
};

struct MarginalClassification {
  std::vector<std::vector<std::size_t>> classes;  // source-value indices with identical marginals
  std::vector<std::size_t> class_sizes;
  bool pairwise_orthogonal = true;  // distinct classes have disjoint supports
  bool equal_sizes = true;
  bool identical_or_orthogonal() const { return pairwise_orthogonal; }
};

/// Throws InvalidPartition unless the source cells are distinct and (over Z_p)
/// cover the whole source space.
template <class S>
void check_partition(const ConditionalPrepSpec<S>& spec) {
  const auto& vs = spec.source_known;
  if (vs.ambient_dim() % 2 != 0 || !is_isotropic(vs))
    throw Error(ErrorKind::InvalidPartition, "source observables must be an isotropic subspace");
  const Measurement<S> m(make_space(vs.field(), vs.ambient_dim() / 2), vs);
  std::vector<Outcome<S>> cells;
  for (const auto& v : spec.source_values) {
    auto o = Outcome<S>::from_valuation(m, v);
    for (const auto& c : cells)
      if (c == o) throw Error(ErrorKind::InvalidPartition, "two source values fall in the same cell");
    cells.push_back(o);
  }
  if constexpr (Field<S>::finite) {
    const auto total = checked_power(vs.field().order(), vs.dim(), enumeration_cap());
    if (!total || *total != cells.size())
      throw Error(ErrorKind::InvalidPartition, "source cells do not cover the ontic space");
  }
  if (!spec.desired_targets.empty() && spec.desired_targets.size() != spec.source_values.size())
    throw Error(ErrorKind::InvalidArgument, "one desired target per source value is required");
}

/// Joint initial state for source value i (ancillas with q = 0).
template <class S>
EpistemicState<S> conditional_input(const ConditionalPrepSpec<S>& spec, std::size_t i, Index total_systems) {
  const auto& field = spec.source_known.field();
  const Index ns = spec.source_systems();
  const auto source = EpistemicState<S>(make_space(field, ns), spec.source_known, spec.source_values[i]);
  auto joint = tensor(source, spec.target_initial);
  for (Index a = ns + spec.target_systems(); a < total_systems; ++a) joint = tensor(joint, named_state(field, "0"));
  return joint;
}

template <class S>
std::vector<Index> target_indices(const ConditionalPrepSpec<S>& spec) {
  std::vector<Index> keep;
  for (Index i = 0; i < spec.target_systems(); ++i) keep.push_back(spec.source_systems() + i);
  return keep;
}

template <class S>
std::vector<EpistemicState<S>> conditional_marginals(const ConditionalPrepSpec<S>& spec,
                                                     const SymplecticTransform<S>& t,
                                                     const std::vector<Index>& keep) {
  std::vector<EpistemicState<S>> out;
  for (std::size_t i = 0; i < spec.source_values.size(); ++i)
    out.push_back(marginal(apply_to_state(t, conditional_input(spec, i, t.space().systems)), keep));
  return out;
}

template <class S>
MarginalClassification classify_marginals(const std::vector<EpistemicState<S>>& marginals) {
  MarginalClassification mc;
  std::vector<std::size_t> rep;  // representative index per class
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    std::size_t k = 0;
    while (k < rep.size() && marginals[rep[k]] != marginals[i]) ++k;
    if (k == rep.size()) {
      rep.push_back(i);
      mc.classes.emplace_back();
    }
    mc.classes[k].push_back(i);
  }
  for (const auto& c : mc.classes) mc.class_sizes.push_back(c.size());
  for (std::size_t a = 0; a < rep.size(); ++a)
    for (std::size_t b = a + 1; b < rep.size(); ++b)
      if (coset_intersection(marginals[rep[a]].support(), marginals[rep[b]].support()))
        mc.pairwise_orthogonal = false;
  for (auto s : mc.class_sizes) mc.equal_sizes = mc.equal_sizes && s == mc.class_sizes.front();
  return mc;
}

/// Target marginals after T for each source value, grouped. `traced` lists
/// the systems removed; the default traces everything except the target.
template <class S>
MarginalClassification classify_conditional_marginals(const ConditionalPrepSpec<S>& spec,
                                                       const SymplecticTransform<S>& t,
                                                       std::optional<std::vector<Index>> traced = std::nullopt) {
  check_partition(spec);
  const Index n = t.space().systems;
  if (n < spec.source_systems() + spec.target_systems())
    throw Error(ErrorKind::DimensionMismatch, "transform has fewer systems than source and target");
  std::vector<Index> keep;
  if (!traced) {
    keep = target_indices(spec);
  } else {
    for (Index i = 0; i < n; ++i)
      if (std::find(traced->begin(), traced->end(), i) == traced->end()) keep.push_back(i);
  }
  return classify_marginals(conditional_marginals(spec, t, keep));
}

struct ConditionalSearchResult {
  std::optional<SymplecticTransform<Zp>> found;
  std::uint64_t searched = 0;      // (U, a) pairs covered
  std::uint64_t group_size = 0;
  std::uint64_t shifts = 0;
};

/// Looks for (U, a) in Sp(2N, Z_2) x Z_2^{2N} producing every desired target
/// marginal. N = source + target + ancillas; N = 3 needs `exhaustive`.
/// `first`/`last` restrict the group index range so callers can split work.
ConditionalSearchResult find_conditional_transform(const ConditionalPrepSpec<Zp>& spec, Index ancillas,
                                                   bool exhaustive, std::size_t first = 0,
                                                   std::size_t last = static_cast<std::size_t>(-1));

}  // namespace toy
