#include "toy/condprep.hpp"

namespace toy {

ConditionalSearchResult find_conditional_transform(const ConditionalPrepSpec<Zp>& spec, Index ancillas,
                                                   bool exhaustive, std::size_t first, std::size_t last) {
  check_partition(spec);
  if (spec.source_known.field().p != 2)
    throw Error(ErrorKind::InvalidArgument, "transform search is implemented for d = 2");
  if (spec.desired_targets.empty()) throw Error(ErrorKind::InvalidArgument, "no desired targets given");
  const Index n = spec.source_systems() + spec.target_systems() + ancillas;
  if (n > 3 || (n == 3 && !exhaustive))
    throw Error(ErrorKind::CapExceeded, std::to_string(n) + " systems: Sp(" + std::to_string(2 * n) +
                                            ", Z_2) search needs --exhaustive (and at most 3 systems)");

  const auto& group = symplectic_group_z2(n);
  const auto space = make_space(Field<Zp>{2}, n);
  const auto keep = target_indices(spec);
  const std::uint64_t shifts = std::uint64_t{1} << (2 * n);
  last = std::min(last, group.size());

  std::vector<EpistemicState<Zp>> inputs;
  for (std::size_t i = 0; i < spec.source_values.size(); ++i) inputs.push_back(conditional_input(spec, i, n));

  ConditionalSearchResult res;
  res.group_size = group.size();
  res.shifts = shifts;
  for (std::size_t g = first; g < last; ++g) {
    const auto u = unpack_symplectic_z2(group[g], n);
    res.searched += shifts;
    // the shift never changes which observables are known, so filter on U first
    const auto plain = make_transform(space, u);
    bool shapes = true;
    for (std::size_t i = 0; i < inputs.size() && shapes; ++i)
      shapes = marginal(apply_to_state(plain, inputs[i]), keep).known() == spec.desired_targets[i].known();
    if (!shapes) continue;
    for (std::uint64_t a = 0; a < shifts; ++a) {
      const auto t = make_transform(space, u, unpack(a, 2, 2 * n));
      bool ok = true;
      for (std::size_t i = 0; i < inputs.size() && ok; ++i)
        ok = marginal(apply_to_state(t, inputs[i]), keep) == spec.desired_targets[i];
      if (ok && !res.found) res.found = t;
    }
  }
  return res;
}

}  // namespace toy
