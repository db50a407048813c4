#include "toy/states.hpp"

namespace toy {

std::optional<EpistemicState<Zp>> is_valid_support(const OnticSupport& sup, std::uint64_t cap) {
  const auto& space = sup.space;
  ontic_space_size(space, cap);
  if (sup.members.empty()) return std::nullopt;
  const auto p = space.field.p;
  const Index n = space.systems;

  // |sup| must be p^(2n-J) with 0 <= J <= n
  Index free_dim = -1;
  std::uint64_t size = 1;
  for (Index k = 0; k <= 2 * n; ++k) {
    if (size == sup.size() && k >= n) free_dim = k;
    if (k < 2 * n) size *= p;
  }
  if (free_dim < 0) return std::nullopt;

  // translate to contain the origin; a set of p^k vectors spanning a
  // k-dimensional space is that space
  const auto origin = sup.vector(0);
  std::vector<Vec<Zp>> diffs;
  diffs.reserve(sup.size());
  for (std::size_t i = 0; i < sup.size(); ++i) diffs.push_back(sup.vector(i) - origin);
  const auto span = Subspace<Zp>::span(space.field, space.dim(), std::span<const Vec<Zp>>(diffs));
  if (span.dim() != free_dim) return std::nullopt;

  const auto known = orthogonal_complement(span);
  if (!is_isotropic(known)) return std::nullopt;
  return EpistemicState<Zp>(space, known, origin);
}

OnticSupport project(const OnticSupport& sup, std::vector<Index> keep) {
  keep = checked_systems(sup.space.systems, std::move(keep));
  const auto space = make_space(sup.space.field, static_cast<Index>(keep.size()));
  std::vector<std::uint64_t> codes;
  codes.reserve(sup.size());
  for (std::size_t i = 0; i < sup.size(); ++i) codes.push_back(pack(restrict_to<Zp>(sup.vector(i), keep), space.field.p));
  return OnticSupport::from_codes(space, std::move(codes));
}

}  // namespace toy
