#include "toy/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace toy {

namespace {

// every valid support of a space, computed once per (p, n)
const std::vector<OnticSupport>& all_valid_supports(const PhaseSpace<Zp>& space) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, Index>, std::vector<OnticSupport>> cache;
  std::lock_guard lock(mu);
  auto [it, fresh] = cache.try_emplace({space.field.p, space.systems});
  if (fresh) for_each_state(space, [&](const EpistemicState<Zp>& s) { it->second.push_back(ontic_support(s)); });
  return it->second;
}

bool is_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

OnticSupport inside(const OnticSupport& sup, const Coset<Zp>& cell) {
  OnticSupport out{sup.space, {}};
  for (std::size_t i = 0; i < sup.size(); ++i)
    if (cell.contains(sup.vector(i))) out.members.push_back(sup.members[i]);
  return out;
}

}  // namespace

Rational fraction_inside(const OnticSupport& sup, const Coset<Zp>& cell) {
  if (sup.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty support");
  const auto hit = inside(sup, cell).size();
  return Rational(static_cast<std::int64_t>(hit), static_cast<std::int64_t>(sup.size()));
}

Rational oracle_probability(const EpistemicState<Zp>& s, const Measurement<Zp>& m, const Outcome<Zp>& out) {
  if (s.space() != m.space()) throw Error(ErrorKind::DimensionMismatch, "state and measurement on different spaces");
  return fraction_inside(ontic_support(s), out.cell());
}

OnticSupport oracle_smallest_update(const EpistemicState<Zp>& s, const Measurement<Zp>& m, const Outcome<Zp>& out) {
  const auto pre = inside(ontic_support(s), out.cell());
  if (pre.size() == 0) throw Error(ErrorKind::ImpossibleOutcome, "outcome has probability 0");
  const auto cell = enumerate(m.space(), out.cell());
  const OnticSupport* best = nullptr;
  bool tie = false;
  for (const auto& cand : all_valid_supports(s.space())) {
    if (!is_subset(pre.members, cand.members) || !is_subset(cand.members, cell.members)) continue;
    if (!best || cand.size() < best->size()) {
      best = &cand;
      tie = false;
    } else if (cand.size() == best->size()) {
      tie = true;
    }
  }
  if (!best || tie) throw Error(ErrorKind::InvalidArgument, "no unique smallest valid support");
  return *best;
}

std::optional<Rational> oracle_conditional(const EpistemicState<Zp>& s, const Measurement<Zp>& ma,
                                           const Outcome<Zp>& a, const Measurement<Zp>& mb, const Outcome<Zp>& b) {
  if (mb.space() != s.space()) throw Error(ErrorKind::DimensionMismatch, "state and measurement on different spaces");
  if (oracle_probability(s, ma, a).num() == 0) return std::nullopt;
  return fraction_inside(oracle_smallest_update(s, ma, a), b.cell());
}

}  // namespace toy
