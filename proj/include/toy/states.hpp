#pragma once

// Epistemic states (V, v): an isotropic subspace of known observables plus a
// representative ontic state. The ontic support is the coset V^⊥ + v.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toy/algebra.hpp"
#include "toy/config.hpp"
#include "toy/phase_space.hpp"

namespace toy {

template <class S>
class EpistemicState {
 public:
  /// Throws NotIsotropic when `known` contains non-commuting observables.
  EpistemicState(PhaseSpace<S> space, Subspace<S> known, const Vec<S>& valuation)
      : space_(space), known_(std::move(known)), support_(orthogonal_complement(known_), checked(space, valuation)) {
    check_space(space_, known_);
    if (!is_isotropic(known_))
      throw Error(ErrorKind::NotIsotropic, "known observables do not pairwise commute");
  }

  const PhaseSpace<S>& space() const { return space_; }
  const Field<S>& field() const { return space_.field; }
  Index systems() const { return space_.systems; }
  const Subspace<S>& known() const { return known_; }
  /// Canonical representative of the support coset.
  const Vec<S>& valuation() const { return support_.shift(); }
  const Coset<S>& support() const { return support_; }
  Index knowledge_bits() const { return known_.dim(); }
  bool is_pure() const { return known_.dim() == space_.systems; }

  /// f·v for the i-th canonical generator of V.
  S value(Index i) const { return field().bind(dot(known_.basis().row(i), valuation())); }

  friend bool operator==(const EpistemicState& a, const EpistemicState& b) {
    return a.space_ == b.space_ && a.known_ == b.known_ && a.support_ == b.support_;
  }
  friend bool operator!=(const EpistemicState& a, const EpistemicState& b) { return !(a == b); }

 private:
  static const Vec<S>& checked(const PhaseSpace<S>& space, const Vec<S>& v) {
    check_space(space, v);
    return v;
  }

  PhaseSpace<S> space_;
  Subspace<S> known_;
  Coset<S> support_;
};

/// "<g1, g2> + (v)" with the canonical generators and representative.
template <class S>
std::string to_string(const EpistemicState<S>& s) {
  std::string out = "<";
  for (Index i = 0; i < s.knowledge_bits(); ++i) out += (i ? ", " : "") + to_string(s.known().generator(i));
  return out + "> + " + to_string(s.valuation());
}

template <class S>
EpistemicState<S> make_state(const PhaseSpace<S>& space, std::span<const Vec<S>> generators, const Vec<S>& valuation) {
  return EpistemicState<S>(space, Subspace<S>::span(space.field, space.dim(), generators), valuation);
}

template <class S>
EpistemicState<S> make_state(const PhaseSpace<S>& space, std::initializer_list<Vec<S>> generators,
                             const Vec<S>& valuation) {
  std::vector<Vec<S>> g(generators);
  return make_state(space, std::span<const Vec<S>>(g), valuation);
}

template <class S>
EpistemicState<S> maximally_mixed(const PhaseSpace<S>& space) {
  return EpistemicState<S>(space, Subspace<S>(space.field, space.dim()), zero_vector(space.field, space.dim()));
}

/// Single-system presets: "0","1" fix q; "+","-" fix p; "i","-i" fix q+p;
/// "mix" knows nothing. The value is 0 for the first of each pair and 1 for
/// the second, so over Z_2 these are the six pure toy-bit states.
template <class S>
EpistemicState<S> named_state(const Field<S>& field, std::string_view name) {
  const auto space = make_space(field, 1);
  auto pick = [&](std::int64_t fq, std::int64_t fp, std::int64_t value) {
    // a representative with f·v = value: put the value on the first nonzero slot
    Vec<S> v = fq != 0 ? make_vector(field, {value, 0}) : make_vector(field, {0, value});
    return make_state(space, {make_vector(field, {fq, fp})}, v);
  };
  if (name == "0") return pick(1, 0, 0);
  if (name == "1") return pick(1, 0, 1);
  if (name == "+") return pick(0, 1, 0);
  if (name == "-") return pick(0, 1, 1);
  if (name == "i") return pick(1, 1, 0);
  if (name == "-i") return pick(1, 1, 1);
  if (name == "mix") return maximally_mixed(space);
  throw Error(ErrorKind::InvalidArgument, "unknown state preset '" + std::string(name) + "'");
}

template <class S>
EpistemicState<S> tensor(const EpistemicState<S>& a, const EpistemicState<S>& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, a.field().name() + " vs " + b.field().name());
  const auto space = make_space(a.field(), a.systems() + b.systems());
  const Index da = a.space().dim(), db = b.space().dim();
  Mat<S> gens = zero_matrix(a.field(), a.knowledge_bits() + b.knowledge_bits(), da + db);
  gens.topLeftCorner(a.knowledge_bits(), da) = a.known().basis();
  gens.bottomRightCorner(b.knowledge_bits(), db) = b.known().basis();
  Vec<S> v(da + db);
  v << a.valuation(), b.valuation();
  return EpistemicState<S>(space, Subspace<S>::span(a.field(), da + db, gens), v);
}

template <class S>
EpistemicState<S> tensor(std::span<const EpistemicState<S>> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "tensor product of nothing");
  EpistemicState<S> acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = tensor(acc, parts[i]);
  return acc;
}

inline std::vector<Index> checked_systems(Index n, std::vector<Index> keep) {
  if (keep.empty()) throw Error(ErrorKind::InvalidArgument, "empty subsystem selection");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw Error(ErrorKind::InvalidArgument, "repeated subsystem index");
  if (keep.front() < 0 || keep.back() >= n)
    throw Error(ErrorKind::InvalidArgument, "subsystem index out of range for " + std::to_string(n) + " systems");
  return keep;
}

/// Reduced state on `keep`: known observables supported on the kept systems,
/// re-indexed in increasing system order.
template <class S>
EpistemicState<S> marginal(const EpistemicState<S>& s, std::vector<Index> keep) {
  keep = checked_systems(s.systems(), std::move(keep));
  const auto local = subspace_intersection(s.known(), coordinate_subspace(s.field(), s.systems(), keep));
  const auto space = make_space(s.field(), static_cast<Index>(keep.size()));
  Mat<S> gens(local.dim(), space.dim());
  for (Index i = 0; i < local.dim(); ++i) gens.row(i) = restrict_to<S>(local.generator(i), keep).transpose();
  return EpistemicState<S>(space, Subspace<S>::span(s.field(), space.dim(), gens), restrict_to<S>(s.valuation(), keep));
}

template <class S>
bool states_equal(const EpistemicState<S>& a, const EpistemicState<S>& b) {
  if (a.space() != b.space()) throw Error(ErrorKind::DimensionMismatch, "comparing states on different spaces");
  return a == b;
}

// ---------------------------------------------------------------------------
// explicit ontic supports (Z_p only)

/// Integer code of an ontic state: base-p digits, first coordinate most significant.
inline std::uint64_t pack(const Vec<Zp>& v, std::uint32_t p) {
  std::uint64_t code = 0;
  for (Index i = 0; i < v.size(); ++i) code = code * p + static_cast<std::uint64_t>(v(i).bind(p).value());
  return code;
}

inline Vec<Zp> unpack(std::uint64_t code, std::uint32_t p, Index dim) {
  Vec<Zp> v(dim);
  for (Index i = dim - 1; i >= 0; --i) {
    v(i) = Zp(static_cast<std::int64_t>(code % p), p);
    code /= p;
  }
  return v;
}

/// Throws CapExceeded unless p^{2n} fits the enumeration cap.
inline std::uint64_t ontic_space_size(const PhaseSpace<Zp>& space, std::uint64_t cap = enumeration_cap()) {
  const auto size = checked_power(space.field.p, space.dim(), cap);
  if (!size)
    throw Error(ErrorKind::CapExceeded, "ontic space " + std::to_string(space.field.p) + "^" +
                                            std::to_string(space.dim()) + " exceeds enumeration cap " +
                                            std::to_string(cap));
  return *size;
}

/// Uniform mixture over an explicit set of ontic states (sorted codes).
struct OnticSupport {
  PhaseSpace<Zp> space;
  std::vector<std::uint64_t> members;

  std::size_t size() const { return members.size(); }
  bool contains(std::uint64_t code) const { return std::binary_search(members.begin(), members.end(), code); }
  bool contains(const Vec<Zp>& v) const { return contains(pack(v, space.field.p)); }
  Vec<Zp> vector(std::size_t i) const { return unpack(members[i], space.field.p, space.dim()); }

  static OnticSupport from_codes(PhaseSpace<Zp> space, std::vector<std::uint64_t> codes) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return OnticSupport{space, std::move(codes)};
  }

  friend bool operator==(const OnticSupport& a, const OnticSupport& b) {
    return a.space == b.space && a.members == b.members;
  }
};

inline OnticSupport enumerate(const PhaseSpace<Zp>& space, const Coset<Zp>& c, std::uint64_t cap = enumeration_cap()) {
  ontic_space_size(space, cap);
  std::vector<std::uint64_t> codes;
  for_each_element(c, [&](const Vec<Zp>& x) { codes.push_back(pack(x, space.field.p)); });
  return OnticSupport::from_codes(space, std::move(codes));
}

inline OnticSupport ontic_support(const EpistemicState<Zp>& s, std::uint64_t cap = enumeration_cap()) {
  return enumerate(s.space(), s.support(), cap);
}

inline OnticSupport mixture_support(std::span<const EpistemicState<Zp>> states, std::uint64_t cap = enumeration_cap()) {
  if (states.empty()) throw Error(ErrorKind::InvalidArgument, "mixture of no states");
  std::vector<std::uint64_t> codes;
  for (const auto& s : states) {
    if (s.space() != states[0].space()) throw Error(ErrorKind::DimensionMismatch, "mixing states on different spaces");
    const auto sup = ontic_support(s, cap);
    codes.insert(codes.end(), sup.members.begin(), sup.members.end());
  }
  return OnticSupport::from_codes(states[0].space(), std::move(codes));
}

/// The epistemic state whose support is exactly `sup`, if there is one.
std::optional<EpistemicState<Zp>> is_valid_support(const OnticSupport& sup, std::uint64_t cap = enumeration_cap());

/// Projection of an explicit support onto the kept systems.
OnticSupport project(const OnticSupport& sup, std::vector<Index> keep);

}  // namespace toy
