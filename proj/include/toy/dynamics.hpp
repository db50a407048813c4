#pragma once

// Reversible dynamics: symplectic transforms (U, a) acting as o -> U(o + a),
// the gate library, coherent-copy constructions, and symplectic completion.

#include <cstdint>
#include <string>
#include <vector>

#include "toy/phase_space.hpp"
#include "toy/random.hpp"
#include "toy/states.hpp"

namespace toy {

template <class S>
bool is_symplectic(const Mat<S>& u) {
  if (u.rows() != u.cols() || u.rows() % 2 != 0) return false;
  // columns must pair up: [c_{2i}, c_{2i+1}] = 1, all other brackets 0
  for (Index a = 0; a < u.cols(); ++a)
    for (Index b = a + 1; b < u.cols(); ++b) {
      const auto br = poisson_bracket(u.col(a), u.col(b));
      const bool paired = a % 2 == 0 && b == a + 1;
      if (paired ? br != S(1) : !is_zero(br)) return false;
    }
  return true;
}

/// U^{-1} = -J U^T J for symplectic U.
template <class S>
Mat<S> symplectic_inverse(const Field<S>& field, const Mat<S>& u) {
  const auto j = j_matrix(field, u.rows() / 2);
  return bind(field, Mat<S>(-(j * u.transpose() * j)));
}

/// (U^T)^{-1} = -J U J, the action on observables.
template <class S>
Mat<S> observable_action(const Field<S>& field, const Mat<S>& u) {
  const auto j = j_matrix(field, u.rows() / 2);
  return bind(field, Mat<S>(-(j * u * j)));
}

template <class S>
class SymplecticTransform {
 public:
  SymplecticTransform(PhaseSpace<S> space, const Mat<S>& u, const Vec<S>& shift)
      : space_(space), u_(bind(space.field, u)), shift_(bind_vector(space.field, shift)) {
    if (u_.rows() != space.dim() || u_.cols() != space.dim())
      throw Error(ErrorKind::DimensionMismatch, "transform matrix must be " + std::to_string(space.dim()) + "x" +
                                                    std::to_string(space.dim()));
    check_space(space_, shift_);
    if (!is_symplectic(u_)) throw Error(ErrorKind::NotSymplectic, "U^T J U != J");
  }

  const PhaseSpace<S>& space() const { return space_; }
  const Mat<S>& matrix() const { return u_; }
  const Vec<S>& shift() const { return shift_; }

  friend bool operator==(const SymplecticTransform& a, const SymplecticTransform& b) {
    return a.space_ == b.space_ && a.u_ == b.u_ && a.shift_ == b.shift_;
  }

 private:
  PhaseSpace<S> space_;
  Mat<S> u_;
  Vec<S> shift_;
};

template <class S>
SymplecticTransform<S> make_transform(const PhaseSpace<S>& space, const Mat<S>& u, const Vec<S>& shift) {
  return SymplecticTransform<S>(space, u, shift);
}

template <class S>
SymplecticTransform<S> make_transform(const PhaseSpace<S>& space, const Mat<S>& u) {
  return SymplecticTransform<S>(space, u, zero_vector(space.field, space.dim()));
}

template <class S>
SymplecticTransform<S> identity_transform(const PhaseSpace<S>& space) {
  return make_transform(space, identity_matrix(space.field, space.dim()));
}

template <class S>
Vec<S> apply_to_ontic(const SymplecticTransform<S>& t, const Vec<S>& o) {
  check_space(t.space(), o);
  return bind_vector(t.space().field, Vec<S>(t.matrix() * (o + t.shift())));
}

/// (V, v) -> ((U^T)^{-1} V, U(v + a)).
template <class S>
EpistemicState<S> apply_to_state(const SymplecticTransform<S>& t, const EpistemicState<S>& s) {
  if (s.space() != t.space()) throw Error(ErrorKind::DimensionMismatch, "transform and state live on different spaces");
  const auto& field = t.space().field;
  const Mat<S> w = observable_action(field, t.matrix());
  const Mat<S> gens = bind(field, Mat<S>(s.known().basis() * w.transpose()));
  return EpistemicState<S>(t.space(), Subspace<S>::span(field, t.space().dim(), gens), apply_to_ontic(t, s.valuation()));
}

/// first ∘ second: apply `second`, then `first`.
template <class S>
SymplecticTransform<S> compose(const SymplecticTransform<S>& first, const SymplecticTransform<S>& second) {
  if (first.space() != second.space()) throw Error(ErrorKind::DimensionMismatch, "composing transforms on different spaces");
  const auto& field = first.space().field;
  const Mat<S> u = first.matrix() * second.matrix();
  const Vec<S> a = second.shift() + symplectic_inverse(field, second.matrix()) * first.shift();
  return make_transform(first.space(), bind(field, u), bind_vector(field, a));
}

template <class S>
SymplecticTransform<S> inverse(const SymplecticTransform<S>& t) {
  const auto& field = t.space().field;
  return make_transform(t.space(), symplectic_inverse(field, t.matrix()),
                        bind_vector(field, Vec<S>(-(t.matrix() * t.shift()))));
}

/// T acting on `systems` of an n-system space, identity elsewhere.
template <class S>
SymplecticTransform<S> embed(const SymplecticTransform<S>& t, Index n, const std::vector<Index>& systems) {
  if (static_cast<Index>(systems.size()) != t.space().systems)
    throw Error(ErrorKind::DimensionMismatch, "embedding needs one target system per transform system");
  const auto& field = t.space().field;
  const auto coords = system_coordinates(systems);
  Mat<S> u = identity_matrix(field, 2 * n);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) u(coords[i], coords[j]) = t.matrix()(Index(i), Index(j));
  return make_transform(make_space(field, n), u, embed(field, t.shift(), n, systems));
}

/// Block-diagonal T1 ⊕ T2 on the concatenated space.
template <class S>
SymplecticTransform<S> direct_sum(const SymplecticTransform<S>& a, const SymplecticTransform<S>& b) {
  const Index na = a.space().systems, nb = b.space().systems;
  std::vector<Index> first(static_cast<std::size_t>(na)), second(static_cast<std::size_t>(nb));
  for (Index i = 0; i < na; ++i) first[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < nb; ++i) second[static_cast<std::size_t>(i)] = na + i;
  return compose(embed(a, na + nb, first), embed(b, na + nb, second));
}

// ---------------------------------------------------------------------------
// gate library (0-based system indices)

namespace detail {
inline void check_system(Index n, Index s) {
  if (s < 0 || s >= n) throw Error(ErrorKind::InvalidArgument, "system index out of range");
}
}  // namespace detail

/// q <-> p exchange on one system: [[0,1],[-1,0]] (over Z_2 this is the plain
/// swap [[0,1],[1,0]]).
template <class S>
SymplecticTransform<S> qp_swap(const PhaseSpace<S>& space, Index system) {
  detail::check_system(space.systems, system);
  Mat<S> u = identity_matrix(space.field, space.dim());
  const Index q = 2 * system, p = q + 1;
  u(q, q) = u(p, p) = space.field.zero();
  u(q, p) = space.field.one();
  u(p, q) = -space.field.one();
  return make_transform(space, u);
}

/// q <-> p exchange on every system.
template <class S>
SymplecticTransform<S> qp_swap(const PhaseSpace<S>& space) {
  auto t = identity_transform(space);
  for (Index s = 0; s < space.systems; ++s) t = compose(qp_swap(space, s), t);
  return t;
}

/// q_t += q_c, p_c -= p_t.
template <class S>
SymplecticTransform<S> cnot(const PhaseSpace<S>& space, Index control, Index target) {
  detail::check_system(space.systems, control);
  detail::check_system(space.systems, target);
  if (control == target) throw Error(ErrorKind::InvalidArgument, "cnot needs distinct control and target");
  Mat<S> u = identity_matrix(space.field, space.dim());
  u(2 * target, 2 * control) = space.field.one();
  u(2 * control + 1, 2 * target + 1) = -space.field.one();
  return make_transform(space, u);
}

template <class S>
SymplecticTransform<S> shift_gate(const PhaseSpace<S>& space, const Vec<S>& a) {
  return make_transform(space, identity_matrix(space.field, space.dim()), a);
}

template <class S>
SymplecticTransform<S> swap_systems(const PhaseSpace<S>& space, Index i, Index j) {
  detail::check_system(space.systems, i);
  detail::check_system(space.systems, j);
  Mat<S> u = zero_matrix(space.field, space.dim(), space.dim());
  for (Index s = 0; s < space.systems; ++s) {
    const Index to = s == i ? j : s == j ? i : s;
    u(2 * to, 2 * s) = space.field.one();
    u(2 * to + 1, 2 * s + 1) = space.field.one();
  }
  return make_transform(space, u);
}

/// Named gates: "identity", "qp_swap" (all systems) or "qp_swap" with one
/// index, "cnot" with (control, target), "swap" with (i, j).
template <class S>
SymplecticTransform<S> gate_library(const std::string& name, const PhaseSpace<S>& space,
                                    const std::vector<Index>& args = {}) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw Error(ErrorKind::InvalidArgument, "gate '" + name + "' takes " + std::to_string(k) + " system indices");
  };
  if (name == "identity") {
    need(0);
    return identity_transform(space);
  }
  if (name == "qp_swap") {
    if (args.empty()) return qp_swap(space);
    need(1);
    return qp_swap(space, args[0]);
  }
  if (name == "cnot") {
    need(2);
    return cnot(space, args[0], args[1]);
  }
  if (name == "swap") {
    need(2);
    return swap_systems(space, args[0], args[1]);
  }
  throw Error(ErrorKind::UnknownGate, "unknown gate '" + name + "'");
}

// ---------------------------------------------------------------------------
// coherent copies

/// Copies q of system 0 (information) into q of system 1 (memory).
template <class S>
SymplecticTransform<S> position_copy_transform(const PhaseSpace<S>& space) {
  if (space.systems != 2)
    throw Error(ErrorKind::DimensionMismatch, "position copy acts on exactly two systems (information, memory)");
  return cnot(space, 0, 1);
}

/// A symplectic matrix whose first column is w.
///
/// Symplectic Gram-Schmidt: candidates are w, its truncations
/// (0,..,0,w_{2k-1},..,w_{2n}) and then the unit vectors. Each candidate is
/// projected off the pairs built so far; a nonzero remainder c gets the
/// partner -1/c_p e_q (or 1/c_q e_p when c_p = 0) on its first nonzero
/// system, itself projected. Columns are c_1, u_1, c_2, u_2, ...
template <class S>
Mat<S> complete_symplectic(const Field<S>& field, const Vec<S>& w) {
  if (w.size() == 0 || w.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "vector of even length required");
  if (is_zero_vector(w)) throw Error(ErrorKind::ZeroVector, "cannot complete the zero vector");
  const Index dim = w.size(), n = dim / 2;
  std::vector<Vec<S>> cs, us;

  auto project = [&](Vec<S> x) {
    const Vec<S> x0 = x;
    for (std::size_t k = 0; k < cs.size(); ++k)
      x -= poisson_bracket(x0, us[k]) * cs[k] - poisson_bracket(x0, cs[k]) * us[k];
    return bind_vector(field, x);
  };

  std::vector<Vec<S>> candidates;
  candidates.push_back(bind_vector(field, w));
  for (Index k = 1; k < n; ++k) {
    Vec<S> t = bind_vector(field, w);
    t.head(2 * k).setConstant(field.zero());
    candidates.push_back(t);
  }
  for (Index i = 0; i < dim; ++i) candidates.push_back(unit_vector(field, dim, i));

  for (const auto& cand : candidates) {
    if (static_cast<Index>(cs.size()) == n) break;
    const Vec<S> c = project(cand);
    if (is_zero_vector(c)) continue;
    Index sys = 0;
    while (is_zero(c(2 * sys)) && is_zero(c(2 * sys + 1))) ++sys;
    Vec<S> y = zero_vector(field, dim);
    if (!is_zero(c(2 * sys + 1)))
      y(2 * sys) = -(field.one() / c(2 * sys + 1));
    else
      y(2 * sys + 1) = field.one() / c(2 * sys);
    const Vec<S> u = project(y);
    cs.push_back(c);
    us.push_back(u);
  }

  Mat<S> m(dim, dim);
  for (Index k = 0; k < n; ++k) {
    m.col(2 * k) = cs[static_cast<std::size_t>(k)];
    m.col(2 * k + 1) = us[static_cast<std::size_t>(k)];
  }
  return m;
}

/// A symplectic U with (U^T)^{-1} e_1 = f, i.e. U carries q_1 to the observable f.
template <class S>
Mat<S> observable_basis_change(const Field<S>& field, const Vec<S>& f) {
  // (U^T)^{-1} = M with M e_1 = f  =>  U = (M^T)^{-1} = -J M J
  return observable_action(field, complete_symplectic(field, f));
}

/// Coherent copy of observable f (on the information systems) into observable
/// v (on the memory systems). Layout: memory systems first, then information
/// systems. Starting from a memory state with v = 0, the observable (v, -f)
/// becomes known with value 0.
template <class S>
SymplecticTransform<S> observable_copy_transform(const Field<S>& field, const Vec<S>& f, const Vec<S>& v) {
  if (is_zero_vector(f) || is_zero_vector(v)) throw Error(ErrorKind::ZeroVector, "copied observables must be nonzero");
  if (f.size() % 2 != 0 || v.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "observables need even length");
  const Index m = v.size() / 2, k = f.size() / 2;
  const auto mem = make_space(field, m), info = make_space(field, k), all = make_space(field, m + k);
  const auto t_mem = make_transform(mem, observable_basis_change(field, v));
  const auto s_info = make_transform(info, observable_basis_change(field, f));
  const auto change = direct_sum(t_mem, s_info);
  // q_mem += q_info1, p_info1 -= p_mem
  const auto copy = cnot(all, m, 0);
  return compose(change, compose(copy, inverse(change)));
}

// ---------------------------------------------------------------------------
// symplectic group over Z_2 and random symplectic maps

/// Every element of Sp(2n, Z_2) as a packed key (column j occupies bits
/// [2n*j, 2n*(j+1)), coordinate i at bit i), sorted ascending. n <= 3.
const std::vector<std::uint64_t>& symplectic_group_z2(Index n);

Mat<Zp> unpack_symplectic_z2(std::uint64_t key, Index n);

/// Random symplectic matrix: a product of random transvections
/// x -> x + c [x, t] t.
template <class S>
Mat<S> random_symplectic(const Field<S>& field, Index n, Rng& rng) {
  Mat<S> u = identity_matrix(field, 2 * n);
  // over Q entries grow with every round, so use fewer rounds and small
  // transvection vectors to stay inside 64-bit rationals
  const int rounds = static_cast<int>(Field<S>::finite ? 4 * n + 4 : n + 2);
  for (int r = 0; r < rounds; ++r) {
    Vec<S> t = random_nonzero_vector(field, 2 * n, rng);
    S c = random_element(field, rng);
    if constexpr (!Field<S>::finite) {
      std::uniform_int_distribution<std::int64_t> small(-1, 1);
      do {
        for (Index i = 0; i < t.size(); ++i) t(i) = S(small(rng));
      } while (is_zero_vector(t));
      c = S(small(rng), 2 - small(rng) * small(rng));
    }
    const Vec<S> jt = apply_j<S>(t);
    // [x, t] = x^T J t = (J t)·x
    u = bind(field, Mat<S>(u + c * t * (jt.transpose() * u)));
  }
  return u;
}

template <class S>
SymplecticTransform<S> random_transform(const PhaseSpace<S>& space, Rng& rng) {
  return make_transform(space, random_symplectic(space.field, space.systems, rng),
                        random_vector(space.field, space.dim(), rng));
}

}  // namespace toy
