#pragma once

// Phase space Z_p^{2n} / Q^{2n} with interleaved (q_1, p_1, q_2, p_2, ...)
// coordinates and the Poisson bracket as symplectic form.

#include <string>
#include <vector>

#include "toy/algebra.hpp"

namespace toy {

template <class S>
struct PhaseSpace {
  Field<S> field{};
  Index systems = 1;

  Index dim() const { return 2 * systems; }
  static Index q(Index system) { return 2 * system; }
  static Index p(Index system) { return 2 * system + 1; }

  friend bool operator==(const PhaseSpace& a, const PhaseSpace& b) {
    return a.field == b.field && a.systems == b.systems;
  }
  friend bool operator!=(const PhaseSpace& a, const PhaseSpace& b) { return !(a == b); }
};

template <class S>
PhaseSpace<S> make_space(const Field<S>& field, Index systems) {
  if (systems < 1) throw Error(ErrorKind::InvalidArgument, "a phase space needs at least one system");
  return PhaseSpace<S>{field, systems};
}

template <class S>
void check_space(const PhaseSpace<S>& space, const Vec<S>& v) {
  if (v.size() != space.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "vector length " + std::to_string(v.size()) + " in a " + std::to_string(space.systems) +
                    "-system phase space");
}

template <class S>
void check_space(const PhaseSpace<S>& space, const Subspace<S>& s) {
  if (s.ambient_dim() != space.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "subspace of ambient dimension " + std::to_string(s.ambient_dim()) + " in a " +
                    std::to_string(space.systems) + "-system phase space");
  if (s.field() != space.field) throw Error(ErrorKind::FieldMismatch, s.field().name() + " vs " + space.field.name());
}

/// [f,g] = sum_i f_{q_i} g_{p_i} - f_{p_i} g_{q_i}
template <class A, class B>
typename A::Scalar poisson_bracket(const Eigen::MatrixBase<A>& f, const Eigen::MatrixBase<B>& g) {
  using S = typename A::Scalar;
  if (f.size() != g.size() || f.size() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "bracket needs two vectors of the same even length");
  S acc(0);
  for (Index i = 0; i < f.size(); i += 2) acc += f(i) * g(i + 1) - f(i + 1) * g(i);
  return acc;
}

template <class S>
Mat<S> j_matrix(const Field<S>& field, Index systems) {
  Mat<S> j = zero_matrix(field, 2 * systems, 2 * systems);
  for (Index i = 0; i < systems; ++i) {
    j(2 * i, 2 * i + 1) = field.one();
    j(2 * i + 1, 2 * i) = -field.one();
  }
  return j;
}

template <class S>
Mat<S> j_matrix(const PhaseSpace<S>& space) {
  return j_matrix(space.field, space.systems);
}

/// J applied to a vector without forming J: (Jx)_{q_i} = x_{p_i}, (Jx)_{p_i} = -x_{q_i}.
template <class S>
Vec<S> apply_j(const Vec<S>& x) {
  Vec<S> y(x.size());
  for (Index i = 0; i + 1 < x.size(); i += 2) {
    y(i) = x(i + 1);
    y(i + 1) = -x(i);
  }
  return y;
}

template <class S>
bool is_isotropic(const Subspace<S>& s) {
  if (s.ambient_dim() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "isotropy needs an even ambient dimension");
  for (Index i = 0; i < s.dim(); ++i)
    for (Index j = i + 1; j < s.dim(); ++j)
      if (!is_zero(poisson_bracket(s.basis().row(i), s.basis().row(j)))) return false;
  return true;
}

/// {x : [x, g] = 0 for all g in W} = (J W)^⊥.
template <class S>
Subspace<S> symplectic_complement(const Subspace<S>& w) {
  if (w.ambient_dim() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "symplectic complement needs an even ambient dimension");
  Mat<S> jw(w.dim(), w.ambient_dim());
  for (Index i = 0; i < w.dim(); ++i) jw.row(i) = apply_j<S>(w.generator(i)).transpose();
  return orthogonal_complement(Subspace<S>::span(w.field(), w.ambient_dim(), jw));
}

/// Elements of V commuting with all of V_pi.
template <class S>
Subspace<S> commutant_within(const Subspace<S>& v, const Subspace<S>& v_pi) {
  detail::check_same_space(v, v_pi);
  if (v_pi.is_zero()) return v;
  return subspace_intersection(v, symplectic_complement(v_pi));
}

// ---------------------------------------------------------------------------
// system-level coordinate helpers

/// Coordinates (2i, 2i+1) for every listed system, in the listed order.
inline std::vector<Index> system_coordinates(const std::vector<Index>& systems) {
  std::vector<Index> out;
  out.reserve(2 * systems.size());
  for (auto s : systems) {
    out.push_back(2 * s);
    out.push_back(2 * s + 1);
  }
  return out;
}

/// Places v (a vector over `systems.size()` systems) into the given systems
/// of an n-system space.
template <class S>
Vec<S> embed(const Field<S>& field, const Vec<S>& v, Index n, const std::vector<Index>& systems) {
  const auto coords = system_coordinates(systems);
  if (static_cast<std::size_t>(v.size()) != coords.size())
    throw Error(ErrorKind::DimensionMismatch, "embedding a vector of the wrong length");
  Vec<S> out = zero_vector(field, 2 * n);
  for (std::size_t i = 0; i < coords.size(); ++i) out(coords[i]) = field.bind(v(static_cast<Index>(i)));
  return out;
}

template <class S>
Vec<S> restrict_to(const Vec<S>& v, const std::vector<Index>& systems) {
  const auto coords = system_coordinates(systems);
  Vec<S> out(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) out(static_cast<Index>(i)) = v(coords[i]);
  return out;
}

/// Subspace of vectors supported only on the listed systems.
template <class S>
Subspace<S> coordinate_subspace(const Field<S>& field, Index n, const std::vector<Index>& systems) {
  const auto coords = system_coordinates(systems);
  Mat<S> m = zero_matrix(field, static_cast<Index>(coords.size()), 2 * n);
  for (std::size_t i = 0; i < coords.size(); ++i) m(static_cast<Index>(i), coords[i]) = field.one();
  return Subspace<S>::span(field, 2 * n, m);
}

/// Subspace on the listed systems lifted into an n-system space.
template <class S>
Subspace<S> embed(const Subspace<S>& s, Index n, const std::vector<Index>& systems) {
  Mat<S> m(s.dim(), 2 * n);
  for (Index i = 0; i < s.dim(); ++i) m.row(i) = embed(s.field(), s.generator(i), n, systems).transpose();
  return Subspace<S>::span(s.field(), 2 * n, m);
}

}  // namespace toy
