#pragma once

// Exact linear algebra over Z_p and Q: canonical (RREF) subspaces, cosets,
// complements under the standard dot product, and affine solving.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "toy/errors.hpp"
#include "toy/scalar.hpp"

namespace toy {

using Index = Eigen::Index;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

// ---------------------------------------------------------------------------
// construction helpers

template <class S>
Vec<S> zero_vector(const Field<S>& field, Index n) {
  return Vec<S>::Constant(n, field.zero());
}

template <class S>
Mat<S> zero_matrix(const Field<S>& field, Index rows, Index cols) {
  return Mat<S>::Constant(rows, cols, field.zero());
}

template <class S>
Mat<S> identity_matrix(const Field<S>& field, Index n) {
  Mat<S> m = zero_matrix(field, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <class S>
Vec<S> unit_vector(const Field<S>& field, Index n, Index i) {
  Vec<S> v = zero_vector(field, n);
  v(i) = field.one();
  return v;
}

template <class S>
Vec<S> make_vector(const Field<S>& field, std::initializer_list<std::int64_t> entries) {
  Vec<S> v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (auto e : entries) v(i++) = field(e);
  return v;
}

template <class S>
Vec<S> make_vector(const Field<S>& field, std::span<const std::int64_t> entries) {
  Vec<S> v(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = field(entries[i]);
  return v;
}

template <class S>
Mat<S> make_matrix(const Field<S>& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  Mat<S> m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    Index j = 0;
    for (auto e : row) m(i, j++) = field(e);
    ++i;
  }
  return m;
}

/// Rebinds every entry into `field` (turns Eigen's unbound 0/1 literals into
/// proper field elements).
template <class S, class Derived>
Mat<S> bind(const Field<S>& field, const Eigen::MatrixBase<Derived>& m) {
  Mat<S> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = field.bind(m(i, j));
  return out;
}

template <class S, class Derived>
Vec<S> bind_vector(const Field<S>& field, const Eigen::MatrixBase<Derived>& v) {
  Vec<S> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = field.bind(v(i));
  return out;
}

template <class A, class B>
typename A::Scalar dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using S = typename A::Scalar;
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  S acc(0);
  for (Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

template <class Derived>
bool is_zero_vector(const Eigen::MatrixBase<Derived>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

template <class Derived>
std::string to_string(const Eigen::MatrixBase<Derived>& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v(i));
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Subspace

/// Linear subspace of S^ambient held as a reduced row-echelon basis. Because
/// RREF is canonical, equal subspaces compare equal structurally.
template <class S>
class Subspace {
 public:
  Subspace(Field<S> field, Index ambient)
      : field_(field), ambient_(ambient), basis_(0, ambient) {
    if (ambient < 0) throw Error(ErrorKind::DimensionMismatch, "negative ambient dimension");
  }

  /// Row space of `rows` (one generator per row).
  static Subspace span(Field<S> field, Index ambient, const Mat<S>& rows) {
    if (rows.rows() > 0 && rows.cols() != ambient)
      throw Error(ErrorKind::DimensionMismatch,
                  "generator length " + std::to_string(rows.cols()) + " vs ambient " + std::to_string(ambient));
    Subspace s(field, ambient);
    Mat<S> m = bind(field, rows);
    s.pivots_ = row_reduce(m, ambient);
    s.basis_ = m.topRows(static_cast<Index>(s.pivots_.size()));
    return s;
  }

  static Subspace span(Field<S> field, Index ambient, std::span<const Vec<S>> rows) {
    Mat<S> m(static_cast<Index>(rows.size()), ambient);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != ambient)
        throw Error(ErrorKind::DimensionMismatch,
                    "generator length " + std::to_string(rows[i].size()) + " vs ambient " + std::to_string(ambient));
      m.row(static_cast<Index>(i)) = rows[i].transpose();
    }
    return span(field, ambient, m);
  }

  static Subspace span(Field<S> field, Index ambient, std::initializer_list<Vec<S>> rows) {
    std::vector<Vec<S>> v(rows);
    return span(field, ambient, std::span<const Vec<S>>(v));
  }

  static Subspace full(Field<S> field, Index ambient) { return span(field, ambient, identity_matrix(field, ambient)); }

  const Field<S>& field() const { return field_; }
  Index ambient_dim() const { return ambient_; }
  Index dim() const { return static_cast<Index>(pivots_.size()); }
  bool is_zero() const { return pivots_.empty(); }
  const Mat<S>& basis() const { return basis_; }
  Vec<S> generator(Index i) const { return basis_.row(i).transpose(); }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// x with every pivot coordinate eliminated; zero iff x lies in the span.
  Vec<S> reduce(const Vec<S>& x) const {
    check_length(x);
    Vec<S> r = bind_vector(field_, x);
    for (Index i = 0; i < dim(); ++i) {
      const S c = r(pivots_[static_cast<std::size_t>(i)]);
      if (!toy::is_zero(c)) r -= c * basis_.row(i).transpose();
    }
    return r;
  }

  bool contains(const Vec<S>& x) const { return is_zero_vector(reduce(x)); }

  /// Coordinates of x (assumed in the span) with respect to the RREF basis.
  Vec<S> coordinates(const Vec<S>& x) const {
    Vec<S> c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = field_.bind(x(pivots_[static_cast<std::size_t>(i)]));
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  void check_length(const Vec<S>& x) const {
    if (x.size() != ambient_)
      throw Error(ErrorKind::DimensionMismatch,
                  "vector length " + std::to_string(x.size()) + " vs ambient " + std::to_string(ambient_));
  }

  /// In-place Gauss-Jordan on the first `cols` columns; returns pivot columns.
  /// Rows [0, rank) of m hold the reduced basis afterwards.
  static std::vector<Index> row_reduce(Mat<S>& m, Index cols) {
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < cols && r < m.rows(); ++c) {
      Index sel = r;
      while (sel < m.rows() && toy::is_zero(m(sel, c))) ++sel;
      if (sel == m.rows()) continue;
      if (sel != r) m.row(sel).swap(m.row(r));
      const S inv = S(1) / m(r, c);
      if (inv != S(1)) m.row(r) *= inv;
      for (Index i = 0; i < m.rows(); ++i) {
        if (i == r) continue;
        const S f = m(i, c);
        if (!toy::is_zero(f)) m.row(i) -= f * m.row(r);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

 private:
  Field<S> field_;
  Index ambient_;
  Mat<S> basis_;
  std::vector<Index> pivots_;
};

template <class S>
Subspace<S> rref(const Field<S>& field, Index ambient, std::span<const Vec<S>> rows) {
  return Subspace<S>::span(field, ambient, rows);
}

template <class S>
bool contains(const Subspace<S>& s, const Vec<S>& x) {
  return s.contains(x);
}

namespace detail {
template <class S>
void check_same_space(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "subspaces of ambient dimension " + std::to_string(a.ambient_dim()) +
                                                  " and " + std::to_string(b.ambient_dim()));
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, a.field().name() + " vs " + b.field().name());
}
}  // namespace detail

template <class S>
Subspace<S> subspace_sum(const Subspace<S>& a, const Subspace<S>& b) {
  detail::check_same_space(a, b);
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  Mat<S> m(a.dim() + b.dim(), a.ambient_dim());
  m << a.basis(), b.basis();
  return Subspace<S>::span(a.field(), a.ambient_dim(), m);
}

/// Standard-dot-product annihilator. Read straight off the RREF: one vector per
/// free column.
template <class S>
Subspace<S> orthogonal_complement(const Subspace<S>& s) {
  const Index n = s.ambient_dim();
  const auto& piv = s.pivots();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  Mat<S> m = zero_matrix(s.field(), n - s.dim(), n);
  Index r = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    m(r, f) = s.field().one();
    for (Index i = 0; i < s.dim(); ++i) m(r, piv[static_cast<std::size_t>(i)]) = -s.basis()(i, f);
    ++r;
  }
  return Subspace<S>::span(s.field(), n, m);
}

/// S ∩ T = (S^⊥ + T^⊥)^⊥.
template <class S>
Subspace<S> subspace_intersection(const Subspace<S>& a, const Subspace<S>& b) {
  detail::check_same_space(a, b);
  if (a == b) return a;
  return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)));
}

template <class S>
bool is_subspace_of(const Subspace<S>& a, const Subspace<S>& b) {
  detail::check_same_space(a, b);
  if (a.dim() > b.dim()) return false;
  for (Index i = 0; i < a.dim(); ++i)
    if (!b.contains(a.generator(i))) return false;
  return true;
}

/// Some x with A x = b, or nothing when the system is inconsistent.
template <class S>
std::optional<Vec<S>> solve_affine(const Field<S>& field, const Mat<S>& a, const Vec<S>& b) {
  if (a.rows() != b.size()) throw Error(ErrorKind::DimensionMismatch, "affine system shape");
  const Index n = a.cols();
  Mat<S> aug(a.rows(), n + 1);
  aug << a, b;
  aug = bind(field, aug);
  const auto piv = Subspace<S>::row_reduce(aug, n + 1);
  Vec<S> x = zero_vector(field, n);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == n) return std::nullopt;
    x(piv[i]) = aug(static_cast<Index>(i), n);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Coset

/// Affine subspace W + w. The shift is reduced against W's pivots so that two
/// equal cosets are bitwise equal.
template <class S>
class Coset {
 public:
  Coset(Subspace<S> direction, const Vec<S>& shift)
      : direction_(std::move(direction)), shift_(direction_.reduce(shift)) {}

  const Subspace<S>& direction() const { return direction_; }
  const Vec<S>& shift() const { return shift_; }
  const Field<S>& field() const { return direction_.field(); }
  Index ambient_dim() const { return direction_.ambient_dim(); }

  bool contains(const Vec<S>& x) const { return direction_.contains(x - shift_); }

  /// Rows N and right-hand side c with  x ∈ coset  ⇔  N x = c.
  std::pair<Mat<S>, Vec<S>> equations() const {
    const auto ann = orthogonal_complement(direction_);
    Vec<S> rhs = ann.basis() * shift_;
    return {ann.basis(), bind_vector(field(), rhs)};
  }

  friend bool operator==(const Coset& a, const Coset& b) {
    return a.direction_ == b.direction_ && a.shift_ == b.shift_;
  }
  friend bool operator!=(const Coset& a, const Coset& b) { return !(a == b); }

 private:
  Subspace<S> direction_;
  Vec<S> shift_;
};

/// (W1 + w1) ∩ (W2 + w2): empty, or (W1 ∩ W2) + u for a common point u.
template <class S>
std::optional<Coset<S>> coset_intersection(const Coset<S>& a, const Coset<S>& b) {
  detail::check_same_space(a.direction(), b.direction());
  const auto [na, ca] = a.equations();
  const auto [nb, cb] = b.equations();
  Mat<S> lhs(na.rows() + nb.rows(), a.ambient_dim());
  Vec<S> rhs(ca.size() + cb.size());
  lhs << na, nb;
  rhs << ca, cb;
  const auto u = solve_affine(a.field(), lhs, rhs);
  if (!u) return std::nullopt;
  return Coset<S>(subspace_intersection(a.direction(), b.direction()), *u);
}

template <class S>
std::optional<Coset<S>> coset_intersection(std::span<const Coset<S>> cosets) {
  if (cosets.empty()) throw Error(ErrorKind::InvalidArgument, "intersection of no cosets");
  std::optional<Coset<S>> acc = cosets[0];
  for (std::size_t i = 1; i < cosets.size() && acc; ++i) acc = coset_intersection(*acc, cosets[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// finite-field enumeration (Z_p only)

/// Number of elements p^dim, or nothing when it exceeds `cap`.
inline std::optional<std::uint64_t> checked_power(std::uint64_t base, Index exponent, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (Index i = 0; i < exponent; ++i) {
    if (acc > cap / base) return std::nullopt;
    acc *= base;
  }
  return acc <= cap ? std::optional<std::uint64_t>(acc) : std::nullopt;
}

/// Calls f(x) for every x in the coset, in lexicographic order of the
/// coordinates with respect to the RREF basis.
template <class F>
void for_each_element(const Coset<Zp>& c, F&& f) {
  const auto& dir = c.direction();
  const auto p = c.field().order();
  const Index k = dir.dim();
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(k), 0);
  while (true) {
    Vec<Zp> x = c.shift();
    for (Index i = 0; i < k; ++i)
      if (digits[static_cast<std::size_t>(i)] != 0)
        x += c.field().element(digits[static_cast<std::size_t>(i)]) * dir.basis().row(i).transpose();
    f(static_cast<const Vec<Zp>&>(x));
    Index pos = k - 1;
    while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == p) digits[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
}

template <class F>
void for_each_element(const Subspace<Zp>& s, F&& f) {
  for_each_element(Coset<Zp>(s, zero_vector(s.field(), s.ambient_dim())), std::forward<F>(f));
}

/// Every vector of Z_p^n (lexicographic, first coordinate most significant).
template <class F>
void for_each_vector(const Field<Zp>& field, Index n, F&& f) {
  for_each_element(Subspace<Zp>::full(field, n), std::forward<F>(f));
}

/// Every k-dimensional subspace of Z_p^n, produced by walking RREF shapes
/// (pivot sets, then free entries).
void for_each_subspace(const Field<Zp>& field, Index n, Index k, const std::function<void(const Subspace<Zp>&)>& f);

}  // namespace toy
