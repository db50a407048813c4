#pragma once

// Exact scalar fields used throughout: the prime field Z_p and the rationals.
// Both are usable as Eigen scalars; no floating point is involved anywhere.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include <Eigen/Core>

#include "toy/errors.hpp"

namespace toy {

bool is_prime(std::uint64_t n);

/// Element of Z_p. The modulus travels with the value so that generic Eigen
/// code works unchanged. A value with modulus 0 is an "unbound" integer
/// literal (Eigen materializes Scalar(0) and Scalar(1) this way); it takes the
/// modulus of the first bound value it meets.
class Zp {
 public:
  constexpr Zp() = default;
  constexpr Zp(int v) : v_(v) {}  // NOLINT: implicit literal conversion is what Eigen expects
  Zp(std::int64_t v, std::uint32_t p) : v_(reduce(v, p)), p_(p) {}

  std::int64_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }

  Zp bind(std::uint32_t p) const { return p_ == p ? *this : Zp(v_, p); }
  Zp inverse() const;

  friend Zp operator+(const Zp& a, const Zp& b) {
    const auto p = common(a, b);
    if (p == 0) return unbound(a.v_ + b.v_);
    return Zp(reduce(a.v_, p) + reduce(b.v_, p), p);
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    const auto p = common(a, b);
    if (p == 0) return unbound(a.v_ - b.v_);
    return Zp(reduce(a.v_, p) - reduce(b.v_, p), p);
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    const auto p = common(a, b);
    if (p == 0) return unbound(a.v_ * b.v_);
    return Zp(reduce(a.v_, p) * reduce(b.v_, p), p);
  }
  friend Zp operator/(const Zp& a, const Zp& b) {
    const auto p = common(a, b);
    if (p == 0) throw Error(ErrorKind::FieldMismatch, "division of unbound Z_p literals");
    return a.bind(p) * b.bind(p).inverse();
  }
  Zp operator-() const { return p_ == 0 ? unbound(-v_) : Zp(-v_, p_); }

  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  Zp& operator/=(const Zp& o) { return *this = *this / o; }

  friend bool operator==(const Zp& a, const Zp& b) {
    const auto p = common(a, b);
    if (p == 0) return a.v_ == b.v_;
    return reduce(a.v_, p) == reduce(b.v_, p);
  }
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Zp& z) { return os << z.v_; }

 private:
  static Zp unbound(std::int64_t v) {
    Zp z;
    z.v_ = v;
    return z;
  }
  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    const auto m = static_cast<std::int64_t>(p);
    const auto r = v % m;
    return r < 0 ? r + m : r;
  }
  static std::uint32_t common(const Zp& a, const Zp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw Error(ErrorKind::FieldMismatch, "Z_" + std::to_string(a.p_) + " vs Z_" + std::to_string(b.p_));
    return a.p_ != 0 ? a.p_ : b.p_;
  }

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Exact rational with 64-bit numerator/denominator, always in lowest terms
/// with a positive denominator. Arithmetic that would leave 64 bits throws
/// ErrorKind::Overflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int v) : num_(v) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  Rational inverse() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Factory/descriptor for a scalar field. Vectors and subspaces carry one so
/// that fresh elements (zeros, units, parsed entries) are created in the right
/// field.
template <class Scalar>
struct Field;

template <>
struct Field<Zp> {
  std::uint32_t p = 2;

  /// Throws NotPrime for composite or trivial moduli.
  static Field make(std::uint64_t p);

  Zp operator()(std::int64_t v) const { return Zp(v, p); }
  Zp bind(const Zp& z) const { return z.bind(p); }
  Zp zero() const { return Zp(0, p); }
  Zp one() const { return Zp(1, p); }

  static constexpr bool finite = true;
  std::uint64_t order() const { return p; }
  Zp element(std::uint64_t i) const { return Zp(static_cast<std::int64_t>(i), p); }
  std::uint64_t index(const Zp& z) const { return static_cast<std::uint64_t>(z.bind(p).value()); }

  std::string name() const { return "Z_" + std::to_string(p); }
  friend bool operator==(const Field& a, const Field& b) { return a.p == b.p; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p != b.p; }
};

template <>
struct Field<Rational> {
  Rational operator()(std::int64_t v) const { return Rational(v, 1); }
  Rational bind(const Rational& r) const { return r; }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }

  static constexpr bool finite = false;
  std::uint64_t order() const { throw Error(ErrorKind::ContinuousNotEnumerable, "Q has no finite order"); }

  std::string name() const { return "Q"; }
  friend bool operator==(const Field&, const Field&) { return true; }
  friend bool operator!=(const Field&, const Field&) { return false; }
};

using PrimeField = Field<Zp>;
using RationalField = Field<Rational>;

inline std::string to_string(const Zp& z) { return std::to_string(z.value()); }
inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_zero(const Zp& z) { return z == Zp(0); }
inline bool is_zero(const Rational& r) { return r.num() == 0; }

}  // namespace toy

namespace Eigen {

template <>
struct NumTraits<toy::Zp> : GenericNumTraits<toy::Zp> {
  using Real = toy::Zp;
  using NonInteger = toy::Zp;
  using Nested = toy::Zp;
  using Literal = toy::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4,
  };
  static inline Real epsilon() { return toy::Zp(0); }
  static inline Real dummy_precision() { return toy::Zp(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<toy::Rational> : GenericNumTraits<toy::Rational> {
  using Real = toy::Rational;
  using NonInteger = toy::Rational;
  using Nested = toy::Rational;
  using Literal = toy::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8,
  };
  static inline Real epsilon() { return toy::Rational(0); }
  static inline Real dummy_precision() { return toy::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

template <>
struct std::hash<toy::Zp> {
  std::size_t operator()(const toy::Zp& z) const noexcept { return std::hash<std::int64_t>{}(z.value()); }
};
