#include "toy/scalar.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>
#include <utility>

namespace toy {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

Zp Zp::inverse() const {
  if (p_ == 0) throw Error(ErrorKind::FieldMismatch, "inverse of an unbound Z_p literal");
  if (v_ == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero in Z_" + std::to_string(p_));
  // extended Euclid on (v, p)
  std::int64_t r0 = p_, r1 = v_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const auto q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return Zp(t0, p_);
}

Field<Zp> Field<Zp>::make(std::uint64_t p) {
  if (p > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
    throw Error(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " exceeds the supported range");
  if (!is_prime(p))
    throw Error(ErrorKind::NotPrime,
                "d = " + std::to_string(p) + " is not prime; only prime dimensions are supported");
  return Field<Zp>{static_cast<std::uint32_t>(p)};
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw Error(ErrorKind::Overflow, "rational leaves 64-bit range");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const auto v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(v, 1);
    }
    const auto a = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const auto tail = text.substr(slash + 1);
    const auto b = std::stoll(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(text);
    return Rational(a, b);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse rational '" + text + "'");
  }
}

Rational Rational::inverse() const {
  if (num_ == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero rational");
  return from_wide(den_, num_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, 1);
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw Error(ErrorKind::Overflow, "negation overflow");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace toy
