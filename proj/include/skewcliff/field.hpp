#pragma once

// Exact scalar arithmetic: the rationals (GMP-backed) and prime fields F_p.
//
// Both field types expose the same small interface, and every algorithm in
// the library is a template over it:
//
//   value_type zero(), one(), from_int(long long), from_rational(Rational)
//   add, sub, neg, mul, inv, div, pow, is_zero, equal
//   characteristic(), to_rational(v), to_string(v)
//
// Values are plain data; the field object carries the modulus.

#include <cstdint>
#include <sstream>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "skewcliff/error.hpp"

namespace skewcliff {

using Rational = mpq_class;

/// Parses "7", "-3", "2/3" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error(ErrorKind::ParseError, "not an exact rational: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(10); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p) { return {Kind::PrimeField, p}; }

  std::uint32_t characteristic() const { return kind == Kind::Rationals ? 0 : p; }
  std::string name() const {
    return kind == Kind::Rationals ? std::string("Q") : "F_" + std::to_string(p);
  }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  value_type from_int(long long v) const { return Rational(static_cast<long>(v)); }
  value_type from_rational(const Rational& q) const {
    Rational r(q);
    r.canonicalize();
    return r;
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error(ErrorKind::ValidationError, "inverse of zero");
    return Rational(1) / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  value_type pow(const value_type& a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    Rational r = 1;
    Rational base = a;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }
  Rational to_rational(const value_type& a) const { return a; }
  std::string to_string(const value_type& a) const { return rational_to_string(a); }
};

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) {
      throw Error(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
    }
    if (p >= (1u << 31)) {
      throw Error(ErrorKind::ValidationError, "modulus must be below 2^31");
    }
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  value_type from_rational(const Rational& q) const {
    mpz_class num = q.get_num() % p_;
    mpz_class den = q.get_den() % p_;
    if (num < 0) num += p_;
    if (den == 0) {
      throw Error(ErrorKind::ValidationError,
                  "denominator of " + rational_to_string(q) + " vanishes mod " + std::to_string(p_));
    }
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui())));
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  value_type pow(value_type a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    std::uint64_t r = 1 % p_;
    std::uint64_t base = a;
    while (e > 0) {
      if (e & 1) r = (r * base) % p_;
      base = (base * base) % p_;
      e >>= 1;
    }
    return static_cast<value_type>(r);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(ErrorKind::ValidationError, "inverse of zero");
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<value_type>(t);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  std::uint32_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }
  Rational to_rational(value_type a) const { return Rational(static_cast<unsigned long>(a)); }
  std::string to_string(value_type a) const { return std::to_string(a); }

 private:
  std::uint32_t p_;
};

using AnyField = std::variant<RationalField, PrimeField>;

inline AnyField field_make(const FieldSpec& spec) {
  if (spec.kind == FieldSpec::Kind::Rationals) return RationalField{};
  return PrimeField(spec.p);
}

/// Runs `fn(field)` with the concrete field type selected by `spec`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), field_make(spec));
}

template <class F>
using Value = typename F::value_type;

}  // namespace skewcliff
