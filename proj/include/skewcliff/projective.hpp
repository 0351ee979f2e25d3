#pragma once

// Points of projective space with canonical (first nonzero = 1)
// representatives, and enumeration of P^{n-1}(F_q).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "skewcliff/field.hpp"

namespace skewcliff {

template <class F>
struct ProjPoint {
  std::vector<Value<F>> coords;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords < b.coords; }

  std::string to_string(const F& k) const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ":";
      s += k.to_string(coords[i]);
    }
    return s + ")";
  }
};

/// Scales v so its first nonzero coordinate is 1; throws on the zero vector.
template <class F>
ProjPoint<F> normalize_point(const F& k, std::vector<Value<F>> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (k.is_zero(v[i])) continue;
    const auto s = k.inv(v[i]);
    for (std::size_t j = i; j < v.size(); ++j) v[j] = k.mul(v[j], s);
    return {std::move(v)};
  }
  throw Error(ErrorKind::ValidationError, "the zero vector is not a projective point");
}

/// (q^n - 1) / (q - 1)
inline std::uint64_t projective_space_size(std::uint64_t q, int n) {
  std::uint64_t s = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    s += pw;
    pw *= q;
  }
  return s;
}

/// Calls fn(coords) for each normalized point of P^{n-1}(F_q), ordered by
/// the position of the leading 1 and then lexicographically. Returns the
/// number of points visited.
template <class Fn>
std::uint64_t for_each_projective_point(const PrimeField& k, int n, Fn&& fn) {
  const std::uint32_t q = k.modulus();
  std::vector<std::uint32_t> v(n, 0);
  std::uint64_t count = 0;
  for (int lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0u);
    v[lead] = 1;
    while (true) {
      fn(static_cast<const std::vector<std::uint32_t>&>(v));
      ++count;
      int i = n - 1;
      while (i > lead) {
        if (++v[i] < q) break;
        v[i] = 0;
        --i;
      }
      if (i == lead) break;
    }
  }
  return count;
}

}  // namespace skewcliff
