#pragma once

// Brute-force reference computations used only by the tests. They share the
// scalar layer with the library but none of its algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "skewcliff/field.hpp"
#include "skewcliff/freealg.hpp"

namespace oracle {

using skewcliff::Value;
using skewcliff::Word;

/// Plain Gaussian elimination on a dense row list; returns the rank.
template <class F>
std::size_t dense_rank(const F& k, std::vector<std::vector<Value<F>>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && k.is_zero(rows[piv][c])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const auto inv = k.inv(rows[r][c]);
    for (auto& x : rows[r]) x = k.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || k.is_zero(rows[i][c])) continue;
      const auto f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[r][j]));
    }
    ++r;
  }
  return r;
}

/// Index of a word in the lexicographic enumeration of all words of its length.
inline std::size_t word_index(int n, const Word& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.degree(); ++i) idx = idx * n + w[i];
  return idx;
}

inline std::vector<Word> words_of_length(int n, std::size_t d) {
  std::vector<Word> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= n;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint8_t> letters(d);
    std::size_t t = idx;
    for (std::size_t i = d; i-- > 0;) {
      letters[i] = static_cast<std::uint8_t>(t % n);
      t /= n;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

/// Rank of the matrix whose rows are all shifts u*f*v of the relations,
/// expressed in the word basis of T_d.
template <class F>
std::size_t shifted_relation_rank(const F& k, int n, const std::vector<skewcliff::NcPoly<F>>& rels, std::size_t d) {
  std::size_t cols = 1;
  for (std::size_t i = 0; i < d; ++i) cols *= n;
  std::vector<std::vector<Value<F>>> rows;
  for (const auto& f : rels) {
    const std::size_t e = *f.homogeneous_degree();
    if (e > d) continue;
    for (std::size_t a = 0; a <= d - e; ++a) {
      for (const auto& u : words_of_length(n, a)) {
        for (const auto& v : words_of_length(n, d - e - a)) {
          std::vector<Value<F>> row(cols, k.zero());
          for (const auto& [w, c] : f.terms()) {
            auto& slot = row[word_index(n, u * w * v)];
            slot = k.add(slot, c);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return dense_rank(k, std::move(rows));
}

template <class F>
std::vector<std::size_t> hilbert_by_shifts(const F& k, int n, const std::vector<skewcliff::NcPoly<F>>& rels,
                                           std::size_t max_degree) {
  std::vector<std::size_t> h;
  std::size_t words = 1;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    h.push_back(words - shifted_relation_rank(k, n, rels, d));
    words *= n;
  }
  return h;
}

/// Sorts a word by adjacent transpositions, multiplying in mu_ij for every
/// swap of z_j z_i (j > i). Returns the coefficient; the sorted word is `w`.
template <class F, class Mu>
Value<F> bubble_sort_coeff(const F& k, const Mu& mu, std::vector<std::uint8_t>& w) {
  Value<F> c = k.one();
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] > w[i + 1]) {
        c = k.mul(c, mu(w[i + 1], w[i]));
        std::swap(w[i], w[i + 1]);
        swapped = true;
      }
    }
  }
  return c;
}

/// Number of exponent vectors of total degree d not divisible by any of the
/// given monomials.
inline std::size_t monomial_quotient_count(int n, const std::vector<std::vector<int>>& gens, int d) {
  std::size_t count = 0;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      e[pos] = left;
      bool divisible = std::any_of(gens.begin(), gens.end(), [&](const std::vector<int>& g) {
        for (int i = 0; i < n; ++i)
          if (g[i] > e[i]) return false;
        return true;
      });
      if (!divisible) ++count;
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return count;
}

/// Rank of a small dense matrix over F_q by direct elimination.
inline int small_rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t q) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  int r = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && ((m[piv][c] % q) + q) % q == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::int64_t a = ((m[r][c] % q) + q) % q, inv = 1;
    for (std::int64_t e = q - 2, b = a; e > 0; e >>= 1, b = b * b % q)
      if (e & 1) inv = inv * b % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(r)) continue;
      std::int64_t f = ((m[i][c] % q) + q) % q * inv % q;
      if (!f) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % q + q) % q;
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
