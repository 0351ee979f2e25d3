#pragma once

// Seeded random search for regular GSCAs on four generators whose degree-2
// generators can be eliminated, with point and line counts over F_p.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "skewcliff/error.hpp"
#include "skewcliff/geometry.hpp"
#include "skewcliff/gsca.hpp"

namespace skewcliff {

/// GSCA data with exact integer or rational entries, liftable to any field
/// in which the denominators are invertible.
struct GscaData {
  int n = 0;
  std::vector<Rational> mu_upper;           // mu_12, mu_13, ..., mu_{n-1,n}
  std::vector<Rational> mu_full;            // n*n, row-major; used instead of mu_upper when set
  std::vector<std::vector<Rational>> mats;  // each n*n, row-major

  template <class F>
  MuMatrix<F> lift_mu(const F& k) const {
    if (!mu_full.empty()) {
      if (mu_full.size() != static_cast<std::size_t>(n * n)) throw Error(ErrorKind::WrongDimensions, "mu must be n x n");
      auto m = DenseMatrix<F>::zeros(k, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = k.from_rational(mu_full[i * n + j]);
      return MuMatrix<F>(k, std::move(m));
    }
    std::vector<Value<F>> up;
    for (const auto& v : mu_upper) up.push_back(k.from_rational(v));
    return MuMatrix<F>::from_upper(k, n, up);
  }

  template <class F>
  GscaInput<F> lift(const F& k) const {
    GscaInput<F> inp{lift_mu(k), {}};
    for (const auto& m : mats) {
      if (m.size() != static_cast<std::size_t>(n * n)) throw Error(ErrorKind::WrongDimensions, "matrix must be n x n");
      auto d = DenseMatrix<F>::zeros(k, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = k.from_rational(m[i * n + j]);
      inp.mats.push_back(std::move(d));
    }
    return inp;
  }
};

enum class SearchStrategy {
  /// mu = 1; every M_k is the symmetrized product of two random linear forms.
  SplitGca,
  /// mu_ab = mu_cd = 1 for a random pairing {a,b},{c,d} and -1 across it, so
  /// that the squares together with z_a z_b and z_c z_d are central; each M_k
  /// is a random combination of those six monomials.
  CentralSkew,
};

inline std::string_view to_string(SearchStrategy s) {
  return s == SearchStrategy::SplitGca ? "split-gca" : "central-skew";
}

inline SearchStrategy parse_search_strategy(std::string_view s) {
  if (s == "split-gca") return SearchStrategy::SplitGca;
  if (s == "central-skew") return SearchStrategy::CentralSkew;
  throw Error(ErrorKind::ParseError, "unknown search strategy '" + std::string(s) + "'");
}

struct SearchOptions {
  std::uint64_t seed = 0;
  int tries = 100;
  SearchStrategy strategy = SearchStrategy::SplitGca;
  std::uint32_t prime = 7;
  std::size_t degree = 5;
  int coefficient_bound = 5;
  bool count_points = true;
  EnumerationOptions enumeration;
  CertifyOptions certify;
};

struct SearchHit {
  int trial = 0;
  GscaData data;
  std::optional<std::size_t> z_pairs;
  bool z_is_graph = false;
};

struct SearchResult {
  SearchOptions options;
  std::vector<SearchHit> hits;  // RegularUpToD instances only
  std::map<std::string, int> outcomes;
  std::uint64_t points_visited = 0;
};

namespace detail {

// Values in [-bound, bound], derived from raw engine output so that a seed
// gives the same draws with every standard library.
inline long draw(std::mt19937_64& rng, int bound) {
  return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
}

inline GscaData random_split_gca(std::mt19937_64& rng, int bound) {
  GscaData d{4, std::vector<Rational>(6, Rational(1)), {}, {}};
  for (int k = 0; k < 4; ++k) {
    long a[4], b[4];
    for (auto& x : a) x = draw(rng, bound);
    for (auto& x : b) x = draw(rng, bound);
    std::vector<Rational> m(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i * 4 + j] = Rational(a[i] * b[j] + a[j] * b[i]);
    d.mats.push_back(std::move(m));
  }
  return d;
}

inline GscaData random_central_skew(std::mt19937_64& rng, int bound) {
  static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  const int* p = pairings[rng() % 3];
  auto partner = [&](int i) {
    for (int t = 0; t < 4; ++t)
      if (p[t] == i) return p[t ^ 1];
    return -1;
  };
  GscaData d{4, {}, {}, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d.mu_upper.push_back(Rational(partner(i) == j ? 1 : -1));
  for (int k = 0; k < 4; ++k) {
    std::vector<Rational> m(16, Rational(0));
    for (int i = 0; i < 4; ++i) m[i * 5] = Rational(draw(rng, bound));
    for (int t = 0; t < 4; t += 2) {
      const Rational c(draw(rng, bound));
      m[p[t] * 4 + p[t + 1]] = c;
      m[p[t + 1] * 4 + p[t]] = c;
    }
    d.mats.push_back(std::move(m));
  }
  return d;
}

}  // namespace detail

inline GscaData random_gsca_data(std::mt19937_64& rng, SearchStrategy s, int bound) {
  return s == SearchStrategy::SplitGca ? detail::random_split_gca(rng, bound) : detail::random_central_skew(rng, bound);
}

/// Draws `tries` instances, certifies each over F_p up to the given degree,
/// and counts the rational pairs of Z for the certified ones.
inline SearchResult search_gsca(const SearchOptions& opt) {
  if (opt.tries < 0) throw Error(ErrorKind::BadParams, "tries must be non-negative");
  SearchResult res;
  res.options = opt;
  PrimeField k(opt.prime);
  std::mt19937_64 rng(opt.seed);
  for (int t = 0; t < opt.tries; ++t) {
    GscaData data = random_gsca_data(rng, opt.strategy, opt.coefficient_bound);
    std::optional<GscaInput<PrimeField>> inp;
    try {
      inp = data.lift(k);
      auto cert = certify_regular(*inp, opt.degree, opt.certify);
      if (cert.conclusion != Conclusion::RegularUpToD) {
        ++res.outcomes[std::string(to_string(cert.conclusion))];
        continue;
      }
    } catch (const Error& e) {
      ++res.outcomes["error:" + std::string(to_string(e.kind()))];
      continue;
    }
    ++res.outcomes[std::string(to_string(Conclusion::RegularUpToD))];
    SearchHit hit{t, std::move(data), std::nullopt, false};
    if (opt.count_points) {
      auto z = enumerate_Z(bilinearize(eliminate_y(*inp)), opt.enumeration);
      res.points_visited += z.points_visited;
      hit.z_pairs = z.pairs.size();
      hit.z_is_graph = graph_structure(z).is_graph;
    }
    res.hits.push_back(std::move(hit));
  }
  return res;
}

struct LineDimension {
  std::uint32_t q1 = 0, q2 = 0;
  std::uint64_t count1 = 0, count2 = 0;
  std::uint64_t points_visited = 0;
  long estimate = 0;
};

/// Rank <= 2 counts of the relation span of a four-generator presentation
/// over two primes, and the resulting dimension estimate.
template <class MakePresentation>
LineDimension line_dimension(MakePresentation&& make, std::uint32_t q1, std::uint32_t q2,
                             const EnumerationOptions& opt = {}) {
  LineDimension out{q1, q2, 0, 0, 0, 0};
  for (std::uint32_t q : {q1, q2}) {
    PrimeField k(q);
    auto rc = rank_leq_count(relation_span_matrices(make(k)), 2, k, opt);
    (q == q1 ? out.count1 : out.count2) = rc.count;
    out.points_visited += rc.points_visited;
  }
  out.estimate = dimension_estimate(out.count1, q1, out.count2, q2);
  return out;
}

}  // namespace skewcliff
