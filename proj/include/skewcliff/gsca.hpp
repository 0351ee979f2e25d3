#pragma once

// Graded (skew) Clifford algebras from mu and mu-symmetric matrices: the
// quadric-system map into S(mu), the degree-2 defining relations, elimination
// of the degree-2 generators, and the regularity certificate.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "skewcliff/freealg.hpp"
#include "skewcliff/projective.hpp"
#include "skewcliff/quotient.hpp"
#include "skewcliff/skewpoly.hpp"

namespace skewcliff {

/// mu_ij mu_ji = 1 off the diagonal and mu_ii = 1; throws ZeroEntry on a
/// vanishing entry.
template <class F>
bool check_mu(const MuMatrix<F>& mu) {
  const F& k = mu.field();
  const int n = mu.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (k.is_zero(mu(i, j))) {
        throw Error(ErrorKind::ZeroEntry,
                    "mu_" + std::to_string(i + 1) + std::to_string(j + 1) + " is zero");
      }
  for (int i = 0; i < n; ++i) {
    if (!k.equal(mu(i, i), k.one())) return false;
    for (int j = i + 1; j < n; ++j)
      if (!k.equal(k.mul(mu(i, j), mu(j, i)), k.one())) return false;
  }
  return true;
}

template <class F>
bool is_mu_symmetric(const MuMatrix<F>& mu, const DenseMatrix<F>& m) {
  const F& k = mu.field();
  const int n = mu.size();
  if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::WrongDimensions, "matrix and mu differ in size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!k.equal(m(i, j), k.mul(mu(i, j), m(j, i)))) return false;
  return true;
}

/// M -> (z_1..z_n) M (z_1..z_n)^T in PBW form.
template <class F>
SPoly<F> matrix_to_quadric(const MuMatrix<F>& mu, const DenseMatrix<F>& m) {
  if (!is_mu_symmetric(mu, m)) throw Error(ErrorKind::NotMuSymmetric, "matrix is not mu-symmetric");
  const F& k = mu.field();
  const int n = mu.size();
  NcPoly<F> f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.add_term(k, Word{i, j}, m(i, j));
  return nf(mu, f);
}

/// The unique mu-symmetric preimage of a quadric: with c_ij the coefficient
/// of z_i z_j (i < j), M_ij = c_ij / 2 and M_ji = c_ij / (2 mu_ij).
template <class F>
DenseMatrix<F> quadric_from_spoly(const MuMatrix<F>& mu, const SPoly<F>& q) {
  const F& k = mu.field();
  const int n = mu.size();
  if (k.characteristic() == 2) throw Error(ErrorKind::CharTwo, "characteristic 2");
  DenseMatrix<F> m = DenseMatrix<F>::zeros(k, n, n);
  if (q.is_zero()) return m;
  if (q.homogeneous_degree() != std::optional<std::size_t>(2))
    throw Error(ErrorKind::NotQuadratic, "quadric must be homogeneous of degree 2");
  const auto half = k.inv(k.from_int(2));
  for (const auto& [e, c] : q.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < e[i]; ++t) idx.push_back(i);
    const int i = idx[0], j = idx[1];
    if (i == j) {
      m(i, i) = c;
    } else {
      m(i, j) = k.mul(c, half);
      m(j, i) = k.div(k.mul(c, half), mu(i, j));
    }
  }
  return m;
}

template <class F>
struct GscaInput {
  MuMatrix<F> mu;
  std::vector<DenseMatrix<F>> mats;

  const F& field() const { return mu.field(); }
  int n() const { return mu.size(); }
};

/// Shape and characteristic checks; mu / mu-symmetry verdicts are left to
/// check_mu and is_mu_symmetric.
template <class F>
void validate_shape(const GscaInput<F>& inp) {
  const int n = inp.n();
  if (inp.field().characteristic() == 2) throw Error(ErrorKind::CharTwo, "GSCAs need characteristic != 2");
  if (inp.mats.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::WrongDimensions, "expected exactly n = " + std::to_string(n) + " matrices");
  for (const auto& m : inp.mats)
    if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
      throw Error(ErrorKind::WrongDimensions, "each matrix must be n x n");
}

/// Full validation: shape, characteristic, mu, and mu-symmetry.
template <class F>
void validate(const GscaInput<F>& inp) {
  validate_shape(inp);
  if (!check_mu(inp.mu)) throw Error(ErrorKind::ValidationError, "mu violates mu_ij mu_ji = 1 or mu_ii = 1");
  for (std::size_t k = 0; k < inp.mats.size(); ++k)
    if (!is_mu_symmetric(inp.mu, inp.mats[k]))
      throw Error(ErrorKind::NotMuSymmetric, "M_" + std::to_string(k + 1) + " is not mu-symmetric");
}

/// Degree-2 relation x_i x_j + mu_ij x_j x_i = sum_k (M_k)_ij y_k, stored as
/// its x-part and the y-coefficients.
template <class F>
struct CliffordRelation {
  int i = 0, j = 0;
  NcPoly<F> x_part;
  std::vector<Value<F>> y_coeffs;
};

/// One relation per pair i <= j; the (j, i) relation is a scalar multiple by
/// mu-symmetry.
template <class F>
std::vector<CliffordRelation<F>> gsca_relations(const GscaInput<F>& inp) {
  validate(inp);
  const F& k = inp.field();
  const int n = inp.n();
  std::vector<CliffordRelation<F>> rels;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      CliffordRelation<F> r{i, j, NcPoly<F>(n), {}};
      r.x_part.add_term(k, Word{i, j}, k.one());
      r.x_part.add_term(k, Word{j, i}, inp.mu(i, j));
      for (const auto& m : inp.mats) r.y_coeffs.push_back(m(i, j));
      rels.push_back(std::move(r));
    }
  return rels;
}

/// Solves the diagonal relations 2 x_i^2 = sum_k (M_k)_ii y_k for the y's
/// and substitutes into the off-diagonal relations: a quadratic presentation
/// on x_1..x_n with n(n-1)/2 relations.
template <class F>
Presentation<F> eliminate_y(const GscaInput<F>& inp) {
  validate(inp);
  const F& k = inp.field();
  const int n = inp.n();
  DenseMatrix<F> diag = DenseMatrix<F>::zeros(k, n, n);  // diag(i, k) = (M_k)_ii
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < n; ++kk) diag(i, kk) = inp.mats[kk](i, i);
  DenseMatrix<F> inv;
  try {
    inv = inverse(diag, k);
  } catch (const Error&) {
    throw Error(ErrorKind::DiagonalSingular, "the diagonal entries of M_1..M_n form a singular matrix");
  }
  // y_k = sum_i inv(k, i) * 2 x_i^2
  std::vector<NcPoly<F>> y(n, NcPoly<F>(n));
  const auto two = k.from_int(2);
  for (int kk = 0; kk < n; ++kk)
    for (int i = 0; i < n; ++i) y[kk].add_term(k, Word{i, i}, k.mul(two, inv(kk, i)));
  std::vector<NcPoly<F>> rels;
  for (const auto& r : gsca_relations(inp)) {
    if (r.i == r.j) continue;
    NcPoly<F> f = r.x_part;
    for (int kk = 0; kk < n; ++kk) f = f.minus(k, y[kk].scaled(k, r.y_coeffs[kk]));
    if (f.is_zero()) throw Error(ErrorKind::ValidationError, "eliminated relation vanished");
    rels.push_back(std::move(f));
  }
  return Presentation<F>(k, n, std::move(rels));
}

enum class Conclusion { RegularUpToD, NotRegular, Inconclusive };

inline std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::RegularUpToD: return "RegularUpToD";
    case Conclusion::NotRegular: return "NotRegular";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <class F>
struct RegularityCertificate {
  bool mu_ok = false;
  bool musym_ok = false;
  bool eliminated = false;
  bool normalizing = false;
  BpfVerdict<F> bpf;
  bool hilbert_match = false;
  std::size_t truncation_degree = 0;
  Conclusion conclusion = Conclusion::Inconclusive;

  std::vector<SPoly<F>> quadrics;
  std::optional<std::vector<int>> normalizing_order;  // 0-based indices into quadrics
  std::vector<SPoly<F>> normalizing_sequence;         // a normalizing basis of the span, when found
  std::vector<std::size_t> hilbert;                   // of the eliminated presentation
  std::vector<std::string> notes;
};

struct CertifyOptions {
  BpfOptions bpf;
  TruncationLimits limits;
  /// orderings are searched exhaustively up to this many quadrics
  int max_permuted = 4;
  /// candidate normality tests allowed when searching the span over F_p
  std::uint64_t span_search_budget = 200'000;
};

/// Tries orderings of the quadrics (all of them for n <= max_permuted) and
/// returns the first normalizing one.
template <class F>
std::optional<std::vector<int>> find_normalizing_order(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& qs,
                                                       std::size_t max_degree, int max_permuted = 4) {
  std::vector<int> order(qs.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<SPoly<F>> seq;
    for (int i : order) seq.push_back(qs[i]);
    if (is_normalizing_sequence(mu, seq, max_degree)) return order;
    if (static_cast<int>(qs.size()) > max_permuted) break;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

/// Searches the span of the quadrics for a normalizing basis: g_1 runs over
/// P(V), g_{k+1} over the projectivized complement of span(g_1..g_k), with
/// backtracking. Only over prime fields; nullopt when none exists or the
/// budget runs out (`exhausted` tells which).
template <class F>
std::optional<std::vector<SPoly<F>>> find_normalizing_basis(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& qs,
                                                            std::uint64_t budget, bool* exhausted = nullptr) {
  if (exhausted) *exhausted = false;
  if constexpr (!std::is_same_v<F, PrimeField>) {
    (void)mu, (void)qs, (void)budget;
    if (exhausted) *exhausted = true;
    return std::nullopt;
  } else {
    using Vec = std::vector<Value<F>>;
    const F& k = mu.field();
    SkewPolyRing<F> ring(mu, 3);
    Echelon<F> span(k, ring.dim(2));
    std::vector<Vec> basis;
    for (const auto& q : qs) {
      if (q.is_zero()) continue;
      if (q.homogeneous_degree() != std::optional<std::size_t>(2))
        throw Error(ErrorKind::NotQuadratic, "quadric system entries must have degree 2");
      auto v = ring.to_element(q).coords;
      if (span.insert(v)) basis.push_back(std::move(v));
    }
    std::uint64_t tests = 0;
    bool out_of_budget = false;
    std::vector<GradedElement<F>> chosen;
    auto rec = [&](auto&& self, const std::vector<Vec>& complement) -> bool {
      if (complement.empty()) return true;
      IdealTower<SkewPolyRing<F>> tower(ring, chosen, 3);
      const int m = static_cast<int>(complement.size());
      bool done = false;
      for_each_projective_point(k, m, [&](const std::vector<std::uint32_t>& c) {
        if (done || out_of_budget) return;
        if (++tests > budget) {
          out_of_budget = true;
          return;
        }
        Vec g(ring.dim(2), k.zero());
        std::size_t lead = 0;
        while (c[lead] == 0) ++lead;
        for (int j = 0; j < m; ++j)
          if (c[j])
            for (std::size_t t = 0; t < g.size(); ++t) g[t] = k.add(g[t], k.mul(c[j], complement[j][t]));
        GradedElement<F> ge{2, g};
        if (!is_normal_in(ring, tower, ge)) return;
        std::vector<Vec> rest;
        for (int j = 0; j < m; ++j)
          if (static_cast<std::size_t>(j) != lead) rest.push_back(complement[j]);
        chosen.push_back(ge);
        if (self(self, rest)) {
          done = true;
          return;
        }
        chosen.pop_back();
      });
      return done;
    };
    const bool found = rec(rec, basis);
    if (exhausted) *exhausted = out_of_budget;
    if (!found) return std::nullopt;
    std::vector<SPoly<F>> out;
    for (const auto& g : chosen) out.push_back(ring.from_element(g));
    return out;
  }
}

/// Normalizing + base-point-free test of the quadric system, followed by a
/// Hilbert-function cross-check of the eliminated presentation against
/// 1/(1-t)^n. Every positive verdict holds only through degree D.
template <class F>
RegularityCertificate<F> certify_regular(const GscaInput<F>& inp, std::size_t max_degree,
                                         const CertifyOptions& opt = {}) {
  validate_shape(inp);
  RegularityCertificate<F> cert;
  cert.truncation_degree = max_degree;
  const int n = inp.n();

  cert.mu_ok = check_mu(inp.mu);
  cert.musym_ok = std::all_of(inp.mats.begin(), inp.mats.end(),
                              [&](const DenseMatrix<F>& m) { return is_mu_symmetric(inp.mu, m); });
  if (!cert.mu_ok || !cert.musym_ok) {
    cert.notes.push_back("input is not valid GSCA data (mu or mu-symmetry check failed)");
    return cert;
  }

  for (const auto& m : inp.mats) cert.quadrics.push_back(matrix_to_quadric(inp.mu, m));

  cert.normalizing_order = find_normalizing_order(inp.mu, cert.quadrics, max_degree, opt.max_permuted);
  if (cert.normalizing_order) {
    cert.normalizing = true;
    for (int i : *cert.normalizing_order) cert.normalizing_sequence.push_back(cert.quadrics[i]);
  } else {
    bool exhausted = false;
    auto basis = find_normalizing_basis(inp.mu, cert.quadrics, opt.span_search_budget, &exhausted);
    if (basis) {
      cert.normalizing = true;
      cert.normalizing_sequence = std::move(*basis);
      cert.notes.push_back("normalizing basis found by searching the span of the quadric system");
    } else if (exhausted) {
      cert.notes.push_back("no ordering of the quadrics is normalizing; the span was not searched exhaustively");
    } else {
      cert.notes.push_back("no basis of the quadric system's span is a normalizing sequence");
    }
  }

  cert.bpf = is_base_point_free(inp.mu, cert.quadrics, max_degree, opt.bpf);

  bool hilbert_mismatch = false;
  try {
    auto pres = eliminate_y(inp);
    cert.eliminated = true;
    cert.hilbert = hilbert_function(pres, max_degree, opt.limits);
    cert.hilbert_match = cert.hilbert == polynomial_ring_hilbert(n, max_degree);
    hilbert_mismatch = !cert.hilbert_match;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DiagonalSingular) throw;
    cert.notes.push_back("degree-2 generators cannot be eliminated; no Hilbert cross-check");
  }

  if (cert.normalizing && cert.bpf.kind == BpfKind::Free && cert.eliminated && cert.hilbert_match) {
    cert.conclusion = Conclusion::RegularUpToD;
  } else if (cert.bpf.kind == BpfKind::NotFree || hilbert_mismatch) {
    cert.conclusion = Conclusion::NotRegular;
  } else {
    cert.conclusion = Conclusion::Inconclusive;
  }
  return cert;
}

}  // namespace skewcliff
