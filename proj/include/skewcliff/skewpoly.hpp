#pragma once

// The skew polynomial ring S(mu) = k<z_1..z_n> / (z_j z_i - mu_ij z_i z_j)
// with its PBW monomial basis z_1^{e_1} ... z_n^{e_n}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "skewcliff/freealg.hpp"
#include "skewcliff/linalg.hpp"
#include "skewcliff/projective.hpp"
#include "skewcliff/quotient.hpp"

namespace skewcliff {

template <class F>
class MuMatrix {
 public:
  using value_type = Value<F>;

  MuMatrix(F field, DenseMatrix<F> entries) : k_(std::move(field)), m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw Error(ErrorKind::WrongDimensions, "mu must be square");
  }

  static MuMatrix ones(const F& k, int n) { return MuMatrix(k, DenseMatrix<F>(n, n, k.one())); }

  /// Builds mu from its strict upper triangle, setting mu_ji = 1/mu_ij and
  /// mu_ii = 1.
  static MuMatrix from_upper(const F& k, int n, const std::vector<value_type>& upper) {
    if (upper.size() != static_cast<std::size_t>(n * (n - 1) / 2))
      throw Error(ErrorKind::WrongDimensions, "expected n(n-1)/2 upper-triangle entries");
    DenseMatrix<F> m(n, n, k.one());
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto& v = upper[idx++];
        if (k.is_zero(v)) throw Error(ErrorKind::ZeroEntry, "mu entries must be nonzero");
        m(i, j) = v;
        m(j, i) = k.inv(v);
      }
    return MuMatrix(k, std::move(m));
  }

  int size() const { return static_cast<int>(m_.rows()); }
  const F& field() const { return k_; }
  const value_type& operator()(int i, int j) const { return m_(i, j); }
  const DenseMatrix<F>& entries() const { return m_; }

  bool is_all_ones() const {
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!k_.equal(m_(i, j), k_.one())) return false;
    return true;
  }

 private:
  F k_;
  DenseMatrix<F> m_;
};

using Exponent = std::vector<std::uint16_t>;

inline std::size_t exponent_degree(const Exponent& e) {
  std::size_t d = 0;
  for (auto x : e) d += x;
  return d;
}

inline Exponent exponent_of_word(int n, const Word& w) {
  Exponent e(n, 0);
  for (auto l : w.letters()) ++e[l];
  return e;
}

/// z^e as the sorted word z_1^{e_1} ... z_n^{e_n}.
inline Word word_of_exponent(const Exponent& e) {
  std::vector<std::uint8_t> letters;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::uint16_t c = 0; c < e[i]; ++c) letters.push_back(static_cast<std::uint8_t>(i));
  return Word(std::move(letters));
}

/// Element of S in PBW normal form.
template <class F>
class SPoly {
 public:
  using value_type = Value<F>;
  using Terms = std::map<Exponent, value_type>;

  SPoly() = default;
  explicit SPoly(int n) : n_(n) {}

  static SPoly monomial(const F& k, const Exponent& e, const value_type& c) {
    SPoly p(static_cast<int>(e.size()));
    p.add_term(k, e, c);
    return p;
  }

  int num_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const F& k, const Exponent& e, const value_type& c) {
    if (static_cast<int>(e.size()) != n_) throw Error(ErrorKind::WrongDimensions, "exponent length mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!k.is_zero(c)) terms_.emplace(e, c);
      return;
    }
    it->second = k.add(it->second, c);
    if (k.is_zero(it->second)) terms_.erase(it);
  }

  SPoly plus(const F& k, const SPoly& o) const {
    SPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(k, e, c);
    return r;
  }
  SPoly scaled(const F& k, const value_type& s) const {
    SPoly r(n_);
    for (const auto& [e, c] : terms_) r.add_term(k, e, k.mul(c, s));
    return r;
  }

  std::optional<std::size_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::size_t d = exponent_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (exponent_degree(e) != d) return std::nullopt;
    return d;
  }

  const value_type* coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? nullptr : &it->second;
  }

  std::string to_string(const F& k, const char* var = "z") const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    // highest monomial (z1^d) first reads naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational q = k.to_rational(c);
      bool negative = q < 0;
      if (negative) q = -q;
      s += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        s += rational_to_string(q);
      } else if (q == 1) {
        s += mono;
      } else {
        s += rational_to_string(q) + "*" + mono;
      }
    }
    return s;
  }

  friend bool operator==(const SPoly&, const SPoly&) = default;

 private:
  int n_ = 0;
  Terms terms_;
};

/// Coefficient c with z^a z^b = c z^{a+b}: each z_i of b moves left past the
/// z_j of a with j > i, and each swap z_j z_i -> mu_ij z_i z_j.
template <class F>
Value<F> monomial_product_coeff(const MuMatrix<F>& mu, const Exponent& a, const Exponent& b) {
  const F& k = mu.field();
  auto c = k.one();
  const int n = mu.size();
  for (int i = 0; i < n; ++i) {
    if (b[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (a[j] == 0) continue;
      c = k.mul(c, k.pow(mu(i, j), static_cast<long long>(a[j]) * b[i]));
    }
  }
  return c;
}

/// Image in S of a noncommutative polynomial: every word is sorted by
/// adjacent transpositions z_j z_i -> mu_ij z_i z_j (j > i).
template <class F>
SPoly<F> nf(const MuMatrix<F>& mu, const NcPoly<F>& f) {
  const F& k = mu.field();
  const int n = mu.size();
  if (f.num_letters() != n) throw Error(ErrorKind::WrongDimensions, "alphabet size differs from mu");
  SPoly<F> out(n);
  for (const auto& [w, c] : f.terms()) {
    Exponent acc(n, 0);
    auto coeff = c;
    for (auto l : w.letters()) {
      Exponent single(n, 0);
      single[l] = 1;
      coeff = k.mul(coeff, monomial_product_coeff(mu, acc, single));
      ++acc[l];
    }
    out.add_term(k, acc, coeff);
  }
  return out;
}

template <class F>
SPoly<F> spoly_mul(const MuMatrix<F>& mu, const SPoly<F>& f, const SPoly<F>& g) {
  const F& k = mu.field();
  SPoly<F> out(mu.size());
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) {
      Exponent s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = static_cast<std::uint16_t>(a[i] + b[i]);
      out.add_term(k, s, k.mul(k.mul(ca, cb), monomial_product_coeff(mu, a, b)));
    }
  return out;
}

/// S(mu) truncated at a maximal degree, as a graded ambient.
template <class F>
class SkewPolyRing {
 public:
  using field_type = F;
  using value_type = Value<F>;
  using Vec = std::vector<value_type>;

  SkewPolyRing(MuMatrix<F> mu, std::size_t max_degree) : mu_(std::move(mu)), max_degree_(max_degree) {
    const int n = mu_.size();
    for (std::size_t d = 0; d <= max_degree; ++d) {
      std::vector<Exponent> mons;
      Exponent e(n, 0);
      enumerate(e, 0, static_cast<int>(d), mons);
      std::map<Exponent, std::size_t> index;
      for (std::size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], i);
      monomials_.push_back(std::move(mons));
      index_.push_back(std::move(index));
    }
  }

  const F& field() const { return mu_.field(); }
  const MuMatrix<F>& mu() const { return mu_; }
  int num_generators() const { return mu_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t dim(std::size_t d) const { return monomials_.at(d).size(); }
  const std::vector<Exponent>& monomials(std::size_t d) const { return monomials_.at(d); }
  Word basis_word(std::size_t d, std::size_t j) const { return word_of_exponent(monomials_.at(d).at(j)); }

  std::size_t index_of(const Exponent& e) const { return index_.at(exponent_degree(e)).at(e); }

  Vec right_mul_gen(std::size_t d, const Vec& v, int i) const { return mul_gen(d, v, i, false); }
  Vec left_mul_gen(std::size_t d, const Vec& v, int i) const { return mul_gen(d, v, i, true); }

  GradedElement<F> to_element(const SPoly<F>& p) const {
    const F& k = field();
    if (p.is_zero()) return {0, Vec(1, k.zero())};
    auto d = p.homogeneous_degree();
    if (!d) throw Error(ErrorKind::NotHomogeneous, "element of S is not homogeneous");
    if (*d > max_degree_) throw Error(ErrorKind::DegreeOverflow, "element beyond truncation degree");
    Vec v(dim(*d), k.zero());
    for (const auto& [e, c] : p.terms()) v[index_of(e)] = c;
    return {*d, std::move(v)};
  }

  SPoly<F> from_element(const GradedElement<F>& g) const {
    SPoly<F> p(num_generators());
    for (std::size_t j = 0; j < g.coords.size(); ++j) p.add_term(field(), monomials_[g.degree][j], g.coords[j]);
    return p;
  }

 private:
  void enumerate(Exponent& e, int pos, int remaining, std::vector<Exponent>& out) const {
    const int n = static_cast<int>(e.size());
    if (pos == n - 1) {
      e[pos] = static_cast<std::uint16_t>(remaining);
      out.push_back(e);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      e[pos] = static_cast<std::uint16_t>(c);
      enumerate(e, pos + 1, remaining - c, out);
    }
    e[pos] = 0;
  }

  Vec mul_gen(std::size_t d, const Vec& v, int i, bool left) const {
    if (d + 1 > max_degree_) throw Error(ErrorKind::DegreeOverflow, "product beyond truncation degree");
    const F& k = field();
    Vec out(dim(d + 1), k.zero());
    Exponent gen(num_generators(), 0);
    gen[i] = 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (k.is_zero(v[j])) continue;
      const Exponent& a = monomials_[d][j];
      Exponent s = a;
      ++s[i];
      auto c = left ? monomial_product_coeff(mu_, gen, a) : monomial_product_coeff(mu_, a, gen);
      auto& slot = out[index_.at(d + 1).at(s)];
      slot = k.add(slot, k.mul(c, v[j]));
    }
    return out;
  }

  MuMatrix<F> mu_;
  std::size_t max_degree_;
  std::vector<std::vector<Exponent>> monomials_;
  std::vector<std::map<Exponent, std::size_t>> index_;
};

template <class F>
std::vector<GradedElement<F>> to_elements(const SkewPolyRing<F>& ring, const std::vector<SPoly<F>>& gs) {
  std::vector<GradedElement<F>> out;
  for (const auto& g : gs) {
    if (g.is_zero()) continue;  // the zero element generates nothing
    out.push_back(ring.to_element(g));
  }
  return out;
}

template <class F>
bool is_normal_mod(const MuMatrix<F>& mu, const SPoly<F>& g, const std::vector<SPoly<F>>& priors,
                   std::size_t max_degree) {
  if (g.is_zero()) return true;
  auto e = g.homogeneous_degree();
  if (!e) throw Error(ErrorKind::NotHomogeneous, "normality test needs a homogeneous element");
  if (*e + 1 > max_degree) throw Error(ErrorKind::DegreeOverflow, "normality test needs degree " + std::to_string(*e + 1));
  SkewPolyRing<F> ring(mu, *e + 1);
  std::vector<SPoly<F>> lower;
  for (const auto& p : priors) {
    auto d = p.homogeneous_degree();
    if (!p.is_zero() && !d) throw Error(ErrorKind::NotHomogeneous, "prior element is not homogeneous");
    if (d && *d <= *e + 1) lower.push_back(p);
  }
  return is_normal_mod(ring, ring.to_element(g), to_elements(ring, lower), *e + 1);
}

template <class F>
bool is_normalizing_sequence(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& gs, std::size_t max_degree) {
  for (std::size_t k = 0; k < gs.size(); ++k) {
    std::vector<SPoly<F>> priors(gs.begin(), gs.begin() + k);
    if (!is_normal_mod(mu, gs[k], priors, max_degree)) return false;
  }
  return true;
}

/// Hilbert function of S / <gs> in degrees 0..D.
template <class F>
std::vector<std::size_t> quotient_hilbert(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& gs,
                                          std::size_t max_degree) {
  for (const auto& g : gs)
    if (!g.is_zero() && !g.homogeneous_degree())
      throw Error(ErrorKind::NotHomogeneous, "quotient by a non-homogeneous element");
  SkewPolyRing<F> ring(mu, max_degree);
  std::vector<SPoly<F>> in_range;
  for (const auto& g : gs)
    if (!g.is_zero() && *g.homogeneous_degree() <= max_degree) in_range.push_back(g);
  return quotient_hilbert(ring, to_elements(ring, in_range), max_degree);
}

struct GkOptions {
  std::size_t window = 4;
  /// entries that must remain in the vanishing difference sequence
  std::size_t min_remaining = 2;
};

/// Estimated GK-dimension from a truncated Hilbert function: 0 if the
/// sequence ends in 0, otherwise the number m of finite differences of the
/// tail (last max(window, ceil(len/2)) entries) needed to reach all zeros.
/// nullopt means no stabilization (e.g. exponential growth).
inline std::optional<std::size_t> gk_estimate(const std::vector<std::size_t>& h, const GkOptions& opt = {}) {
  if (h.size() < 6) throw Error(ErrorKind::TooShort, "need at least 6 Hilbert function entries");
  if (h.back() == 0) return 0;
  const std::size_t len = std::max(opt.window, (h.size() + 1) / 2);
  const std::size_t tail = std::min(len, h.size());
  std::vector<long long> diff(h.end() - static_cast<std::ptrdiff_t>(tail), h.end());
  for (std::size_t m = 1; diff.size() > opt.min_remaining; ++m) {
    std::vector<long long> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
    diff = std::move(next);
    if (std::all_of(diff.begin(), diff.end(), [](long long x) { return x == 0; })) return m;
  }
  return std::nullopt;
}

enum class BpfKind { Free, NotFree, Inconclusive };

inline std::string_view to_string(BpfKind k) {
  switch (k) {
    case BpfKind::Free: return "Free";
    case BpfKind::NotFree: return "NotFree";
    case BpfKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

template <class F>
struct BpfVerdict {
  BpfKind kind = BpfKind::Inconclusive;
  std::size_t free_degree = 0;                // first d with dim (S/<Q>)_d = 0, when Free
  std::optional<ProjPoint<F>> witness;        // common zero, when NotFree
  std::vector<std::size_t> hilbert;           // quotient Hilbert function through D
  std::size_t truncation_degree = 0;
};

struct BpfOptions {
  /// Rational witness search over integer points with |coord| <= height.
  int rational_search_height = 4;
  /// Maximal number of points examined in a finite-field witness search.
  std::uint64_t point_budget = 10'000'000;
};

template <class F>
Value<F> evaluate_commutative(const F& k, const SPoly<F>& p, const std::vector<Value<F>>& pt) {
  auto total = k.zero();
  for (const auto& [e, c] : p.terms()) {
    auto t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = k.mul(t, k.pow(pt[i], e[i]));
    total = k.add(total, t);
  }
  return total;
}

namespace detail {

template <class F>
bool common_zero(const F& k, const std::vector<SPoly<F>>& qs, const std::vector<Value<F>>& pt) {
  for (const auto& q : qs)
    if (!k.is_zero(evaluate_commutative(k, q, pt))) return false;
  return true;
}

template <class F>
std::optional<ProjPoint<F>> find_base_point(const F& k, int n, const std::vector<SPoly<F>>& qs,
                                            const BpfOptions& opt) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (projective_space_size(k.modulus(), n) > opt.point_budget) return std::nullopt;
    std::optional<ProjPoint<F>> found;
    for_each_projective_point(k, n, [&](const std::vector<std::uint32_t>& v) {
      if (!found && common_zero(k, qs, v)) found = ProjPoint<F>{v};
    });
    return found;
  } else {
    // integer points of bounded height, normalized; lexicographic scan
    const int h = opt.rational_search_height;
    std::vector<int> c(n, -h);
    while (true) {
      bool nonzero = std::any_of(c.begin(), c.end(), [](int x) { return x != 0; });
      if (nonzero) {
        std::vector<Value<F>> v;
        for (int x : c) v.push_back(k.from_int(x));
        if (common_zero(k, qs, v)) return normalize_point(k, std::move(v));
      }
      int i = n - 1;
      while (i >= 0 && ++c[i] > h) c[i--] = -h;
      if (i < 0) return std::nullopt;
    }
  }
}

}  // namespace detail

/// Base-point freeness of a quadric system through degree D.
///
/// Free when the quotient S/<Q> vanishes in some degree <= D (it then stays
/// zero). NotFree only with a witness: in the commutative case (mu all ones)
/// a rational common zero of the quadrics; for the empty system every point
/// is a base point. Anything else is Inconclusive.
template <class F>
BpfVerdict<F> is_base_point_free(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& quadrics,
                                 std::size_t max_degree, const BpfOptions& opt = {}) {
  const F& k = mu.field();
  const int n = mu.size();
  BpfVerdict<F> v;
  v.truncation_degree = max_degree;
  v.hilbert = quotient_hilbert(mu, quadrics, max_degree);
  for (std::size_t d = 0; d < v.hilbert.size(); ++d) {
    if (v.hilbert[d] == 0) {
      v.kind = BpfKind::Free;
      v.free_degree = d;
      return v;
    }
  }
  std::vector<SPoly<F>> nonzero;
  for (const auto& q : quadrics)
    if (!q.is_zero()) nonzero.push_back(q);
  if (nonzero.empty() && n >= 1) {
    std::vector<Value<F>> e1(n, k.zero());
    e1[0] = k.one();
    v.kind = BpfKind::NotFree;
    v.witness = ProjPoint<F>{std::move(e1)};
    return v;
  }
  if (mu.is_all_ones()) {
    if (auto w = detail::find_base_point(k, n, nonzero, opt)) {
      v.kind = BpfKind::NotFree;
      v.witness = std::move(w);
      return v;
    }
  }
  v.kind = BpfKind::Inconclusive;
  return v;
}

}  // namespace skewcliff
