#pragma once

// Words and noncommutative polynomials in n degree-1 letters, presented
// graded algebras, and their degree-truncated Hilbert functions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skewcliff/field.hpp"
#include "skewcliff/linalg.hpp"

namespace skewcliff {

/// A word in the free algebra; letters are 0-based internally and printed
/// 1-based (x1..xn).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<int> letters) {
    for (int l : letters) letters_.push_back(static_cast<std::uint8_t>(l));
  }

  std::size_t degree() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<std::uint8_t>& letters() const { return letters_; }

  Word operator*(const Word& other) const {
    Word w = *this;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    return w;
  }

  // degree-lexicographic
  friend bool operator<(const Word& a, const Word& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.letters_ < b.letters_;
  }
  friend bool operator==(const Word&, const Word&) = default;

  std::string to_string(const char* letter = "x") const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += '*';
      s += letter + std::to_string(letters_[i] + 1);
    }
    return s;
  }

 private:
  std::vector<std::uint8_t> letters_;
};

inline Word word_mul(const Word& u, const Word& v) { return u * v; }

/// All words of length d in n letters, in deg-lex order.
inline std::vector<Word> all_words(int n, std::size_t d) {
  std::vector<Word> out;
  std::vector<std::uint8_t> cur(d, 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++cur[i] < n) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (d == 0) return out;
  }
}

template <class F>
class NcPoly {
 public:
  using value_type = Value<F>;
  using Terms = std::map<Word, value_type>;

  NcPoly() = default;
  explicit NcPoly(int n) : n_(n) {}

  static NcPoly monomial(const F& k, int n, const Word& w, const value_type& c) {
    NcPoly p(n);
    p.add_term(k, w, c);
    return p;
  }

  int num_letters() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const F& k, const Word& w, const value_type& c) {
    for (auto l : w.letters())
      if (l >= n_) throw Error(ErrorKind::ValidationError, "letter x" + std::to_string(l + 1) + " out of range");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      if (!k.is_zero(c)) terms_.emplace(w, c);
      return;
    }
    it->second = k.add(it->second, c);
    if (k.is_zero(it->second)) terms_.erase(it);
  }

  NcPoly plus(const F& k, const NcPoly& o) const {
    NcPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(k, w, c);
    return r;
  }
  NcPoly scaled(const F& k, const value_type& s) const {
    NcPoly r(n_);
    for (const auto& [w, c] : terms_) r.add_term(k, w, k.mul(c, s));
    return r;
  }
  NcPoly minus(const F& k, const NcPoly& o) const { return plus(k, o.scaled(k, k.neg(k.one()))); }
  NcPoly times(const F& k, const NcPoly& o) const {
    NcPoly r(n_);
    for (const auto& [u, a] : terms_)
      for (const auto& [v, b] : o.terms_) r.add_term(k, u * v, k.mul(a, b));
    return r;
  }

  /// Degree of the homogeneous polynomial, or nullopt when mixed/zero.
  std::optional<std::size_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::size_t d = terms_.begin()->first.degree();
    for (const auto& [w, c] : terms_)
      if (w.degree() != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  std::string to_string(const F& k, const char* letter = "x") const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      Rational q = k.to_rational(c);
      bool negative = q < 0;
      if (negative) q = -q;
      if (first) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      first = false;
      if (w.empty()) {
        s += rational_to_string(q);
      } else if (q == 1) {
        s += w.to_string(letter);
      } else {
        s += rational_to_string(q) + "*" + w.to_string(letter);
      }
    }
    return s;
  }

  friend bool operator==(const NcPoly&, const NcPoly&) = default;

 private:
  int n_ = 0;
  Terms terms_;
};

/// Default truncation degree: 8 for four generators, 10 for three or fewer.
inline int default_truncation_degree(int n) { return n >= 4 ? 8 : 10; }

struct TruncationLimits {
  /// Largest admissible n^d for a degree-d computation.
  std::uint64_t monomial_cap = 1048576;  // 4^10
};

inline void check_degree_cap(int n, std::size_t d, const TruncationLimits& lim) {
  std::uint64_t words = 1;
  for (std::size_t i = 0; i < d; ++i) {
    words *= static_cast<std::uint64_t>(std::max(n, 1));
    if (words > lim.monomial_cap) {
      throw Error(ErrorKind::DegreeOverflow, std::to_string(n) + "^" + std::to_string(d) +
                                                 " exceeds the monomial cap " + std::to_string(lim.monomial_cap));
    }
  }
}

template <class F>
class Presentation {
 public:
  Presentation(F field, int n, std::vector<NcPoly<F>> relations)
      : k_(std::move(field)), n_(n), relations_(std::move(relations)) {
    if (n_ < 1 || n_ > 255) throw Error(ErrorKind::ValidationError, "generator count must be in [1, 255]");
    for (const auto& r : relations_) {
      if (r.num_letters() != n_) throw Error(ErrorKind::ValidationError, "relation alphabet mismatch");
      auto d = r.homogeneous_degree();
      if (r.is_zero()) throw Error(ErrorKind::ValidationError, "zero relation");
      if (!d) throw Error(ErrorKind::NotHomogeneous, "relation " + r.to_string(k_) + " is not homogeneous");
      if (*d < 2) throw Error(ErrorKind::ValidationError, "relation " + r.to_string(k_) + " has degree < 2");
    }
  }

  const F& field() const { return k_; }
  int num_generators() const { return n_; }
  const std::vector<NcPoly<F>>& relations() const { return relations_; }

  bool is_quadratic() const {
    return std::all_of(relations_.begin(), relations_.end(),
                       [](const NcPoly<F>& r) { return *r.homogeneous_degree() == 2; });
  }

  Presentation quadratic_part() const {
    std::vector<NcPoly<F>> quad;
    for (const auto& r : relations_)
      if (*r.homogeneous_degree() == 2) quad.push_back(r);
    return Presentation(k_, n_, std::move(quad));
  }

 private:
  F k_;
  int n_;
  std::vector<NcPoly<F>> relations_;
};

/// The graded algebra A = T / <relations>, built degree by degree up to a
/// fixed truncation.
///
/// Degree d is realized as the cokernel of A_{d-e} (x) R_e -> A_{d-1} (x) A_1:
/// the ideal slice I_d equals I_{d-1} T_1 + sum_e T_{d-e} R_e, so only the
/// products b*f with b a standard basis element of A_{d-e} need to be
/// reduced. Every basis element of A_d is a standard word (a basis element
/// of A_{d-1} followed by one letter), and normal forms of arbitrary words
/// are computed one letter at a time.
template <class F>
class PresentedAlgebra {
 public:
  using field_type = F;
  using value_type = Value<F>;
  using Vec = std::vector<value_type>;

  PresentedAlgebra(const Presentation<F>& p, std::size_t max_degree)
      : k_(p.field()), n_(p.num_generators()), max_degree_(max_degree) {
    std::vector<std::vector<const NcPoly<F>*>> by_degree(max_degree + 1);
    for (const auto& r : p.relations()) {
      auto d = *r.homogeneous_degree();
      if (d <= max_degree) by_degree[d].push_back(&r);
    }
    basis_.push_back({Word{}});
    parent_.push_back({0});
    reducers_.emplace_back(k_, 1);  // placeholder for degree 0
    column_to_basis_.push_back({0});
    for (std::size_t d = 1; d <= max_degree; ++d) build_degree(d, by_degree);
    build_left_tables();
  }

  const F& field() const { return k_; }
  int num_generators() const { return n_; }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t dim(std::size_t d) const { return basis_.at(d).size(); }
  const std::vector<Word>& basis(std::size_t d) const { return basis_.at(d); }
  const Word& basis_word(std::size_t d, std::size_t j) const { return basis_.at(d).at(j); }

  std::vector<std::size_t> hilbert() const {
    std::vector<std::size_t> h;
    for (const auto& b : basis_) h.push_back(b.size());
    return h;
  }

  Vec unit(std::size_t d, std::size_t i) const {
    Vec v(dim(d), k_.zero());
    v[i] = k_.one();
    return v;
  }

  /// v * x_letter for v in A_d, returned in coordinates of A_{d+1}.
  Vec right_mul_gen(std::size_t d, const Vec& v, int letter) const {
    Vec t(dim(d) * n_, k_.zero());
    for (std::size_t j = 0; j < v.size(); ++j) t[j * n_ + letter] = v[j];
    return project(d + 1, std::move(t));
  }

  /// x_letter * v for v in A_d.
  Vec left_mul_gen(std::size_t d, const Vec& v, int letter) const {
    if (d + 1 > max_degree_) throw Error(ErrorKind::DegreeOverflow, "product beyond truncation degree");
    Vec out(dim(d + 1), k_.zero());
    const auto& table = left_[d][letter];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (k_.is_zero(v[j])) continue;
      const Vec& w = table[j];
      for (std::size_t i = 0; i < w.size(); ++i) out[i] = k_.add(out[i], k_.mul(v[j], w[i]));
    }
    return out;
  }

  Vec nf_word(const Word& w) const {
    if (w.degree() > max_degree_) throw Error(ErrorKind::DegreeOverflow, "word beyond truncation degree");
    Vec v = unit(0, 0);
    for (std::size_t i = 0; i < w.degree(); ++i) v = right_mul_gen(i, v, w[i]);
    return v;
  }

  /// Normal form of a homogeneous element in the basis of A_d.
  Vec nf(const NcPoly<F>& f) const {
    auto d = f.homogeneous_degree();
    if (!d) {
      if (f.is_zero()) return unit(0, 0);
      throw Error(ErrorKind::NotHomogeneous, "element is not homogeneous");
    }
    Vec out(dim(*d), k_.zero());
    for (const auto& [w, c] : f.terms()) {
      Vec v = nf_word(w);
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = k_.add(out[i], k_.mul(c, v[i]));
    }
    return out;
  }

 private:
  // Reduces a vector of A_{d-1} (x) A_1 and keeps the standard coordinates.
  Vec project(std::size_t d, Vec t) const {
    if (d > max_degree_) throw Error(ErrorKind::DegreeOverflow, "product beyond truncation degree");
    reducers_[d].reduce(t);
    Vec out(dim(d), k_.zero());
    const auto& cmap = column_to_basis_[d];
    for (std::size_t c = 0; c < t.size(); ++c)
      if (cmap[c] != kNone) out[cmap[c]] = t[c];
    return out;
  }

  void build_degree(std::size_t d, const std::vector<std::vector<const NcPoly<F>*>>& by_degree) {
    const std::size_t cols = basis_[d - 1].size() * n_;
    Echelon<F> ech(k_, cols);
    for (std::size_t e = 2; e <= d; ++e) {
      for (const NcPoly<F>* f : by_degree[e]) {
        for (std::size_t b = 0; b < basis_[d - e].size(); ++b) {
          Vec row(cols, k_.zero());
          for (const auto& [w, c] : f->terms()) {
            // b * w[0..e-2] lands in A_{d-1}; the last letter indexes the tensor slot.
            Vec v = unit(d - e, b);
            for (std::size_t i = 0; i + 1 < w.degree(); ++i) v = right_mul_gen(d - e + i, v, w[i]);
            const int last = w[w.degree() - 1];
            for (std::size_t j = 0; j < v.size(); ++j)
              row[j * n_ + last] = k_.add(row[j * n_ + last], k_.mul(c, v[j]));
          }
          ech.insert(std::move(row));
        }
      }
    }
    std::vector<Word> basis;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> cmap(cols, kNone);
    for (std::size_t c = 0; c < cols; ++c) {
      if (ech.is_pivot(c)) continue;
      cmap[c] = basis.size();
      parents.push_back(c / n_);
      basis.push_back(basis_[d - 1][c / n_] * Word{static_cast<int>(c % n_)});
    }
    basis_.push_back(std::move(basis));
    parent_.push_back(std::move(parents));
    reducers_.push_back(std::move(ech));
    column_to_basis_.push_back(std::move(cmap));
  }

  // left_[d][i][j] = x_i * (basis element j of A_d), for d < max_degree.
  // A standard word b = b' x_l gives x_i b = (x_i b') x_l.
  void build_left_tables() {
    left_.resize(max_degree_);
    for (std::size_t d = 0; d < max_degree_; ++d) {
      left_[d].resize(n_);
      for (int i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < dim(d); ++j) {
          if (d == 0) {
            left_[d][i].push_back(nf_word(Word{i}));
            continue;
          }
          const Word& b = basis_[d][j];
          const int last = b[b.degree() - 1];
          const std::size_t parent = parent_[d][j];
          left_[d][i].push_back(right_mul_gen(d, left_[d - 1][i][parent], last));
        }
      }
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  F k_;
  int n_;
  std::size_t max_degree_;
  std::vector<std::vector<Word>> basis_;
  std::vector<std::vector<std::size_t>> parent_;
  std::vector<std::vector<std::vector<Vec>>> left_;
  std::vector<Echelon<F>> reducers_;
  std::vector<std::vector<std::size_t>> column_to_basis_;
};

/// dim of the degree-d slice of the two-sided ideal generated by the relations.
template <class F>
std::uint64_t graded_ideal_dim(const Presentation<F>& p, std::size_t d, const TruncationLimits& lim = {}) {
  check_degree_cap(p.num_generators(), d, lim);
  PresentedAlgebra<F> a(p, d);
  std::uint64_t words = 1;
  for (std::size_t i = 0; i < d; ++i) words *= static_cast<std::uint64_t>(p.num_generators());
  return words - a.dim(d);
}

/// [dim A_0, ..., dim A_D].
template <class F>
std::vector<std::size_t> hilbert_function(const Presentation<F>& p, std::size_t max_degree,
                                          const TruncationLimits& lim = {}) {
  check_degree_cap(p.num_generators(), max_degree, lim);
  return PresentedAlgebra<F>(p, max_degree).hilbert();
}

template <class F>
bool ideal_member_up_to(const Presentation<F>& p, const NcPoly<F>& f, const TruncationLimits& lim = {}) {
  if (f.is_zero()) return true;
  auto d = f.homogeneous_degree();
  if (!d) throw Error(ErrorKind::NotHomogeneous, "membership test needs a homogeneous element");
  check_degree_cap(p.num_generators(), *d, lim);
  PresentedAlgebra<F> a(p, *d);
  auto v = a.nf(f);
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return p.field().is_zero(x); });
}

/// True iff the relations of degree > 2 are consequences of the quadratic
/// ones through degree D.
template <class F>
bool is_quadratic_up_to(const Presentation<F>& p, std::size_t max_degree, const TruncationLimits& lim = {}) {
  return hilbert_function(p, max_degree, lim) == hilbert_function(p.quadratic_part(), max_degree, lim);
}

/// binom(n-1+d, d) for d = 0..D: the Hilbert function of 1/(1-t)^n.
inline std::vector<std::size_t> polynomial_ring_hilbert(int n, std::size_t max_degree) {
  std::vector<std::size_t> h;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    // binom(n-1+d, d) computed incrementally
    std::uint64_t b = 1;
    for (std::size_t i = 1; i <= d; ++i) b = b * (static_cast<std::uint64_t>(n) - 1 + i) / i;
    h.push_back(static_cast<std::size_t>(n == 0 ? (d == 0 ? 1 : 0) : b));
  }
  return h;
}

}  // namespace skewcliff
