#pragma once

// Geometry of quadratic presentations over finite fields: the bilinear zero
// locus Z of truncated point modules of length 3, the determinant curve of a
// square system with its singular points, and rank-stratum point counts in
// the span of the relation matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "skewcliff/field.hpp"
#include "skewcliff/freealg.hpp"
#include "skewcliff/linalg.hpp"
#include "skewcliff/projective.hpp"
#include "skewcliff/skewpoly.hpp"

namespace skewcliff {

/// One n x n matrix per quadratic relation: (C^k)_ij is the coefficient of
/// x_i x_j in f_k.
template <class F>
struct BilinearSystem {
  F field;
  int n = 0;
  std::vector<DenseMatrix<F>> forms;

  std::size_t num_relations() const { return forms.size(); }
};

template <class F>
BilinearSystem<F> bilinearize(const Presentation<F>& p) {
  const F& k = p.field();
  const int n = p.num_generators();
  BilinearSystem<F> bs{k, n, {}};
  for (const auto& f : p.relations()) {
    if (f.homogeneous_degree() != std::optional<std::size_t>(2))
      throw Error(ErrorKind::NotQuadratic, "relation " + f.to_string(k) + " is not quadratic");
    DenseMatrix<F> c = DenseMatrix<F>::zeros(k, n, n);
    for (const auto& [w, a] : f.terms()) c(w[0], w[1]) = a;
    bs.forms.push_back(std::move(c));
  }
  return bs;
}

/// f_k(p, r) = sum_ij (C^k)_ij p_i r_j for every k.
template <class F>
std::vector<Value<F>> evaluate_bilinear(const BilinearSystem<F>& bs, const std::vector<Value<F>>& p,
                                        const std::vector<Value<F>>& r) {
  const F& k = bs.field;
  std::vector<Value<F>> out;
  for (const auto& c : bs.forms) {
    auto s = k.zero();
    for (int i = 0; i < bs.n; ++i) {
      if (k.is_zero(p[i])) continue;
      for (int j = 0; j < bs.n; ++j) s = k.add(s, k.mul(k.mul(c(i, j), p[i]), r[j]));
    }
    out.push_back(s);
  }
  return out;
}

template <class F>
bool in_zero_locus(const BilinearSystem<F>& bs, const std::vector<Value<F>>& p, const std::vector<Value<F>>& r) {
  auto v = evaluate_bilinear(bs, p, r);
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return bs.field.is_zero(x); });
}

/// Builds the module k v0 + k v1 + k v2 with v0 x_i = p_i v1, v1 x_i = r_i v2,
/// v2 x_i = 0 (right action, row vectors) and checks that every relation
/// acts as zero.
template <class F>
bool verify_truncated_module(const BilinearSystem<F>& bs, const ProjPoint<F>& p, const ProjPoint<F>& r) {
  const F& k = bs.field;
  const int n = bs.n;
  if (p.coords.size() != static_cast<std::size_t>(n) || r.coords.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::WrongDimensions, "point dimension differs from generator count");
  std::vector<DenseMatrix<F>> act;
  for (int i = 0; i < n; ++i) {
    DenseMatrix<F> x = DenseMatrix<F>::zeros(k, 3, 3);
    x(0, 1) = p.coords[i];
    x(1, 2) = r.coords[i];
    act.push_back(std::move(x));
  }
  for (const auto& c : bs.forms) {
    DenseMatrix<F> total = DenseMatrix<F>::zeros(k, 3, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (k.is_zero(c(i, j))) continue;
        auto prod = matmul(k, act[i], act[j]);
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b) total(a, b) = k.add(total(a, b), k.mul(c(i, j), prod(a, b)));
      }
    if (!is_zero_matrix(k, total)) return false;
  }
  return true;
}

/// The point with index `idx` in the order of for_each_projective_point.
inline std::vector<std::uint32_t> projective_point_at(std::uint32_t q, int n, std::uint64_t idx) {
  std::vector<std::uint32_t> v(n, 0);
  for (int lead = 0; lead < n; ++lead) {
    std::uint64_t block = 1;
    for (int i = lead + 1; i < n; ++i) block *= q;
    if (idx < block) {
      v[lead] = 1;
      for (int i = n - 1; i > lead; --i) {
        v[i] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
      }
      return v;
    }
    idx -= block;
  }
  throw Error(ErrorKind::ValidationError, "projective point index out of range");
}

/// Visits points [begin, end) of P^{n-1}(F_q) in enumeration order. The
/// callback receives the coordinates and the smallest position that changed
/// since the previous call (-1 on the first call and whenever the leading
/// position moves). Every position from that index on moved by +1 mod q.
template <class Fn>
void for_each_projective_point_in(std::uint32_t q, int n, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  if (begin >= end) return;
  auto v = projective_point_at(q, n, begin);
  int lead = 0;
  while (v[lead] == 0) ++lead;
  int changed = -1;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    fn(static_cast<const std::vector<std::uint32_t>&>(v), changed);
    int i = n - 1;
    while (i > lead) {
      if (++v[i] < q) break;
      v[i] = 0;
      --i;
    }
    if (i == lead) {
      if (lead + 1 >= n) break;
      std::fill(v.begin(), v.end(), 0u);
      v[++lead] = 1;
      changed = -1;
    } else {
      changed = i;
    }
  }
}

/// Splits [0, total) into `threads` contiguous ranges and runs fn(begin, end,
/// slot) on each; slot results are merged by the caller in slot order.
template <class Fn>
void run_partitioned(std::uint64_t total, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || total < 1024) {
    fn(std::uint64_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min(total, chunk * t), e = std::min(total, chunk * (t + 1));
    pool.emplace_back([&fn, b, e, t] { fn(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

struct EnumerationOptions {
  std::uint64_t point_budget = 10'000'000;
  int threads = 1;
};

template <class F>
struct ZLocus {
  std::vector<std::pair<ProjPoint<F>, ProjPoint<F>>> pairs;
  FieldSpec field;
  bool exhaustive = false;
  std::uint64_t points_visited = 0;
};

/// All (p, r) in P^{n-1}(F_q) x P^{n-1}(F_q) killed by every bilinear form.
inline ZLocus<PrimeField> enumerate_Z(const BilinearSystem<PrimeField>& bs, const EnumerationOptions& opt = {}) {
  const PrimeField& k = bs.field;
  const std::uint32_t q = k.modulus();
  const int n = bs.n;
  const std::uint64_t total = projective_space_size(q, n);
  if (total > opt.point_budget)
    throw Error(ErrorKind::BudgetExceeded, "P^" + std::to_string(n - 1) + "(F_" + std::to_string(q) + ") has " +
                                               std::to_string(total) + " points, budget " +
                                               std::to_string(opt.point_budget));
  const std::size_t m = bs.forms.size();
  const int slots = std::max(1, opt.threads);
  std::vector<std::vector<std::pair<ProjPoint<PrimeField>, ProjPoint<PrimeField>>>> found(slots);
  std::vector<std::uint64_t> visited(slots, 0);
  run_partitioned(total, slots, [&](std::uint64_t b, std::uint64_t e, int slot) {
    for_each_projective_point_in(q, n, b, e, [&](const std::vector<std::uint32_t>& p, int) {
      ++visited[slot];
      DenseMatrix<PrimeField> mp = DenseMatrix<PrimeField>::zeros(k, m, n);
      for (std::size_t f = 0; f < m; ++f)
        for (int j = 0; j < n; ++j) {
          std::uint32_t s = 0;
          for (int i = 0; i < n; ++i)
            if (p[i]) s = k.add(s, k.mul(bs.forms[f](i, j), p[i]));
          mp(f, j) = s;
        }
      auto ns = null_space(mp, k);
      if (ns.empty()) return;
      ProjPoint<PrimeField> pp{p};
      // every point of the projectivized null space
      for_each_projective_point(k, static_cast<int>(ns.size()), [&](const std::vector<std::uint32_t>& c) {
        std::vector<std::uint32_t> r(n, 0);
        for (std::size_t t = 0; t < ns.size(); ++t)
          if (c[t])
            for (int j = 0; j < n; ++j) r[j] = k.add(r[j], k.mul(c[t], ns[t][j]));
        found[slot].emplace_back(pp, normalize_point(k, std::move(r)));
      });
    });
  });
  ZLocus<PrimeField> z;
  z.field = k.spec();
  z.exhaustive = true;
  for (int s = 0; s < slots; ++s) {
    z.points_visited += visited[s];
    for (auto& pr : found[s]) z.pairs.push_back(std::move(pr));
  }
  if (z.points_visited != total)
    throw Error(ErrorKind::ValidationError, "enumerator visited " + std::to_string(z.points_visited) +
                                                " points, expected " + std::to_string(total));
  std::sort(z.pairs.begin(), z.pairs.end());
  return z;
}

template <class F>
struct GraphReport {
  bool is_graph = false;
  std::vector<std::pair<ProjPoint<F>, ProjPoint<F>>> sigma_pairs;
};

/// Whether Z is the graph of a bijection of its first-coordinate set.
template <class F>
GraphReport<F> graph_structure(const ZLocus<F>& z) {
  if (!z.exhaustive) throw Error(ErrorKind::ValidationError, "graph structure needs an exhaustive Z");
  GraphReport<F> g;
  std::map<ProjPoint<F>, std::size_t> first_count;
  std::set<ProjPoint<F>> firsts, seconds;
  for (const auto& [p, r] : z.pairs) {
    ++first_count[p];
    firsts.insert(p);
    seconds.insert(r);
  }
  g.is_graph = firsts == seconds &&
               std::all_of(first_count.begin(), first_count.end(), [](const auto& e) { return e.second == 1; });
  if (g.is_graph) g.sigma_pairs = z.pairs;
  return g;
}

/// Projective lines all of whose q + 1 rational points lie in `pts`, each
/// given by its sorted point list. A finite Z has none once q + 1 exceeds
/// its degree.
inline std::vector<std::vector<ProjPoint<PrimeField>>> rational_lines_in(const PrimeField& k,
                                                                         const std::set<ProjPoint<PrimeField>>& pts) {
  std::set<std::vector<ProjPoint<PrimeField>>> found;
  std::vector<ProjPoint<PrimeField>> v(pts.begin(), pts.end());
  const std::uint32_t q = k.modulus();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      std::vector<ProjPoint<PrimeField>> line{v[j]};
      bool full = true;
      for (std::uint32_t s = 0; s < q && full; ++s) {
        std::vector<std::uint32_t> w(v[i].coords.size());
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = k.add(v[i].coords[c], k.mul(s, v[j].coords[c]));
        auto pt = normalize_point(k, std::move(w));
        full = pts.count(pt) > 0;
        line.push_back(std::move(pt));
      }
      if (!full) continue;
      std::sort(line.begin(), line.end());
      found.insert(std::move(line));
    }
  }
  return {found.begin(), found.end()};
}

/// Commutative polynomial in n variables.
template <class F>
class CommPoly {
 public:
  using value_type = Value<F>;
  using Terms = std::map<Exponent, value_type>;

  CommPoly() = default;
  explicit CommPoly(int n) : n_(n) {}

  static CommPoly constant(const F& k, int n, const value_type& c) {
    CommPoly p(n);
    p.add_term(k, Exponent(n, 0), c);
    return p;
  }
  static CommPoly variable(const F& k, int n, int i) {
    Exponent e(n, 0);
    e[i] = 1;
    CommPoly p(n);
    p.add_term(k, e, k.one());
    return p;
  }

  int num_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const F& k, const Exponent& e, const value_type& c) {
    if (k.is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (fresh) return;
    it->second = k.add(it->second, c);
    if (k.is_zero(it->second)) terms_.erase(it);
  }

  CommPoly plus(const F& k, const CommPoly& o) const {
    CommPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(k, e, c);
    return out;
  }
  CommPoly scaled(const F& k, const value_type& s) const {
    CommPoly out(n_);
    for (const auto& [e, c] : terms_) out.add_term(k, e, k.mul(c, s));
    return out;
  }
  CommPoly times(const F& k, const CommPoly& o) const {
    CommPoly out(n_);
    for (const auto& [a, ca] : terms_)
      for (const auto& [b, cb] : o.terms_) {
        Exponent s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = static_cast<std::uint16_t>(a[i] + b[i]);
        out.add_term(k, s, k.mul(ca, cb));
      }
    return out;
  }
  CommPoly derivative(const F& k, int i) const {
    CommPoly out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      out.add_term(k, d, k.mul(c, k.from_int(e[i])));
    }
    return out;
  }
  value_type evaluate(const F& k, const std::vector<value_type>& x) const {
    auto total = k.zero();
    for (const auto& [e, c] : terms_) {
      auto t = c;
      for (int i = 0; i < n_; ++i)
        if (e[i]) t = k.mul(t, k.pow(x[i], e[i]));
      total = k.add(total, t);
    }
    return total;
  }
  /// Sum of the terms of total degree d.
  CommPoly homogeneous_part(std::size_t d) const {
    CommPoly out(n_);
    for (const auto& [e, c] : terms_)
      if (exponent_degree(e) == d) out.terms_.emplace(e, c);
    return out;
  }
  std::optional<std::size_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::size_t d = exponent_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (exponent_degree(e) != d) return std::nullopt;
    return d;
  }

  std::string to_string(const F& k, const char* var = "p") const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto c = k.to_string(it->second);
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      std::string mono;
      for (int i = 0; i < n_; ++i) {
        if (it->first[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var + std::to_string(i + 1);
        if (it->first[i] > 1) mono += "^" + std::to_string(it->first[i]);
      }
      if (mono.empty()) {
        s += c;
      } else {
        s += (c == "1" ? "" : c + "*") + mono;
      }
    }
    return s;
  }

  friend bool operator==(const CommPoly&, const CommPoly&) = default;

 private:
  int n_ = 0;
  Terms terms_;
};

/// det of the n x n matrix of linear forms M(p)_kj = sum_i (C^k)_ij p_i.
template <class F>
CommPoly<F> point_scheme_det(const BilinearSystem<F>& bs) {
  const F& k = bs.field;
  const int n = bs.n;
  if (bs.forms.size() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::NotSquare, "determinant needs as many relations as generators");
  std::vector<std::vector<CommPoly<F>>> lin(n, std::vector<CommPoly<F>>(n, CommPoly<F>(n)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) lin[r][j] = lin[r][j].plus(k, CommPoly<F>::variable(k, n, i).scaled(k, bs.forms[r](i, j)));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CommPoly<F> det(n);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    CommPoly<F> term = CommPoly<F>::constant(k, n, inversions % 2 ? k.neg(k.one()) : k.one());
    for (int r = 0; r < n && !term.is_zero(); ++r) term = term.times(k, lin[r][perm[r]]);
    det = det.plus(k, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Points of P^{n-1}(F_p) where the polynomial and all its partial
/// derivatives vanish.
inline std::vector<ProjPoint<PrimeField>> singular_points(const CommPoly<PrimeField>& f, const PrimeField& k) {
  if (f.is_zero()) throw Error(ErrorKind::ValidationError, "the zero polynomial has no singular locus");
  const int n = f.num_vars();
  std::vector<CommPoly<PrimeField>> grad;
  for (int i = 0; i < n; ++i) grad.push_back(f.derivative(k, i));
  std::vector<ProjPoint<PrimeField>> out;
  for_each_projective_point(k, n, [&](const std::vector<std::uint32_t>& v) {
    if (!k.is_zero(f.evaluate(k, v))) return;
    for (const auto& g : grad)
      if (!k.is_zero(g.evaluate(k, v))) return;
    out.push_back(ProjPoint<PrimeField>{v});
  });
  return out;
}

enum class Singularity { Node, Cusp, Other };

inline std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::Node: return "Node";
    case Singularity::Cusp: return "Cusp";
    case Singularity::Other: return "Other";
  }
  return "?";
}

/// Local expansion of a plane curve at a point: the polynomial in the two
/// affine coordinates centred at pt, in the chart where pt's first nonzero
/// coordinate is 1.
template <class F>
CommPoly<F> local_expansion(const F& k, const CommPoly<F>& f, const ProjPoint<F>& pt) {
  const int n = f.num_vars();
  if (n != 3 || pt.coords.size() != 3) throw Error(ErrorKind::WrongDimensions, "plane curves only");
  const auto pn = normalize_point(k, pt.coords);
  int chart = 0;
  while (k.is_zero(pn.coords[chart])) ++chart;
  // substitute x_chart = 1, x_j = pt_j + t_j for the two other coordinates
  std::vector<CommPoly<F>> subst;
  int t = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == chart) {
      subst.push_back(CommPoly<F>::constant(k, 2, k.one()));
    } else {
      subst.push_back(CommPoly<F>::constant(k, 2, pn.coords[i]).plus(k, CommPoly<F>::variable(k, 2, t++)));
    }
  }
  CommPoly<F> out(2);
  for (const auto& [e, c] : f.terms()) {
    CommPoly<F> term = CommPoly<F>::constant(k, 2, c);
    for (int i = 0; i < 3; ++i)
      for (int r = 0; r < e[i]; ++r) term = term.times(k, subst[i]);
    out = out.plus(k, term);
  }
  return out;
}

/// Tangent-cone type of a singular point of a plane curve: Node when the
/// quadratic part a t1^2 + b t1 t2 + c t2^2 has b^2 - 4ac != 0, Cusp when it
/// is nonzero with vanishing discriminant, Other when it is zero.
template <class F>
Singularity classify_singularity(const F& k, const CommPoly<F>& f, const ProjPoint<F>& pt) {
  auto g = local_expansion(k, f, pt);
  if (!g.homogeneous_part(0).is_zero()) throw Error(ErrorKind::NotSingular, "point is not on the curve");
  if (!g.homogeneous_part(1).is_zero()) throw Error(ErrorKind::NotSingular, "point is a smooth point of the curve");
  auto q = g.homogeneous_part(2);
  if (q.is_zero()) return Singularity::Other;
  auto coeff = [&](int a, int b) {
    auto it = q.terms().find(Exponent{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)});
    return it == q.terms().end() ? k.zero() : it->second;
  };
  const auto a = coeff(2, 0), b = coeff(1, 1), c = coeff(0, 2);
  const auto disc = k.sub(k.mul(b, b), k.mul(k.from_int(4), k.mul(a, c)));
  return k.is_zero(disc) ? Singularity::Cusp : Singularity::Node;
}

enum class CurveType { Nodal, Cuspidal, NoRationalSingularity, Reducible, WholePlane, Other };

inline std::string_view to_string(CurveType c) {
  switch (c) {
    case CurveType::Nodal: return "NodalCubic";
    case CurveType::Cuspidal: return "CuspidalCubic";
    case CurveType::NoRationalSingularity: return "NoRationalSingularity";
    case CurveType::Reducible: return "Reducible";
    case CurveType::WholePlane: return "WholePlane";
    case CurveType::Other: return "Other";
  }
  return "?";
}

struct CurveReport {
  CommPoly<PrimeField> cubic;
  std::vector<ProjPoint<PrimeField>> singular;
  std::vector<Singularity> kinds;
  std::optional<std::vector<std::uint32_t>> linear_component;  // a line (a:b:c) contained in the curve
  CurveType type = CurveType::Other;
};

/// A line a p1 + b p2 + c p3 = 0 whose rational points all lie on the curve.
/// For p + 1 > deg f this means the line is a component.
inline std::optional<std::vector<std::uint32_t>> find_linear_component(const CommPoly<PrimeField>& f,
                                                                       const PrimeField& k) {
  std::vector<ProjPoint<PrimeField>> zeros;
  for_each_projective_point(k, 3, [&](const std::vector<std::uint32_t>& v) {
    if (k.is_zero(f.evaluate(k, v))) zeros.push_back({v});
  });
  const std::size_t need = k.modulus() + 1;
  std::optional<std::vector<std::uint32_t>> found;
  for_each_projective_point(k, 3, [&](const std::vector<std::uint32_t>& l) {
    if (found) return;
    std::size_t on = 0;
    for (const auto& z : zeros) {
      std::uint32_t s = 0;
      for (int i = 0; i < 3; ++i) s = k.add(s, k.mul(l[i], z.coords[i]));
      if (s == 0) ++on;
    }
    if (on == need) found = l;
  });
  return found;
}

/// Nodal / cuspidal cubic recognition over F_p: exactly one rational
/// singular point of the given type and no rational linear component. An
/// irreducible singular cubic has a unique singular point, which is then
/// rational.
inline CurveReport classify_curve(const CommPoly<PrimeField>& f, const PrimeField& k) {
  CurveReport rep;
  rep.cubic = f;
  if (f.is_zero()) {
    rep.type = CurveType::WholePlane;
    return rep;
  }
  if (f.num_vars() != 3 || f.homogeneous_degree() != std::optional<std::size_t>(3)) {
    rep.type = CurveType::Other;
    return rep;
  }
  rep.singular = singular_points(f, k);
  for (const auto& s : rep.singular) rep.kinds.push_back(classify_singularity(k, f, s));
  if (k.modulus() + 1 > 3) rep.linear_component = find_linear_component(f, k);
  if (rep.linear_component || rep.singular.size() > 1) {
    rep.type = CurveType::Reducible;
  } else if (rep.singular.empty()) {
    rep.type = CurveType::NoRationalSingularity;
  } else if (rep.kinds[0] == Singularity::Node) {
    rep.type = CurveType::Nodal;
  } else if (rep.kinds[0] == Singularity::Cusp) {
    rep.type = CurveType::Cuspidal;
  } else {
    rep.type = CurveType::Other;
  }
  return rep;
}

/// The relation matrices of a quadratic presentation with 4 generators and
/// 6 relations, as elements of M(4, k).
template <class F>
std::vector<DenseMatrix<F>> relation_span_matrices(const Presentation<F>& p) {
  if (p.num_generators() != 4 || p.relations().size() != 6)
    throw Error(ErrorKind::WrongDimensions, "expected 4 generators and 6 relations");
  return bilinearize(p).forms;
}

namespace detail {

/// rank(m) <= r for a small square matrix over F_q, entries in [0, q).
template <std::size_t N>
bool rank_at_most(std::array<std::uint32_t, N * N> m, std::size_t rows, std::size_t cols, int r, std::uint64_t q,
                  const std::vector<std::uint32_t>& inv) {
  int rank = 0;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows; ++c) {
    std::size_t piv = top;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (++rank > r) return false;
    if (piv != top)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[top * cols + j]);
    const std::uint64_t s = inv[m[top * cols + c]];
    for (std::size_t i = top + 1; i < rows; ++i) {
      const std::uint32_t a = m[i * cols + c];
      if (!a) continue;
      const std::uint64_t f = a * s % q;
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = static_cast<std::uint32_t>((m[i * cols + j] + (q - f) * m[top * cols + j]) % q);
    }
    ++top;
  }
  return true;
}

}  // namespace detail

struct RankCount {
  std::uint64_t count = 0;
  std::uint64_t points_visited = 0;
};

/// Number of points (c_1 : ... : c_m) of P^{m-1}(F_q) with
/// rank(sum_k c_k C^k) <= r. The matrix is updated incrementally along the
/// enumeration: each step adds the suffix sum of the basis matrices from the
/// changed position on.
inline RankCount rank_leq_count(const std::vector<DenseMatrix<PrimeField>>& delta, int r, const PrimeField& k,
                                const EnumerationOptions& opt = {}) {
  if (delta.empty()) return {};
  const std::size_t rows = delta[0].rows(), cols = delta[0].cols();
  constexpr std::size_t kMax = 4;
  if (rows > kMax || cols > kMax) throw Error(ErrorKind::WrongDimensions, "matrices larger than 4 x 4");
  for (const auto& d : delta)
    if (d.rows() != rows || d.cols() != cols) throw Error(ErrorKind::WrongDimensions, "matrix sizes differ");
  const std::uint32_t q = k.modulus();
  const int m = static_cast<int>(delta.size());
  {
    Echelon<PrimeField> ind(k, rows * cols);
    for (const auto& d : delta) {
      std::vector<std::uint32_t> v(rows * cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) v[i * cols + j] = d(i, j);
      if (!ind.insert(v)) throw Error(ErrorKind::ValidationError, "the matrices are linearly dependent");
    }
  }
  const std::uint64_t total = projective_space_size(q, m);
  if (total > opt.point_budget)
    throw Error(ErrorKind::BudgetExceeded, "P^" + std::to_string(m - 1) + "(F_" + std::to_string(q) + ") has " +
                                               std::to_string(total) + " points, budget " +
                                               std::to_string(opt.point_budget));
  using Flat = std::array<std::uint32_t, kMax * kMax>;
  std::vector<Flat> basis(m, Flat{}), suffix(m + 1, Flat{});
  for (int t = 0; t < m; ++t)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) basis[t][i * cols + j] = delta[t](i, j);
  for (int t = m - 1; t >= 0; --t)
    for (std::size_t e = 0; e < rows * cols; ++e) suffix[t][e] = (suffix[t + 1][e] + basis[t][e]) % q;
  std::vector<std::uint32_t> inv(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) inv[a] = k.inv(a);

  const int slots = std::max(1, opt.threads);
  std::vector<RankCount> partial(slots);
  run_partitioned(total, slots, [&](std::uint64_t b, std::uint64_t e, int slot) {
    Flat cur{};
    RankCount rc;
    for_each_projective_point_in(q, m, b, e, [&](const std::vector<std::uint32_t>& c, int changed) {
      if (changed < 0) {
        cur.fill(0);
        for (int t = 0; t < m; ++t)
          if (c[t])
            for (std::size_t x = 0; x < rows * cols; ++x)
              cur[x] = static_cast<std::uint32_t>((cur[x] + static_cast<std::uint64_t>(c[t]) * basis[t][x]) % q);
      } else {
        const Flat& s = suffix[changed];
        for (std::size_t x = 0; x < rows * cols; ++x) {
          std::uint32_t v = cur[x] + s[x];
          cur[x] = v >= q ? v - q : v;
        }
      }
      ++rc.points_visited;
      if (detail::rank_at_most<kMax>(cur, rows, cols, r, q, inv)) ++rc.count;
    });
    partial[slot] = rc;
  });
  RankCount out;
  for (const auto& p : partial) {
    out.count += p.count;
    out.points_visited += p.points_visited;
  }
  return out;
}

/// Growth exponent round(log(c2 / c1) / log(q2 / q1)) of point counts.
inline long dimension_estimate(std::uint64_t count_q1, std::uint64_t q1, std::uint64_t count_q2, std::uint64_t q2) {
  if (count_q1 == 0 || count_q2 == 0) throw Error(ErrorKind::ZeroCount, "a point count is zero; no estimate");
  if (q1 >= q2) throw Error(ErrorKind::BadParams, "need q1 < q2");
  return std::lround(std::log(static_cast<double>(count_q2) / static_cast<double>(count_q1)) /
                     std::log(static_cast<double>(q2) / static_cast<double>(q1)));
}

}  // namespace skewcliff
