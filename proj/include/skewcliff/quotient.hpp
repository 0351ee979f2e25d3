#pragma once

// Graded two-sided ideals inside a graded "ambient" algebra (the skew
// polynomial ring, or a presented algebra), computed slice by slice.
//
// An ambient type A provides
//   field(), num_generators(), max_degree(), dim(d),
//   right_mul_gen(d, v, i), left_mul_gen(d, v, i), basis_word(d, j)
// where vectors are coordinates in the fixed basis of the degree-d slice and
// basis_word(d, j) is a word in the generators whose image is basis vector j.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <vector>

#include "skewcliff/freealg.hpp"
#include "skewcliff/linalg.hpp"

namespace skewcliff {

template <class F>
struct GradedElement {
  std::size_t degree = 0;
  std::vector<Value<F>> coords;
};

template <class A>
concept GradedAmbient = requires(const A& a, std::size_t d, const std::vector<Value<typename A::field_type>>& v) {
  { a.field() };
  { a.num_generators() } -> std::convertible_to<int>;
  { a.max_degree() } -> std::convertible_to<std::size_t>;
  { a.dim(d) } -> std::convertible_to<std::size_t>;
  { a.right_mul_gen(d, v, 0) };
  { a.left_mul_gen(d, v, 0) };
  { a.basis_word(d, d) } -> std::convertible_to<Word>;
};

template <class F>
bool all_zero(const F& k, const std::vector<Value<F>>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return k.is_zero(x); });
}

/// Left multiplication of a degree-`from` vector by a word.
template <GradedAmbient A>
std::vector<Value<typename A::field_type>> left_mul_word(const A& amb, const Word& w, std::size_t from,
                                                         std::vector<Value<typename A::field_type>> v) {
  std::size_t d = from;
  for (std::size_t i = w.degree(); i-- > 0;) v = amb.left_mul_gen(d++, v, w[i]);
  return v;
}

/// u * v for homogeneous elements of the ambient.
template <GradedAmbient A>
GradedElement<typename A::field_type> multiply(const A& amb, const GradedElement<typename A::field_type>& u,
                                               const GradedElement<typename A::field_type>& v) {
  const auto& k = amb.field();
  const std::size_t d = u.degree + v.degree;
  if (d > amb.max_degree()) throw Error(ErrorKind::DegreeOverflow, "product beyond truncation degree");
  std::vector<Value<typename A::field_type>> out(amb.dim(d), k.zero());
  for (std::size_t j = 0; j < u.coords.size(); ++j) {
    if (k.is_zero(u.coords[j])) continue;
    auto w = left_mul_word(amb, amb.basis_word(u.degree, j), v.degree, v.coords);
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = k.add(out[i], k.mul(u.coords[j], w[i]));
  }
  return {d, std::move(out)};
}

/// Slices I_0..I_D of the two-sided ideal generated by homogeneous elements,
/// via I_d = A_1 I_{d-1} + I_{d-1} A_1 + span(generators of degree d).
template <GradedAmbient A>
class IdealTower {
 public:
  using F = typename A::field_type;
  using Vec = std::vector<Value<F>>;

  IdealTower(const A& amb, const std::vector<GradedElement<F>>& gens, std::size_t max_degree)
      : amb_(&amb), max_degree_(max_degree) {
    if (max_degree > amb.max_degree()) throw Error(ErrorKind::DegreeOverflow, "ideal beyond ambient truncation");
    const int n = amb.num_generators();
    for (std::size_t d = 0; d <= max_degree; ++d) {
      Echelon<F> ech(amb.field(), amb.dim(d));
      std::vector<Vec> spanning;
      auto add = [&](Vec v) {
        if (ech.insert(v)) spanning.push_back(std::move(v));
      };
      if (d > 0) {
        for (const auto& r : spanning_[d - 1]) {
          for (int i = 0; i < n; ++i) {
            add(amb.right_mul_gen(d - 1, r, i));
            add(amb.left_mul_gen(d - 1, r, i));
          }
        }
      }
      for (const auto& g : gens)
        if (g.degree == d) add(g.coords);
      slices_.push_back(std::move(ech));
      spanning_.push_back(std::move(spanning));
    }
  }

  std::size_t max_degree() const { return max_degree_; }
  const Echelon<F>& slice(std::size_t d) const { return slices_.at(d); }
  const std::vector<Vec>& spanning(std::size_t d) const { return spanning_.at(d); }
  std::size_t ideal_dim(std::size_t d) const { return slices_.at(d).rank(); }
  std::size_t quotient_dim(std::size_t d) const { return amb_->dim(d) - ideal_dim(d); }

  std::vector<std::size_t> quotient_hilbert() const {
    std::vector<std::size_t> h;
    for (std::size_t d = 0; d <= max_degree_; ++d) h.push_back(quotient_dim(d));
    return h;
  }

 private:
  const A* amb_;
  std::size_t max_degree_;
  std::vector<Echelon<F>> slices_;
  std::vector<std::vector<Vec>> spanning_;
};

/// Two-sided normality of g in A / I for a prebuilt ideal tower reaching
/// degree deg g + 1, tested on generators:
/// g x_i in span{x_j g} + I_{e+1} and x_i g in span{g x_j} + I_{e+1}.
template <GradedAmbient A>
bool is_normal_in(const A& amb, const IdealTower<A>& tower, const GradedElement<typename A::field_type>& g) {
  using F = typename A::field_type;
  const std::size_t e = g.degree;
  if (e + 1 > tower.max_degree()) {
    throw Error(ErrorKind::DegreeOverflow, "normality test needs degree " + std::to_string(e + 1));
  }
  const int n = amb.num_generators();
  auto seeded = [&]() {
    Echelon<F> ech(amb.field(), amb.dim(e + 1));
    for (const auto& r : tower.spanning(e + 1)) ech.insert(r);
    return ech;
  };
  Echelon<F> left_span = seeded();   // span{x_j g} + I
  Echelon<F> right_span = seeded();  // span{g x_j} + I
  std::vector<std::vector<Value<F>>> gx, xg;
  for (int j = 0; j < n; ++j) {
    gx.push_back(amb.right_mul_gen(e, g.coords, j));
    xg.push_back(amb.left_mul_gen(e, g.coords, j));
    left_span.insert(xg.back());
    right_span.insert(gx.back());
  }
  for (int i = 0; i < n; ++i) {
    if (!left_span.contains(gx[i])) return false;
    if (!right_span.contains(xg[i])) return false;
  }
  return true;
}

template <GradedAmbient A>
bool is_normal_mod(const A& amb, const GradedElement<typename A::field_type>& g,
                   const std::vector<GradedElement<typename A::field_type>>& priors, std::size_t max_degree) {
  const std::size_t e = g.degree;
  if (e + 1 > max_degree || e + 1 > amb.max_degree()) {
    throw Error(ErrorKind::DegreeOverflow, "normality test needs degree " + std::to_string(e + 1));
  }
  return is_normal_in(amb, IdealTower<A>(amb, priors, e + 1), g);
}

template <GradedAmbient A>
bool is_normalizing_sequence(const A& amb, const std::vector<GradedElement<typename A::field_type>>& gs,
                             std::size_t max_degree) {
  std::vector<GradedElement<typename A::field_type>> priors;
  for (const auto& g : gs) {
    if (!is_normal_mod(amb, g, priors, max_degree)) return false;
    priors.push_back(g);
  }
  return true;
}

template <GradedAmbient A>
std::vector<std::size_t> quotient_hilbert(const A& amb, const std::vector<GradedElement<typename A::field_type>>& gs,
                                          std::size_t max_degree) {
  return IdealTower<A>(amb, gs, max_degree).quotient_hilbert();
}

/// Whether left multiplication by f is injective on every slice B_d of
/// B = A / <priors> with d + deg f <= D.
template <GradedAmbient A>
bool left_mul_injective(const A& amb, const GradedElement<typename A::field_type>& f,
                        const std::vector<GradedElement<typename A::field_type>>& priors, std::size_t max_degree) {
  using F = typename A::field_type;
  if (f.degree > max_degree) return true;
  IdealTower<A> tower(amb, priors, max_degree);
  for (std::size_t d = 0; d + f.degree <= max_degree; ++d) {
    Echelon<F> target(amb.field(), amb.dim(d + f.degree));
    for (const auto& r : tower.spanning(d + f.degree)) target.insert(r);
    const auto& src = tower.slice(d);
    for (std::size_t c : src.non_pivot_columns()) {
      std::vector<Value<F>> unit(amb.dim(d), amb.field().zero());
      unit[c] = amb.field().one();
      auto prod = multiply(amb, f, GradedElement<F>{d, std::move(unit)});
      if (!target.insert(std::move(prod.coords))) return false;
    }
  }
  return true;
}

}  // namespace skewcliff
