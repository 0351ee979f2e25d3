#pragma once

// Complete-intersection checks for a sequence f_1..f_n of homogeneous
// elements: regular sequence, finite-dimensional quotient, and the drop of
// GK-dimension by one at each stage.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewcliff/error.hpp"
#include "skewcliff/freealg.hpp"
#include "skewcliff/quotient.hpp"
#include "skewcliff/skewpoly.hpp"

namespace skewcliff {

enum class Tri { Yes, No, Inconclusive };

inline std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CiOptions {
  /// Upper bound on sum over d <= D of dim A_d times |F|; beyond it every
  /// criterion is reported Inconclusive.
  std::size_t work_budget = 5'000'000;
  GkOptions gk;
};

struct GkStage {
  std::size_t k = 0;
  std::optional<std::size_t> estimate;
  std::size_t expected = 0;
  std::vector<std::size_t> hilbert;
};

struct CiReport {
  Tri regular_sequence = Tri::Inconclusive;
  Tri finite_dim = Tri::Inconclusive;
  Tri gk_drops_ok = Tri::Inconclusive;
  std::vector<GkStage> gk_drops;
  bool consistent = true;
  std::size_t truncation_degree = 0;
  std::vector<std::size_t> quotient_hilbert;
  std::vector<std::string> notes;
};

namespace detail {

template <GradedAmbient A>
bool within_budget(const A& amb, std::size_t count, std::size_t max_degree, const CiOptions& opt) {
  std::size_t total = 0;
  for (std::size_t d = 0; d <= max_degree; ++d) total += amb.dim(d);
  return total * std::max<std::size_t>(count, 1) <= opt.work_budget;
}

inline bool consistent(std::initializer_list<Tri> verdicts) {
  bool yes = false, no = false;
  for (Tri t : verdicts) {
    yes |= t == Tri::Yes;
    no |= t == Tri::No;
  }
  return !(yes && no);
}

}  // namespace detail

/// Regular-sequence test up to degree D: each f_{k+1} must be normal modulo
/// the earlier elements, and left multiplication by it must be injective on
/// A / <f_1..f_k> in every degree d with d + deg f_{k+1} <= D.
template <GradedAmbient A>
Tri is_regular_sequence_up_to(const A& amb, const std::vector<GradedElement<typename A::field_type>>& fs,
                              std::size_t max_degree, const CiOptions& opt = {}) {
  if (!detail::within_budget(amb, fs.size(), max_degree, opt)) return Tri::Inconclusive;
  if (!is_normalizing_sequence(amb, fs, max_degree))
    throw Error(ErrorKind::NotNormalizing, "sequence is not normalizing");
  std::vector<GradedElement<typename A::field_type>> priors;
  for (const auto& f : fs) {
    if (!left_mul_injective(amb, f, priors, max_degree)) return Tri::No;
    priors.push_back(f);
  }
  return Tri::Yes;
}

template <class F>
Tri is_regular_sequence_up_to(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& fs, std::size_t max_degree,
                              const CiOptions& opt = {}) {
  SkewPolyRing<F> ring(mu, max_degree);
  return is_regular_sequence_up_to(ring, to_elements(ring, fs), max_degree, opt);
}

/// All three criteria for F in the ambient A, whose GK-dimension is taken to
/// be its number of generators.
template <GradedAmbient A>
CiReport ci_report(const A& amb, const std::vector<GradedElement<typename A::field_type>>& fs, std::size_t max_degree,
                   const CiOptions& opt = {}) {
  const std::size_t n = static_cast<std::size_t>(amb.num_generators());
  if (fs.size() != n)
    throw Error(ErrorKind::BadParams, "need exactly " + std::to_string(n) + " elements, got " + std::to_string(fs.size()));
  if (max_degree < 5 || max_degree > amb.max_degree())
    throw Error(ErrorKind::DegreeOverflow, "truncation degree must lie in [5, " + std::to_string(amb.max_degree()) + "]");
  CiReport rep;
  rep.truncation_degree = max_degree;
  if (!detail::within_budget(amb, fs.size(), max_degree, opt)) {
    rep.notes.push_back("work budget exceeded; all criteria inconclusive");
    return rep;
  }

  rep.regular_sequence = is_regular_sequence_up_to(amb, fs, max_degree, opt);

  std::vector<GradedElement<typename A::field_type>> prefix;
  bool mismatch = false, undecided = false;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) prefix.push_back(fs[k - 1]);
    GkStage st;
    st.k = k;
    st.expected = n - k;
    st.hilbert = quotient_hilbert(amb, prefix, max_degree);
    st.estimate = gk_estimate(st.hilbert, opt.gk);
    if (!st.estimate) {
      undecided = true;
    } else if (*st.estimate != st.expected) {
      mismatch = true;
    }
    rep.gk_drops.push_back(std::move(st));
  }
  rep.gk_drops_ok = mismatch ? Tri::No : undecided ? Tri::Inconclusive : Tri::Yes;
  if (rep.gk_drops.front().estimate != n)
    rep.notes.push_back("ambient Hilbert function does not look like that of n variables");

  rep.quotient_hilbert = rep.gk_drops.back().hilbert;
  const auto last = rep.gk_drops.back().estimate;
  if (rep.quotient_hilbert.back() == 0) {
    rep.finite_dim = Tri::Yes;
  } else if (last && *last > 0) {
    rep.finite_dim = Tri::No;
  }

  rep.consistent = detail::consistent({rep.regular_sequence, rep.finite_dim, rep.gk_drops_ok});
  rep.notes.push_back("base-point module criteria are covered by the finite-dimension criterion");
  return rep;
}

template <class F>
CiReport ci_report(const MuMatrix<F>& mu, const std::vector<SPoly<F>>& fs, std::size_t max_degree,
                   const CiOptions& opt = {}) {
  SkewPolyRing<F> ring(mu, max_degree);
  return ci_report(ring, to_elements(ring, fs), max_degree, opt);
}

/// F given as elements of a presented algebra A; A is assumed to have
/// GK-dimension equal to its number of generators.
template <class F>
CiReport ci_report(const Presentation<F>& pres, const std::vector<NcPoly<F>>& fs, std::size_t max_degree,
                   const CiOptions& opt = {}, bool certified_regular = false) {
  PresentedAlgebra<F> alg(pres, max_degree);
  std::vector<GradedElement<F>> elems;
  for (const auto& f : fs) {
    auto d = f.homogeneous_degree();
    if (!d) throw Error(ErrorKind::NotHomogeneous, "sequence element is not homogeneous");
    elems.push_back({*d, alg.nf(f)});
  }
  auto rep = ci_report(alg, elems, max_degree, opt);
  rep.notes.push_back(certified_regular
                          ? "Auslander-Gorenstein and Cohen-Macaulay hypotheses assumed from the regularity certificate"
                          : "algebra not certified regular; applicability of the equivalence is unconfirmed");
  return rep;
}

}  // namespace skewcliff
