#pragma once

// Named algebras: skew polynomial rings as GSCAs, the quantum affine plane,
// the Jordan-type plane, the graded Clifford algebra with a base point, and
// the nodal, cuspidal and type A families of quadratic algebras on three
// generators. Each carries the properties the tests expect of it.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewcliff/field.hpp"
#include "skewcliff/freealg.hpp"
#include "skewcliff/geometry.hpp"
#include "skewcliff/gsca.hpp"

namespace skewcliff {

enum class FamilyName {
  SkewPolyGsca,
  QuantumAffinePlane,
  JordanPlane,
  GcaExample22,
  NodalCubic,
  CuspidalCubic,
  TypeA,
  CommutativePoly,
  TypeB,
  TypeE,
  TypeH,
};

inline std::string_view to_string(FamilyName f) {
  switch (f) {
    case FamilyName::SkewPolyGsca: return "SkewPolyGsca";
    case FamilyName::QuantumAffinePlane: return "QuantumAffinePlane";
    case FamilyName::JordanPlane: return "JordanPlane";
    case FamilyName::GcaExample22: return "GcaExample22";
    case FamilyName::NodalCubic: return "NodalCubic";
    case FamilyName::CuspidalCubic: return "CuspidalCubic";
    case FamilyName::TypeA: return "TypeA";
    case FamilyName::CommutativePoly: return "CommutativePoly";
    case FamilyName::TypeB: return "TypeB";
    case FamilyName::TypeE: return "TypeE";
    case FamilyName::TypeH: return "TypeH";
  }
  return "?";
}

inline FamilyName parse_family_name(std::string_view s) {
  for (auto f : {FamilyName::SkewPolyGsca, FamilyName::QuantumAffinePlane, FamilyName::JordanPlane,
                 FamilyName::GcaExample22, FamilyName::NodalCubic, FamilyName::CuspidalCubic, FamilyName::TypeA,
                 FamilyName::CommutativePoly, FamilyName::TypeB, FamilyName::TypeE, FamilyName::TypeH})
    if (to_string(f) == s) return f;
  throw Error(ErrorKind::ParseError, "unknown family '" + std::string(s) + "'");
}

/// Parameters, in order:
///   SkewPolyGsca     mu_12, mu_13, ..., mu_{n-1,n} (strict upper triangle)
///   QuantumAffinePlane, JordanPlane   mu_12
///   NodalCubic       lambda
///   TypeA            a, b, c
///   GcaExample22, CuspidalCubic   none
///   CommutativePoly  none (size from `n`)
struct FamilySpec {
  FamilyName name = FamilyName::QuantumAffinePlane;
  std::vector<Rational> params;
  FieldSpec field = FieldSpec::rationals();
  int n = 0;  // SkewPolyGsca and CommutativePoly; 0 means "infer"
};

/// What downstream pipelines should find for a family member.
struct FamilyExpectation {
  std::optional<Conclusion> certify;
  std::optional<std::string> base_point;
  std::optional<CurveType> curve;
  std::optional<Singularity> singularity;
  std::string note;
};

template <class F>
struct BuiltFamily {
  std::optional<GscaInput<F>> gsca;
  Presentation<F> presentation;
  FamilyExpectation expect;
};

namespace detail {

inline void require_params(const FamilySpec& s, std::size_t count) {
  if (s.params.size() != count)
    throw Error(ErrorKind::BadParams, std::string(to_string(s.name)) + " takes " + std::to_string(count) +
                                          " parameter(s), got " + std::to_string(s.params.size()));
}

template <class F>
NcPoly<F> from_terms(const F& k, int n, std::initializer_list<std::pair<Value<F>, Word>> terms) {
  NcPoly<F> f(n);
  for (const auto& [c, w] : terms) f.add_term(k, w, c);
  return f;
}

template <class F>
BuiltFamily<F> from_gsca(GscaInput<F> inp, FamilyExpectation expect) {
  auto pres = eliminate_y(inp);
  return BuiltFamily<F>{std::move(inp), std::move(pres), std::move(expect)};
}

}  // namespace detail

template <class F>
BuiltFamily<F> build_family(const FamilySpec& s, const F& k) {
  using detail::from_terms;
  const auto c = [&](long long v) { return k.from_int(v); };
  const auto param = [&](std::size_t i) { return k.from_rational(s.params.at(i)); };
  const auto x = [](int i, int j) { return Word{i, j}; };
  switch (s.name) {
    case FamilyName::SkewPolyGsca: {
      int n = s.n;
      if (n == 0) {
        while (static_cast<std::size_t>(n * (n - 1) / 2) < s.params.size()) ++n;
        n = std::max(n, 2);
      }
      detail::require_params(s, static_cast<std::size_t>(n * (n - 1) / 2));
      std::vector<Value<F>> upper;
      for (std::size_t i = 0; i < s.params.size(); ++i) upper.push_back(param(i));
      auto mu = MuMatrix<F>::from_upper(k, n, upper);
      std::vector<DenseMatrix<F>> mats;
      for (int i = 0; i < n; ++i) {
        DenseMatrix<F> m = DenseMatrix<F>::zeros(k, n, n);
        m(i, i) = c(2);
        mats.push_back(std::move(m));
      }
      return detail::from_gsca(GscaInput<F>{mu, std::move(mats)},
                               {Conclusion::RegularUpToD, std::nullopt, std::nullopt, std::nullopt,
                                "skew polynomial ring x_i x_j = -mu_ij x_j x_i"});
    }
    case FamilyName::QuantumAffinePlane: {
      detail::require_params(s, 1);
      auto mu = MuMatrix<F>::from_upper(k, 2, {param(0)});
      return detail::from_gsca(
          GscaInput<F>{mu, {DenseMatrix<F>::from_ints(k, {{2, 0}, {0, 0}}), DenseMatrix<F>::from_ints(k, {{0, 0}, {0, 2}})}},
          {Conclusion::RegularUpToD, std::nullopt, std::nullopt, std::nullopt, "x1 x2 + mu12 x2 x1 = 0"});
    }
    case FamilyName::JordanPlane: {
      detail::require_params(s, 1);
      auto mu = MuMatrix<F>::from_upper(k, 2, {param(0)});
      DenseMatrix<F> m1 = DenseMatrix<F>::from_ints(k, {{2, 1}, {0, 0}});
      m1(1, 0) = mu(1, 0);
      return detail::from_gsca(
          GscaInput<F>{mu, {std::move(m1), DenseMatrix<F>::from_ints(k, {{0, 0}, {0, 2}})}},
          {Conclusion::RegularUpToD, std::nullopt, std::nullopt, std::nullopt,
           "x1 x2 + mu12 x2 x1 = x1^2; relation to the Jordan plane depends on mu12 (informational)"});
    }
    case FamilyName::GcaExample22: {
      detail::require_params(s, 0);
      GscaInput<F> inp{MuMatrix<F>::ones(k, 2),
                       {DenseMatrix<F>::from_ints(k, {{2, -1}, {-1, 0}}), DenseMatrix<F>::from_ints(k, {{0, -1}, {-1, 2}})}};
      validate(inp);
      // the printed presentation keeps the cubic relation making y_1, y_2 central
      Presentation<F> pres(k, 2,
                           {from_terms<F>(k, 2, {{c(1), x(0, 1)}, {c(1), x(1, 0)}, {c(1), x(0, 0)}, {c(1), x(1, 1)}}),
                            from_terms<F>(k, 2, {{c(1), Word{0, 0, 1}}, {c(-1), Word{1, 0, 0}}})});
      return BuiltFamily<F>{std::move(inp), std::move(pres),
                            {Conclusion::NotRegular, std::string("(1:1)"), std::nullopt, std::nullopt,
                             "not quadratic, not regular: (x1 + x2)^2 = 0"}};
    }
    case FamilyName::NodalCubic: {
      detail::require_params(s, 1);
      const auto l = param(0);
      const auto l3 = k.pow(l, 3);
      if (k.is_zero(l3) || k.equal(l3, k.one()))
        throw Error(ErrorKind::BadParams, "NodalCubic needs lambda^3 not in {0, 1}");
      Presentation<F> pres(k, 3,
                           {from_terms<F>(k, 3, {{l, x(0, 1)}, {c(-1), x(1, 0)}}),
                            from_terms<F>(k, 3, {{l, x(1, 2)}, {c(-1), x(2, 1)}, {c(1), x(0, 0)}}),
                            from_terms<F>(k, 3, {{l, x(2, 0)}, {c(-1), x(0, 2)}, {c(1), x(1, 1)}})});
      return BuiltFamily<F>{std::nullopt, std::move(pres),
                            {std::nullopt, std::nullopt, CurveType::Nodal, Singularity::Node,
                             "point scheme is a nodal cubic curve"}};
    }
    case FamilyName::CuspidalCubic: {
      detail::require_params(s, 0);
      Presentation<F> pres(
          k, 3,
          {from_terms<F>(k, 3, {{c(1), x(0, 1)}, {c(-1), x(1, 0)}, {c(-1), x(0, 0)}}),
           from_terms<F>(k, 3, {{c(1), x(2, 0)}, {c(-1), x(0, 2)}, {c(-1), x(0, 0)}, {c(-3), x(1, 1)}}),
           from_terms<F>(k, 3,
                         {{c(1), x(2, 1)}, {c(-1), x(1, 2)}, {c(3), x(1, 1)}, {c(2), x(0, 2)}, {c(2), x(0, 1)}})});
      FamilyExpectation e{std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                          "point scheme is a cuspidal cubic curve if and only if char != 3"};
      if (k.characteristic() != 3) {
        e.curve = CurveType::Cuspidal;
        e.singularity = Singularity::Cusp;
      }
      return BuiltFamily<F>{std::nullopt, std::move(pres), std::move(e)};
    }
    case FamilyName::TypeA: {
      detail::require_params(s, 3);
      const auto a = param(0), b = param(1), cc = param(2);
      if (k.is_zero(a) || k.is_zero(b) || k.is_zero(cc)) throw Error(ErrorKind::BadParams, "TypeA needs a, b, c != 0");
      if (k.characteristic() == 3) throw Error(ErrorKind::BadParams, "TypeA needs characteristic != 3");
      const auto a3 = k.pow(a, 3), b3 = k.pow(b, 3), c3 = k.pow(cc, 3);
      if (k.equal(a3, b3) && k.equal(a3, c3)) throw Error(ErrorKind::BadParams, "TypeA needs not a^3 = b^3 = c^3");
      const auto lhs = k.pow(k.mul(c(3), k.mul(a, k.mul(b, cc))), 3);
      const auto rhs = k.pow(k.add(a3, k.add(b3, c3)), 3);
      if (k.equal(lhs, rhs)) throw Error(ErrorKind::BadParams, "TypeA needs (3abc)^3 != (a^3 + b^3 + c^3)^3");
      Presentation<F> pres(k, 3,
                           {from_terms<F>(k, 3, {{a, x(0, 1)}, {b, x(1, 0)}, {cc, x(2, 2)}}),
                            from_terms<F>(k, 3, {{a, x(1, 2)}, {b, x(2, 1)}, {cc, x(0, 0)}}),
                            from_terms<F>(k, 3, {{a, x(2, 0)}, {b, x(0, 2)}, {cc, x(1, 1)}})});
      return BuiltFamily<F>{std::nullopt, std::move(pres),
                            {std::nullopt, std::nullopt, std::nullopt, std::nullopt, "type A: x, y, z = x1, x2, x3"}};
    }
    case FamilyName::CommutativePoly: {
      detail::require_params(s, 0);
      const int n = s.n == 0 ? 3 : s.n;
      std::vector<NcPoly<F>> rels;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rels.push_back(from_terms<F>(k, n, {{c(1), x(i, j)}, {c(-1), x(j, i)}}));
      return BuiltFamily<F>{std::nullopt, Presentation<F>(k, n, std::move(rels)),
                            {std::nullopt, std::nullopt, CurveType::WholePlane, std::nullopt,
                             "commutative polynomial ring"}};
    }
    case FamilyName::TypeB:
    case FamilyName::TypeE:
    case FamilyName::TypeH:
      throw Error(ErrorKind::Unsupported,
                  std::string(to_string(s.name)) + " relations are not available; only type A is constructible");
  }
  throw Error(ErrorKind::Unsupported, "unknown family");
}

}  // namespace skewcliff
