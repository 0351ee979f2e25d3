#include <gtest/gtest.h>

#include <random>

#include "skewcliff/families.hpp"
#include "skewcliff/gsca.hpp"

using namespace skewcliff;

namespace {

RationalField Q;
using QM = DenseMatrix<RationalField>;

MuMatrix<RationalField> mu2(long long m12) { return MuMatrix<RationalField>::from_upper(Q, 2, {Q.from_int(m12)}); }

GscaInput<RationalField> quantum_plane(long long m12) {
  return *build_family(FamilySpec{FamilyName::QuantumAffinePlane, {Rational(static_cast<long>(m12))}}, Q).gsca;
}
GscaInput<RationalField> jordan(long long m12) {
  return *build_family(FamilySpec{FamilyName::JordanPlane, {Rational(static_cast<long>(m12))}}, Q).gsca;
}
GscaInput<RationalField> example22() { return *build_family(FamilySpec{FamilyName::GcaExample22, {}}, Q).gsca; }

template <class F>
DenseMatrix<F> random_mu_symmetric(const F& k, const MuMatrix<F>& mu, std::mt19937& rng) {
  const int n = mu.size();
  DenseMatrix<F> m = DenseMatrix<F>::zeros(k, n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = k.from_int(static_cast<long long>(rng() % 7) - 3);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = k.from_int(static_cast<long long>(rng() % 7) - 3);
      m(j, i) = k.div(m(i, j), mu(i, j));
    }
  }
  return m;
}

template <class F>
MuMatrix<F> random_mu(const F& k, int n, std::mt19937& rng) {
  std::vector<Value<F>> upper;
  for (int i = 0; i < n * (n - 1) / 2; ++i) upper.push_back(k.from_int(1 + rng() % (k.characteristic() - 1)));
  return MuMatrix<F>::from_upper(k, n, upper);
}

}  // namespace

TEST(CheckMu, Examples) {
  EXPECT_TRUE(check_mu(MuMatrix<RationalField>::ones(Q, 3)));
  EXPECT_TRUE(check_mu(mu2(5)));
  EXPECT_FALSE(check_mu(MuMatrix<RationalField>(Q, QM::from_ints(Q, {{1, 2}, {2, 1}}))));
  EXPECT_FALSE(check_mu(MuMatrix<RationalField>(Q, QM::from_ints(Q, {{2, 1}, {1, 1}}))));
  try {
    check_mu(MuMatrix<RationalField>(Q, QM::from_ints(Q, {{1, 0}, {1, 1}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroEntry);
  }
}

TEST(MuSymmetric, Examples) {
  EXPECT_TRUE(is_mu_symmetric(MuMatrix<RationalField>::ones(Q, 2), QM::from_ints(Q, {{1, 4}, {4, 0}})));
  auto mu = mu2(3);
  QM m1 = QM::from_ints(Q, {{2, 1}, {0, 0}});
  m1(1, 0) = mu(1, 0);
  EXPECT_TRUE(is_mu_symmetric(mu, m1));
  EXPECT_FALSE(is_mu_symmetric(MuMatrix<RationalField>::ones(Q, 2), QM::from_ints(Q, {{0, 1}, {0, 0}})));
}

TEST(QuadricMap, Examples) {
  auto mu = mu2(3);
  auto q = matrix_to_quadric(mu, QM::from_ints(Q, {{2, 0}, {0, 0}}));
  EXPECT_EQ(q.to_string(Q), "2*z1^2");
  auto jp = jordan(3);
  EXPECT_EQ(matrix_to_quadric(jp.mu, jp.mats[0]).to_string(Q), "2*z1^2 + 2*z1*z2");
  EXPECT_TRUE(matrix_to_quadric(mu, QM::zeros(Q, 2, 2)).is_zero());
  EXPECT_THROW(matrix_to_quadric(mu, QM::from_ints(Q, {{0, 1}, {1, 0}})), Error);
}

TEST(QuadricMap, InverseExamples) {
  auto mu = mu2(3);
  EXPECT_EQ(quadric_from_spoly(mu, SPoly<RationalField>::monomial(Q, {2, 0}, 2)), QM::from_ints(Q, {{2, 0}, {0, 0}}));
  auto m = quadric_from_spoly(mu, SPoly<RationalField>::monomial(Q, {1, 1}, 1));
  EXPECT_EQ(m(0, 1), Rational(1, 2));
  EXPECT_EQ(m(1, 0), Rational(1, 6));
  EXPECT_TRUE(is_mu_symmetric(mu, m));
  EXPECT_EQ(matrix_to_quadric(mu, m).to_string(Q), "z1*z2");
  EXPECT_EQ(quadric_from_spoly(mu, SPoly<RationalField>(2)), QM::zeros(Q, 2, 2));
}

TEST(QuadricMap, RoundTripAndLinearity) {
  PrimeField k(101);
  std::mt19937 rng(21);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 3;
    auto mu = random_mu(k, n, rng);
    auto a = random_mu_symmetric(k, mu, rng), b = random_mu_symmetric(k, mu, rng);
    EXPECT_EQ(quadric_from_spoly(mu, matrix_to_quadric(mu, a)), a);
    DenseMatrix<PrimeField> s = DenseMatrix<PrimeField>::zeros(k, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = k.add(a(i, j), k.mul(5, b(i, j)));
    EXPECT_EQ(matrix_to_quadric(mu, s), matrix_to_quadric(mu, a).plus(k, matrix_to_quadric(mu, b).scaled(k, 5)));
    if (!is_zero_matrix(k, a)) {
      EXPECT_FALSE(matrix_to_quadric(mu, a).is_zero());
    }
  }
}

TEST(GscaRelations, QuantumPlane) {
  auto rels = gsca_relations(quantum_plane(3));
  ASSERT_EQ(rels.size(), 3u);
  EXPECT_EQ(rels[0].x_part.to_string(Q), "2*x1*x1");
  EXPECT_EQ(rels[0].y_coeffs, (std::vector<Rational>{2, 0}));
  EXPECT_EQ(rels[1].x_part.to_string(Q), "x1*x2 + 3*x2*x1");
  EXPECT_EQ(rels[1].y_coeffs, (std::vector<Rational>{0, 0}));
  EXPECT_EQ(rels[2].y_coeffs, (std::vector<Rational>{0, 2}));
}

TEST(GscaRelations, JordanTypeAndCommutative) {
  auto rels = gsca_relations(jordan(3));
  EXPECT_EQ(rels[1].x_part.to_string(Q), "x1*x2 + 3*x2*x1");
  EXPECT_EQ(rels[1].y_coeffs, (std::vector<Rational>{1, 0}));
  // mu all ones: x_i x_j + x_j x_i = sum (M_k)_ij y_k
  auto ex = gsca_relations(example22());
  EXPECT_EQ(ex[1].x_part.to_string(Q), "x1*x2 + x2*x1");
  EXPECT_EQ(ex[1].y_coeffs, (std::vector<Rational>{-1, -1}));
  EXPECT_EQ(ex[0].y_coeffs, (std::vector<Rational>{2, 0}));
}

TEST(EliminateY, Examples) {
  EXPECT_EQ(eliminate_y(quantum_plane(3)).relations()[0].to_string(Q), "x1*x2 + 3*x2*x1");
  EXPECT_EQ(eliminate_y(jordan(3)).relations()[0].to_string(Q), "-x1*x1 + x1*x2 + 3*x2*x1");
  auto zero_diag = GscaInput<RationalField>{MuMatrix<RationalField>::ones(Q, 2),
                                            {QM::from_ints(Q, {{0, 1}, {1, 0}}), QM::from_ints(Q, {{0, 2}, {2, 0}})}};
  try {
    eliminate_y(zero_diag);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DiagonalSingular);
  }
  PrimeField f2(2);
  GscaInput<PrimeField> char2{MuMatrix<PrimeField>::ones(f2, 1), {DenseMatrix<PrimeField>::from_ints(f2, {{1}})}};
  try {
    eliminate_y(char2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CharTwo);
  }
}

TEST(Certify, QuantumPlane) {
  auto c = certify_regular(quantum_plane(3), 8);
  EXPECT_EQ(c.conclusion, Conclusion::RegularUpToD);
  EXPECT_EQ(c.hilbert, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_TRUE(c.mu_ok && c.musym_ok && c.eliminated && c.normalizing && c.hilbert_match);
  EXPECT_EQ(c.bpf.kind, BpfKind::Free);
  EXPECT_EQ(c.truncation_degree, 8u);
}

TEST(Certify, JordanType) {
  auto c = certify_regular(jordan(3), 8);
  EXPECT_EQ(c.conclusion, Conclusion::RegularUpToD);
  ASSERT_TRUE(c.normalizing_order);
  EXPECT_EQ(*c.normalizing_order, (std::vector<int>{1, 0}));
  EXPECT_EQ(c.hilbert, polynomial_ring_hilbert(2, 8));
}

TEST(Certify, Example22IsNotRegular) {
  auto c = certify_regular(example22(), 8);
  EXPECT_EQ(c.conclusion, Conclusion::NotRegular);
  EXPECT_EQ(c.bpf.kind, BpfKind::NotFree);
  ASSERT_TRUE(c.bpf.witness);
  EXPECT_EQ(c.bpf.witness->to_string(Q), "(1:1)");
  EXPECT_FALSE(c.hilbert_match);
  EXPECT_EQ(c.hilbert[3], 5u);
}

TEST(Certify, InvalidMuIsInconclusive) {
  GscaInput<RationalField> bad{MuMatrix<RationalField>(Q, QM::from_ints(Q, {{1, 2}, {2, 1}})),
                               {QM::from_ints(Q, {{2, 0}, {0, 0}}), QM::from_ints(Q, {{0, 0}, {0, 2}})}};
  auto c = certify_regular(bad, 6);
  EXPECT_FALSE(c.mu_ok);
  EXPECT_EQ(c.conclusion, Conclusion::Inconclusive);
}

TEST(Certify, SkewPolynomialRingsAreRegular) {
  PrimeField k(31);
  std::mt19937 rng(22);
  for (int t = 0; t < 12; ++t) {
    const int n = 2 + t % 3;
    auto mu = random_mu(k, n, rng);
    std::vector<Rational> upper;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) upper.push_back(k.to_rational(mu(i, j)));
    auto fam = build_family(FamilySpec{FamilyName::SkewPolyGsca, upper, k.spec(), n}, k);
    auto c = certify_regular(*fam.gsca, n == 4 ? 6 : 8);
    EXPECT_EQ(c.conclusion, Conclusion::RegularUpToD) << "n = " << n;
    EXPECT_EQ(c.hilbert, polynomial_ring_hilbert(n, n == 4 ? 6 : 8));
  }
}

TEST(Certify, InvariantUnderBasisChange) {
  PrimeField k(31);
  std::mt19937 rng(23);
  int regular = 0;
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 2;
    auto mu = random_mu(k, n, rng);
    std::vector<DenseMatrix<PrimeField>> mats;
    if (t % 2 == 0) {
      for (int i = 0; i < n; ++i) {
        auto m = DenseMatrix<PrimeField>::zeros(k, n, n);
        m(i, i) = 2;
        mats.push_back(m);
      }
    } else {
      for (int i = 0; i < n; ++i) mats.push_back(random_mu_symmetric(k, mu, rng));
    }
    GscaInput<PrimeField> inp{mu, mats};
    DenseMatrix<PrimeField> c;
    do {
      c = DenseMatrix<PrimeField>::zeros(k, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = rng() % 31;
    } while (rank_of(c, k) < static_cast<std::size_t>(n));
    GscaInput<PrimeField> mixed{mu, {}};
    for (int i = 0; i < n; ++i) {
      auto m = DenseMatrix<PrimeField>::zeros(k, n, n);
      for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) m(a, b) = k.add(m(a, b), k.mul(c(i, l), mats[l](a, b)));
      mixed.mats.push_back(m);
    }
    const std::size_t d = 7;
    auto c1 = certify_regular(inp, d), c2 = certify_regular(mixed, d);
    EXPECT_EQ(c1.conclusion, c2.conclusion) << "trial " << t;
    EXPECT_EQ(c1.normalizing, c2.normalizing) << "trial " << t;
    EXPECT_EQ(c1.bpf.kind, c2.bpf.kind) << "trial " << t;
    if (c1.conclusion == Conclusion::RegularUpToD) ++regular;
  }
  EXPECT_GE(regular, 5);
}

TEST(Certify, RegularImpliesHilbertRecheck) {
  auto c = certify_regular(jordan(-2), 8);
  ASSERT_EQ(c.conclusion, Conclusion::RegularUpToD);
  EXPECT_EQ(hilbert_function(eliminate_y(jordan(-2)), 8), polynomial_ring_hilbert(2, 8));
}
