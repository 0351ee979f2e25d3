#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "skewcliff/field.hpp"
#include "skewcliff/linalg.hpp"

using namespace skewcliff;

TEST(ExactField, PrimeInverse) {
  PrimeField k(7);
  EXPECT_EQ(k.inv(3), 5u);
  EXPECT_EQ(k.mul(3, k.inv(3)), 1u);
}

TEST(ExactField, RationalInverse) {
  RationalField k;
  EXPECT_EQ(k.inv(Rational(2, 3)), Rational(3, 2));
}

TEST(ExactField, CompositeModulusRejected) {
  try {
    PrimeField k(6);
    FAIL() << "accepted composite modulus";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompositeModulus);
  }
  EXPECT_THROW(field_make(FieldSpec::prime(6)), Error);
}

TEST(ExactField, CharacteristicTwoAllowedHere) {
  PrimeField k(2);
  EXPECT_EQ(k.add(1, 1), 0u);
}

TEST(ExactField, RationalsInLowestTerms) {
  Rational q = parse_rational("6/-4");
  EXPECT_EQ(rational_to_string(q), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(ExactField, FromRationalModP) {
  PrimeField k(7);
  EXPECT_EQ(k.from_rational(Rational(1, 2)), 4u);
  EXPECT_EQ(k.from_int(-1), 6u);
  EXPECT_THROW(k.from_rational(Rational(1, 7)), Error);
}

TEST(Rref, IdentityHasFullRank) {
  RationalField k;
  EXPECT_EQ(rank_of(DenseMatrix<RationalField>::identity(k, 3), k), 3u);
}

TEST(Rref, ZeroMatrix) {
  RationalField k;
  EXPECT_EQ(rank_of(DenseMatrix<RationalField>::zeros(k, 2, 4), k), 0u);
}

TEST(Rref, DependentRows) {
  RationalField k;
  auto m = DenseMatrix<RationalField>::from_ints(k, {{1, 2}, {2, 4}});
  auto r = rref(m, k);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivot_cols, std::vector<std::size_t>{0});
  EXPECT_EQ(r.reduced(0, 1), Rational(2));
}

template <class F>
DenseMatrix<F> random_matrix(const F& k, std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> dist(-1, 2);
  DenseMatrix<F> m = DenseMatrix<F>::zeros(k, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = k.from_int(dist(rng));
  return m;
}

TEST(Rref, Idempotent) {
  RationalField k;
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(k, rng, 4, 6);
    auto once = rref(m, k).reduced;
    EXPECT_EQ(rref(once, k).reduced, once);
  }
}

TEST(Rref, RankOfTransposeAndOracle) {
  RationalField k;
  std::mt19937 rng(12);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(k, rng, 3 + t % 3, 5);
    const auto r = rank_of(m, k);
    EXPECT_EQ(r, rank_of(m.transpose(), k));
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).begin(), m.row(i).end());
    EXPECT_EQ(r, oracle::dense_rank(k, rows));
  }
}

TEST(Rref, PrimeRankMatchesRationalForSmallEntries) {
  RationalField q;
  PrimeField k(17);
  std::mt19937 rng(13);
  for (int t = 0; t < 100; ++t) {
    auto m = random_matrix(q, rng, 4, 4);
    DenseMatrix<PrimeField> mp = DenseMatrix<PrimeField>::zeros(k, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) mp(i, j) = k.from_rational(m(i, j));
    EXPECT_EQ(rank_of(m, q), rank_of(mp, k));
  }
}

TEST(Rref, NullSpaceAndInverse) {
  RationalField k;
  auto m = DenseMatrix<RationalField>::from_ints(k, {{1, 2, 3}, {2, 4, 6}});
  auto ns = null_space(m, k);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
  auto a = DenseMatrix<RationalField>::from_ints(k, {{2, 1}, {1, 1}});
  EXPECT_EQ(matmul(k, a, inverse(a, k)), (DenseMatrix<RationalField>::identity(k, 2)));
  EXPECT_THROW(inverse(m.transpose(), k), Error);
}

TEST(Echelon, MembershipIndependentOfInsertionOrder) {
  PrimeField k(101);
  std::vector<std::vector<std::uint32_t>> vs = {{1, 2, 0, 3}, {0, 1, 1, 0}, {1, 3, 1, 3}, {5, 0, 0, 1}};
  Echelon<PrimeField> a(k, 4), b(k, 4);
  for (const auto& v : vs) a.insert(v);
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) b.insert(*it);
  EXPECT_EQ(a.rank(), 3u);
  EXPECT_EQ(a.non_pivot_columns(), b.non_pivot_columns());
  std::vector<std::uint32_t> probe = {7, 1, 3, 9};
  auto pa = probe, pb = probe;
  a.reduce(pa);
  b.reduce(pb);
  EXPECT_EQ(pa, pb);
}
