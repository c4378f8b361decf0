#include <gtest/gtest.h>

#include <random>

#include "evencob/subspace.hpp"
#include "support/oracles.hpp"

namespace evencob {
namespace {

using S = RationalSubspace;
using M = RationalMatrix;

S span(std::initializer_list<std::initializer_list<Rational>> rows) { return S::span(M(rows)); }

TEST(Rational, ParsesAndFormatsCanonically) {
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(format_rational(parse_rational("-10/4")), "-5/2");
  EXPECT_EQ(format_rational(parse_rational("0/7")), "0");
  EXPECT_THROW(parse_rational("1/0"), RationalFormatError);
  EXPECT_THROW(parse_rational("0.5"), RationalFormatError);
  EXPECT_THROW(parse_rational("1/-2"), RationalFormatError);
}

TEST(CanonicalBasis, Examples) {
  EXPECT_EQ(canonical_basis<Rational>({{2, 0}}, 2).basis(), (M{{1, 0}}));
  EXPECT_EQ(canonical_basis<Rational>({{1, 1}, {2, 2}}, 2).basis(), (M{{1, 1}}));
  const auto z = canonical_basis<Rational>({}, 3);
  EXPECT_EQ(z.dim(), 0u);
  EXPECT_EQ(z.ambient_dim(), 3u);
  EXPECT_THROW(canonical_basis<Rational>({{1, 2}, {1}}, 2), DimensionMismatch);
}

TEST(Sum, Examples) {
  EXPECT_EQ(sum(span({{1, 0}}), span({{0, 1}})), S::full(2));
  const auto a = span({{1, 2}});
  EXPECT_EQ(sum(a, a), a);
  EXPECT_EQ(sum(span({{1, 0, 0, 0}}), span({{0, 0, 1, 0}})).dim(), 2u);
  EXPECT_THROW(sum(S::full(2), S::full(3)), DimensionMismatch);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(span({{1, 0}}), span({{0, 1}})), S::zero(2));
  EXPECT_EQ(intersect(S::full(2), span({{1, 0}})), span({{1, 0}}));
  EXPECT_EQ(intersect(span({{1, 1}}), span({{1, 0}})), S::zero(2));
  EXPECT_EQ(intersect(span({{1, 0, 0}, {0, 1, 0}}), span({{0, 1, 0}, {0, 0, 1}})), span({{0, 1, 0}}));
  EXPECT_THROW(intersect(S::full(1), S::full(2)), DimensionMismatch);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel(M(2, 2)), S::full(2));
  EXPECT_EQ(kernel(M::identity(3)), S::zero(3));
  EXPECT_EQ(kernel(M{{1, 1}}), span({{1, -1}}));
}

TEST(Image, Examples) {
  EXPECT_EQ(image(M::identity(3)), S::full(3));
  EXPECT_EQ(image(M(2, 3)), S::zero(2));
  EXPECT_EQ(image(M{{2}, {4}}), span({{1, 2}}));
}

TEST(Preimage, Examples) {
  const auto b = span({{1, 3}});
  EXPECT_EQ(preimage(M::identity(2), b), b);
  EXPECT_EQ(preimage(M(2, 2), b), S::full(2));
  // e -> e, f -> 0: f*(x, y) = (x, 0) lies in span{e} for every (x, y).
  EXPECT_EQ(preimage(M{{1, 0}, {0, 0}}, span({{1, 0}})), S::full(2));
  // Same map, target span{f}: only x = 0 works.
  EXPECT_EQ(preimage(M{{1, 0}, {0, 0}}, span({{0, 1}})), span({{0, 1}}));
  EXPECT_THROW(preimage(M::identity(2), S::full(3)), DimensionMismatch);
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(M::identity(3)).dim, 0u);
  const auto z = cokernel(M(3, 2));
  EXPECT_EQ(z.dim, 3u);
  EXPECT_EQ(z.projection, M::identity(3));
  const auto c = cokernel(M{{1}, {0}});
  EXPECT_EQ(c.dim, 1u);
  EXPECT_EQ(c.projection, (M{{0, 1}}));
  // Gluing two points: (1, -1) spans the image, the class of either point survives.
  EXPECT_EQ(cokernel(M{{1}, {-1}}).projection, (M{{1, 1}}));
}

TEST(SolveFirst, PrefersZeroFreeVariables) {
  const auto x = solve_first(M{{1, 1}}, {Rational(3)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RationalVector{3, 0}));
  EXPECT_FALSE(solve_first(M{{1, 0}, {1, 0}}, {Rational(1), Rational(2)}));
}

class RandomPairs : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260115};
  S random_subspace(std::size_t n) {
    return S::span(oracle::random_integer_matrix(rng() % (n + 1), n, rng));
  }
};

TEST_F(RandomPairs, DimensionFormulaForSumAndIntersection) {
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto a = random_subspace(n), b = random_subspace(n);
    const auto s = sum(a, b), i = intersect(a, b);
    ASSERT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
    ASSERT_TRUE(i.is_subspace_of(a) && i.is_subspace_of(b));
    ASSERT_TRUE(a.is_subspace_of(s) && b.is_subspace_of(s));
  }
}

TEST_F(RandomPairs, CanonicalFormIsIdempotentAndRankMatchesOracle) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto gens = oracle::random_integer_matrix(rng() % 7, n, rng);
    const auto s = S::span(gens);
    EXPECT_EQ(S::span(s.basis()), s);
    EXPECT_EQ(s.dim(), oracle::bareiss_rank(gens));
    EXPECT_EQ(kernel(gens).dim(), n - oracle::bareiss_rank(gens));
  }
}

TEST_F(RandomPairs, PreimageOnlySeesTheImage) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    const auto f = oracle::random_integer_matrix(m, n, rng, 1);
    const auto b = random_subspace(m);
    const auto pre = preimage(f, b);
    EXPECT_EQ(preimage(f, intersect(image(f), b)), pre);
    EXPECT_TRUE(kernel(f).is_subspace_of(pre));
    for (std::size_t i = 0; i < pre.dim(); ++i) EXPECT_TRUE(b.contains(f * pre.basis_vector(i)));
  }
}

TEST_F(RandomPairs, CokernelProjectionKillsExactlyTheImage) {
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6, m = rng() % 5;
    const auto f = oracle::random_integer_matrix(n, m, rng, 1);
    const auto c = cokernel(f);
    EXPECT_EQ(c.dim, n - oracle::bareiss_rank(f));
    EXPECT_TRUE((c.projection * f).is_zero());
    EXPECT_EQ(oracle::bareiss_rank(c.projection), c.dim);
    EXPECT_EQ(kernel(c.projection), image(f));
  }
}

}  // namespace
}  // namespace evencob
