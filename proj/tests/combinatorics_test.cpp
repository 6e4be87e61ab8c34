#include "balsub/combinatorics.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "test_support.hpp"

using namespace balsub;

namespace {

// Independent oracle: bitmask scan of all subsets of {1..b}; block i is {b-2i+1, b-2i+2}.
long long brute_count(int b, int a, int c) {
  long long n = 0;
  for (unsigned mask = 0; mask < (1u << b); ++mask) {
    if (std::popcount(mask) != a) continue;
    bool ok = true;
    for (int i = 1; i <= c; ++i) {
      const int lo = b - 2 * i;  // zero-based position of b-2i+1
      const int hits = ((mask >> lo) & 1u) + ((mask >> (lo + 1)) & 1u);
      if (hits == 1) ok = false;
    }
    if (ok) ++n;
  }
  return n;
}

int valuation(BigInt n, unsigned p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(8, 4), 70);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
}

TEST(CountReal, SixTwoTwo) {
  EXPECT_EQ(count_real(4, 2, 0), 6);
  EXPECT_EQ(count_real(4, 2, 1), 2);
  EXPECT_EQ(count_real(4, 2, 2), 2);
}

TEST(CountReal, TableOneRows) {
  const std::vector<std::vector<int>> table{
      {8, 6, 4, 2, 0},   {28, 16, 8, 4, 4}, {56, 26, 12, 6, 0}, {70, 30, 14, 6, 6},
      {56, 26, 12, 6, 0}, {28, 16, 8, 4, 4}, {8, 6, 4, 2, 0},
  };
  for (int a = 1; a <= 7; ++a)
    for (int c = 0; c <= 4; ++c) EXPECT_EQ(count_real(8, a, c), table[a - 1][c]) << "a=" << a << " c=" << c;
}

TEST(CountReal, SixThreeRowFromExhaustiveEnumeration) {
  const std::vector<int> row{20, 8, 4, 0};
  for (int c = 0; c <= 3; ++c) {
    EXPECT_EQ(brute_count(6, 3, c), row[c]);
    EXPECT_EQ(count_real(6, 3, c), row[c]);
  }
}

TEST(CountReal, Errors) {
  EXPECT_THROW_KIND(count_real(4, 5, 0), ErrorKind::InvalidInput);
  EXPECT_THROW_KIND(count_real(4, 2, 3), ErrorKind::InvalidInput);
}

TEST(CountRealProperty, ThreeRoutesAgree) {
  for (int b = 1; b <= 12; ++b) {
    for (int a = 0; a <= b; ++a) {
      for (int c = 0; 2 * c <= b; ++c) {
        const BigInt n = count_real(b, a, c);
        EXPECT_EQ(n, brute_count(b, a, c)) << b << "," << a << "," << c;
        EXPECT_EQ(n, BigInt(enumerate_sol(a, b, c).members.size())) << b << "," << a << "," << c;
        EXPECT_EQ(n, factorization_count_gf(a, b, c)) << b << "," << a << "," << c;
      }
    }
  }
}

TEST(CountRealProperty, SymmetricInA) {
  for (int b = 1; b <= 14; ++b)
    for (int a = 0; a <= b; ++a)
      for (int c = 0; 2 * c <= b; ++c) EXPECT_EQ(count_real(b, a, c), count_real(b, b - a, c));
}

TEST(EnumerateSol, LexicographicAndMembership) {
  const SolSet s = enumerate_sol(2, 4, 1);
  ASSERT_EQ(s.members.size(), 2u);
  EXPECT_EQ(s.members[0], (IndexSet{1, 2}));
  EXPECT_EQ(s.members[1], (IndexSet{3, 4}));
  EXPECT_TRUE(in_sol({1, 2}, 2, 4, 1));
  EXPECT_FALSE(in_sol({1, 3}, 2, 4, 1));
  EXPECT_FALSE(in_sol({2, 1}, 2, 4, 0));
}

TEST(SignOfH, HandComputed) {
  EXPECT_EQ(sign_of_H({1, 2}, 4, 0), Sign::Positive);
  EXPECT_EQ(sign_of_H({1, 3}, 4, 0), Sign::Negative);
  EXPECT_EQ(sign_of_H({1, 4}, 4, 0), Sign::Positive);
  EXPECT_EQ(sign_of_H({2, 3}, 4, 0), Sign::Positive);
  EXPECT_EQ(sign_of_H({2, 4}, 4, 0), Sign::Negative);
  EXPECT_EQ(sign_of_H({3, 4}, 4, 0), Sign::Positive);
  // With the pair block {3, 4} set aside only {1, 2} is permuted.
  EXPECT_EQ(sign_of_H({3, 4}, 4, 1), Sign::Positive);
  EXPECT_THROW_KIND(sign_of_H({1, 3}, 4, 1), ErrorKind::InvalidInput);
}

TEST(SignedSum, TheoremOnGrid) {
  for (int b = 1; b <= 10; ++b) {
    for (int a = 1; a < b; ++a) {
      for (int c = 0; 2 * c <= b; ++c) {
        long long sum = 0;
        for (const auto& h : enumerate_sol(a, b, c).members) sum += to_int(sign_of_H(h, b, c));
        EXPECT_EQ(BigInt(sum), expected_signed_sum(a, b)) << b << "," << a << "," << c;
      }
    }
  }
}

TEST(SignedSum, ExpectedValues) {
  EXPECT_EQ(expected_signed_sum(2, 4), 2);
  EXPECT_EQ(expected_signed_sum(3, 6), 0);
  EXPECT_EQ(expected_signed_sum(3, 7), 3);
  EXPECT_EQ(expected_signed_sum(4, 8), 6);
}

TEST(CSPartition, CardinalitiesForFourTwo) {
  EXPECT_EQ(cs_cardinality(2, 2, 4), 4);
  EXPECT_EQ(cs_cardinality(1, 2, 4), 0);
  EXPECT_EQ(cs_cardinality(0, 2, 4), 2);
  EXPECT_EQ(signed_sum_cell(cs_cell({}, 2, 4), 4, 0), 2);
}

TEST(CSPartition, CompleteDisjointAndSized) {
  for (int b = 1; b <= 10; ++b) {
    for (int a = 0; a <= b; ++a) {
      std::set<IndexSet> seen;
      std::size_t total = 0;
      for (const CSCell& cell : cs_partition(a, b)) {
        EXPECT_EQ(BigInt(cell.members.size()), cs_cardinality(static_cast<int>(cell.S.size()), a, b));
        for (const auto& h : cell.members) EXPECT_TRUE(seen.insert(h).second);
        total += cell.members.size();
      }
      EXPECT_EQ(BigInt(total), binomial(b, a)) << b << "," << a;
    }
  }
}

TEST(CSPartition, SolIsUnionOfCellsAvoidingFirstBlocks) {
  for (int b = 2; b <= 10; ++b) {
    for (int a = 1; a < b; ++a) {
      for (int c = 0; 2 * c <= b; ++c) {
        BigInt count = 0;
        long long sum = 0;
        for (const CSCell& cell : cs_partition(a, b)) {
          if (!cell.S.empty() && cell.S.front() <= c) continue;
          count += cell.members.size();
          sum += signed_sum_cell(cell, b, c);
        }
        EXPECT_EQ(count, count_real(b, a, c));
        EXPECT_EQ(BigInt(sum), expected_signed_sum(a, b));
      }
    }
  }
}

TEST(FourAdic, Values) {
  EXPECT_EQ(four_adic_count(1, 2, 0), 6);
  EXPECT_EQ(four_adic_count(1, 2, 1), 2);
  EXPECT_EQ(four_adic_count(2, 4, 2), 14);
}

TEST(FourAdic, EqualsCountRealOnEvenGrid) {
  for (int v = 0; v <= 8; ++v)
    for (int u = 0; u <= v; ++u)
      for (int c = 0; c <= v; ++c) EXPECT_EQ(four_adic_count(u, v, c), count_real(2 * v, 2 * u, c)) << u << "," << v << "," << c;
}

TEST(Kummer, MatchesExactValuation) {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int n = 0; n <= 60; ++n)
      for (int m = 0; m <= n; ++m) EXPECT_EQ(kummer_carries(n, m, p), valuation(binomial(n, m), p)) << n << "," << m << "," << p;
  }
  EXPECT_THROW_KIND(kummer_carries(4, 2, 4), ErrorKind::InvalidInput);
  EXPECT_THROW_KIND(kummer_carries(2, 4, 2), ErrorKind::InvalidInput);
}

TEST(ModTheorem, EightFourModEight) {
  for (int c = 0; c <= 4; ++c) EXPECT_EQ(count_real(8, 4, c) % 8, 6);
  const ModReport r = mod_theorem_check(4, 8, 2);
  EXPECT_TRUE(r.hypothesis);
  EXPECT_TRUE(r.constant);
  EXPECT_TRUE(r.holds());
}

TEST(ModTheorem, HoldsUpToTwelve) {
  for (int b = 2; b <= 12; ++b) {
    for (int a = 1; a < b; ++a) {
      for (int k = 1; k <= 2; ++k) {
        const ModReport r = mod_theorem_check(a, b, k);
        EXPECT_TRUE(r.holds()) << "a=" << a << " b=" << b << " k=" << k;
        if (a % 2 == 0 && b % 2 == 0 && k == 1) {
          EXPECT_EQ(r.c_empty % 4, binomial(b / 2, a / 2) % 4);
        }
      }
    }
  }
}

TEST(ModTheorem, OddCaseSixThree) {
  const ModReport r = mod_theorem_check(3, 6, 1);
  ASSERT_TRUE(r.odd_prediction.has_value());
  EXPECT_TRUE(*r.odd_prediction);  // binom(2, 1) = 2 is even
  EXPECT_TRUE(r.constant);
  EXPECT_EQ(r.counts, (std::vector<BigInt>{20, 8, 4, 0}));
}

TEST(ModTheorem, OddCaseNotConstant) {
  // a = 1, b = 4: binom(1, 0) = 1 is odd, counts 4, 2, 0 are not constant mod 4.
  const ModReport r = mod_theorem_check(1, 4, 1);
  ASSERT_TRUE(r.odd_prediction.has_value());
  EXPECT_FALSE(*r.odd_prediction);
  EXPECT_FALSE(r.constant);
  EXPECT_TRUE(r.holds());
}
