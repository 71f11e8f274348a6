// Copyright 2026 The NHSDP Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "nhsdp/core_math.hpp"
#include "oracles.hpp"

namespace nhsdp {
namespace {

TEST(ReduceMod, NegativeInputsLandInRange) {
  EXPECT_EQ(reduce_mod(-1, 15), 14);
  EXPECT_EQ(reduce_mod(-62, 125), 63);
  EXPECT_EQ(reduce_mod(30, 15), 0);
  EXPECT_EQ(reduce_mod(7, 15), 7);
}

TEST(OddResidueRing, RejectsEvenAndTinyModuli) {
  EXPECT_THROW(OddResidueRing(4), std::invalid_argument);
  EXPECT_THROW(OddResidueRing(1), std::invalid_argument);
  EXPECT_NO_THROW(OddResidueRing(3));
}

TEST(OddResidueRing, InverseOfTwo) {
  for (std::int64_t v = 3; v < 200; v += 2) {
    const OddResidueRing r(v);
    EXPECT_EQ((2 * r.inv2()) % v, 1) << v;
  }
}

TEST(OddResidueRing, HalfSumMatchesMultiplicationByInverse) {
  for (std::int64_t v : {3, 15, 125, 1331}) {
    const OddResidueRing r(v);
    for (std::int64_t x = 0; x < std::min<std::int64_t>(v, 60); ++x)
      for (std::int64_t y = 0; y < std::min<std::int64_t>(v, 60); ++y) {
        const std::int64_t h = r.half_sum(x, y);
        EXPECT_EQ(h, ((x + y) % v) * r.inv2() % v);
        EXPECT_EQ((2 * h) % v, (x + y) % v);
      }
  }
}

TEST(OddResidueRing, Example1HalfSums) {
  const OddResidueRing r(15);
  EXPECT_EQ(r.half_sum(14, 13), 6);   // (-1-2)/2
  EXPECT_EQ(r.half_sum(14, 2), 8);    // (-1+2)/2 = -7
  EXPECT_EQ(r.half_sum(11, 10), 3);   // (-4-5)/2
}

TEST(Binomial, MatchesPascalTriangle) {
  for (unsigned n = 0; n <= 40; ++n)
    for (unsigned k = 0; k <= n + 1; ++k) EXPECT_EQ(binomial(n, k), oracle::pascal(n, k)) << n << "," << k;
  EXPECT_EQ(binomial(22, 8), 319770);
  EXPECT_EQ(binomial(10, 5), 252);
}

TEST(GaussianBinomial, MatchesQPascal) {
  for (unsigned q : {2U, 3U, 4U, 5U})
    for (unsigned k = 0; k <= 9; ++k)
      for (unsigned t = 0; t <= k; ++t)
        EXPECT_EQ(gaussian_binomial(k, t, q), oracle::q_pascal(k, t, q)) << q << ":" << k << "," << t;
}

TEST(GaussianBinomial, KnownValues) {
  EXPECT_EQ(gaussian_binomial(8, 1, 2), 255);
  EXPECT_EQ(gaussian_binomial(8, 5, 2), 97155);
  EXPECT_EQ(gaussian_binomial(4, 1, 4), 85);
  EXPECT_EQ(gaussian_binomial(2, 1, 3), 4);
}

TEST(GaussianBinomial, RejectsBadArguments) {
  EXPECT_THROW(gaussian_binomial(3, 1, 1), std::invalid_argument);
  EXPECT_THROW(gaussian_binomial(3, 4, 2), std::invalid_argument);
}

TEST(GcdLcm, Basics) {
  EXPECT_EQ(gcd_lcm(16, 125), (GcdLcm{1, 2000}));
  EXPECT_EQ(gcd_lcm(10, 125), (GcdLcm{5, 250}));
  EXPECT_THROW(gcd_lcm(0, 5), std::invalid_argument);
}

TEST(IntegerRoot, ExactNearPerfectPowers) {
  EXPECT_EQ(integer_root(2199, 3), 13);  // 13^3 = 2197
  EXPECT_EQ(integer_root(2196, 3), 12);
  EXPECT_EQ(integer_root(2197, 3), 13);
  EXPECT_EQ(integer_root(125, 3), 5);
  EXPECT_EQ(integer_root(124, 3), 4);
  EXPECT_EQ(integer_root(0, 4), 0);
  EXPECT_EQ(integer_root(1, 4), 1);
  EXPECT_EQ(integer_root(99, 1), 99);
}

TEST(IntegerRoot, RandomAgainstDefinition) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t v = static_cast<std::int64_t>(rng() % 1'000'000'000'000ULL);
    const unsigned n = 1 + static_cast<unsigned>(rng() % 6);
    const std::int64_t r = integer_root(v, n);
    EXPECT_LE(ipow(BigInt(r), n), BigInt(v));
    EXPECT_GT(ipow(BigInt(r + 1), n), BigInt(v));
  }
}

TEST(CheckedArithmetic, DetectsOverflow) {
  EXPECT_THROW(checked_mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
  EXPECT_THROW(checked_add(INT64_MAX, 1), std::overflow_error);
  EXPECT_EQ(checked_mul(3, 4), 12);
}

TEST(RationalFormatting, ReducedFraction) {
  EXPECT_EQ(to_string(Rational(122, 250)), "61/125");
  EXPECT_EQ(to_string(Rational(8)), "8");
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 4)), 0.25);
}

}  // namespace
}  // namespace nhsdp
