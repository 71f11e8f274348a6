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

#include <vector>

#include "fixtures.hpp"
#include "nhsdp/caching_sim.hpp"
#include "nhsdp/packing.hpp"
#include "nhsdp/pda.hpp"

namespace nhsdp {
namespace {

Pda small_pda() {
  std::vector<Cell> cells;
  for (const auto& r : fixtures::kSmallPda) cells.insert(cells.end(), r.begin(), r.end());
  return Pda::from_grid(4, 4, std::move(cells));
}

Bytes xor_of(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  Bytes out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= b[i];
  return out;
}

TEST(FileLibrary, DeterministicAndShaped) {
  const FileLibrary a(3, 4, 16, 7), b(3, 4, 16, 7), c(3, 4, 16, 8);
  EXPECT_EQ(a.file(2).size(), 64U);
  EXPECT_TRUE(std::ranges::equal(a.file(1), b.file(1)));
  EXPECT_FALSE(std::ranges::equal(a.file(1), c.file(1)));
  EXPECT_THROW(FileLibrary(0, 4, 16, 0), std::invalid_argument);
}

TEST(Placement, UserOneCachesStarRows) {
  const Pda p = small_pda();
  const FileLibrary lib(4, 4, 16, 1);
  const auto cache = place(p, lib);
  EXPECT_TRUE(cache.contains(0, 0, 0));
  EXPECT_FALSE(cache.contains(0, 0, 1));
  EXPECT_TRUE(cache.contains(0, 0, 2));
  EXPECT_FALSE(cache.contains(0, 0, 3));
  EXPECT_EQ(cache.rows_cached(0), 2U);
  EXPECT_EQ(cache.cached_bytes(0), 2U * 4 * 16);
  for (std::size_t n = 0; n < 4; ++n) EXPECT_TRUE(std::ranges::equal(cache.packet(0, n, 2), lib.packet(n, 2)));
  EXPECT_THROW(static_cast<void>(cache.packet(0, 0, 1)), std::out_of_range);
}

TEST(Delivery, FirstTransmissionIsPairwiseXor) {
  const Pda p = small_pda();
  const FileLibrary lib(4, 4, 16, 1);
  const std::vector<std::size_t> d{0, 1, 2, 3};
  const auto t = deliver(p, lib, d);
  ASSERT_EQ(t.transmissions.size(), 4U);
  // user 1 wants file 1 packet 2, user 2 wants file 2 packet 1
  EXPECT_EQ(t.transmissions[0].payload, xor_of(lib.packet(0, 1), lib.packet(1, 0)));
  EXPECT_EQ(t.bytes_on_wire, 64U);
  EXPECT_EQ(t.measured_load(), Rational(1));
}

TEST(Delivery, XorSelfConsistency) {
  const Pda p = pda_from_nhsdp(Nhsdp::make(15, fixtures::kExample1));
  const FileLibrary lib(3, 15, 8, 11);
  std::vector<std::size_t> d(15);
  for (std::size_t k = 0; k < 15; ++k) d[k] = k % 3;
  const auto t = deliver(p, lib, d);
  for (const auto& tx : t.transmissions) {
    Bytes acc(8, 0);
    for (auto [k, j] : tx.contributors) xor_into(acc, lib.packet(d[k], j));
    EXPECT_EQ(acc, tx.payload);
    EXPECT_EQ(tx.contributors.size(), 4U);
  }
  for (std::size_t k = 0; k < 15; ++k) {
    const auto cache = place(p, lib);
    const Bytes got = decode(p, cache, t, k);
    EXPECT_TRUE(std::ranges::equal(got, lib.file(d[k])));
  }
}

TEST(Delivery, RejectsBadDemands) {
  const Pda p = small_pda();
  const FileLibrary lib(2, 4, 4, 0);
  EXPECT_THROW(deliver(p, lib, std::vector<std::size_t>{0, 1}), std::invalid_argument);
  EXPECT_THROW(deliver(p, lib, std::vector<std::size_t>{0, 1, 2, 0}), std::invalid_argument);
  const FileLibrary wrong(2, 3, 4, 0);
  EXPECT_THROW(deliver(p, wrong, std::vector<std::size_t>{0, 1, 1, 0}), std::invalid_argument);
}

TEST(DemandCheck, SmallPdaExhaustive) {
  const auto r = exhaustive_demand_check(small_pda(), 4, 16, 1000);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.demands_checked, 256U);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_load, Rational(1));
}

TEST(DemandCheck, SmallestNhsdpExhaustive) {
  const Pda p = pda_from_nhsdp(Nhsdp::make(3, {{1, 2}}));
  const auto r = exhaustive_demand_check(p, 3, 8, 1000);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.demands_checked, 27U);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.expected_load, Rational(1));
}

TEST(DemandCheck, Example2TwoFilesExhaustive) {
  const Pda p = pda_from_nhsdp(Nhsdp::make(15, fixtures::kExample1));
  const auto r = exhaustive_demand_check(p, 2, 4, 1U << 15);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.demands_checked, 32768U);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_load, Rational(2));
}

TEST(DemandCheck, SampledWhenOverBudget) {
  const Pda p = pda_from_nhsdp(Nhsdp::make(15, fixtures::kExample1));
  const auto r = exhaustive_demand_check(p, 15, 4, 50, 3);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.demands_checked, 50U);
  EXPECT_TRUE(r.passed());
}

TEST(DemandCheck, AllStarArrayNeedsNoTransmissions) {
  const Pda p(2, 3, 2, 0, std::vector<Cell>(6, kStar));
  const auto r = exhaustive_demand_check(p, 2, 4, 100);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_load, Rational(0));
}

// An array that breaks the cross-cell condition must fail to decode.
TEST(DemandCheck, BrokenArrayIsDetected) {
  const Pda p(2, 2, 0, 2, {1, 2, 2, 1});
  const auto r = exhaustive_demand_check(p, 2, 4, 100);
  EXPECT_FALSE(r.passed());
  EXPECT_GT(r.failed_demands, 0U);
  EXPECT_FALSE(r.failure_samples.empty());
}

TEST(DemandCheck, Example3Sampled) {
  const Pda p = pda_from_nhsdp(construct_nhsdp(125, std::vector<std::int64_t>{2, 2, 2}));
  const auto r = exhaustive_demand_check(p, 125, 2, 20, 9);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.expected_load, Rational(8));
  const auto c = exhaustive_demand_check(conjugate_pda(p), 125, 2, 5, 9);
  EXPECT_TRUE(c.passed());
  EXPECT_EQ(c.expected_load, Rational(1, 8));
}

}  // namespace
}  // namespace nhsdp
