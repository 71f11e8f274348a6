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

// End-to-end simulation of a PDA-driven coded caching scheme: uncoded
// placement from the star pattern, one XOR broadcast per symbol, and
// per-user decoding from cache plus transcript.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nhsdp/core_math.hpp"
#include "nhsdp/pda.hpp"

namespace nhsdp {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kDefaultPacketLen = 16;

/// N files, each split into F packets of packet_len bytes, filled with
/// pseudo-random bytes from a 64-bit seed.
class FileLibrary {
 public:
  FileLibrary(std::size_t files, std::size_t packets, std::size_t packet_len, std::uint64_t seed)
      : files_(files), packets_(packets), packet_len_(packet_len), seed_(seed) {
    if (files == 0 || packets == 0 || packet_len == 0) {
      throw std::invalid_argument("FileLibrary: N, F and packet_len must be positive");
    }
    data_.resize(files * packets * packet_len);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < data_.size(); i += 8) {
      std::uint64_t word = rng();
      for (std::size_t b = 0; b < 8 && i + b < data_.size(); ++b) {
        data_[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
      }
    }
  }

  std::size_t files() const noexcept { return files_; }
  std::size_t packets() const noexcept { return packets_; }
  std::size_t packet_len() const noexcept { return packet_len_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const std::uint8_t> packet(std::size_t n, std::size_t j) const {
    return {data_.data() + (n * packets_ + j) * packet_len_, packet_len_};
  }
  std::span<const std::uint8_t> file(std::size_t n) const {
    return {data_.data() + n * packets_ * packet_len_, packets_ * packet_len_};
  }

 private:
  std::size_t files_;
  std::size_t packets_;
  std::size_t packet_len_;
  std::uint64_t seed_;
  Bytes data_;
};

/// What each user stores after placement: W_{n,j} for every file n and every
/// row j where the user's column holds a star.
class CacheContents {
 public:
  CacheContents(std::size_t users, std::size_t files, std::size_t packets, std::size_t packet_len)
      : files_(files), packets_(packets), packet_len_(packet_len), slot_(users), data_(users) {
    for (auto& s : slot_) s.assign(packets, -1);
  }

  std::size_t users() const noexcept { return slot_.size(); }
  std::size_t packet_len() const noexcept { return packet_len_; }

  bool contains(std::size_t user, std::size_t /*file*/, std::size_t j) const { return slot_[user][j] >= 0; }

  std::span<const std::uint8_t> packet(std::size_t user, std::size_t file, std::size_t j) const {
    const auto idx = slot_[user][j];
    if (idx < 0) throw std::out_of_range("CacheContents: packet not cached");
    const std::size_t rows = rows_cached(user);
    return {data_[user].data() + (file * rows + static_cast<std::size_t>(idx)) * packet_len_, packet_len_};
  }

  std::size_t rows_cached(std::size_t user) const { return data_[user].size() / (files_ * packet_len_); }
  std::size_t cached_bytes(std::size_t user) const { return data_[user].size(); }

  /// (file, packet) pairs held by a user, file-major.
  std::vector<std::pair<std::size_t, std::size_t>> entries(std::size_t user) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t n = 0; n < files_; ++n) {
      for (std::size_t j = 0; j < packets_; ++j) {
        if (slot_[user][j] >= 0) out.emplace_back(n, j);
      }
    }
    return out;
  }

 private:
  friend CacheContents place(const Pda&, const FileLibrary&);

  std::size_t files_;
  std::size_t packets_;
  std::size_t packet_len_;
  std::vector<std::vector<std::int64_t>> slot_;  // per user: row -> slot or -1
  std::vector<Bytes> data_;                      // per user: [file][slot][byte]
};

inline CacheContents place(const Pda& pda, const FileLibrary& library) {
  if (library.packets() != pda.rows()) {
    throw std::invalid_argument("place: library has " + std::to_string(library.packets()) +
                                " packets per file but the PDA has F=" + std::to_string(pda.rows()));
  }
  const std::size_t K = pda.cols(), F = pda.rows(), N = library.files(), L = library.packet_len();
  CacheContents cache(K, N, F, L);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < F; ++j) {
      if (pda.is_star(j, k)) {
        cache.slot_[k][j] = static_cast<std::int64_t>(rows.size());
        rows.push_back(j);
      }
    }
    auto& buf = cache.data_[k];
    buf.reserve(N * rows.size() * L);
    for (std::size_t n = 0; n < N; ++n) {
      for (auto j : rows) {
        const auto p = library.packet(n, j);
        buf.insert(buf.end(), p.begin(), p.end());
      }
    }
  }
  return cache;
}

struct Transmission {
  Cell symbol = kStar;
  Bytes payload;
  std::vector<std::pair<std::size_t, std::size_t>> contributors;  // (user, packet row)
};

struct DeliveryTranscript {
  std::vector<std::size_t> demand;  // 0-based file index per user
  std::size_t packets = 0;          // F
  std::size_t packet_len = 0;
  std::uint64_t seed = 0;
  std::vector<Transmission> transmissions;  // symbol order 1..S
  std::size_t bytes_on_wire = 0;

  Rational measured_load() const { return Rational(bytes_on_wire, packets * packet_len); }
};

inline void xor_into(std::span<std::uint8_t> acc, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= src[i];
}

/// One broadcast per symbol s: the XOR of W_{d_k, j} over cells (j, k) = s.
inline DeliveryTranscript deliver(const Pda& pda, const FileLibrary& library, std::span<const std::size_t> demand) {
  if (demand.size() != pda.cols()) throw std::invalid_argument("deliver: demand vector must have one entry per user");
  for (auto d : demand) {
    if (d >= library.files()) throw std::invalid_argument("deliver: demand " + std::to_string(d) + " out of range");
  }
  if (library.packets() != pda.rows()) throw std::invalid_argument("deliver: library/PDA packet count mismatch");

  DeliveryTranscript t;
  t.demand.assign(demand.begin(), demand.end());
  t.packets = pda.rows();
  t.packet_len = library.packet_len();
  t.seed = library.seed();
  const auto occ = pda.occurrences();
  t.transmissions.reserve(pda.symbols());
  for (std::size_t s = 1; s <= pda.symbols(); ++s) {
    Transmission tx;
    tx.symbol = static_cast<Cell>(s);
    tx.payload.assign(library.packet_len(), 0);
    for (auto [j, k] : occ[s]) {
      xor_into(tx.payload, library.packet(demand[k], j));
      tx.contributors.emplace_back(k, j);
    }
    t.bytes_on_wire += tx.payload.size();
    t.transmissions.push_back(std::move(tx));
  }
  return t;
}

class UnrecoverablePacket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rebuilds W_{d_k} for user k: cached packets directly, every other packet
/// by cancelling the other contributors of its symbol's broadcast.
inline Bytes decode(const Pda& pda, const CacheContents& cache, const DeliveryTranscript& transcript, std::size_t user) {
  if (user >= pda.cols()) throw std::invalid_argument("decode: user out of range");
  const std::size_t L = transcript.packet_len;
  const std::size_t wanted = transcript.demand[user];
  Bytes file(pda.rows() * L);
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    std::span<std::uint8_t> out(file.data() + j * L, L);
    const Cell s = pda.at(j, user);
    if (s == kStar) {
      const auto p = cache.packet(user, wanted, j);
      std::copy(p.begin(), p.end(), out.begin());
      continue;
    }
    const auto idx = static_cast<std::size_t>(s) - 1;
    if (idx >= transcript.transmissions.size()) throw UnrecoverablePacket("decode: missing transmission");
    const Transmission& tx = transcript.transmissions[idx];
    std::copy(tx.payload.begin(), tx.payload.end(), out.begin());
    for (auto [k2, j2] : tx.contributors) {
      if (k2 == user && j2 == j) continue;
      const std::size_t other_file = transcript.demand[k2];
      if (!cache.contains(user, other_file, j2)) {
        throw UnrecoverablePacket("decode: user " + std::to_string(user) + " lacks W_{" + std::to_string(other_file) +
                                  "," + std::to_string(j2) + "} needed for symbol " + std::to_string(s));
      }
      xor_into(out, cache.packet(user, other_file, j2));
    }
  }
  return file;
}

struct DemandCheckReport {
  std::size_t demands_checked = 0;
  bool exhaustive = false;
  std::size_t decode_failures = 0;            // (demand, user) pairs that failed
  std::size_t failed_demands = 0;             // demands with at least one failure
  std::vector<std::string> failure_samples;  // first few failures
  Rational expected_load;                     // S / F
  Rational max_load;                          // worst measured load over checked demands
  bool all_loads_equal = true;                // every measured load == S / F
  bool cache_sizes_ok = true;                 // every user caches Z N packet_len bytes

  bool passed() const noexcept { return decode_failures == 0 && all_loads_equal && cache_sizes_ok; }
};

/// Runs place/deliver/decode for every demand vector in [N]^K when that fits
/// the budget, otherwise for `budget` deterministic samples that include the
/// all-equal and (when N >= K) all-distinct demands.
inline DemandCheckReport exhaustive_demand_check(const Pda& pda, std::size_t files, std::size_t packet_len,
                                                 std::size_t budget, std::uint64_t seed = 0) {
  if (files == 0 || budget == 0) throw std::invalid_argument("exhaustive_demand_check: N and budget must be positive");
  const std::size_t K = pda.cols(), F = pda.rows();
  const FileLibrary library(files, F, packet_len, seed);
  const CacheContents cache = place(pda, library);

  DemandCheckReport report;
  report.expected_load = Rational(pda.symbols(), F);
  const std::size_t expected_cache = pda.stars_per_column() * files * packet_len;
  for (std::size_t k = 0; k < K; ++k) report.cache_sizes_ok &= cache.cached_bytes(k) == expected_cache;

  auto run_one = [&](const std::vector<std::size_t>& d) {
    ++report.demands_checked;
    const auto t = deliver(pda, library, d);
    const Rational load = t.measured_load();
    if (report.demands_checked == 1 || load > report.max_load) report.max_load = load;
    report.all_loads_equal &= load == report.expected_load;
    const std::size_t failures_before = report.decode_failures;
    for (std::size_t k = 0; k < K; ++k) {
      std::string why;
      try {
        const Bytes got = decode(pda, cache, t, k);
        const auto want = library.file(d[k]);
        if (!std::equal(got.begin(), got.end(), want.begin(), want.end())) why = "wrong bytes";
      } catch (const UnrecoverablePacket& e) {
        why = e.what();
      }
      if (!why.empty()) {
        ++report.decode_failures;
        if (report.failure_samples.size() < 8) {
          std::string dem;
          for (auto x : d) dem += std::to_string(x + 1) + " ";
          report.failure_samples.push_back("user " + std::to_string(k) + ", demand [" + dem + "]: " + why);
        }
      }
    }
    if (report.decode_failures != failures_before) ++report.failed_demands;
  };

  const BigInt total = ipow(BigInt(files), K);
  std::vector<std::size_t> d(K, 0);
  if (total <= budget) {
    report.exhaustive = true;
    while (true) {
      run_one(d);
      std::size_t i = 0;
      while (i < K && d[i] + 1 == files) d[i++] = 0;
      if (i == K) break;
      ++d[i];
    }
    return report;
  }

  run_one(d);  // all users want file 0
  std::size_t used = 1;
  if (files >= K && used < budget) {
    for (std::size_t k = 0; k < K; ++k) d[k] = k;
    run_one(d);
    ++used;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, files - 1);
  for (; used < budget; ++used) {
    for (auto& x : d) x = pick(rng);
    run_one(d);
  }
  return report;
}

}  // namespace nhsdp
