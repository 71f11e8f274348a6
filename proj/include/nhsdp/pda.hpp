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

// Placement delivery arrays: the array type, an exhaustive verifier, and the
// constructions that produce or transform them (cyclic packing lift,
// conjugation, divisible grouping, Maddah-Ali-Niesen, column removal).

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nhsdp/core_math.hpp"
#include "nhsdp/packing.hpp"

namespace nhsdp {

/// A PDA cell: 0 is a star, s >= 1 is a symbol id.
using Cell = std::int32_t;
inline constexpr Cell kStar = 0;

/// An F x K array over {*} and [1, S], with a declared star count Z per
/// column. The constructor only checks shape; verify_pda() checks the axioms.
class Pda {
 public:
  Pda(std::size_t rows, std::size_t cols, std::size_t stars_per_column, std::size_t symbols,
      std::vector<Cell> cells)
      : rows_(rows), cols_(cols), z_(stars_per_column), s_(symbols), cells_(std::move(cells)) {
    if (cells_.size() != rows_ * cols_) throw std::invalid_argument("Pda: grid size does not match F x K");
    for (Cell c : cells_) {
      if (c < 0) throw std::invalid_argument("Pda: negative cell value");
    }
  }

  /// Infers Z from column 0 and S from the largest symbol.
  static Pda from_grid(std::size_t rows, std::size_t cols, std::vector<Cell> cells) {
    if (cells.size() != rows * cols) throw std::invalid_argument("Pda: grid size does not match F x K");
    std::size_t z = 0;
    if (cols > 0) {
      for (std::size_t f = 0; f < rows; ++f) z += cells[f * cols] == kStar;
    }
    Cell s = 0;
    for (Cell c : cells) s = std::max(s, c);
    return Pda(rows, cols, z, static_cast<std::size_t>(s), std::move(cells));
  }

  std::size_t rows() const noexcept { return rows_; }                // F
  std::size_t cols() const noexcept { return cols_; }                // K
  std::size_t stars_per_column() const noexcept { return z_; }       // Z
  std::size_t symbols() const noexcept { return s_; }                // S

  Cell at(std::size_t f, std::size_t k) const { return cells_[f * cols_ + k]; }
  bool is_star(std::size_t f, std::size_t k) const { return at(f, k) == kStar; }
  std::span<const Cell> row(std::size_t f) const { return {cells_.data() + f * cols_, cols_}; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  std::string label() const {
    std::ostringstream os;
    os << "(" << cols_ << "," << rows_ << "," << z_ << "," << s_ << ")";
    return os.str();
  }

  /// Positions of every symbol, indexed by symbol id (index 0 unused).
  /// Symbols above S are ignored.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occurrences() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> occ(s_ + 1);
    for (std::size_t f = 0; f < rows_; ++f) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Cell c = at(f, k);
        if (c != kStar && static_cast<std::size_t>(c) <= s_) occ[static_cast<std::size_t>(c)].emplace_back(f, k);
      }
    }
    return occ;
  }

  friend bool operator==(const Pda&, const Pda&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t z_;
  std::size_t s_;
  std::vector<Cell> cells_;
};

// ---------------------------------------------------------------------------
// Verification

enum class PdaCondition { kC1, kC2, kC3a, kC3b };

inline const char* to_string(PdaCondition c) {
  switch (c) {
    case PdaCondition::kC1: return "C1";
    case PdaCondition::kC2: return "C2";
    case PdaCondition::kC3a: return "C3a";
    case PdaCondition::kC3b: return "C3b";
  }
  return "?";
}

struct PdaViolation {
  PdaCondition condition;
  Cell symbol = kStar;
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, column), 0-based
  std::string detail;

  std::string describe() const {
    std::ostringstream os;
    os << to_string(condition) << ": " << detail;
    if (!cells.empty()) {
      os << " at";
      for (auto [f, k] : cells) os << " (" << f << "," << k << ")";
    }
    return os.str();
  }
};

struct PdaVerdict {
  std::vector<PdaViolation> violations;  // at most kMaxReported entries
  std::size_t violation_count = 0;

  static constexpr std::size_t kMaxReported = 32;

  bool valid() const noexcept { return violation_count == 0; }
  explicit operator bool() const noexcept { return valid(); }
  bool has(PdaCondition c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const PdaViolation& v) { return v.condition == c; });
  }
};

/// Checks C1, C2, C3a and C3b. Pairs are only compared within a symbol
/// class, so the cost is O(F K + sum_s occ(s)^2).
inline PdaVerdict verify_pda(const Pda& pda) {
  PdaVerdict verdict;
  auto report = [&](PdaViolation v) {
    ++verdict.violation_count;
    if (verdict.violations.size() < PdaVerdict::kMaxReported) verdict.violations.push_back(std::move(v));
  };
  const std::size_t F = pda.rows();
  const std::size_t K = pda.cols();
  const std::size_t S = pda.symbols();

  for (std::size_t k = 0; k < K; ++k) {
    std::size_t stars = 0;
    for (std::size_t f = 0; f < F; ++f) stars += pda.is_star(f, k);
    if (stars != pda.stars_per_column()) {
      report({PdaCondition::kC1, kStar, {},
              "column " + std::to_string(k) + " has " + std::to_string(stars) + " stars, expected " +
                  std::to_string(pda.stars_per_column())});
    }
  }

  for (std::size_t f = 0; f < F; ++f) {
    for (std::size_t k = 0; k < K; ++k) {
      const Cell c = pda.at(f, k);
      if (c != kStar && static_cast<std::size_t>(c) > S) {
        report({PdaCondition::kC2, c, {{f, k}}, "symbol " + std::to_string(c) + " exceeds S=" + std::to_string(S)});
      }
    }
  }

  const auto occ = pda.occurrences();
  for (std::size_t s = 1; s <= S; ++s) {
    if (occ[s].empty()) {
      report({PdaCondition::kC2, static_cast<Cell>(s), {}, "symbol " + std::to_string(s) + " never occurs"});
    }
  }

  for (std::size_t s = 1; s <= S; ++s) {
    const auto& cells = occ[s];
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        const auto [f1, k1] = cells[a];
        const auto [f2, k2] = cells[b];
        if (f1 == f2 || k1 == k2) {
          report({PdaCondition::kC3a, static_cast<Cell>(s), {cells[a], cells[b]},
                  "symbol " + std::to_string(s) + " repeats in a " + (f1 == f2 ? "row" : "column")});
        }
        if (!pda.is_star(f1, k2) || !pda.is_star(f2, k1)) {
          report({PdaCondition::kC3b, static_cast<Cell>(s), {cells[a], cells[b]},
                  "symbol " + std::to_string(s) + " lacks stars at the cross cells (" + std::to_string(f1) + "," +
                      std::to_string(k2) + ") and (" + std::to_string(f2) + "," + std::to_string(k1) + ")"});
        }
      }
    }
  }
  return verdict;
}

class PdaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_valid(const Pda& pda, const char* who) {
  const auto verdict = verify_pda(pda);
  if (!verdict) {
    throw PdaError(std::string(who) + ": input is not a valid PDA: " + verdict.violations.front().describe());
  }
}

// ---------------------------------------------------------------------------
// Statistics

struct PdaStats {
  std::size_t K = 0, F = 0, Z = 0, S = 0;
  std::optional<std::size_t> regular_g;  // set iff every symbol occurs equally often
  Rational memory_ratio;                 // Z / F
  Rational load;                         // S / F
  std::optional<Rational> gain;          // K (1 - Z/F) / (S/F); absent when S = 0
};

inline PdaStats pda_stats(const Pda& pda) {
  PdaStats st;
  st.K = pda.cols();
  st.F = pda.rows();
  st.Z = pda.stars_per_column();
  st.S = pda.symbols();
  if (st.F == 0) throw std::invalid_argument("pda_stats: empty array");
  st.memory_ratio = Rational(st.Z, st.F);
  st.load = Rational(st.S, st.F);
  if (st.S > 0) st.gain = Rational(st.K) * (Rational(1) - st.memory_ratio) / st.load;

  const auto occ = pda.occurrences();
  if (st.S > 0) {
    const std::size_t first = occ[1].size();
    bool regular = first > 0;
    for (std::size_t s = 2; s <= st.S && regular; ++s) regular = occ[s].size() == first;
    if (regular) st.regular_g = first;
  }
  return st;
}

// ---------------------------------------------------------------------------
// Constructions

/// Symbol id of the pair (c, block) in the cyclic lift: block * v + c + 1.
inline Cell lift_symbol(std::int64_t v, std::size_t block, std::int64_t c) {
  return static_cast<Cell>(static_cast<std::int64_t>(block) * v + c + 1);
}

/// v x v array with p(f,k) = pair (f+k, i) when k-f lies in block i, else *.
/// The result is a g-regular (v, v, v - bg, bv) PDA.
inline Pda pda_from_nhsdp(const Nhsdp& packing) {
  const std::int64_t v = packing.v();
  const auto n = static_cast<std::size_t>(v);
  if (static_cast<std::int64_t>(packing.b()) * v > INT32_MAX) throw std::overflow_error("pda_from_nhsdp: too many symbols");
  std::vector<Cell> cells(n * n, kStar);
  for (std::int64_t f = 0; f < v; ++f) {
    for (std::int64_t k = 0; k < v; ++k) {
      if (auto blk = packing.block_of(k - f)) {
        cells[static_cast<std::size_t>(f) * n + static_cast<std::size_t>(k)] = lift_symbol(v, *blk, (f + k) % v);
      }
    }
  }
  const std::size_t bg = packing.b() * packing.g();
  return Pda(n, n, n - bg, packing.b() * n, std::move(cells));
}

/// Rows become symbols and symbols become rows: (K, F, Z, S) -> (K, S, S-(F-Z), F).
inline Pda conjugate_pda(const Pda& pda) {
  require_valid(pda, "conjugate_pda");
  const std::size_t F = pda.rows(), K = pda.cols(), Z = pda.stars_per_column(), S = pda.symbols();
  if (Z == 0 || Z >= F) throw std::invalid_argument("conjugate_pda: requires 0 < Z < F");
  for (std::size_t f = 0; f < F; ++f) {
    const auto r = pda.row(f);
    if (std::all_of(r.begin(), r.end(), [](Cell c) { return c == kStar; })) {
      throw std::invalid_argument("conjugate_pda: row " + std::to_string(f) +
                                  " is all stars; compact the array first");
    }
  }
  std::vector<Cell> cells(S * K, kStar);
  for (std::size_t f = 0; f < F; ++f) {
    for (std::size_t k = 0; k < K; ++k) {
      const Cell s = pda.at(f, k);
      if (s != kStar) cells[(static_cast<std::size_t>(s) - 1) * K + k] = static_cast<Cell>(f + 1);
    }
  }
  return Pda(S, K, S - (F - Z), F, std::move(cells));
}

/// Side-by-side copies with disjoint alphabets: (K1, F, Z, S) -> (K, F, Z, (K/K1) S).
/// Only the divisible case K1 | K is constructed.
inline Pda group_pda_divisible(const Pda& pda, std::size_t users) {
  require_valid(pda, "group_pda_divisible");
  const std::size_t K1 = pda.cols();
  if (K1 == 0 || users == 0 || users % K1 != 0) {
    throw std::invalid_argument("group_pda_divisible: K=" + std::to_string(users) +
                                " is not a multiple of K1=" + std::to_string(K1));
  }
  const std::size_t h = users / K1;
  const std::size_t F = pda.rows(), S = pda.symbols();
  if (h * S > INT32_MAX) throw std::overflow_error("group_pda_divisible: too many symbols");
  std::vector<Cell> cells(F * users, kStar);
  for (std::size_t copy = 0; copy < h; ++copy) {
    for (std::size_t f = 0; f < F; ++f) {
      for (std::size_t k = 0; k < K1; ++k) {
        const Cell c = pda.at(f, k);
        cells[f * users + copy * K1 + k] = c == kStar ? kStar : static_cast<Cell>(c + copy * S);
      }
    }
  }
  return Pda(F, users, pda.stars_per_column(), h * S, std::move(cells));
}

/// Maddah-Ali-Niesen PDA. Rows are the t-subsets of [K] in colex order; cell
/// (T, k) is * when k is in T, else the colex rank (1-based) of T + {k}.
inline Pda mn_pda(std::size_t users, std::size_t t) {
  if (t == 0 || t >= users) throw std::invalid_argument("mn_pda: requires 1 <= t < K");
  const BigInt rows_big = binomial(users, t);
  const BigInt syms_big = binomial(users, t + 1);
  if (rows_big * users > BigInt(50'000'000) || syms_big > BigInt(INT32_MAX)) {
    throw std::invalid_argument("mn_pda: array too large to materialise");
  }
  const auto F = rows_big.convert_to<std::size_t>();
  const auto S = syms_big.convert_to<std::size_t>();

  // choose[n][r] for n <= K, r <= t + 1
  std::vector<std::vector<std::uint64_t>> choose(users + 1, std::vector<std::uint64_t>(t + 2, 0));
  for (std::size_t n = 0; n <= users; ++n) {
    choose[n][0] = 1;
    for (std::size_t r = 1; r <= std::min(n, t + 1); ++r) {
      choose[n][r] = choose[n - 1][r - 1] + (r <= n - 1 ? choose[n - 1][r] : 0);
    }
  }

  std::vector<Cell> cells(F * users, kStar);
  std::vector<std::size_t> subset(t);
  for (std::size_t i = 0; i < t; ++i) subset[i] = i;
  std::vector<std::size_t> merged(t + 1);
  for (std::size_t row = 0; row < F; ++row) {
    for (std::size_t k = 0; k < users; ++k) {
      if (std::binary_search(subset.begin(), subset.end(), k)) continue;
      std::merge(subset.begin(), subset.end(), &k, &k + 1, merged.begin());
      std::uint64_t rank = 0;
      for (std::size_t j = 0; j <= t; ++j) rank += choose[merged[j]][j + 1];
      cells[row * users + k] = static_cast<Cell>(rank + 1);
    }
    // next t-subset in colex order
    std::size_t i = 0;
    while (i + 1 < t && subset[i] + 1 == subset[i + 1]) ++i;
    ++subset[i];
    for (std::size_t j = 0; j < i; ++j) subset[j] = j;
  }
  const std::size_t Z = binomial(users - 1, t - 1).convert_to<std::size_t>();
  return Pda(F, users, Z, S, std::move(cells));
}

/// Restricts the array to the given columns (in ascending order) and
/// renumbers the surviving symbols onto [1, S'] preserving their order.
inline Pda drop_columns(const Pda& pda, const std::set<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("drop_columns: keep set is empty");
  for (auto k : keep) {
    if (k >= pda.cols()) throw std::invalid_argument("drop_columns: column " + std::to_string(k) + " out of range");
  }
  const std::size_t F = pda.rows(), K = keep.size();
  std::vector<Cell> renumber(pda.symbols() + 1, kStar);
  for (std::size_t f = 0; f < F; ++f) {
    for (auto k : keep) {
      const Cell c = pda.at(f, k);
      if (c != kStar && static_cast<std::size_t>(c) <= pda.symbols()) renumber[static_cast<std::size_t>(c)] = 1;
    }
  }
  Cell next = 0;
  for (auto& r : renumber) {
    if (r != kStar) r = ++next;
  }
  std::vector<Cell> cells;
  cells.reserve(F * K);
  for (std::size_t f = 0; f < F; ++f) {
    for (auto k : keep) {
      const Cell c = pda.at(f, k);
      cells.push_back(c == kStar ? kStar : renumber[static_cast<std::size_t>(c)]);
    }
  }
  return Pda(F, K, pda.stars_per_column(), static_cast<std::size_t>(next), std::move(cells));
}

/// Even user counts: build for K+1 users and remove the extra (last) column.
inline Pda drop_virtual_user(const Pda& pda) {
  if (pda.cols() < 2) throw std::invalid_argument("drop_virtual_user: need at least two columns");
  std::set<std::size_t> keep;
  for (std::size_t k = 0; k + 1 < pda.cols(); ++k) keep.insert(k);
  return drop_columns(pda, keep);
}

/// PDA for an arbitrary user count from block parameters m: odd K uses
/// v = K, even K uses v = K + 1 and drops the virtual user.
inline Pda nhsdp_pda_for_users(std::int64_t users, std::span<const std::int64_t> m) {
  if (users < 2) throw std::invalid_argument("nhsdp_pda_for_users: need at least two users");
  const std::int64_t v = users % 2 == 1 ? users : users + 1;
  Pda pda = pda_from_nhsdp(construct_nhsdp(v, m));
  return users == v ? pda : drop_virtual_user(pda);
}

}  // namespace nhsdp
