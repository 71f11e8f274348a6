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

// Non-half-sum disjoint packings over Z_v (v odd): verification, the
// recursive block construction, block-parameter selection, and cyclic
// difference packings / planar difference sets as single-block packings.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhsdp/core_math.hpp"

namespace nhsdp {

using Block = std::vector<std::int64_t>;

enum class NhsdpCondition {
  kBlockSize,     // blocks do not share one cardinality
  kDisjointness,  // an element appears twice (across or within blocks)
  kHalfSum,       // a half-sum of two block elements lies in some block
};

inline const char* to_string(NhsdpCondition c) {
  switch (c) {
    case NhsdpCondition::kBlockSize: return "block-size";
    case NhsdpCondition::kDisjointness: return "condition 1 (disjointness)";
    case NhsdpCondition::kHalfSum: return "condition 2 (non-half-sum)";
  }
  return "unknown";
}

struct NhsdpViolation {
  NhsdpCondition condition;
  std::size_t block = 0;        // block holding x (and y)
  std::size_t other_block = 0;  // block holding the clashing element
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t half_sum = 0;  // only meaningful for kHalfSum

  std::string describe() const {
    std::ostringstream os;
    os << to_string(condition) << ": ";
    switch (condition) {
      case NhsdpCondition::kBlockSize:
        os << "block " << block << " has " << x << " elements, block " << other_block << " has " << y;
        break;
      case NhsdpCondition::kDisjointness:
        os << "element " << x << " occurs in block " << block << " and block " << other_block;
        break;
      case NhsdpCondition::kHalfSum:
        os << "half_sum(" << x << "," << y << ")=" << half_sum << " of block " << block
           << " lies in block " << other_block;
        break;
    }
    return os.str();
  }
};

struct NhsdpVerdict {
  std::int64_t v = 0;
  std::size_t g = 0;
  std::size_t b = 0;
  std::optional<NhsdpViolation> violation;

  bool valid() const noexcept { return !violation.has_value(); }
  explicit operator bool() const noexcept { return valid(); }
};

/// Checks both packing conditions plus equal block sizes. Throws
/// std::invalid_argument for an even or too-small modulus, an empty family,
/// an empty block, or an element outside [0, v).
inline NhsdpVerdict verify_nhsdp(std::int64_t v, const std::vector<Block>& blocks) {
  const OddResidueRing ring(v);
  if (blocks.empty()) throw std::invalid_argument("verify_nhsdp: no blocks");
  NhsdpVerdict verdict{v, blocks.front().size(), blocks.size(), std::nullopt};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw std::invalid_argument("verify_nhsdp: empty block");
    for (std::int64_t x : blocks[i]) {
      if (x < 0 || x >= v) {
        throw std::invalid_argument("verify_nhsdp: element " + std::to_string(x) +
                                    " outside [0, " + std::to_string(v) + ")");
      }
    }
  }
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].size() != verdict.g) {
      verdict.violation = NhsdpViolation{NhsdpCondition::kBlockSize, 0, i,
                                         static_cast<std::int64_t>(verdict.g),
                                         static_cast<std::int64_t>(blocks[i].size()), 0};
      return verdict;
    }
  }

  std::vector<std::int64_t> owner(static_cast<std::size_t>(v), -1);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::int64_t x : blocks[i]) {
      auto& o = owner[static_cast<std::size_t>(x)];
      if (o >= 0) {
        verdict.violation = NhsdpViolation{NhsdpCondition::kDisjointness, static_cast<std::size_t>(o), i,
                                           x, x, 0};
        return verdict;
      }
      o = static_cast<std::int64_t>(i);
    }
  }

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& blk = blocks[i];
    for (std::size_t a = 0; a < blk.size(); ++a) {
      for (std::size_t c = a + 1; c < blk.size(); ++c) {
        const std::int64_t h = ring.half_sum(blk[a], blk[c]);
        if (owner[static_cast<std::size_t>(h)] >= 0) {
          verdict.violation = NhsdpViolation{NhsdpCondition::kHalfSum, i,
                                             static_cast<std::size_t>(owner[static_cast<std::size_t>(h)]),
                                             blk[a], blk[c], h};
          return verdict;
        }
      }
    }
  }
  return verdict;
}

class NhsdpError : public std::invalid_argument {
 public:
  explicit NhsdpError(const NhsdpViolation& v)
      : std::invalid_argument("not a valid NHSDP: " + v.describe()), violation_(v) {}
  const NhsdpViolation& violation() const noexcept { return violation_; }

 private:
  NhsdpViolation violation_;
};

/// A verified (v, g, b) non-half-sum disjoint packing.
///
/// Stored canonically: residues in [0, v), each block sorted ascending, and
/// blocks ordered by their smallest element. Only constructible through
/// make(), which verifies.
class Nhsdp {
 public:
  /// Accepts signed residues (e.g. -1 for v-1), reduces them, then
  /// verifies. Throws NhsdpError on a violated condition.
  static Nhsdp make(std::int64_t v, std::vector<Block> blocks) {
    if (v < 3 || v % 2 == 0) {
      throw std::invalid_argument("NHSDP modulus must be odd and >= 3, got " + std::to_string(v));
    }
    for (auto& blk : blocks) {
      for (auto& x : blk) x = reduce_mod(x, v);
      std::sort(blk.begin(), blk.end());
    }
    NhsdpVerdict verdict = verify_nhsdp(v, blocks);
    if (!verdict) throw NhsdpError(*verdict.violation);
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
    return Nhsdp(v, std::move(blocks));
  }

  std::int64_t v() const noexcept { return v_; }
  std::size_t g() const noexcept { return blocks_.front().size(); }
  std::size_t b() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  OddResidueRing ring() const { return OddResidueRing(v_); }

  /// Index of the block containing residue x, if any.
  std::optional<std::size_t> block_of(std::int64_t x) const {
    const auto o = owner_[static_cast<std::size_t>(reduce_mod(x, v_))];
    if (o < 0) return std::nullopt;
    return static_cast<std::size_t>(o);
  }

  std::string label() const {
    return "(" + std::to_string(v_) + "," + std::to_string(g()) + "," + std::to_string(b()) + ")";
  }

  friend bool operator==(const Nhsdp& a, const Nhsdp& b) { return a.v_ == b.v_ && a.blocks_ == b.blocks_; }

 private:
  Nhsdp(std::int64_t v, std::vector<Block> blocks)
      : v_(v), blocks_(std::move(blocks)), owner_(static_cast<std::size_t>(v), -1) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (auto x : blocks_[i]) owner_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(i);
    }
  }

  std::int64_t v_;
  std::vector<Block> blocks_;
  std::vector<std::int32_t> owner_;
};

/// Every half-sum of two distinct elements of a common block.
inline std::set<std::int64_t> half_sum_set(const Nhsdp& p) {
  const auto ring = p.ring();
  std::set<std::int64_t> out;
  for (const auto& blk : p.blocks()) {
    for (std::size_t a = 0; a < blk.size(); ++a) {
      for (std::size_t c = a + 1; c < blk.size(); ++c) out.insert(ring.half_sum(blk[a], blk[c]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Recursive block construction

struct BlockParams {
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> f;  // f(1) = m_1, f(i) = m_i (2 sum_{j<i} f(j) + 1)
  std::vector<std::int64_t> x;  // x_i = f(i) / m_i
  std::int64_t phi = 0;         // sum of f

  std::size_t n() const noexcept { return m.size(); }
  /// Smallest modulus the construction accepts.
  std::int64_t min_modulus() const { return checked_add(checked_mul(2, phi), 1); }
};

inline BlockParams block_params(std::span<const std::int64_t> m) {
  if (m.empty()) throw std::invalid_argument("block_params: need at least one m_i");
  BlockParams p;
  p.m.assign(m.begin(), m.end());
  std::int64_t prefix = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1) throw std::invalid_argument("block_params: every m_i must be >= 1");
    const std::int64_t xi = (i == 0) ? 1 : checked_add(checked_mul(2, prefix), 1);
    const std::int64_t fi = checked_mul(m[i], xi);
    p.x.push_back(xi);
    p.f.push_back(fi);
    prefix = checked_add(prefix, fi);
  }
  p.phi = prefix;
  return p;
}

/// The family {D_a : a in [m_1] x ... x [m_n]} with
/// D_a = { sum_i alpha_i a_i x_i : alpha in {-1,1}^n } reduced mod v.
/// Yields a (v, 2^n, prod m_i) NHSDP whenever v >= 2 phi + 1.
inline Nhsdp construct_nhsdp(std::int64_t v, std::span<const std::int64_t> m) {
  const BlockParams params = block_params(m);
  if (v < 3 || v % 2 == 0) throw std::invalid_argument("construct_nhsdp: v must be odd and >= 3");
  if (v < params.min_modulus()) {
    throw std::invalid_argument("construct_nhsdp: v=" + std::to_string(v) + " is below 2*phi+1=" +
                                std::to_string(params.min_modulus()));
  }
  const std::size_t n = params.n();
  if (n > 30) throw std::invalid_argument("construct_nhsdp: n too large");

  std::vector<Block> blocks;
  std::vector<std::int64_t> a(n, 1);
  const std::size_t signs = std::size_t{1} << n;
  while (true) {
    Block blk;
    blk.reserve(signs);
    for (std::size_t mask = 0; mask < signs; ++mask) {
      std::int64_t value = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t term = a[i] * params.x[i];
        value += ((mask >> i) & 1U) ? -term : term;
      }
      blk.push_back(value);
    }
    blocks.push_back(std::move(blk));
    // a_1 varies fastest
    std::size_t i = 0;
    while (i < n && a[i] == params.m[i]) a[i++] = 1;
    if (i == n) break;
    ++a[i];
  }
  return Nhsdp::make(v, std::move(blocks));
}

inline void require_odd_modulus(std::int64_t v, const char* who) {
  if (v < 3 || v % 2 == 0) {
    throw std::invalid_argument(std::string(who) + ": v must be odd and >= 3, got " + std::to_string(v));
  }
}

/// All-equal choice m_i = floor((v^{1/n} - 1) / 2), using an exact integer root.
inline std::vector<std::int64_t> choose_params_closed_form(std::int64_t v, int n) {
  require_odd_modulus(v, "choose_params_closed_form");
  if (n < 1) throw std::invalid_argument("choose_params_closed_form: n must be >= 1");
  // floor((x - 1) / 2) == floor((floor(x) - 1) / 2) for real x >= 1
  const std::int64_t root = integer_root(v, static_cast<unsigned>(n));
  const std::int64_t m = (root - 1) / 2;
  if (m < 1) {
    throw std::invalid_argument("choose_params_closed_form: floor((v^(1/n)-1)/2) is 0 for v=" +
                                std::to_string(v) + ", n=" + std::to_string(n));
  }
  return std::vector<std::int64_t>(static_cast<std::size_t>(n), m);
}

struct Problem1Solution {
  std::vector<std::int64_t> m;
  std::int64_t product = 0;
};

/// Exact maximizer of prod m_i subject to phi(m) <= (v-1)/2; ties go to the
/// lexicographically smallest sequence.
inline Problem1Solution solve_problem1_exact(std::int64_t v, int n) {
  if (v < 3) throw std::invalid_argument("solve_problem1_exact: v must be >= 3");
  if (n < 1) throw std::invalid_argument("solve_problem1_exact: n must be >= 1");
  const std::int64_t limit = (v - 1) / 2;

  // pow3[r] = 3^r, saturated past the limit so pruning never overflows.
  const std::int64_t cap = 2 * limit + 2;
  std::vector<std::int64_t> pow3(static_cast<std::size_t>(n) + 1, 1);
  for (int r = 1; r <= n; ++r) pow3[r] = std::min<std::int64_t>(cap, pow3[r - 1] * 3);
  // Cheapest completion of a prefix sum S with r coordinates left, all 1:
  // 3^r S + (3^r - 1) / 2.
  auto min_completion = [&](std::int64_t prefix_sum, int rest) -> std::int64_t {
    const std::int64_t p = pow3[rest];
    if (p >= cap) return cap;
    if (prefix_sum > 0 && p > cap / prefix_sum) return cap;
    return p * prefix_sum + (p - 1) / 2;
  };
  if (min_completion(0, n) > limit) {
    throw std::invalid_argument("solve_problem1_exact: no feasible sequence for v=" + std::to_string(v) +
                                ", n=" + std::to_string(n));
  }

  Problem1Solution best;
  std::vector<std::int64_t> prefix;
  prefix.reserve(static_cast<std::size_t>(n));

  // S_i = (1 + 2 m_i) S_{i-1} + m_i is the running phi of the prefix.
  auto recurse = [&](auto&& self, std::int64_t sum, std::int64_t product) -> void {
    const int depth = static_cast<int>(prefix.size());
    if (depth == n - 1) {
      // product is increasing in the last coordinate, so take its maximum
      const std::int64_t last = (limit - sum) / (2 * sum + 1);
      if (last < 1) return;
      const std::int64_t total = product * last;
      if (total > best.product) {
        best.product = total;
        best.m = prefix;
        best.m.push_back(last);
      }
      return;
    }
    for (std::int64_t mi = 1;; ++mi) {
      const std::int64_t next = (1 + 2 * mi) * sum + mi;
      if (min_completion(next, n - depth - 1) > limit) break;
      prefix.push_back(mi);
      self(self, next, product * mi);
      prefix.pop_back();
    }
  };
  recurse(recurse, 0, 1);
  return best;
}

// ---------------------------------------------------------------------------
// Cyclic difference packings

enum class CdpKind { kDifferenceSet, kPacking, kViolation };

struct CdpVerdict {
  CdpKind kind = CdpKind::kViolation;
  // Populated for kViolation: difference d realised as a1-b1 and a2-b2.
  std::int64_t difference = 0;
  std::int64_t a1 = 0, b1 = 0, a2 = 0, b2 = 0;

  bool valid() const noexcept { return kind != CdpKind::kViolation; }
  std::string describe() const {
    switch (kind) {
      case CdpKind::kDifferenceSet: return "difference set";
      case CdpKind::kPacking: return "cyclic difference packing";
      case CdpKind::kViolation: break;
    }
    std::ostringstream os;
    os << "difference " << difference << " represented twice (" << a1 << "-" << b1 << " and " << a2 << "-"
       << b2 << ")";
    return os.str();
  }
};

inline CdpVerdict verify_cdp(std::int64_t v, std::span<const std::int64_t> elements) {
  if (v < 1) throw std::invalid_argument("verify_cdp: v must be positive");
  std::vector<char> seen(static_cast<std::size_t>(v), 0);
  for (auto x : elements) {
    if (x < 0 || x >= v) throw std::invalid_argument("verify_cdp: element outside [0, v)");
    if (seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("verify_cdp: duplicate element");
    seen[static_cast<std::size_t>(x)] = 1;
  }
  struct Rep {
    std::int64_t a = -1, b = -1;
  };
  std::vector<Rep> rep(static_cast<std::size_t>(v));
  std::int64_t hit = 0;
  for (auto a : elements) {
    for (auto b : elements) {
      if (a == b) continue;
      const auto d = static_cast<std::size_t>(reduce_mod(a - b, v));
      if (rep[d].a >= 0) {
        CdpVerdict out;
        out.difference = static_cast<std::int64_t>(d);
        out.a1 = rep[d].a;
        out.b1 = rep[d].b;
        out.a2 = a;
        out.b2 = b;
        return out;
      }
      rep[d] = {a, b};
      ++hit;
    }
  }
  CdpVerdict out;
  out.kind = (hit == v - 1) ? CdpKind::kDifferenceSet : CdpKind::kPacking;
  return out;
}

/// A verified (v, k) cyclic difference packing; elements sorted ascending.
struct Cdp {
  std::int64_t v = 0;
  std::vector<std::int64_t> elements;
  bool is_difference_set = false;

  static Cdp make(std::int64_t v, std::vector<std::int64_t> elements) {
    for (auto& x : elements) x = reduce_mod(x, v);
    std::sort(elements.begin(), elements.end());
    const auto verdict = verify_cdp(v, elements);
    if (!verdict.valid()) throw std::invalid_argument("not a CDP: " + verdict.describe());
    return Cdp{v, std::move(elements), verdict.kind == CdpKind::kDifferenceSet};
  }
};

inline Nhsdp cdp_to_nhsdp(const Cdp& cdp) {
  if (cdp.v % 2 == 0) throw std::invalid_argument("cdp_to_nhsdp: an NHSDP needs an odd modulus");
  return Nhsdp::make(cdp.v, {cdp.elements});
}

struct DsSearchResult {
  std::optional<Cdp> set;
  bool exhausted = false;  // false when q exceeded the search bound
  std::uint64_t nodes = 0;
};

/// Backtracking search for a (q^2+q+1, q+1) planar difference set that
/// contains 0 and 1; the first hit in ascending order is the
/// lexicographically least such set.
inline DsSearchResult ds_search(std::int64_t q, std::int64_t max_q = 16) {
  if (q < 2) throw std::invalid_argument("ds_search: q must be >= 2");
  DsSearchResult result;
  if (q > max_q) return result;
  const std::int64_t v = q * q + q + 1;
  const std::size_t k = static_cast<std::size_t>(q + 1);

  std::vector<char> used(static_cast<std::size_t>(v), 0);
  std::vector<std::int64_t> chosen{0, 1};
  used[1] = used[static_cast<std::size_t>(v - 1)] = 1;
  std::vector<std::size_t> touched;

  auto recurse = [&](auto&& self) -> bool {
    ++result.nodes;
    if (chosen.size() == k) return true;
    const std::size_t needed = k - chosen.size();
    for (std::int64_t x = chosen.back() + 1; x < v; ++x) {
      if (static_cast<std::size_t>(v - x) < needed) break;
      const std::size_t mark = touched.size();
      bool ok = true;
      for (auto d : chosen) {
        const auto up = static_cast<std::size_t>(x - d);
        const auto down = static_cast<std::size_t>(v - (x - d));
        if (used[up] || used[down] || up == down) {
          ok = false;
          break;
        }
        used[up] = used[down] = 1;
        touched.push_back(up);
        touched.push_back(down);
      }
      if (ok) {
        chosen.push_back(x);
        if (self(self)) return true;
        chosen.pop_back();
      }
      while (touched.size() > mark) {
        used[touched.back()] = 0;
        touched.pop_back();
      }
    }
    return false;
  };

  result.exhausted = true;
  if (recurse(recurse)) result.set = Cdp::make(v, chosen);
  return result;
}

}  // namespace nhsdp
