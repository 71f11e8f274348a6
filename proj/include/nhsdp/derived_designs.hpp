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

// Structures derived from single-block packings: sets free of three-term
// arithmetic progressions (NTAP sets), a comparison against the best known
// general lower bound on their size, and 3-perfect hash families.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nhsdp/core_math.hpp"
#include "nhsdp/packing.hpp"

namespace nhsdp {

/// A subset of Z_v with no distinct x, y, z such that 2z = x + y (mod v).
struct NtapSet {
  std::int64_t v = 0;
  std::vector<std::int64_t> elements;  // sorted, in [0, v)
};

struct NtapVerdict {
  bool valid = true;
  // Progression witness when invalid: 2z = x + y.
  std::int64_t x = 0, y = 0, z = 0;
  explicit operator bool() const noexcept { return valid; }
};

inline NtapVerdict verify_ntap(std::int64_t v, std::span<const std::int64_t> elements) {
  if (v < 1) throw std::invalid_argument("verify_ntap: v must be positive");
  std::vector<char> member(static_cast<std::size_t>(v), 0);
  for (auto e : elements) {
    if (e < 0 || e >= v) throw std::invalid_argument("verify_ntap: element outside [0, v)");
    if (member[static_cast<std::size_t>(e)]) throw std::invalid_argument("verify_ntap: duplicate element");
    member[static_cast<std::size_t>(e)] = 1;
  }
  // Each unordered pair {x, y} fixes the midpoints z solving 2z = x + y.
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      const std::int64_t x = elements[a], y = elements[b];
      const std::int64_t s = (x + y) % v;
      std::int64_t candidates[2];
      int count = 0;
      if (v % 2 == 1) {
        candidates[count++] = (s % 2 == 0) ? s / 2 : (s + v) / 2;
      } else if (s % 2 == 0) {
        candidates[count++] = s / 2;
        candidates[count++] = s / 2 + v / 2;
      }
      for (int c = 0; c < count; ++c) {
        const std::int64_t z = candidates[c];
        if (z != x && z != y && member[static_cast<std::size_t>(z)]) return NtapVerdict{false, x, y, z};
      }
    }
  }
  return {};
}

/// {sum_i alpha_i 3^(i-1) : alpha in {-1,1}^n} over Z_{3^n}; 2^n elements.
inline NtapSet ntap_construct(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("ntap_construct: n must be in [1, 20]");
  std::int64_t v = 1;
  for (int i = 0; i < n; ++i) v *= 3;
  NtapSet out{v, {}};
  const std::size_t count = std::size_t{1} << n;
  out.elements.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::int64_t value = 0;
    std::int64_t power = 1;
    for (int i = 0; i < n; ++i, power *= 3) value += ((mask >> i) & 1U) ? -power : power;
    out.elements.push_back(reduce_mod(value, v));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

/// A one-block packing read as a progression-free set.
inline NtapSet ntap_from_packing(const Nhsdp& packing) {
  if (packing.b() != 1) throw std::invalid_argument("ntap_from_packing: packing must have exactly one block");
  return NtapSet{packing.v(), packing.blocks().front()};
}

// ---------------------------------------------------------------------------
// Size comparison against v * 2^{-(2 sqrt(log2(24/7)) + o(1)) sqrt(log2 v)}

struct NtapConstants {
  double ln3 = std::log(3.0);
  double ln2 = std::log(2.0);
  double growth = std::log(3.0) - std::log(2.0);             // ~0.4055
  double two_sqrt_log2_24_7 = 2.0 * std::sqrt(std::log2(24.0 / 7.0));  // ~2.6665
  double log2_3 = std::log2(3.0);                            // ~1.5850
  // Coefficient of sqrt(n) in the published expansion, ~2.9293. It carries
  // log2(3) where the direct formula has sqrt(log2(3)).
  double expansion_sqrt_coeff = std::log(2.0) * 2.0 * std::sqrt(std::log2(24.0 / 7.0)) * std::log2(3.0);
  // Coefficient that follows from the bound itself, ~2.3269.
  double direct_sqrt_coeff = std::log(2.0) * 2.0 * std::sqrt(std::log2(24.0 / 7.0)) * std::sqrt(std::log2(3.0));
};

inline const NtapConstants& ntap_constants() {
  static const NtapConstants c;
  return c;
}

struct NtapBoundReport {
  int n = 0;
  double ln_rho1 = 0;          // n ln 2
  double ln_rho2 = 0;          // ln of the bound at v = 3^n with o(1) = 0
  double rho1 = 0;             // 2^n
  double rho2 = 0;
  double ln_ratio = 0;         // 0.4055 n - 2.9293 sqrt(n), full-precision constants
  double ln_ratio_direct = 0;  // ln(rho2 / rho1) from the bound formula
  bool rho1_wins = false;      // ln_ratio <= 0
};

inline NtapBoundReport ntap_bound_report(int n) {
  if (n < 1) throw std::invalid_argument("ntap_bound_report: n must be >= 1");
  const auto& c = ntap_constants();
  NtapBoundReport r;
  r.n = n;
  const double dn = n;
  r.ln_rho1 = dn * c.ln2;
  r.ln_rho2 = dn * c.ln3 - c.two_sqrt_log2_24_7 * std::sqrt(dn * c.log2_3) * c.ln2;
  r.rho1 = std::exp(r.ln_rho1);
  r.rho2 = std::exp(r.ln_rho2);
  r.ln_ratio = c.growth * dn - c.expansion_sqrt_coeff * std::sqrt(dn);
  r.ln_ratio_direct = r.ln_rho2 - r.ln_rho1;
  r.rho1_wins = r.ln_ratio <= 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Perfect hash families

/// An r x m array over [0, q): every t columns are separated by some row.
struct PhfArray {
  std::size_t r = 0;
  std::size_t m = 0;
  std::int64_t q = 0;
  std::size_t t = 0;
  std::vector<std::int64_t> grid;  // row-major r x m

  std::int64_t at(std::size_t row, std::size_t col) const { return grid[row * m + col]; }
};

/// 3 x (g v) array: column (i, x) holds x + j b_i (mod v) in row j = 0, 1, 2.
inline PhfArray phf_from_ntap(const NtapSet& ntap) {
  if (ntap.v < 3 || ntap.v % 2 == 0) throw std::invalid_argument("phf_from_ntap: v must be odd and >= 3");
  const auto v = static_cast<std::size_t>(ntap.v);
  PhfArray out;
  out.r = 3;
  out.m = ntap.elements.size() * v;
  out.q = ntap.v;
  out.t = 3;
  out.grid.resize(out.r * out.m);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < ntap.elements.size(); ++i) {
      for (std::size_t x = 0; x < v; ++x) {
        out.grid[j * out.m + i * v + x] =
            reduce_mod(static_cast<std::int64_t>(x) + static_cast<std::int64_t>(j) * ntap.elements[i], ntap.v);
      }
    }
  }
  return out;
}

struct PhfVerdict {
  bool valid = true;
  bool exhaustive = true;
  std::uint64_t subsets_checked = 0;
  std::vector<std::size_t> unseparated;  // a failing column subset
  explicit operator bool() const noexcept { return valid; }
};

inline constexpr std::uint64_t kPhfExhaustiveCap = 50'000'000;

/// Exhaustive over all C(m, t) column subsets up to `cap`; beyond that,
/// `cap` subsets drawn from a seeded generator.
inline PhfVerdict verify_phf(const PhfArray& phf, std::uint64_t cap = kPhfExhaustiveCap, std::uint64_t seed = 0) {
  if (phf.t > phf.m) throw std::invalid_argument("verify_phf: t exceeds the number of columns");
  if (phf.grid.size() != phf.r * phf.m) throw std::invalid_argument("verify_phf: grid size mismatch");
  PhfVerdict verdict;
  if (phf.t <= 1) return verdict;

  auto separated = [&](std::span<const std::size_t> cols) {
    for (std::size_t row = 0; row < phf.r; ++row) {
      bool injective = true;
      for (std::size_t a = 0; a < cols.size() && injective; ++a) {
        for (std::size_t b = a + 1; b < cols.size(); ++b) {
          if (phf.at(row, cols[a]) == phf.at(row, cols[b])) {
            injective = false;
            break;
          }
        }
      }
      if (injective) return true;
    }
    return false;
  };

  const BigInt total = binomial(phf.m, phf.t);
  std::vector<std::size_t> cols(phf.t);
  if (total <= cap) {
    for (std::size_t i = 0; i < phf.t; ++i) cols[i] = i;
    while (true) {
      ++verdict.subsets_checked;
      if (!separated(cols)) {
        verdict.valid = false;
        verdict.unseparated = cols;
        return verdict;
      }
      // next combination in lexicographic order
      std::size_t i = phf.t;
      while (i > 0 && cols[i - 1] == phf.m - phf.t + i - 1) --i;
      if (i == 0) break;
      ++cols[i - 1];
      for (std::size_t j = i; j < phf.t; ++j) cols[j] = cols[j - 1] + 1;
    }
    return verdict;
  }

  verdict.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, phf.m - 1);
  for (std::uint64_t n = 0; n < cap; ++n) {
    cols.clear();
    while (cols.size() < phf.t) {
      const std::size_t c = pick(rng);
      if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
    }
    std::sort(cols.begin(), cols.end());
    ++verdict.subsets_checked;
    if (!separated(cols)) {
      verdict.valid = false;
      verdict.unseparated = cols;
      return verdict;
    }
  }
  return verdict;
}

enum class PhfComparison { kVsQuadrics, kVsHermitian };

struct PhfColumnReport {
  int n = 0;
  PhfComparison mode = PhfComparison::kVsQuadrics;
  BigInt m2;            // 6^n columns from the progression-free family over Z_{3^n}
  double other = 0;     // p^2 (p + 1) with p^2 = 3^n, or p^5 with p^3 = 3^n
  double ratio = 0;     // other / m2
  double closed_form = 0;  // (3/4)^{n/2} + 2^{-n}, or 3^{2n/3} / 2^n
};

inline PhfColumnReport phf_column_comparison(int n, PhfComparison mode) {
  if (n < 2) throw std::invalid_argument("phf_column_comparison: n must be >= 2");
  PhfColumnReport r;
  r.n = n;
  r.mode = mode;
  r.m2 = ipow(BigInt(6), static_cast<std::uint64_t>(n));
  const double dn = n;
  const double m2 = std::pow(6.0, dn);
  if (mode == PhfComparison::kVsQuadrics) {
    const double p = std::pow(3.0, dn / 2.0);
    r.other = p * p * (p + 1.0);
    r.closed_form = std::pow(0.75, dn / 2.0) + std::pow(0.5, dn);
  } else {
    const double p = std::pow(3.0, dn / 3.0);
    r.other = std::pow(p, 5.0);
    r.closed_form = std::pow(3.0, 2.0 * dn / 3.0) / std::pow(2.0, dn);
  }
  r.ratio = r.other / m2;
  return r;
}

}  // namespace nhsdp
