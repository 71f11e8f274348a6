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

// Exact integer and modular arithmetic shared by the rest of the library.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace nhsdp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Reduces a signed integer to its canonical representative in [0, v).
constexpr std::int64_t reduce_mod(std::int64_t x, std::int64_t v) noexcept {
  std::int64_t r = x % v;
  return r < 0 ? r + v : r;
}

/// Arithmetic context for Z_v with v odd. The inverse of 2 is (v+1)/2.
class OddResidueRing {
 public:
  explicit OddResidueRing(std::int64_t v) : v_(v) {
    if (v < 3 || v % 2 == 0) {
      throw std::invalid_argument("OddResidueRing: modulus must be odd and >= 3, got " +
                                  std::to_string(v));
    }
    inv2_ = (v + 1) / 2;
  }

  std::int64_t modulus() const noexcept { return v_; }
  std::int64_t inv2() const noexcept { return inv2_; }

  std::int64_t reduce(std::int64_t x) const noexcept { return reduce_mod(x, v_); }

  std::int64_t add(std::int64_t x, std::int64_t y) const noexcept {
    std::int64_t s = x + y;
    return s >= v_ ? s - v_ : s;
  }

  std::int64_t sub(std::int64_t x, std::int64_t y) const noexcept {
    std::int64_t d = x - y;
    return d < 0 ? d + v_ : d;
  }

  /// (x + y) / 2 in Z_v for residues x, y in [0, v).
  std::int64_t half_sum(std::int64_t x, std::int64_t y) const noexcept {
    // Multiplying by inv2 is the same as halving the even representative
    // of x + y among {s, s + v}.
    std::int64_t s = add(x, y);
    return (s % 2 == 0) ? s / 2 : (s + v_) / 2;
  }

  friend bool operator==(const OddResidueRing&, const OddResidueRing&) = default;

 private:
  std::int64_t v_;
  std::int64_t inv2_;
};

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

/// Gaussian binomial [k t]_q = prod_{i<t} (q^{k-i} - 1) / (q^{i+1} - 1).
inline BigInt gaussian_binomial(std::uint64_t k, std::uint64_t t, std::int64_t q) {
  if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be >= 2");
  if (t > k) throw std::invalid_argument("gaussian_binomial: t must not exceed k");
  BigInt num = 1;
  BigInt den = 1;
  const BigInt bq = q;
  for (std::uint64_t i = 0; i < t; ++i) {
    num *= ipow(bq, k - i) - 1;
    den *= ipow(bq, i + 1) - 1;
  }
  return num / den;
}

struct GcdLcm {
  std::uint64_t gcd;
  std::uint64_t lcm;
  friend bool operator==(const GcdLcm&, const GcdLcm&) = default;
};

inline GcdLcm gcd_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("gcd_lcm: arguments must be positive");
  return {std::gcd(a, b), std::lcm(a, b)};
}

/// Largest r >= 0 with r^n <= v, by binary search on exact integers.
inline std::int64_t integer_root(std::int64_t v, unsigned n) {
  if (v < 0) throw std::invalid_argument("integer_root: v must be non-negative");
  if (n == 0) throw std::invalid_argument("integer_root: n must be positive");
  if (n == 1) return v;
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  const BigInt target = v;
  while (ipow(BigInt(hi), n) <= target) hi *= 2;
  // invariant: lo^n <= v < hi^n
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (ipow(BigInt(mid), n) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Overflow-checked arithmetic for the int64 quantities in the block recursion.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace nhsdp
