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

// Closed-form (K, M/N, R, F) for the published coded caching schemes and for
// the packing-based scheme, in exact arithmetic. Decimals appear only when a
// caller renders them.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nhsdp/core_math.hpp"
#include "nhsdp/packing.hpp"

namespace nhsdp {

using SchemeParams = std::map<std::string, std::int64_t>;

struct SchemePoint {
  std::string scheme;
  SchemeParams params;
  BigInt K;
  Rational memory_ratio;
  Rational load;
  BigInt F;  // subpacketization
  Rational gain;

  friend bool operator==(const SchemePoint&, const SchemePoint&) = default;
};

/// A violated parameter constraint; what() names it.
class SchemeConstraintError : public std::invalid_argument {
 public:
  SchemeConstraintError(const std::string& scheme, const std::string& constraint)
      : std::invalid_argument(scheme + ": constraint violated: " + constraint), constraint_(constraint) {}
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

inline const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"MN",  "WCLC", "YTCC", "WCCLS", "CKSM1", "CKSM2", "ASK1",     "ASK2",
                                                 "ZCW", "WCWL", "XXGL", "AST",   "MR",    "NHSDP", "NHSDP_CONJ"};
  return names;
}

/// "m=5;w=2" with keys in sorted order.
inline std::string format_params(const SchemeParams& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + std::to_string(v);
  }
  return out;
}

inline bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  std::int64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

inline Rational rpow(const Rational& base, std::uint64_t exp) {
  Rational r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace detail {

inline std::int64_t param(const std::string& scheme, const SchemeParams& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument(scheme + ": missing parameter '" + key + "'");
  return it->second;
}

inline void require(bool ok, const std::string& scheme, const std::string& constraint) {
  if (!ok) throw SchemeConstraintError(scheme, constraint);
}

inline BigInt C(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
}

inline BigInt qbin(std::int64_t k, std::int64_t t, std::int64_t q) {
  if (k < 0 || t < 0 || t > k) return 0;
  return gaussian_binomial(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t), q);
}

inline BigInt bpow(std::int64_t base, std::int64_t exp) { return ipow(BigInt(base), static_cast<std::uint64_t>(exp)); }

inline BigInt to_integer(const std::string& scheme, const Rational& r, const char* what) {
  if (denominator(r) != 1) throw std::logic_error(scheme + ": " + what + " is not an integer");
  return numerator(r);
}

inline SchemePoint finish(std::string scheme, SchemeParams params, BigInt K, Rational mr, Rational load, BigInt F) {
  if (load <= 0) throw SchemeConstraintError(scheme, "load > 0");
  if (mr < 0 || mr > 1) throw SchemeConstraintError(scheme, "0 <= M/N <= 1");
  if (F < 1) throw SchemeConstraintError(scheme, "F >= 1");
  SchemePoint p;
  p.scheme = std::move(scheme);
  p.params = std::move(params);
  p.gain = Rational(K) * (Rational(1) - mr) / load;
  p.K = std::move(K);
  p.memory_ratio = std::move(mr);
  p.load = std::move(load);
  p.F = std::move(F);
  return p;
}

}  // namespace detail

enum class NhsdpSolver { kClosedForm, kExact };

/// Packing-based scheme at K = F = v: M/N = 1 - 2^n prod(m)/v, R = prod(m).
inline SchemePoint evaluate_nhsdp_scheme(std::int64_t v, int n, NhsdpSolver solver) {
  require_odd_modulus(v, "evaluate_nhsdp_scheme");
  std::vector<std::int64_t> m;
  if (solver == NhsdpSolver::kClosedForm) {
    m = choose_params_closed_form(v, n);
  } else {
    m = solve_problem1_exact(v, n).m;
  }
  const BlockParams bp = block_params(m);
  if (bp.phi > (v - 1) / 2) throw std::invalid_argument("evaluate_nhsdp_scheme: phi(m) exceeds (v-1)/2");
  BigInt product = 1;
  for (auto mi : m) product *= mi;
  const BigInt g = detail::bpow(2, n);
  SchemeParams params{{"v", v}, {"n", n}};
  if (solver == NhsdpSolver::kExact) params["exact"] = 1;
  return detail::finish("NHSDP", std::move(params), BigInt(v), Rational(1) - Rational(g * product, BigInt(v)),
                        Rational(product), BigInt(v));
}

/// Conjugate of the packing PDA: (v, b v, b v - b g, v), so M/N = 1 - g/v and R = 1/b.
inline SchemePoint evaluate_nhsdp_conjugate(std::int64_t v, int n, NhsdpSolver solver) {
  const SchemePoint base = evaluate_nhsdp_scheme(v, n, solver);
  const BigInt b = numerator(base.load);
  const BigInt g = detail::bpow(2, n);
  SchemeParams params = base.params;
  return detail::finish("NHSDP_CONJ", std::move(params), BigInt(v), Rational(1) - Rational(g, BigInt(v)),
                        Rational(BigInt(1), b), b * v);
}

/// Evaluates one row of the comparison table. Parameter names follow the
/// usual notation of each scheme (see README for the list).
inline SchemePoint evaluate_scheme(const std::string& scheme, const SchemeParams& p) {
  using detail::C;
  using detail::param;
  using detail::qbin;
  using detail::require;
  const std::string& s = scheme;

  if (s == "MN") {
    const auto K = param(s, p, "K"), t = param(s, p, "t");
    require(K >= 1, s, "K >= 1");
    require(0 <= t && t < K, s, "0 <= t < K");
    return detail::finish(s, p, BigInt(K), Rational(t, K), Rational(K - t, t + 1), C(K, t));
  }
  if (s == "WCLC") {
    const auto m = param(s, p, "m"), z = param(s, p, "z"), k = param(s, p, "k"), t = param(s, p, "t");
    require(1 <= t && t < k, s, "1 <= t < k");
    require(1 <= z && z <= m, s, "1 <= z <= m");
    const std::int64_t fl = (k - 1) / (k - t);
    return detail::finish(s, p, C(m, z) * detail::bpow(k, z), Rational(1) - rpow(Rational(k - t, k), z),
                          rpow(Rational(k - t, fl), z), detail::bpow(fl, z) * detail::bpow(k, m - 1));
  }
  if (s == "YTCC") {
    const auto H = param(s, p, "H"), a = param(s, p, "a"), z = param(s, p, "z"), r = param(s, p, "r");
    require(0 <= r && r < a && a < H, s, "r < a < H");
    require(r < z && z < H, s, "r < z < H");
    require(a + z <= H + r, s, "a + z <= H + r");
    const BigInt F = C(H, z);
    // min{C(H-a-z+2r, r), C(a+z-2r, a-r)}: the first binomial's lower index is
    // r, which reproduces every tabulated YTCC row.
    const BigInt lhs = C(H - a - z + 2 * r, r), rhs = C(a + z - 2 * r, a - r);
    return detail::finish(s, p, C(H, a), Rational(1) - Rational(C(a, r) * C(H - a, z - r), F),
                          Rational(C(H, a + z - 2 * r) * std::min(lhs, rhs), F), F);
  }
  if (s == "WCCLS") {
    const auto q = param(s, p, "q"), m = param(s, p, "m"), w = param(s, p, "w");
    require(q >= 2, s, "q >= 2");
    require(1 <= w && w <= m, s, "1 <= w <= m");
    const BigInt K = detail::bpow(q, m);
    const BigInt top = C(m, w) * detail::bpow(q - 1, w);
    return detail::finish(s, p, K, Rational(1) - Rational(top, K), Rational(top, detail::bpow(q, m - w)), K);
  }
  if (s == "CKSM1") {
    const auto q = param(s, p, "q"), k = param(s, p, "k"), m = param(s, p, "m"), t = param(s, p, "t");
    require(is_prime_power(q), s, "q prime power");
    require(m >= 1 && t >= 1, s, "m, t >= 1");
    require(m + t <= k, s, "m + t <= k");
    Rational K = Rational(detail::bpow(q, t * (t - 1) / 2), factorial(t));
    for (std::int64_t i = 0; i < t; ++i) K *= Rational(qbin(k - i, 1, q));
    Rational keep = Rational(detail::bpow(q, m * t));
    for (std::int64_t i = 0; i < m; ++i) keep *= Rational(qbin(k - t - i, 1, q), qbin(k - i, 1, q));
    Rational load = Rational(factorial(m) * detail::bpow(q, m * t), factorial(m + t)) *
                    Rational(detail::bpow(q, t * (t - 1) / 2));
    for (std::int64_t i = 0; i < t; ++i) load *= Rational(qbin(k - m - i, 1, q));
    Rational F = Rational(detail::bpow(q, m * (m - 1) / 2), factorial(m));
    for (std::int64_t i = 0; i < m; ++i) F *= Rational(qbin(k - i, 1, q));
    return detail::finish(s, p, detail::to_integer(s, K, "K"), Rational(1) - keep, load,
                          detail::to_integer(s, F, "F"));
  }
  if (s == "CKSM2") {
    const auto q = param(s, p, "q"), k = param(s, p, "k"), m = param(s, p, "m"), t = param(s, p, "t");
    require(q >= 2, s, "2 <= q");
    require(m >= 1 && t >= 1, s, "m, t >= 1");
    require(m + t <= k, s, "m + t <= k");
    const BigInt F = qbin(k, m + t, q);
    return detail::finish(s, p, qbin(k, t, q), Rational(1) - Rational(qbin(k - t, m, q), F),
                          Rational(qbin(k, m, q), F), F);
  }
  if (s == "ASK1") {
    const auto q = param(s, p, "q");
    require(is_prime_power(q), s, "q prime power");
    const std::int64_t K = q * q + q + 1;
    return detail::finish(s, p, BigInt(K), Rational(q * q, K), Rational(1), BigInt(K));
  }
  if (s == "ASK2") {
    const auto q = param(s, p, "q");
    require(q >= 2, s, "2 <= q");
    return detail::finish(s, p, BigInt(q * q), Rational(q - 1, q), Rational(q, q + 1), BigInt(q * q + q));
  }
  if (s == "ZCW") {
    // The tabulated ZCW rows have K = F = 2^m, M/N = 1 - C(m,w)/2^m and
    // R = C(m,w)/2^(w+1); the generic summation form does not reproduce them.
    const auto m = param(s, p, "m"), w = param(s, p, "w");
    require(1 <= w && w < m, s, "1 <= w < m");
    const BigInt K = detail::bpow(2, m);
    return detail::finish(s, p, K, Rational(1) - Rational(C(m, w), K), Rational(C(m, w), detail::bpow(2, w + 1)), K);
  }
  if (s == "WCWL") {
    const auto K = param(s, p, "K"), t = param(s, p, "t");
    require(1 <= t && t < K, s, "1 <= t < K");
    const std::int64_t d = K - t + 1;
    const std::int64_t fl = K / d;
    if (K % d == 0 || K - t == 1) {
      return detail::finish(s, p, BigInt(K), Rational(t, K), Rational((K - t) * (K - t + 1), 2 * K), BigInt(K));
    }
    if (K % d == K - t) {
      return detail::finish(s, p, BigInt(K), Rational(t, K), Rational(K - t, 2 * fl + 1),
                            BigInt(2 * fl + 1) * K);
    }
    return detail::finish(s, p, BigInt(K), Rational(t, K), Rational(K - t, 2 * fl), BigInt(2 * fl) * K);
  }
  if (s == "XXGL") {
    const auto K = param(s, p, "K");
    require(K >= 2, s, "K >= 2");
    return detail::finish(s, p, BigInt(K), Rational(K - 2, K), Rational(K - 1, K), BigInt(K));
  }
  if (s == "AST") {
    const auto r = param(s, p, "r"), k = param(s, p, "k");
    require(r >= 1 && k >= 1, s, "r, k >= 1");
    const BigInt two_r = detail::bpow(2, r);
    const BigInt K = two_r * k;
    return detail::finish(s, p, K, Rational(1) - Rational(BigInt(r + 1), two_r) + Rational(BigInt(r), K),
                          Rational(BigInt(k * (r + 1) - r), two_r), K);
  }
  if (s == "MR") {
    const auto K = param(s, p, "K"), t = param(s, p, "t");
    require(1 <= t && t < K, s, "1 <= t < K");
    const std::int64_t d = K - t + 1;
    const BigInt num = BigInt(K) * (K - t);
    const BigInt den = 2 + t / d + (t - 1) / d;
    const BigInt ceil = (num + den - 1) / den;
    return detail::finish(s, p, BigInt(K), Rational(t, K), Rational(ceil, BigInt(K)), BigInt(K));
  }
  if (s == "NHSDP" || s == "NHSDP_CONJ") {
    const auto v = param(s, p, "v"), n = param(s, p, "n");
    const auto it = p.find("exact");
    const bool exact = it != p.end() && it->second != 0;
    require(v >= 3 && v % 2 == 1, s, "v odd, v >= 3");
    require(n >= 1 && n <= 40, s, "1 <= n");
    const auto solver = exact ? NhsdpSolver::kExact : NhsdpSolver::kClosedForm;
    return s == "NHSDP" ? evaluate_nhsdp_scheme(v, static_cast<int>(n), solver)
                        : evaluate_nhsdp_conjugate(v, static_cast<int>(n), solver);
  }
  throw std::invalid_argument("evaluate_scheme: unknown scheme '" + scheme + "'");
}

/// Replicates a K1-user point to K users: F' = h1 F, M/N unchanged,
/// R' = (h / h1) R with h1 = K1 / gcd(K1, K), h = K / gcd(K1, K).
inline SchemePoint apply_grouping_formula(const SchemePoint& base, const BigInt& target_K) {
  if (target_K <= base.K) throw std::invalid_argument("apply_grouping_formula: target K must exceed the base K");
  const BigInt g = boost::multiprecision::gcd(base.K, target_K);
  const BigInt h1 = base.K / g;
  const BigInt h = target_K / g;
  SchemePoint out;
  out.scheme = base.scheme;
  out.params = base.params;
  out.params["grouped_from_K"] = base.K.convert_to<std::int64_t>();
  out.K = target_K;
  out.memory_ratio = base.memory_ratio;
  out.F = h1 * base.F;
  out.load = base.load * Rational(h, h1);
  out.gain = Rational(out.K) * (Rational(1) - out.memory_ratio) / out.load;
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Cartesian parameter grid: every combination of the listed values.
using ParamGrid = std::map<std::string, std::vector<std::int64_t>>;

inline std::vector<std::int64_t> int_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> r;
  for (std::int64_t x = lo; x <= hi; ++x) r.push_back(x);
  return r;
}

/// Grids whose points land within `slack` users of K.
inline std::vector<ParamGrid> default_grids(const std::string& s, std::int64_t K, std::int64_t slack) {
  std::vector<ParamGrid> grids;
  const std::int64_t lo = std::max<std::int64_t>(1, K - slack), hi = K + slack;
  auto near = [&](const BigInt& users) { return users >= lo && users <= hi; };

  if (s == "MN") {
    grids.push_back({{"K", {K}}, {"t", int_range(0, K - 1)}});
  } else if (s == "WCWL" || s == "MR") {
    if (K >= 2) grids.push_back({{"K", {K}}, {"t", int_range(1, K - 1)}});
  } else if (s == "XXGL") {
    if (K >= 2) grids.push_back({{"K", {K}}});
  } else if (s == "WCLC") {
    for (std::int64_t m = 1; m <= 12; ++m)
      for (std::int64_t z = 1; z <= m; ++z)
        for (std::int64_t k = 2; k <= hi; ++k)
          if (near(detail::C(m, z) * detail::bpow(k, z))) grids.push_back({{"m", {m}}, {"z", {z}}, {"k", {k}}, {"t", int_range(1, k - 1)}});
  } else if (s == "YTCC") {
    for (std::int64_t H = 3; H <= hi; ++H)
      for (std::int64_t a = 1; a < H; ++a)
        if (near(detail::C(H, a))) grids.push_back({{"H", {H}}, {"a", {a}}, {"z", int_range(1, H - 1)}, {"r", int_range(0, a - 1)}});
  } else if (s == "WCCLS") {
    for (std::int64_t q = 2; q <= hi; ++q)
      for (std::int64_t m = 1; detail::bpow(q, m) <= hi; ++m)
        if (near(detail::bpow(q, m))) grids.push_back({{"q", {q}}, {"m", {m}}, {"w", int_range(1, m)}});
  } else if (s == "CKSM1" || s == "CKSM2") {
    for (std::int64_t q = 2; q <= 16; ++q) {
      if (s == "CKSM1" && !is_prime_power(q)) continue;
      for (std::int64_t k = 2; k <= 12; ++k)
        for (std::int64_t t = 1; t < k; ++t) {
          // K depends on (q, k, t) only
          const BigInt users = (s == "CKSM2") ? detail::qbin(k, t, q)
                                              : evaluate_scheme(s, {{"q", q}, {"k", k}, {"m", k - t}, {"t", t}}).K;
          if (near(users)) grids.push_back({{"q", {q}}, {"k", {k}}, {"t", {t}}, {"m", int_range(1, k - t)}});
        }
    }
  } else if (s == "ASK1") {
    for (std::int64_t q = 2; q * q + q + 1 <= hi; ++q)
      if (near(BigInt(q * q + q + 1))) grids.push_back({{"q", {q}}});
  } else if (s == "ASK2") {
    for (std::int64_t q = 2; q * q <= hi; ++q)
      if (near(BigInt(q * q))) grids.push_back({{"q", {q}}});
  } else if (s == "ZCW") {
    for (std::int64_t m = 2; detail::bpow(2, m) <= hi; ++m)
      if (near(detail::bpow(2, m))) grids.push_back({{"m", {m}}, {"w", int_range(1, m - 1)}});
  } else if (s == "AST") {
    for (std::int64_t r = 1; (std::int64_t{1} << r) <= hi; ++r)
      for (std::int64_t k = std::max<std::int64_t>(1, lo >> r); (k << r) <= hi; ++k)
        if (near(BigInt(k << r))) grids.push_back({{"r", {r}}, {"k", {k}}});
  } else if (s == "NHSDP" || s == "NHSDP_CONJ") {
    // Even user counts are served by the next odd modulus and a dropped column.
    const std::int64_t v = (K % 2 == 0) ? K + 1 : K;
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1, p3 = 3; p3 <= v; ++n, p3 *= 3) ns.push_back(n);
    if (v >= 3 && !ns.empty()) grids.push_back({{"v", {v}}, {"n", ns}});
  } else {
    throw std::invalid_argument("default_grids: unknown scheme '" + s + "'");
  }
  return grids;
}

struct SweepOptions {
  std::int64_t slack = 8;  // |K_point - K| allowed for cross-scheme pairing
};

/// Evaluates every grid point, keeps those within `slack` users of K, and
/// sorts by memory ratio (ties by scheme, then parameters).
inline std::vector<SchemePoint> tradeoff_sweep(std::int64_t K, const std::vector<std::string>& schemes,
                                               const std::map<std::string, std::vector<ParamGrid>>& grids,
                                               SweepOptions opts = {}) {
  std::vector<SchemePoint> out;
  for (const auto& s : schemes) {
    const auto it = grids.find(s);
    const std::vector<ParamGrid> chosen = (it != grids.end()) ? it->second : default_grids(s, K, opts.slack);
    for (const auto& grid : chosen) {
      if (std::any_of(grid.begin(), grid.end(), [](const auto& kv) { return kv.second.empty(); })) continue;
      std::vector<std::string> keys;
      for (const auto& kv : grid) keys.push_back(kv.first);
      std::vector<std::size_t> idx(keys.size(), 0);
      while (true) {
        SchemeParams params;
        for (std::size_t i = 0; i < keys.size(); ++i) params[keys[i]] = grid.at(keys[i])[idx[i]];
        try {
          SchemePoint pt = evaluate_scheme(s, params);
          if (pt.K >= K - opts.slack && pt.K <= K + opts.slack) out.push_back(std::move(pt));
        } catch (const std::invalid_argument&) {
          // outside this scheme's constraint region
        }
        std::size_t i = 0;
        while (i < keys.size() && ++idx[i] == grid.at(keys[i]).size()) idx[i++] = 0;
        if (i == keys.size()) break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SchemePoint& a, const SchemePoint& b) {
    if (a.memory_ratio != b.memory_ratio) return a.memory_ratio < b.memory_ratio;
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return format_params(a.params) < format_params(b.params);
  });
  return out;
}

struct RatioReport {
  Rational F_ratio;       // F_a / F_b
  Rational load_ratio;    // R_a / R_b
  Rational memory_delta;  // (M/N)_a - (M/N)_b
};

inline RatioReport ratio_report(const SchemePoint& a, const SchemePoint& b) {
  return {Rational(a.F, b.F), a.load / b.load, a.memory_ratio - b.memory_ratio};
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_csv(const std::vector<SchemePoint>& rows) {
  std::ostringstream os;
  os << "scheme,params,K,memory_ratio_num,memory_ratio_den,load_num,load_den,F,gain_num,gain_den\n";
  for (const auto& r : rows) {
    os << r.scheme << ',' << format_params(r.params) << ',' << r.K << ',' << numerator(r.memory_ratio) << ','
       << denominator(r.memory_ratio) << ',' << numerator(r.load) << ',' << denominator(r.load) << ',' << r.F << ','
       << numerator(r.gain) << ',' << denominator(r.gain) << '\n';
  }
  return os.str();
}

/// One-line human summary with 6-significant-digit decimals.
inline std::string describe(const SchemePoint& p) {
  std::ostringstream os;
  os.precision(6);
  os << p.scheme << '(' << format_params(p.params) << "): K=" << p.K << " M/N=" << to_double(p.memory_ratio)
     << " R=" << to_double(p.load) << " F=" << p.F << " gain=" << to_double(p.gain);
  return os.str();
}

}  // namespace nhsdp
