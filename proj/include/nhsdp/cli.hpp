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

// Command-line front end. Human summaries go to `out`; machine formats are
// written only to --out paths. Exit codes: 0 success, 1 verification
// failure, 2 usage or input error.

#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhsdp/caching_sim.hpp"
#include "nhsdp/derived_designs.hpp"
#include "nhsdp/io.hpp"
#include "nhsdp/packing.hpp"
#include "nhsdp/pda.hpp"
#include "nhsdp/scheme_compare.hpp"

namespace nhsdp::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;

/// Parsed settings shared by the subcommands.
struct CommandConfig {
  std::string subcommand;
  std::string input;
  std::string out_path;
  std::string format;  // json | text | csv; empty picks the subcommand default
  std::uint64_t seed = 0;
  int verbosity = 0;
};

namespace detail {

/// Raised by handlers for problems with the request itself (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string pick_format(const CommandConfig& cfg, const std::string& fallback,
                               std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("format '" + f + "' is not supported by " + cfg.subcommand);
}

inline void emit_pda(const CommandConfig& cfg, const Pda& pda) {
  if (cfg.out_path.empty()) return;
  const std::string fmt = pick_format(cfg, "text", {"text", "json"});
  io::write_file(cfg.out_path, fmt == "json" ? io::dump(io::to_json(pda)) : io::to_text(pda));
}

inline void emit_json(const CommandConfig& cfg, const io::json& j) {
  if (cfg.out_path.empty()) return;
  pick_format(cfg, "json", {"json"});
  io::write_file(cfg.out_path, io::dump(j));
}

inline Pda load_pda(const std::string& path) { return io::pda_from_string(io::read_file(path)); }

inline std::string pda_summary(const Pda& pda) {
  const auto st = pda_stats(pda);
  std::ostringstream os;
  os << pda.label() << " PDA: M/N = " << to_string(st.memory_ratio) << ", R = " << to_string(st.load);
  if (st.regular_g) os << ", " << *st.regular_g << "-regular";
  return os.str();
}

inline int report_pda_verdict(std::ostream& out, const Pda& pda, const PdaVerdict& verdict, int verbosity) {
  if (verdict.valid()) {
    out << pda.label() << " PDA: valid\n";
    return kOk;
  }
  out << pda.label() << " PDA: invalid (" << verdict.violation_count << " violation"
      << (verdict.violation_count == 1 ? "" : "s") << ")\n";
  const std::size_t shown = verbosity > 0 ? verdict.violations.size() : std::min<std::size_t>(8, verdict.violations.size());
  for (std::size_t i = 0; i < shown; ++i) out << "  " << verdict.violations[i].describe() << "\n";
  return kVerifyFailed;
}

/// "all", "sample:COUNT", or a comma-separated list of K 1-based file indices.
struct DemandSpec {
  enum Kind { kAll, kSample, kExplicit } kind = kAll;
  std::size_t count = 0;
  std::vector<std::size_t> demand;  // 0-based
};

inline DemandSpec parse_demands(const std::string& text, std::size_t users, std::size_t files) {
  DemandSpec spec;
  if (text == "all") return spec;
  if (text.rfind("sample:", 0) == 0) {
    spec.kind = DemandSpec::kSample;
    try {
      std::size_t used = 0;
      spec.count = std::stoul(text.substr(7), &used);
      if (used != text.size() - 7 || spec.count == 0) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw UsageError("--demands sample:COUNT needs a positive COUNT");
    }
    return spec;
  }
  spec.kind = DemandSpec::kExplicit;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t d = 0;
    try {
      std::size_t used = 0;
      d = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--demands: bad file index '" + tok + "'");
    }
    if (d < 1 || d > files) throw UsageError("--demands: file index " + tok + " outside [1, N]");
    spec.demand.push_back(d - 1);
  }
  if (spec.demand.size() != users) {
    throw UsageError("--demands: expected " + std::to_string(users) + " entries, got " + std::to_string(spec.demand.size()));
  }
  return spec;
}

inline SchemeParams parse_scheme_params(const std::string& text) {
  SchemeParams p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw UsageError("--params: expected name=value, got '" + tok + "'");
    try {
      p[tok.substr(0, eq)] = std::stoll(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--params: bad value in '" + tok + "'");
    }
  }
  return p;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Non-half-sum disjoint packings and placement delivery arrays", "nhsdp"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  CommandConfig cfg;
  app.add_flag("-v,--verbose", cfg.verbosity, "More detail in summaries");

  std::function<int()> handler;

  auto add_common_out = [&](CLI::App* sub, const char* formats) {
    sub->add_option("--out", cfg.out_path, "Write the machine-readable result here");
    sub->add_option("--format", cfg.format, formats);
  };

  // construct-nhsdp ---------------------------------------------------------
  std::int64_t opt_v = 0;
  std::vector<std::int64_t> opt_m;
  int opt_n = 0;
  bool opt_exact = false;
  {
    auto* sub = app.add_subcommand("construct-nhsdp", "Build a packing from block parameters m (or choose m for n)");
    sub->add_option("--v", opt_v, "Odd modulus v")->required();
    auto* m_opt = sub->add_option("--m", opt_m, "Block parameters, e.g. 2,2,2")->delimiter(',');
    auto* n_opt = sub->add_option("--n", opt_n, "Choose m of length n instead of passing --m");
    sub->add_flag("--exact", opt_exact, "With --n: use the exact optimiser instead of the closed form");
    m_opt->excludes(n_opt);
    add_common_out(sub, "json");
    sub->callback([&] {
      handler = [&] {
        std::vector<std::int64_t> m = opt_m;
        if (m.empty()) {
          if (opt_n < 1) throw UsageError("construct-nhsdp: pass --m or --n");
          m = opt_exact ? solve_problem1_exact(opt_v, opt_n).m : choose_params_closed_form(opt_v, opt_n);
        }
        const Nhsdp p = construct_nhsdp(opt_v, m);
        emit_json(cfg, io::to_json(p));
        out << p.label() << " NHSDP constructed (phi = " << block_params(m).phi << ")\n";
        return kOk;
      };
    });
  }

  // verify-nhsdp ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("verify-nhsdp", "Check a packing file");
    sub->add_option("file", cfg.input, "Packing JSON")->required();
    sub->callback([&] {
      handler = [&] {
        const auto [v, blocks] = io::raw_nhsdp_from_json(io::parse_json(io::read_file(cfg.input)));
        const auto verdict = verify_nhsdp(v, blocks);
        const std::string label = "(" + std::to_string(v) + "," + std::to_string(blocks.front().size()) + "," +
                                  std::to_string(blocks.size()) + ")";
        if (verdict.valid()) {
          out << label << " NHSDP: valid\n";
          return kOk;
        }
        out << label << " NHSDP: invalid: " << verdict.violation->describe() << "\n";
        return kVerifyFailed;
      };
    });
  }

  // solve-params ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("solve-params", "Choose block parameters maximising the number of blocks");
    sub->add_option("--v", opt_v, "Odd modulus v")->required();
    sub->add_option("--n", opt_n, "Sequence length n")->required()->check(CLI::PositiveNumber);
    sub->add_flag("--exact", opt_exact, "Exact optimiser (default: closed form)");
    sub->callback([&] {
      handler = [&] {
        const auto m = opt_exact ? solve_problem1_exact(opt_v, opt_n).m : choose_params_closed_form(opt_v, opt_n);
        std::int64_t product = 1;
        std::string list;
        for (auto x : m) {
          product *= x;
          list += (list.empty() ? "" : ",") + std::to_string(x);
        }
        out << "m = (" << list << "), blocks = " << product << ", phi = " << block_params(m).phi << " <= "
            << (opt_v - 1) / 2 << "\n";
        return kOk;
      };
    });
  }

  // build-pda ---------------------------------------------------------------
  std::size_t opt_users = 0;
  {
    auto* sub = app.add_subcommand("build-pda", "Cyclic PDA from a packing file");
    sub->add_option("file", cfg.input, "Packing JSON")->required();
    add_common_out(sub, "text (default) or json");
    sub->callback([&] {
      handler = [&] {
        const Pda pda = pda_from_nhsdp(io::nhsdp_from_json(io::parse_json(io::read_file(cfg.input))));
        emit_pda(cfg, pda);
        out << pda_summary(pda) << "\n";
        return kOk;
      };
    });
  }

  // verify-pda --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("verify-pda", "Check the PDA axioms");
    sub->add_option("file", cfg.input, "PDA (text or JSON)")->required();
    sub->callback([&] {
      handler = [&] {
        const Pda pda = load_pda(cfg.input);
        return report_pda_verdict(out, pda, verify_pda(pda), cfg.verbosity);
      };
    });
  }

  // conjugate ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("conjugate", "Swap the roles of rows and symbols");
    sub->add_option("file", cfg.input, "PDA (text or JSON)")->required();
    add_common_out(sub, "text (default) or json");
    sub->callback([&] {
      handler = [&] {
        const Pda pda = load_pda(cfg.input);
        const auto verdict = verify_pda(pda);
        if (!verdict.valid()) return report_pda_verdict(out, pda, verdict, cfg.verbosity);
        const Pda conj = conjugate_pda(pda);
        emit_pda(cfg, conj);
        out << pda_summary(conj) << "\n";
        return kOk;
      };
    });
  }

  // group -------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("group", "Replicate a PDA over K users (K a multiple of the base user count)");
    sub->add_option("file", cfg.input, "PDA (text or JSON)")->required();
    sub->add_option("--K", opt_users, "Target user count")->required()->check(CLI::PositiveNumber);
    add_common_out(sub, "text (default) or json");
    sub->callback([&] {
      handler = [&] {
        const Pda pda = load_pda(cfg.input);
        const auto verdict = verify_pda(pda);
        if (!verdict.valid()) return report_pda_verdict(out, pda, verdict, cfg.verbosity);
        if (opt_users % pda.cols() != 0) {
          throw UsageError("group: K=" + std::to_string(opt_users) + " is not a multiple of " +
                           std::to_string(pda.cols()) + "; use `compare` for the non-divisible grouping formula");
        }
        const Pda grouped = group_pda_divisible(pda, opt_users);
        emit_pda(cfg, grouped);
        out << pda_summary(grouped) << "\n";
        return kOk;
      };
    });
  }

  // mn-pda ------------------------------------------------------------------
  std::size_t opt_t = 0;
  {
    auto* sub = app.add_subcommand("mn-pda", "Maddah-Ali-Niesen PDA");
    sub->add_option("--K", opt_users, "Users")->required()->check(CLI::PositiveNumber);
    sub->add_option("--t", opt_t, "KM/N, 1 <= t < K")->required();
    add_common_out(sub, "text (default) or json");
    sub->callback([&] {
      handler = [&] {
        const Pda pda = mn_pda(opt_users, opt_t);
        emit_pda(cfg, pda);
        out << pda_summary(pda) << "\n";
        return kOk;
      };
    });
  }

  // simulate ----------------------------------------------------------------
  std::size_t opt_files = 0;
  std::size_t opt_packet_len = kDefaultPacketLen;
  std::string opt_demands = "all";
  {
    auto* sub = app.add_subcommand("simulate", "Place, deliver and decode over a file library");
    sub->add_option("file", cfg.input, "PDA (text or JSON)")->required();
    sub->add_option("--N", opt_files, "Number of files")->required()->check(CLI::PositiveNumber);
    sub->add_option("--packet-len", opt_packet_len, "Bytes per packet")->check(CLI::PositiveNumber);
    sub->add_option("--demands", opt_demands, "all | sample:COUNT | comma-separated 1-based file per user");
    sub->add_option("--seed", cfg.seed, "Library seed");
    sub->add_option("--out", cfg.out_path, "Write the delivery transcript (explicit demand only)");
    sub->callback([&] {
      handler = [&] {
        const Pda pda = load_pda(cfg.input);
        const auto verdict = verify_pda(pda);
        if (!verdict.valid()) return report_pda_verdict(out, pda, verdict, cfg.verbosity);
        const auto spec = parse_demands(opt_demands, pda.cols(), opt_files);
        if (spec.kind == DemandSpec::kExplicit) {
          const FileLibrary library(opt_files, pda.rows(), opt_packet_len, cfg.seed);
          const CacheContents cache = place(pda, library);
          const auto transcript = deliver(pda, library, spec.demand);
          std::size_t ok = 0;
          for (std::size_t k = 0; k < pda.cols(); ++k) {
            try {
              const Bytes got = decode(pda, cache, transcript, k);
              const auto want = library.file(spec.demand[k]);
              if (std::equal(got.begin(), got.end(), want.begin(), want.end())) ++ok;
            } catch (const UnrecoverablePacket& e) {
              out << "user " << k + 1 << ": " << e.what() << "\n";
            }
          }
          if (!cfg.out_path.empty()) io::write_file(cfg.out_path, io::dump(io::to_json(transcript)));
          out << ok << "/" << pda.cols() << " users decoded, load = " << to_string(transcript.measured_load()) << "\n";
          return ok == pda.cols() ? kOk : kVerifyFailed;
        }
        if (!cfg.out_path.empty()) throw UsageError("simulate: --out needs an explicit --demands vector");
        std::size_t budget = spec.count;
        if (spec.kind == DemandSpec::kAll) {
          const BigInt total = ipow(BigInt(opt_files), pda.cols());
          if (total > BigInt(100'000'000)) {
            throw UsageError("simulate: N^K = " + total.str() + " demands is too many for 'all'; use sample:COUNT");
          }
          budget = total.convert_to<std::size_t>();
        }
        const auto report = exhaustive_demand_check(pda, opt_files, opt_packet_len, budget, cfg.seed);
        out << report.demands_checked - report.failed_demands << "/" << report.demands_checked
            << " demands decoded, load = " << to_string(report.max_load);
        if (!report.all_loads_equal) out << " (not all loads equal S/F = " << to_string(report.expected_load) << ")";
        if (!report.exhaustive) out << " [sampled]";
        out << "\n";
        for (const auto& f : report.failure_samples) out << "  " << f << "\n";
        if (!report.cache_sizes_ok) out << "  cache sizes differ from Z N packet_len\n";
        return report.passed() ? kOk : kVerifyFailed;
      };
    });
  }

  // ntap --------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("ntap", "Progression-free set over Z_{3^n} and the size comparison");
    sub->add_option("--n", opt_n, "Exponent n")->required()->check(CLI::Range(1, 20));
    add_common_out(sub, "json");
    sub->callback([&] {
      handler = [&] {
        const NtapSet s = ntap_construct(opt_n);
        const bool ok = verify_ntap(s.v, s.elements).valid;
        const auto r = ntap_bound_report(opt_n);
        emit_json(cfg, io::to_json(s));
        out << "NTAP set of size " << s.elements.size() << " over Z_" << s.v << ": " << (ok ? "AP-free" : "has an AP")
            << "\n";
        out << "ln(rho2/rho1) = " << r.ln_ratio << " (expansion), " << r.ln_ratio_direct << " (direct); "
            << (r.rho1_wins ? "rho1 >= rho2" : "rho2 > rho1") << "\n";
        return ok ? kOk : kVerifyFailed;
      };
    });
  }

  // phf ---------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("phf", "3-perfect hash family from an NTAP set or one-block packing");
    sub->add_option("file", cfg.input, "NTAP JSON {v, elements} or packing JSON with one block")->required();
    add_common_out(sub, "json");
    sub->callback([&] {
      handler = [&] {
        const auto j = io::parse_json(io::read_file(cfg.input));
        NtapSet s = j.contains("blocks") ? ntap_from_packing(io::nhsdp_from_json(j)) : io::ntap_from_json(j);
        const auto nv = verify_ntap(s.v, s.elements);
        if (!nv.valid) {
          out << "input has a progression: 2*" << nv.z << " = " << nv.x << " + " << nv.y << " (mod " << s.v << ")\n";
          return kVerifyFailed;
        }
        const PhfArray phf = phf_from_ntap(s);
        const auto verdict = verify_phf(phf, kPhfExhaustiveCap, cfg.seed);
        emit_json(cfg, io::to_json(phf));
        out << "(3;" << phf.m << "," << phf.q << ",3) PHF: " << (verdict.valid ? "valid" : "invalid") << " ("
            << verdict.subsets_checked << " triples " << (verdict.exhaustive ? "exhaustive" : "sampled") << ")\n";
        return verdict.valid ? kOk : kVerifyFailed;
      };
    });
  }

  // ds-search ---------------------------------------------------------------
  std::int64_t opt_q = 0;
  std::int64_t opt_max_q = 16;
  {
    auto* sub = app.add_subcommand("ds-search", "Search for a (q^2+q+1, q+1) planar difference set");
    sub->add_option("--q", opt_q, "Order q >= 2")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1000}));
    sub->add_option("--max-q", opt_max_q, "Largest q the search will attempt");
    add_common_out(sub, "json");
    sub->callback([&] {
      handler = [&] {
        const auto r = ds_search(opt_q, opt_max_q);
        const std::int64_t v = opt_q * opt_q + opt_q + 1;
        if (r.set) {
          emit_json(cfg, io::to_json(*r.set));
          std::string list;
          for (auto x : r.set->elements) list += (list.empty() ? "" : ",") + std::to_string(x);
          out << "(" << v << "," << opt_q + 1 << ") difference set {" << list << "} (" << r.nodes << " nodes)\n";
          return kOk;
        }
        if (!r.exhausted) {
          out << "q = " << opt_q << " exceeds --max-q " << opt_max_q << "; search not attempted\n";
        } else {
          out << "no (" << v << "," << opt_q + 1 << ") difference set containing 0 and 1 (search exhausted, "
              << r.nodes << " nodes)\n";
        }
        return kVerifyFailed;
      };
    });
  }

  // compare -----------------------------------------------------------------
  std::vector<std::string> opt_schemes;
  std::string opt_params;
  std::int64_t opt_K = 0;
  std::int64_t opt_slack = 8;
  {
    auto* sub = app.add_subcommand("compare", "Tabulate scheme points near K (or evaluate one point)");
    sub->add_option("--schemes", opt_schemes, "Comma-separated scheme names")->delimiter(',')->required();
    sub->add_option("--K", opt_K, "Target user count");
    sub->add_option("--slack", opt_slack, "Allowed |K' - K| for pairing")->check(CLI::NonNegativeNumber);
    sub->add_option("--params", opt_params, "Evaluate one point, e.g. 'm=5;w=2'");
    add_common_out(sub, "csv (default) or json");
    sub->callback([&] {
      handler = [&] {
        for (const auto& s : opt_schemes) {
          if (std::find(scheme_names().begin(), scheme_names().end(), s) == scheme_names().end()) {
            throw UsageError("compare: unknown scheme '" + s + "'");
          }
        }
        std::vector<SchemePoint> rows;
        if (!opt_params.empty()) {
          if (opt_schemes.size() != 1) throw UsageError("compare: --params needs exactly one scheme");
          rows.push_back(evaluate_scheme(opt_schemes.front(), parse_scheme_params(opt_params)));
        } else {
          if (opt_K < 1) throw UsageError("compare: pass --K or --params");
          rows = tradeoff_sweep(opt_K, opt_schemes, {}, SweepOptions{opt_slack});
        }
        if (!cfg.out_path.empty()) {
          const std::string fmt = pick_format(cfg, "csv", {"csv", "json"});
          io::write_file(cfg.out_path, fmt == "csv" ? render_csv(rows) : io::dump(io::to_json(rows)));
        }
        out << rows.size() << " point" << (rows.size() == 1 ? "" : "s") << "\n";
        const std::size_t shown = (cfg.verbosity > 0 || rows.size() <= 20) ? rows.size() : 20;
        for (std::size_t i = 0; i < shown; ++i) out << "  " << describe(rows[i]) << "\n";
        if (shown < rows.size()) out << "  ... (" << rows.size() - shown << " more; -v to list all)\n";
        return kOk;
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help goes to `out` with code 0; anything else prints the usage to `err`.
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

  try {
    return handler();
  } catch (const NhsdpError& e) {
    out << "NHSDP: invalid: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const PdaError& e) {
    out << "PDA: invalid: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace nhsdp::cli
