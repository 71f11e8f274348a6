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

// JSON and text file formats for every artifact the CLI passes around.
//
//   packing     {"v": 125, "g": 8, "blocks": [[...], ...]}
//   PDA (json)  {"F": 4, "K": 4, "Z": 2, "S": 4, "grid": [["*", 1, ...], ...]}
//   PDA (text)  a "PDA F K Z S" header, then F lines of K cells ("*" or id)
//   NTAP set    {"v": 27, "elements": [...]}
//   PHF         {"r": 3, "m": 36, "q": 9, "t": 3, "grid": [[...], ...]}
//   transcript  demand is 1-based; payloads are lowercase hex

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nhsdp/caching_sim.hpp"
#include "nhsdp/derived_designs.hpp"
#include "nhsdp/packing.hpp"
#include "nhsdp/pda.hpp"
#include "nhsdp/scheme_compare.hpp"

namespace nhsdp::io {

using json = nlohmann::json;

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Packings

inline json to_json(const Nhsdp& p) { return {{"v", p.v()}, {"g", p.g()}, {"blocks", p.blocks()}}; }

/// Parses and verifies; a structurally sound file that is not a packing
/// raises NhsdpError (carrying the violation) rather than FormatError.
inline Nhsdp nhsdp_from_json(const json& j) {
  try {
    const auto v = j.at("v").get<std::int64_t>();
    auto blocks = j.at("blocks").get<std::vector<Block>>();
    if (j.contains("g")) {
      const auto g = j.at("g").get<std::size_t>();
      for (const auto& b : blocks) {
        if (b.size() != g) throw FormatError("declared g=" + std::to_string(g) + " does not match block sizes");
      }
    }
    return Nhsdp::make(v, std::move(blocks));
  } catch (const json::exception& e) {
    throw FormatError(std::string("packing JSON: ") + e.what());
  }
}

/// Raw (v, blocks) without verification, for reporting violations.
inline std::pair<std::int64_t, std::vector<Block>> raw_nhsdp_from_json(const json& j) {
  try {
    return {j.at("v").get<std::int64_t>(), j.at("blocks").get<std::vector<Block>>()};
  } catch (const json::exception& e) {
    throw FormatError(std::string("packing JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// PDAs

inline json to_json(const Pda& pda) {
  json grid = json::array();
  for (std::size_t f = 0; f < pda.rows(); ++f) {
    json row = json::array();
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (pda.is_star(f, k)) {
        row.push_back("*");
      } else {
        row.push_back(pda.at(f, k));
      }
    }
    grid.push_back(std::move(row));
  }
  return {{"F", pda.rows()}, {"K", pda.cols()}, {"Z", pda.stars_per_column()}, {"S", pda.symbols()},
          {"grid", std::move(grid)}};
}

inline Pda pda_from_json(const json& j) {
  try {
    const auto& grid = j.at("grid");
    const std::size_t F = grid.size();
    const std::size_t K = F ? grid.front().size() : 0;
    if (j.contains("F") && j.at("F").get<std::size_t>() != F) throw FormatError("PDA JSON: F does not match grid");
    if (j.contains("K") && j.at("K").get<std::size_t>() != K) throw FormatError("PDA JSON: K does not match grid");
    std::vector<Cell> cells;
    cells.reserve(F * K);
    for (const auto& row : grid) {
      if (row.size() != K) throw FormatError("PDA JSON: ragged grid");
      for (const auto& c : row) {
        if (c.is_string()) {
          if (c.get<std::string>() != "*") throw FormatError("PDA JSON: unexpected cell '" + c.get<std::string>() + "'");
          cells.push_back(kStar);
        } else {
          const auto s = c.get<std::int64_t>();
          if (s < 1 || s > INT32_MAX) throw FormatError("PDA JSON: symbol ids must be positive");
          cells.push_back(static_cast<Cell>(s));
        }
      }
    }
    Pda inferred = Pda::from_grid(F, K, cells);
    const std::size_t Z = j.contains("Z") ? j.at("Z").get<std::size_t>() : inferred.stars_per_column();
    const std::size_t S = j.contains("S") ? j.at("S").get<std::size_t>() : inferred.symbols();
    return Pda(F, K, Z, S, std::move(cells));
  } catch (const json::exception& e) {
    throw FormatError(std::string("PDA JSON: ") + e.what());
  }
}

inline std::string to_text(const Pda& pda) {
  std::string out = "PDA " + std::to_string(pda.rows()) + " " + std::to_string(pda.cols()) + " " +
                    std::to_string(pda.stars_per_column()) + " " + std::to_string(pda.symbols()) + "\n";
  for (std::size_t f = 0; f < pda.rows(); ++f) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (k) out += ' ';
      out += pda.is_star(f, k) ? std::string("*") : std::to_string(pda.at(f, k));
    }
    out += '\n';
  }
  return out;
}

inline Pda pda_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t F = 0, K = 0, Z = 0, S = 0;
  bool have_header = false;
  std::vector<Cell> cells;
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      ls >> tag;
      if (tag != "PDA" || !(ls >> F >> K >> Z >> S)) throw FormatError("PDA text: expected header 'PDA F K Z S'");
      have_header = true;
      cells.reserve(F * K);
      continue;
    }
    std::string tok;
    std::size_t count = 0;
    while (ls >> tok) {
      if (tok == "*") {
        cells.push_back(kStar);
      } else {
        std::size_t used = 0;
        long long s = 0;
        try {
          s = std::stoll(tok, &used);
        } catch (const std::exception&) {
          throw FormatError("PDA text: bad cell '" + tok + "'");
        }
        if (used != tok.size() || s < 1 || s > INT32_MAX) throw FormatError("PDA text: bad cell '" + tok + "'");
        cells.push_back(static_cast<Cell>(s));
      }
      ++count;
    }
    if (count != K) throw FormatError("PDA text: row " + std::to_string(rows_read) + " has " + std::to_string(count) +
                                      " cells, expected " + std::to_string(K));
    ++rows_read;
  }
  if (!have_header) throw FormatError("PDA text: missing header");
  if (rows_read != F) throw FormatError("PDA text: expected " + std::to_string(F) + " rows, got " + std::to_string(rows_read));
  return Pda(F, K, Z, S, std::move(cells));
}

/// Accepts either format; JSON is recognised by a leading '{'.
inline Pda pda_from_string(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return pda_from_json(parse_json(text));
  return pda_from_text(text);
}

// ---------------------------------------------------------------------------
// Derived designs

inline json to_json(const NtapSet& s) { return {{"v", s.v}, {"elements", s.elements}}; }

inline NtapSet ntap_from_json(const json& j) {
  try {
    NtapSet s{j.at("v").get<std::int64_t>(), j.at("elements").get<std::vector<std::int64_t>>()};
    std::sort(s.elements.begin(), s.elements.end());
    return s;
  } catch (const json::exception& e) {
    throw FormatError(std::string("NTAP JSON: ") + e.what());
  }
}

inline json to_json(const PhfArray& phf) {
  json grid = json::array();
  for (std::size_t r = 0; r < phf.r; ++r) {
    grid.push_back(std::vector<std::int64_t>(phf.grid.begin() + static_cast<std::ptrdiff_t>(r * phf.m),
                                             phf.grid.begin() + static_cast<std::ptrdiff_t>((r + 1) * phf.m)));
  }
  return {{"r", phf.r}, {"m", phf.m}, {"q", phf.q}, {"t", phf.t}, {"grid", std::move(grid)}};
}

inline PhfArray phf_from_json(const json& j) {
  try {
    PhfArray p;
    p.r = j.at("r").get<std::size_t>();
    p.m = j.at("m").get<std::size_t>();
    p.q = j.at("q").get<std::int64_t>();
    p.t = j.at("t").get<std::size_t>();
    const auto rows = j.at("grid").get<std::vector<std::vector<std::int64_t>>>();
    if (rows.size() != p.r) throw FormatError("PHF JSON: grid has wrong number of rows");
    for (const auto& row : rows) {
      if (row.size() != p.m) throw FormatError("PHF JSON: grid has wrong number of columns");
      p.grid.insert(p.grid.end(), row.begin(), row.end());
    }
    return p;
  } catch (const json::exception& e) {
    throw FormatError(std::string("PHF JSON: ") + e.what());
  }
}

inline json to_json(const Cdp& c) {
  return {{"v", c.v}, {"elements", c.elements}, {"difference_set", c.is_difference_set}};
}

// ---------------------------------------------------------------------------
// Simulation transcripts

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xF];
  }
  return out;
}

inline Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2) throw FormatError("hex string has odd length");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    throw FormatError(std::string("bad hex digit '") + c + "'");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return out;
}

inline json to_json(const DeliveryTranscript& t) {
  json demand = json::array();
  for (auto d : t.demand) demand.push_back(d + 1);
  json txs = json::array();
  for (const auto& tx : t.transmissions) {
    json contributors = json::array();
    for (auto [user, row] : tx.contributors) contributors.push_back({user, row});
    txs.push_back({{"symbol", tx.symbol}, {"payload", to_hex(tx.payload)}, {"contributors", std::move(contributors)}});
  }
  const Rational load = t.measured_load();
  return {{"demand", std::move(demand)},
          {"packets", t.packets},
          {"packet_len", t.packet_len},
          {"seed", t.seed},
          {"bytes_on_wire", t.bytes_on_wire},
          {"load", to_string(load)},
          {"transmissions", std::move(txs)}};
}

inline DeliveryTranscript transcript_from_json(const json& j) {
  try {
    DeliveryTranscript t;
    for (auto d : j.at("demand").get<std::vector<std::size_t>>()) {
      if (d == 0) throw FormatError("transcript JSON: demands are 1-based");
      t.demand.push_back(d - 1);
    }
    t.packets = j.at("packets").get<std::size_t>();
    t.packet_len = j.at("packet_len").get<std::size_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& tx : j.at("transmissions")) {
      Transmission x;
      x.symbol = tx.at("symbol").get<Cell>();
      x.payload = from_hex(tx.at("payload").get<std::string>());
      for (const auto& c : tx.at("contributors")) x.contributors.emplace_back(c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>());
      t.bytes_on_wire += x.payload.size();
      t.transmissions.push_back(std::move(x));
    }
    return t;
  } catch (const json::exception& e) {
    throw FormatError(std::string("transcript JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Scheme tables

inline json to_json(const SchemePoint& p) {
  return {{"scheme", p.scheme},
          {"params", format_params(p.params)},
          {"K", p.K.str()},
          {"memory_ratio_num", numerator(p.memory_ratio).str()},
          {"memory_ratio_den", denominator(p.memory_ratio).str()},
          {"load_num", numerator(p.load).str()},
          {"load_den", denominator(p.load).str()},
          {"F", p.F.str()},
          {"gain_num", numerator(p.gain).str()},
          {"gain_den", denominator(p.gain).str()}};
}

inline json to_json(const std::vector<SchemePoint>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

/// Stable, human-diffable serialization used for every JSON output file.
inline std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace nhsdp::io
