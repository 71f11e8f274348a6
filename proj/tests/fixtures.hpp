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

// Worked examples transcribed from the literature, used as goldens.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

// (15, 4, 2) packing: D1 = {-1, 1, -2, 2}, D2 = {-4, 4, -5, 5}.
inline const std::vector<std::vector<std::int64_t>> kExample1 = {{14, 1, 13, 2}, {11, 4, 10, 5}};

// The 15 x 15 array built from kExample1; "c,i" is the pair (c, i).
inline const char* const kExample2 = R"(
* 1,1 2,1 * 4,2 5,2 * * * * 10,2 11,2 * 13,1 14,1
1,1 * 3,1 4,1 * 6,2 7,2 * * * * 12,2 13,2 * 0,1
2,1 3,1 * 5,1 6,1 * 8,2 9,2 * * * * 14,2 0,2 *
* 4,1 5,1 * 7,1 8,1 * 10,2 11,2 * * * * 1,2 2,2
4,2 * 6,1 7,1 * 9,1 10,1 * 12,2 13,2 * * * * 3,2
5,2 6,2 * 8,1 9,1 * 11,1 12,1 * 14,2 0,2 * * * *
* 7,2 8,2 * 10,1 11,1 * 13,1 14,1 * 1,2 2,2 * * *
* * 9,2 10,2 * 12,1 13,1 * 0,1 1,1 * 3,2 4,2 * *
* * * 11,2 12,2 * 14,1 0,1 * 2,1 3,1 * 5,2 6,2 *
* * * * 13,2 14,2 * 1,1 2,1 * 4,1 5,1 * 7,2 8,2
10,2 * * * * 0,2 1,2 * 3,1 4,1 * 6,1 7,1 * 9,2
11,2 12,2 * * * * 2,2 3,2 * 5,1 6,1 * 8,1 9,1 *
* 13,2 14,2 * * * * 4,2 5,2 * 7,1 8,1 * 10,1 11,1
13,1 * 0,2 1,2 * * * * 6,2 7,2 * 9,1 10,1 * 12,1
14,1 0,1 * 2,2 3,2 * * * * 8,2 9,2 * 11,1 12,1 *
)";

/// kExample2 with (c, i) mapped to (i - 1) * 15 + c + 1 and * to 0.
inline std::vector<std::vector<int>> example2_symbols() {
  std::vector<std::vector<int>> out;
  std::istringstream in(kExample2);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<int> row;
    while (ls >> tok) {
      if (tok == "*") {
        row.push_back(0);
      } else {
        const auto comma = tok.find(',');
        const int c = std::stoi(tok.substr(0, comma)), i = std::stoi(tok.substr(comma + 1));
        row.push_back((i - 1) * 15 + c + 1);
      }
    }
    out.push_back(row);
  }
  return out;
}

// 2-(4, 4, 2, 4) PDA.
inline const std::vector<std::vector<int>> kSmallPda = {{0, 1, 0, 4}, {1, 0, 2, 0}, {0, 2, 0, 3}, {4, 0, 3, 0}};

// Blocks of the (125, 8, 8) packing from m = (2, 2, 2), as printed (signed).
inline const std::vector<std::vector<std::int64_t>> kExample3 = {
    {31, 21, 29, 19, -19, -29, -21, -31}, {32, 22, 28, 18, -18, -28, -22, -32},
    {36, 16, 34, 14, -14, -34, -16, -36}, {37, 17, 33, 13, -13, -33, -17, -37},
    {56, 46, 54, 44, -44, -54, -46, -56}, {57, 47, 53, 43, -43, -53, -47, -57},
    {61, 41, 59, 39, -39, -59, -41, -61}, {62, 42, 58, 38, -38, -58, -42, -62}};

// Comparison-table rows as printed: decimals are kept as strings so the
// checker can tell how many digits were published.
struct TableRow {
  const char* scheme;
  std::map<std::string, std::int64_t> params;
  std::int64_t K;
  const char* memory_ratio;
  const char* load;
  const char* F;
};

inline const std::vector<TableRow> kNhsdpRows = {
    {"NHSDP", {{"v", 33}, {"n", 3}}, 33, "0.7576", "1", "33"},
    {"NHSDP", {{"v", 129}, {"n", 4}}, 129, "0.876", "1", "129"},
    {"NHSDP", {{"v", 257}, {"n", 5}}, 257, "0.8755", "1", "257"},
    {"NHSDP", {{"v", 513}, {"n", 5}}, 513, "0.9376", "1", "513"},
    {"NHSDP", {{"v", 49}, {"n", 2}}, 49, "0.26531", "9", "49"},
    {"NHSDP", {{"v", 1331}, {"n", 3}}, 1331, "0.2498", "125", "1331"},
    {"NHSDP", {{"v", 2199}, {"n", 3}}, 2199, "0.2142", "216", "2199"},
    {"NHSDP", {{"v", 2401}, {"n", 4}}, 2401, "0.460", "81", "2401"},
    {"NHSDP", {{"v", 25}, {"n", 2}}, 25, "0.36", "4", "25"},
    {"NHSDP", {{"v", 81}, {"n", 4}}, 81, "0.802", "1", "81"},
    {"NHSDP", {{"v", 125}, {"n", 3}}, 125, "0.488", "8", "125"},
    {"NHSDP", {{"v", 343}, {"n", 3}}, 343, "0.370", "27", "343"},
    {"NHSDP", {{"v", 243}, {"n", 5}}, 243, "0.8683", "1", "243"},
    {"NHSDP", {{"v", 27}, {"n", 3}}, 27, "0.7037", "1", "27"},
    {"NHSDP", {{"v", 81}, {"n", 2}}, 81, "0.210", "16", "81"},
    {"NHSDP", {{"v", 121}, {"n", 2}}, 121, "0.1736", "25", "121"},
    {"NHSDP", {{"v", 169}, {"n", 2}}, 169, "0.1479", "36", "169"},
    {"NHSDP", {{"v", 225}, {"n", 2}}, 225, "0.1289", "49", "225"},
};

inline const std::vector<TableRow> kCompetitorRows = {
    {"ZCW", {{"m", 5}, {"w", 2}}, 32, "0.6875", "1.25", "32"},
    {"ZCW", {{"m", 7}, {"w", 2}}, 128, "0.836", "2.625", "128"},
    {"ZCW", {{"m", 8}, {"w", 2}}, 256, "0.8906", "2.41", "256"},
    {"ZCW", {{"m", 9}, {"w", 2}}, 512, "0.9297", "2.04", "512"},
    {"AST", {{"r", 2}, {"k", 13}}, 52, "0.28846", "9.25", "52"},
    {"AST", {{"r", 2}, {"k", 333}}, 1332, "0.2515", "249.25", "1332"},
    {"AST", {{"r", 2}, {"k", 548}}, 2192, "0.2509", "410.5", "2192"},
    {"AST", {{"r", 3}, {"k", 300}}, 2400, "0.50125", "149.625", "2400"},
    {"YTCC", {{"H", 22}, {"a", 1}, {"z", 8}, {"r", 0}}, 22, "0.364", "1.556", "319770"},
    {"YTCC", {{"H", 13}, {"a", 2}, {"z", 7}, {"r", 0}}, 78, "0.81", "0.41667", "1716"},
    {"YTCC", {{"H", 15}, {"a", 2}, {"z", 9}, {"r", 1}}, 105, "0.486", "6", "5005"},
    {"YTCC", {{"H", 26}, {"a", 2}, {"z", 5}, {"r", 0}}, 325, "0.354", "10", "65780"},
    {"YTCC", {{"H", 22}, {"a", 2}, {"z", 12}, {"r", 0}}, 231, "0.805", "0.4945055", "646646"},
    {"CKSM1", {{"q", 2}, {"k", 7}, {"m", 6}, {"t", 1}}, 127, "0.496", "9.143", "3.56E+09"},
    {"CKSM2", {{"q", 2}, {"k", 8}, {"m", 4}, {"t", 1}}, 255, "0.8784", "2.0667", "97155"},
    {"CKSM2", {{"q", 2}, {"k", 5}, {"m", 2}, {"t", 1}}, 31, "0.7742", "1", "155"},
    {"CKSM1", {{"q", 4}, {"k", 4}, {"m", 3}, {"t", 1}}, 85, "0.247", "16", "95200"},
    {"CKSM1", {{"q", 5}, {"k", 4}, {"m", 3}, {"t", 1}}, 156, "0.19872", "31.25", "604500"},
    {"CKSM1", {{"q", 2}, {"k", 8}, {"m", 5}, {"t", 1}}, 255, "0.12157", "37.333", "8.10E+09"},
    {"CKSM1", {{"q", 3}, {"k", 6}, {"m", 5}, {"t", 1}}, 364, "0.332", "40.5", "4.51E+10"},
};

/// Absolute tolerance on a printed memory ratio; the K = 1331 cell is off
/// in its fourth digit.
inline double memory_tolerance(const TableRow& row) { return row.K == 1331 ? 1.5e-3 : 5e-3; }

/// True when `value` rounds to the printed string: integers must match
/// exactly, decimals (plain or E-notation) within half a unit of the last
/// printed digit.
inline bool matches_printed(double value, const std::string& printed) {
  const auto e = printed.find_first_of("eE");
  const std::string mantissa = printed.substr(0, e);
  const int exponent = e == std::string::npos ? 0 : std::stoi(printed.substr(e + 1));
  const auto dot = mantissa.find('.');
  if (dot == std::string::npos && exponent == 0) return value == std::stod(printed);
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
  const double half_ulp = 0.5 * std::pow(10.0, exponent - decimals);
  return std::fabs(value - std::stod(printed)) <= half_ulp * (1 + 1e-9);
}

}  // namespace fixtures
