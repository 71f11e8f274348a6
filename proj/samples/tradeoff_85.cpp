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

// Prints the memory/load/subpacketization points available near K = 85.

#include <iostream>
#include <string>
#include <vector>

#include "nhsdp/scheme_compare.hpp"

int main(int argc, char** argv) {
  using namespace nhsdp;
  const std::int64_t K = argc > 1 ? std::stoll(argv[1]) : 85;
  const auto rows = tradeoff_sweep(K, {"NHSDP", "NHSDP_CONJ", "WCWL", "AST", "CKSM1", "CKSM2", "ZCW"}, {});
  std::cout << render_csv(rows);
}
