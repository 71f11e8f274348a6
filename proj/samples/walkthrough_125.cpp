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

// End-to-end run for 125 users: packing -> PDA -> conjugate -> simulation.

#include <iostream>
#include <vector>

#include "nhsdp/caching_sim.hpp"
#include "nhsdp/packing.hpp"
#include "nhsdp/pda.hpp"

int main() {
  using namespace nhsdp;
  const std::vector<std::int64_t> m{2, 2, 2};
  const auto params = block_params(m);
  std::cout << "phi(2,2,2) = " << params.phi << ", smallest modulus " << params.min_modulus() << "\n";

  const Nhsdp packing = construct_nhsdp(125, m);
  std::cout << packing.label() << " packing, first block:";
  for (auto x : packing.blocks().front()) std::cout << ' ' << x;
  std::cout << "\n";

  const Pda pda = pda_from_nhsdp(packing);
  const auto st = pda_stats(pda);
  std::cout << pda.label() << " PDA, M/N = " << to_string(st.memory_ratio) << ", R = " << to_string(st.load)
            << ", gain = " << to_string(*st.gain) << ", verified: " << std::boolalpha << verify_pda(pda).valid() << "\n";

  const Pda conj = conjugate_pda(pda);
  std::cout << "conjugate " << conj.label() << ", verified: " << verify_pda(conj).valid() << "\n";

  // 125 users with 2 files has 2^125 demands; sample a few hundred of them.
  const auto report = exhaustive_demand_check(pda, 2, 8, 200, /*seed=*/1);
  std::cout << report.demands_checked - report.failed_demands << "/" << report.demands_checked
            << " sampled demands decoded, load = " << to_string(report.max_load) << "\n";
  return report.passed() ? 0 : 1;
}
