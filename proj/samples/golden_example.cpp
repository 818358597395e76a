/* Copyright 2026 The HSA Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Runs the K=3, B=2 scheme over GF(3) once and audits it exhaustively.

#include <cstdio>

#include "hsa/hsa.hpp"

int main() {
  const hsa::SchemeParams p = hsa::golden_example1();
  const hsa::InputVector in{{{1, 2}, {0, 1}, {2, 2}}};
  const std::vector<hsa::Symbol> key{1, 2};
  const auto r = hsa::execute_round(p, in, key);
  std::printf("sum = (%u, %u)\n", r.recovered_sum[0], r.recovered_sum[1]);
  for (std::size_t i = 0; i < r.transcript.Y.size(); ++i) std::printf("Y_%zu = %u\n", i + 1, r.transcript.Y[i][0]);

  const auto audit = hsa::audit_exhaustive(p, 1, hsa::kDefaultMaxStates);
  std::printf("%llu states, audit %s\n", static_cast<unsigned long long>(audit.mi->states),
              audit.passed() ? "passed" : "FAILED");
  std::printf("rates %s\n", hsa::to_string(hsa::measured_rates(r.transcript)).c_str());
  return audit.passed() && r.recovered_sum == hsa::plain_sum(p.field, in) ? 0 : 1;
}
