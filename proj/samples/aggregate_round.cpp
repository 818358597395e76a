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

// Builds a scheme for every association number at K = 6 and aggregates one
// random input vector with each.

#include <cstdio>

#include "hsa/hsa.hpp"

int main() {
  constexpr int K = 6;
  int bad = 0;
  for (int B = 1; B <= K; ++B) {
    const auto p = hsa::build_scheme(K, B, std::nullopt, 1);
    const auto in = hsa::random_inputs(p, static_cast<std::size_t>(p.block_size) * 4, 2);
    const auto r = hsa::run_round(p, in, 3);
    const bool ok = r.recovered_sum == hsa::plain_sum(p.field, in);
    bad += ok ? 0 : 1;
    std::printf("B=%d %-12s q=%-4llu rates %-22s %s\n", B, std::string(hsa::to_string(*p.regime)).c_str(),
                static_cast<unsigned long long>(p.field.modulus()), hsa::to_string(hsa::measured_rates(r.transcript)).c_str(),
                ok ? "exact" : "WRONG");
  }
  return bad;
}
