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

#pragma once

#include <cstdint>
#include <numeric>
#include <random>

namespace hsa {

// splitmix64 finalizer, used to derive independent sub-seeds (per trial,
// per purpose) from one user seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ull));
}

// Visits 1..n in a seed-determined order without materializing the list:
// an affine map t -> (a t + b) mod n with gcd(a, n) = 1 is a bijection.
class SeededOrder {
 public:
  SeededOrder(std::uint64_t n, std::uint64_t seed) : n_(n) {
    if (n_ == 0) return;
    std::uint64_t s = mix_seed(seed);
    a_ = n_ == 1 ? 1 : s % n_;
    while (n_ > 1 && (a_ == 0 || std::gcd(a_, n_) != 1)) a_ = (a_ + 1) % n_;
    b_ = mix_seed(s) % n_;
  }

  std::uint64_t size() const noexcept { return n_; }

  // t-th element, t in [0, n); result in [1, n].
  std::uint64_t operator[](std::uint64_t t) const noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a_) * t + b_) % n_) + 1;
  }

 private:
  std::uint64_t n_;
  std::uint64_t a_ = 1;
  std::uint64_t b_ = 0;
};

}  // namespace hsa
