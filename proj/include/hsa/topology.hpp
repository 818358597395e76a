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

// Cyclic wrap-around user-relay association. K users, K relays; user k
// uploads to the B consecutive relays k, k+1, ..., k+B-1 (mod K).
//
// All indices in this header are 1-based.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hsa/error.hpp"

namespace hsa {

class Topology {
 public:
  Topology(int users, int association) : k_(users), b_(association) {
    if (users < 1 || association < 1 || association > users) {
      throw Error(ErrorCode::kInvalidParams,
                  "need 1 <= B <= K, got K=" + std::to_string(users) + " B=" + std::to_string(association));
    }
  }

  int K() const noexcept { return k_; }
  int B() const noexcept { return b_; }

  // B_k, in cyclic order starting at k.
  std::vector<int> relays_of_user(int k) const {
    check_index(k, "user");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(b_));
    for (int j = 0; j < b_; ++j) out.push_back((k - 1 + j) % k_ + 1);
    return out;
  }

  // U_i, ascending.
  std::vector<int> users_of_relay(int i) const {
    check_index(i, "relay");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(b_));
    for (int j = 0; j < b_; ++j) out.push_back(((i - 1 - j) % k_ + k_) % k_ + 1);
    std::sort(out.begin(), out.end());
    return out;
  }

  // i in B_k
  bool associated(int k, int i) const {
    check_index(k, "user");
    check_index(i, "relay");
    return ((i - k) % k_ + k_) % k_ < b_;
  }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  void check_index(int idx, const char* what) const {
    if (idx < 1 || idx > k_) {
      throw Error(ErrorCode::kInvalidIndex,
                  std::string(what) + " index " + std::to_string(idx) + " outside [1, " + std::to_string(k_) + "]");
    }
  }

  int k_;
  int b_;
};

inline std::vector<int> relays_of_user(int k, const Topology& topo) { return topo.relays_of_user(k); }
inline std::vector<int> users_of_relay(int i, const Topology& topo) { return topo.users_of_relay(i); }

}  // namespace hsa
