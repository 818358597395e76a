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

// Rate tuples (R_X, R_Y, R_Z, R_Zsigma) as exact fractions.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "hsa/error.hpp"
#include "hsa/protocol.hpp"

namespace hsa {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct RateTuple {
  Rational RX;
  Rational RY;
  Rational RZ;
  Rational RZsigma;

  friend bool operator==(const RateTuple&, const RateTuple&) = default;

  // Componentwise >=.
  bool dominates(const RateTuple& o) const { return RX >= o.RX && RY >= o.RY && RZ >= o.RZ && RZsigma >= o.RZsigma; }
};

inline std::string to_string(const RateTuple& t) {
  return "(" + to_string(t.RX) + ", " + to_string(t.RY) + ", " + to_string(t.RZ) + ", " + to_string(t.RZsigma) + ")";
}

namespace detail {
inline void check_rate_params(int K, int B) {
  if (K < 1 || B < 1 || B > K) {
    throw Error(ErrorCode::kInvalidParams, "rates need 1 <= B <= K, got K=" + std::to_string(K) + " B=" + std::to_string(B));
  }
}
}  // namespace detail

// Corner of the optimal region for B <= K-1; the achievable tuple for B = K.
inline RateTuple achievable_rates(int K, int B) {
  detail::check_rate_params(K, B);
  if (B == K) {
    if (K < 2) throw Error(ErrorCode::kInvalidParams, "B = K needs K >= 2");
    return {Rational(1), Rational(1, K - 1), Rational(1, K - 1), Rational(1)};
  }
  return {Rational(1), Rational(1, B), Rational(1, B), std::max(Rational(1), Rational(K, B) - 1)};
}

// Lower bounds valid for every secure scheme, any 1 <= B <= K.
inline RateTuple converse_bounds(int K, int B) {
  detail::check_rate_params(K, B);
  const Rational ry = K >= 2 ? std::max(Rational(1, B), Rational(1, K - 1)) : Rational(1, B);
  return {Rational(1), ry, Rational(1, B), std::max(Rational(1), Rational(K, B) - 1)};
}

inline RateTuple measured_rates(const Transcript& t) {
  if (t.L == 0 || t.L_X.empty() || t.L_Y.empty()) throw Error(ErrorCode::kInvalidParams, "empty transcript");
  const auto L = static_cast<std::int64_t>(t.L);
  const auto K = static_cast<std::int64_t>(t.L_Y.size());
  if (!std::all_of(t.L_X.begin(), t.L_X.end(), [&](std::size_t v) { return v == t.L_X.front(); })) {
    throw Error(ErrorCode::kInvalidParams, "users sent different numbers of symbols");
  }
  std::int64_t ly = 0;
  for (auto v : t.L_Y) ly += static_cast<std::int64_t>(v);
  return {Rational(static_cast<std::int64_t>(t.L_X.front()), L), Rational(ly, K * L),
          Rational(static_cast<std::int64_t>(t.L_Z), L), Rational(static_cast<std::int64_t>(t.L_Zsigma), L)};
}

}  // namespace hsa
