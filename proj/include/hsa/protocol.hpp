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

// One aggregation round: source key -> individual keys -> user messages ->
// relay sums -> server decode. Inputs of length L are processed in blocks of
// `block_size` symbols, each block with a fresh slice of source key.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hsa/code_design.hpp"
#include "hsa/key_design.hpp"
#include "hsa/random.hpp"

namespace hsa {

// A compiled linear scheme. Built from the general construction by
// build_scheme(), or written down by hand (see golden_example1()).
struct SchemeParams {
  std::string name;
  // Association users actually have, and the one the coefficients were
  // designed for. They differ only in the B = K regime.
  Topology topo;
  Topology active;
  PrimeField field;
  std::optional<Regime> regime;
  int block_size = 0;
  int key_length = 0;
  AlphaTable alpha;
  Matrix Lambda;
  Matrix H;
  Matrix R;
  std::vector<Link> disabled_links;
  std::optional<CodeDesign> code;
  std::optional<KeyDesign> keys;

  int K() const noexcept { return topo.K(); }

  bool disabled(int k, int i) const {
    return std::find(disabled_links.begin(), disabled_links.end(), Link{k, i}) != disabled_links.end();
  }

  Symbol lambda(int k, int i) const { return Lambda.get(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(i - 1)); }

  // Users whose message to relay i carries data (U_i minus disabled links).
  std::vector<int> senders(int i) const {
    std::vector<int> out;
    for (int k : topo.users_of_relay(i))
      if (!disabled(k, i)) out.push_back(k);
    return out;
  }
};

// General construction for any 1 <= B <= K. Throws with kNoValidG /
// kNoValidBeta / kConstructionFailed when the field is too small or the
// result fails validation.
inline SchemeParams build_scheme(int K, int B, std::optional<std::uint64_t> q = std::nullopt, std::uint64_t seed = 0) {
  const Topology topo(K, B);
  const Regime regime = regime_for(K, B);
  const PrimeField field = q ? PrimeField(*q) : select_field(K, B);
  const auto points = EvaluationPoints::canonical(field, K);
  const Topology active = regime == Regime::kFullAssociation ? Topology(K, K - 1) : topo;
  CodeDesign code(active, points);
  KeyDesign keys = build_keys(topo, points, seed);
  const auto report = validate_scheme(keys, code);
  if (!report.passed()) {
    std::string failed;
    for (const auto& c : report.checks)
      if (!c.passed) failed += " " + c.name;
    throw Error(ErrorCode::kConstructionFailed, "validation failed:" + failed);
  }
  return SchemeParams{.name = "general",
                      .topo = topo,
                      .active = active,
                      .field = field,
                      .regime = regime,
                      .block_size = active.B(),
                      .key_length = source_key_length(K, active.B()),
                      .alpha = code.alpha(),
                      .Lambda = keys.Lambda,
                      .H = keys.H,
                      .R = code.recovery(),
                      .disabled_links = keys.disabled_links,
                      .code = std::move(code),
                      .keys = std::move(keys)};
}

// W_1..W_K, each of length L.
struct InputVector {
  std::vector<std::vector<Symbol>> W;

  std::size_t length() const { return W.empty() ? 0 : W.front().size(); }
};

struct Transcript {
  std::size_t L = 0;
  std::map<Link, std::vector<Symbol>> X;
  std::vector<std::vector<Symbol>> Y;
  // Symbols sent by each user (sum over its links), per relay output, per
  // individual key, and in the source key.
  std::vector<std::size_t> L_X;
  std::vector<std::size_t> L_Y;
  std::size_t L_Z = 0;
  std::size_t L_Zsigma = 0;
};

struct RoundResult {
  std::vector<Symbol> recovered_sum;
  Transcript transcript;
};

namespace detail {

inline std::size_t block_count(const SchemeParams& p, std::size_t L) {
  const auto bs = static_cast<std::size_t>(p.block_size);
  if (L == 0 || L % bs != 0) {
    throw Error(ErrorCode::kSizeMismatch,
                "input length " + std::to_string(L) + " is not a positive multiple of block size " + std::to_string(bs));
  }
  return L / bs;
}

inline void check_reduced(const SchemeParams& p, std::span<const Symbol> v, const char* what) {
  for (auto s : v)
    if (s >= p.field.modulus()) throw Error(ErrorCode::kInvalidParams, std::string(what) + " symbol not reduced mod q");
}

}  // namespace detail

inline std::vector<Symbol> sample_source_key(const SchemeParams& p, std::size_t blocks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, p.field.modulus() - 1);
  std::vector<Symbol> z(blocks * static_cast<std::size_t>(p.key_length));
  for (auto& s : z) s = static_cast<Symbol>(dist(rng));
  return z;
}

// Z_k[b] = h_k . Z_sigma[block b].
inline std::vector<std::vector<Symbol>> derive_keys(const SchemeParams& p, std::span<const Symbol> zsigma) {
  const auto len = static_cast<std::size_t>(p.key_length);
  if (zsigma.size() % len != 0) throw Error(ErrorCode::kSizeMismatch, "source key length is not a multiple of L_Zsigma*");
  detail::check_reduced(p, zsigma, "source key");
  const std::size_t blocks = zsigma.size() / len;
  const auto& f = p.field;
  std::vector<std::vector<Symbol>> z(static_cast<std::size_t>(p.K()), std::vector<Symbol>(blocks, 0));
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto h = p.H.row(k);
    for (std::size_t b = 0; b < blocks; ++b) {
      Symbol acc = 0;
      for (std::size_t c = 0; c < len; ++c) acc = f.add(acc, f.mul(h[c], zsigma[b * len + c]));
      z[k][b] = acc;
    }
  }
  return z;
}

// X_{k,i}[b] = sum_j alpha_{k,i}^(j) W_k[b*bs + j] + lambda_{k,i} Z_k[b].
// Every relay in B_k gets an entry; disabled links get an empty message.
inline std::map<int, std::vector<Symbol>> user_encode(const SchemeParams& p, int k, std::span<const Symbol> wk,
                                                      std::span<const Symbol> zk) {
  const std::size_t blocks = detail::block_count(p, wk.size());
  if (zk.size() != blocks) throw Error(ErrorCode::kSizeMismatch, "individual key must hold one symbol per block");
  detail::check_reduced(p, wk, "input");
  detail::check_reduced(p, zk, "key");
  const auto& f = p.field;
  const auto bs = static_cast<std::size_t>(p.block_size);
  std::map<int, std::vector<Symbol>> out;
  for (int i : p.topo.relays_of_user(k)) {
    auto& msg = out[i];
    if (p.disabled(k, i)) continue;
    const auto it = p.alpha.find(Link{k, i});
    const Symbol lam = p.lambda(k, i);
    msg.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      Symbol acc = f.mul(lam, zk[b]);
      if (it != p.alpha.end())
        for (std::size_t j = 0; j < bs; ++j) acc = f.add(acc, f.mul(it->second[j], wk[b * bs + j]));
      msg[b] = acc;
    }
  }
  return out;
}

// Y_i = sum over k in U_i of X_{k,i}. A disabled link may be absent or empty.
inline std::vector<Symbol> relay_encode(const SchemeParams& p, int i, const std::map<int, std::vector<Symbol>>& received) {
  std::optional<std::size_t> blocks;
  std::vector<Symbol> y;
  const auto& f = p.field;
  for (int k : p.topo.users_of_relay(i)) {
    const auto it = received.find(k);
    if (p.disabled(k, i)) {
      if (it != received.end() && !it->second.empty())
        throw Error(ErrorCode::kSizeMismatch, "nonempty message on a disabled link");
      continue;
    }
    if (it == received.end()) throw MissingMessageError(k, i);
    if (!blocks) {
      blocks = it->second.size();
      y.assign(*blocks, 0);
    } else if (it->second.size() != *blocks) {
      throw Error(ErrorCode::kSizeMismatch, "relay inputs disagree on block count");
    }
    for (std::size_t b = 0; b < *blocks; ++b) y[b] = f.add(y[b], it->second[b]);
  }
  return y;
}

// Per block: (sum_k W_k^(j))_j = [Y_1 .. Y_K] R. Relay index i maps to Y[i-1];
// a missing relay output is reported as MissingMessage(0, i).
inline std::vector<Symbol> server_decode(const SchemeParams& p, const std::vector<std::optional<std::vector<Symbol>>>& y) {
  const auto K = static_cast<std::size_t>(p.K());
  std::optional<std::size_t> blocks;
  for (std::size_t i = 0; i < K; ++i) {
    if (i >= y.size() || !y[i]) throw MissingMessageError(0, static_cast<int>(i + 1));
    if (!blocks) blocks = y[i]->size();
    if (y[i]->size() != *blocks) throw Error(ErrorCode::kSizeMismatch, "relay outputs disagree on block count");
  }
  const auto bs = static_cast<std::size_t>(p.block_size);
  const auto& f = p.field;
  std::vector<Symbol> sum(*blocks * bs, 0);
  for (std::size_t b = 0; b < *blocks; ++b)
    for (std::size_t j = 0; j < bs; ++j) {
      Symbol acc = 0;
      for (std::size_t i = 0; i < K; ++i) acc = f.add(acc, f.mul((*y[i])[b], p.R.get(i, j)));
      sum[b * bs + j] = acc;
    }
  return sum;
}

inline std::vector<Symbol> server_decode(const SchemeParams& p, const std::vector<std::vector<Symbol>>& y) {
  std::vector<std::optional<std::vector<Symbol>>> wrapped(y.begin(), y.end());
  return server_decode(p, wrapped);
}

// Messages for a fixed source key; the deterministic core of run_round.
inline RoundResult execute_round(const SchemeParams& p, const InputVector& inputs, std::span<const Symbol> zsigma) {
  const auto K = static_cast<std::size_t>(p.K());
  if (inputs.W.size() != K) throw Error(ErrorCode::kSizeMismatch, "need one input per user");
  const std::size_t L = inputs.length();
  for (const auto& w : inputs.W)
    if (w.size() != L) throw Error(ErrorCode::kSizeMismatch, "all users must share the same L");
  const std::size_t blocks = detail::block_count(p, L);
  if (zsigma.size() != blocks * static_cast<std::size_t>(p.key_length))
    throw Error(ErrorCode::kSizeMismatch, "source key does not match the block count");

  const auto z = derive_keys(p, zsigma);
  RoundResult out;
  Transcript& t = out.transcript;
  t.L = L;
  t.L_X.assign(K, 0);
  std::vector<std::map<int, std::vector<Symbol>>> inbox(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (auto& [i, msg] : user_encode(p, static_cast<int>(k + 1), inputs.W[k], z[k])) {
      t.L_X[k] += msg.size();
      inbox[static_cast<std::size_t>(i - 1)][static_cast<int>(k + 1)] = msg;
      t.X.emplace(Link{static_cast<int>(k + 1), i}, std::move(msg));
    }
  }
  std::vector<std::optional<std::vector<Symbol>>> y(K);
  for (std::size_t i = 0; i < K; ++i) {
    y[i] = relay_encode(p, static_cast<int>(i + 1), inbox[i]);
    t.Y.push_back(*y[i]);
    t.L_Y.push_back(y[i]->size());
  }
  t.L_Z = blocks;
  t.L_Zsigma = zsigma.size();
  out.recovered_sum = server_decode(p, y);
  return out;
}

inline RoundResult run_round(const SchemeParams& p, const InputVector& inputs, std::uint64_t seed) {
  const std::size_t blocks = detail::block_count(p, inputs.length());
  const auto zsigma = sample_source_key(p, blocks, seed);
  return execute_round(p, inputs, zsigma);
}

inline InputVector random_inputs(const SchemeParams& p, std::size_t L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, p.field.modulus() - 1);
  InputVector in;
  in.W.assign(static_cast<std::size_t>(p.K()), std::vector<Symbol>(L));
  for (auto& w : in.W)
    for (auto& s : w) s = static_cast<Symbol>(dist(rng));
  return in;
}

// Symbolwise sum of the inputs; the decode target.
inline std::vector<Symbol> plain_sum(const PrimeField& f, const InputVector& in) {
  std::vector<Symbol> s(in.length(), 0);
  for (const auto& w : in.W)
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = f.add(s[j], w[j]);
  return s;
}

}  // namespace hsa
