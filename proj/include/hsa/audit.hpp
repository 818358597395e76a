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

// Security and recovery audits.
//
// Algebraic audits check the rank conditions the security arguments need and
// scale to any size. Exhaustive audits enumerate every (W, Z_sigma) and test
// statistical independence exactly: X and W are independent iff
// N * count(x, w) == count(x) * count(w) in every cell, which needs nothing
// but integer arithmetic. The server condition is the same test inside each
// slice of constant input sum.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsa/gf.hpp"
#include "hsa/parallel.hpp"
#include "hsa/protocol.hpp"

namespace hsa {

// K = 3, B = 2 over GF(3), L = 2, written out coefficient by coefficient:
//   X_{1,1} = -2 W_1^(1) - Z_1            X_{1,2} = -(W_1^(1) + W_1^(2)) + Z_1
//   X_{2,2} = W_2^(1) - W_2^(2) + 2 Z_2    X_{2,3} = 2 W_2^(1) + Z_2
//   X_{3,3} = W_3^(1) + W_3^(2) + Z_3      X_{3,1} = W_3^(2) - W_3^(1) + 2 Z_3
// with Z = (N_1, N_2, N_1 + N_2), decoded by (Y_3 - Y_1)/2 and (Y_1 - 2Y_2 + Y_3)/2.
inline SchemeParams golden_example1() {
  const PrimeField f(3);
  const Topology topo(3, 2);
  auto sym = [&](std::int64_t v) { return f.reduce(v); };
  AlphaTable alpha{
      {{1, 1}, {sym(-2), sym(0)}}, {{1, 2}, {sym(-1), sym(-1)}},  //
      {{2, 2}, {sym(1), sym(-1)}}, {{2, 3}, {sym(2), sym(0)}},    //
      {{3, 3}, {sym(1), sym(1)}},  {{3, 1}, {sym(-1), sym(1)}},
  };
  Matrix lambda(f, {{-1, 1, 0}, {0, 2, 1}, {2, 0, 1}});
  Matrix h(f, {{1, 0}, {0, 1}, {1, 1}});
  // Columns: halves of (-1, 0, 1) and (1, -2, 1).
  const std::int64_t half = f.inv(2);
  Matrix r(f, {{-half, half}, {0, -2 * half}, {half, half}});
  return SchemeParams{.name = "example1",
                      .topo = topo,
                      .active = topo,
                      .field = f,
                      .regime = std::nullopt,
                      .block_size = 2,
                      .key_length = 2,
                      .alpha = std::move(alpha),
                      .Lambda = std::move(lambda),
                      .H = std::move(h),
                      .R = std::move(r),
                      .disabled_links = {},
                      .code = std::nullopt,
                      .keys = std::nullopt};
}

struct RelayCheck {
  int relay = 0;
  bool passed = false;
  std::size_t rank = 0;
  std::string detail;
};

struct ServerCheck {
  bool passed = false;
  std::size_t rank = 0;
  std::size_t null_dim = 0;
  bool cancels = false;
  std::size_t span_rank = 0;
  std::string detail;
};

// Rows lambda_{k,i} h_k over the senders of relay i must be independent and
// every lambda_{k,i} nonzero: then relay i sees each input masked by its own
// independent key symbol.
inline RelayCheck relay_security_algebraic(const SchemeParams& p, int i) {
  const auto senders = p.senders(i);
  RelayCheck out;
  out.relay = i;
  const auto& f = p.field;
  Matrix rows(f, senders.size(), p.H.cols());
  bool nonzero = true;
  for (std::size_t r = 0; r < senders.size(); ++r) {
    const int k = senders[r];
    const Symbol lam = p.lambda(k, i);
    if (lam == 0) {
      nonzero = false;
      out.detail = "lambda(" + std::to_string(k) + "," + std::to_string(i) + ") = 0 exposes the input";
    }
    const auto h = p.H.row(static_cast<std::size_t>(k - 1));
    for (std::size_t c = 0; c < h.size(); ++c) rows.set(r, c, f.mul(lam, h[c]));
  }
  out.rank = mat_rank(rows);
  out.passed = nonzero && out.rank == senders.size();
  if (nonzero && !out.passed) {
    out.detail = "key rank " + std::to_string(out.rank) + " < " + std::to_string(senders.size());
  }
  return out;
}

// The key-cancelling decoders are exactly span(R): rank(H^T Lambda) = K - B,
// H^T Lambda R = 0 and null(H^T Lambda) lies inside span(R).
inline ServerCheck server_security_algebraic(const SchemeParams& p) {
  ServerCheck out;
  const auto K = static_cast<std::size_t>(p.K());
  const auto B = static_cast<std::size_t>(p.block_size);
  const Matrix htl = p.H.transpose() * p.Lambda;
  out.rank = mat_rank(htl);
  out.cancels = (htl * p.R).is_zero();
  const Matrix null = mat_nullspace(htl);
  out.null_dim = null.cols();
  const std::size_t rr = mat_rank(p.R);
  out.span_rank = mat_rank(null.hconcat(p.R));
  out.passed = out.rank + B == K && out.cancels && rr == B && out.span_rank == B;
  if (!out.passed) {
    out.detail = "rank(H^T Lambda) " + std::to_string(out.rank) + " (want " + std::to_string(K - B) + "), " +
                 (out.cancels ? "keys cancel" : "keys do not cancel") + ", rank R " + std::to_string(rr) +
                 ", rank [null | R] " + std::to_string(out.span_rank);
  }
  return out;
}

struct MiReport {
  std::uint64_t states = 0;
  // One verdict per relay (index i-1): received messages independent of W.
  std::vector<bool> relay_independent;
  // Y independent of W given sum W.
  bool server_independent = false;

  bool passed() const {
    return server_independent &&
           std::all_of(relay_independent.begin(), relay_independent.end(), [](bool b) { return b; });
  }
};

struct RecoveryReport {
  std::uint64_t states = 0;
  std::uint64_t decode_failures = 0;
  // Y_{1:K} determines sum W over the whole state space.
  bool sum_determined = false;

  bool passed() const { return decode_failures == 0 && sum_determined; }
};

constexpr std::uint64_t kDefaultMaxStates = 100'000'000;

namespace detail {

// Counts keyed by a base-q code; dense below a size cutoff.
class CountTable {
 public:
  explicit CountTable(std::uint64_t range) : range_(range) {
    if (range_ <= kDenseLimit) dense_.assign(range_, 0);
  }

  void add(std::uint64_t code, std::uint64_t c = 1) {
    if (!dense_.empty()) {
      dense_[code] += c;
    } else {
      sparse_[code] += c;
    }
  }

  std::uint64_t get(std::uint64_t code) const {
    if (!dense_.empty()) return dense_[code];
    const auto it = sparse_.find(code);
    return it == sparse_.end() ? 0 : it->second;
  }

  void merge(const CountTable& o) {
    o.for_each([&](std::uint64_t code, std::uint64_t c) { add(code, c); });
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (!dense_.empty()) {
      for (std::uint64_t code = 0; code < dense_.size(); ++code)
        if (dense_[code]) fn(code, dense_[code]);
    } else {
      for (const auto& [code, c] : sparse_) fn(code, c);
    }
  }

 private:
  static constexpr std::uint64_t kDenseLimit = 1u << 20;
  std::uint64_t range_;
  std::vector<std::uint64_t> dense_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
};

inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

// Every observable symbol (each relay's received X symbols, then every Y
// symbol) as a linear form in the flattened inputs and the source key,
// extracted by running the protocol on unit vectors.
class LinearView {
 public:
  LinearView(const SchemeParams& p, std::size_t blocks, std::uint64_t max_states)
      : p_(p), blocks_(blocks), L_(blocks * static_cast<std::size_t>(p.block_size)) {
    const auto K = static_cast<std::size_t>(p.K());
    const std::uint64_t q = p.field.modulus();
    w_syms_ = K * L_;
    z_syms_ = blocks * static_cast<std::size_t>(p.key_length);
    const auto states = checked_pow(q, w_syms_ + z_syms_, max_states);
    if (!states) {
      throw Error(ErrorCode::kStateSpaceTooLarge, "q^(K L + blocks L_Zsigma*) exceeds max states " +
                                                      std::to_string(max_states));
    }
    states_ = *states;
    n_w_ = *checked_pow(q, w_syms_, max_states);
    n_z_ = *checked_pow(q, z_syms_, max_states);

    for (int i = 1; i <= p.K(); ++i) {
      relay_offset_.push_back(obs_.size());
      for (int k : p.senders(i))
        for (std::size_t b = 0; b < blocks; ++b) obs_.push_back({Link{k, i}, b});
    }
    relay_offset_.push_back(obs_.size());
    y_offset_ = obs_.size();
    for (int i = 1; i <= p.K(); ++i)
      for (std::size_t b = 0; b < blocks; ++b) obs_.push_back({Link{0, i}, b});

    w_coeff_.assign(obs_.size() * w_syms_, 0);
    z_coeff_.assign(obs_.size() * z_syms_, 0);
    InputVector zero_in;
    zero_in.W.assign(K, std::vector<Symbol>(L_, 0));
    const std::vector<Symbol> zero_key(z_syms_, 0);
    for (std::size_t t = 0; t < w_syms_; ++t) {
      InputVector in = zero_in;
      in.W[t / L_][t % L_] = 1;
      record(execute_round(p, in, zero_key).transcript, w_coeff_, w_syms_, t);
    }
    for (std::size_t t = 0; t < z_syms_; ++t) {
      auto key = zero_key;
      key[t] = 1;
      record(execute_round(p, zero_in, key).transcript, z_coeff_, z_syms_, t);
    }
  }

  const SchemeParams& params() const noexcept { return p_; }
  std::uint64_t states() const noexcept { return states_; }
  std::uint64_t input_states() const noexcept { return n_w_; }
  std::uint64_t key_states() const noexcept { return n_z_; }
  std::size_t input_symbols() const noexcept { return w_syms_; }
  std::size_t key_symbols() const noexcept { return z_syms_; }
  std::size_t length() const noexcept { return L_; }
  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t observables() const noexcept { return obs_.size(); }
  std::size_t relay_begin(int i) const { return relay_offset_[static_cast<std::size_t>(i - 1)]; }
  std::size_t relay_end(int i) const { return relay_offset_[static_cast<std::size_t>(i)]; }
  std::size_t y_begin() const noexcept { return y_offset_; }

  // Little-endian base-q digits of idx.
  void digits(std::uint64_t idx, std::span<Symbol> out) const {
    const std::uint64_t q = p_.field.modulus();
    for (auto& d : out) {
      d = static_cast<Symbol>(idx % q);
      idx /= q;
    }
  }

  // Observable values for the given inputs (or key) alone.
  void input_part(std::span<const Symbol> w, std::span<Symbol> out) const { apply(w_coeff_, w_syms_, w, out); }
  void key_part(std::span<const Symbol> z, std::span<Symbol> out) const { apply(z_coeff_, z_syms_, z, out); }

 private:
  struct Obs {
    Link where;  // user 0 marks a relay output
    std::size_t block;
  };

  void record(const Transcript& t, std::vector<Symbol>& coeff, std::size_t width, std::size_t col) const {
    for (std::size_t o = 0; o < obs_.size(); ++o) {
      const auto& [link, b] = obs_[o];
      const Symbol v = link.first == 0 ? t.Y[static_cast<std::size_t>(link.second - 1)][b] : t.X.at(link)[b];
      coeff[o * width + col] = v;
    }
  }

  void apply(const std::vector<Symbol>& coeff, std::size_t width, std::span<const Symbol> v, std::span<Symbol> out) const {
    const auto& f = p_.field;
    for (std::size_t o = 0; o < obs_.size(); ++o) {
      Symbol acc = 0;
      for (std::size_t t = 0; t < width; ++t) acc = f.add(acc, f.mul(coeff[o * width + t], v[t]));
      out[o] = acc;
    }
  }

  const SchemeParams& p_;
  std::size_t blocks_;
  std::size_t L_;
  std::size_t w_syms_ = 0;
  std::size_t z_syms_ = 0;
  std::uint64_t states_ = 0;
  std::uint64_t n_w_ = 0;
  std::uint64_t n_z_ = 0;
  std::vector<Obs> obs_;
  std::vector<std::size_t> relay_offset_;
  std::size_t y_offset_ = 0;
  std::vector<Symbol> w_coeff_;
  std::vector<Symbol> z_coeff_;
};

inline std::uint64_t encode(std::span<const Symbol> s, std::uint64_t q) {
  std::uint64_t code = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) code = code * q + *it;
  return code;
}

// Everything the exhaustive audits need from one sweep over all states.
struct Sweep {
  const LinearView& view;
  std::uint64_t q;
  std::vector<Symbol> key_table;  // key_states x observables
  std::uint64_t sum_range = 0;
  std::uint64_t y_range = 0;

  explicit Sweep(const LinearView& v) : view(v), q(v.params().field.modulus()) {
    const std::size_t n_obs = v.observables();
    key_table.resize(v.key_states() * n_obs);
    std::vector<Symbol> z(v.key_symbols());
    for (std::uint64_t zi = 0; zi < v.key_states(); ++zi) {
      v.digits(zi, z);
      v.key_part(z, std::span<Symbol>(key_table).subspan(zi * n_obs, n_obs));
    }
    sum_range = *checked_pow(q, v.length(), ~0ull);
    y_range = *checked_pow(q, n_obs - v.y_begin(), ~0ull);
  }

  std::uint64_t relay_range(int i) const { return *checked_pow(q, view.relay_end(i) - view.relay_begin(i), ~0ull); }

  // Calls fn(w_index, sum_code, obs) for each key state of input index w.
  template <class Fn>
  void for_each_key(std::uint64_t wi, Fn&& fn, std::vector<Symbol>& w, std::vector<Symbol>& in_part,
                    std::vector<Symbol>& obs, std::vector<Symbol>& sum) const {
    const auto& f = view.params().field;
    const std::size_t n_obs = view.observables();
    view.digits(wi, w);
    view.input_part(w, in_part);
    const std::size_t L = view.length();
    std::fill(sum.begin(), sum.end(), 0);
    for (std::size_t t = 0; t < w.size(); ++t) sum[t % L] = f.add(sum[t % L], w[t]);
    const std::uint64_t s = encode(sum, q);
    for (std::uint64_t zi = 0; zi < view.key_states(); ++zi) {
      const Symbol* kp = key_table.data() + zi * n_obs;
      for (std::size_t o = 0; o < n_obs; ++o) obs[o] = f.add(in_part[o], kp[o]);
      fn(s, std::span<const Symbol>(obs));
    }
  }

  std::uint64_t relay_code(int i, std::span<const Symbol> obs) const {
    return encode(obs.subspan(view.relay_begin(i), view.relay_end(i) - view.relay_begin(i)), q);
  }
  std::uint64_t y_code(std::span<const Symbol> obs) const { return encode(obs.subspan(view.y_begin()), q); }
};

inline std::size_t chunk_count(std::uint64_t n) { return static_cast<std::size_t>(std::min<std::uint64_t>(n, 16)); }

// Sorted run-length encoding of the codes one input value produced.
template <class Fn>
void for_each_run(std::vector<std::uint64_t>& codes, Fn&& fn) {
  std::sort(codes.begin(), codes.end());
  for (std::size_t a = 0; a < codes.size();) {
    std::size_t b = a;
    while (b < codes.size() && codes[b] == codes[a]) ++b;
    fn(codes[a], static_cast<std::uint64_t>(b - a));
    a = b;
  }
}

}  // namespace detail

inline MiReport exhaustive_mi_audit(const SchemeParams& p, std::size_t blocks = 1,
                                    std::uint64_t max_states = kDefaultMaxStates) {
  const detail::LinearView view(p, blocks, max_states);
  const detail::Sweep sweep(view);
  const int K = p.K();
  const std::uint64_t n_w = view.input_states();
  const std::uint64_t n_z = view.key_states();
  const std::uint64_t N = view.states();
  const std::size_t chunks = detail::chunk_count(n_w);
  using u128 = unsigned __int128;

  // Pass 1: marginal counts of each relay's view, and of (Y, sum W).
  struct Tables {
    std::vector<detail::CountTable> relay;
    detail::CountTable ys;
    std::vector<std::uint64_t> per_sum;  // count(sum W = s)
  };
  auto fresh = [&] {
    Tables t{{}, detail::CountTable(sweep.y_range * sweep.sum_range), std::vector<std::uint64_t>(sweep.sum_range, 0)};
    for (int i = 1; i <= K; ++i) t.relay.emplace_back(sweep.relay_range(i));
    return t;
  };
  std::vector<Tables> partial;
  for (std::size_t c = 0; c < chunks; ++c) partial.push_back(fresh());
  parallel_chunks(n_w, chunks, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    Tables& t = partial[c];
    std::vector<Symbol> w(view.input_symbols()), in(view.observables()), obs(view.observables()), sum(view.length());
    for (std::uint64_t wi = begin; wi < end; ++wi) {
      sweep.for_each_key(
          wi,
          [&](std::uint64_t s, std::span<const Symbol> o) {
            for (int i = 1; i <= K; ++i) t.relay[static_cast<std::size_t>(i - 1)].add(sweep.relay_code(i, o));
            t.ys.add(sweep.y_code(o) * sweep.sum_range + s);
            t.per_sum[s] += 1;
          },
          w, in, obs, sum);
    }
  });
  Tables total = fresh();
  for (const auto& t : partial) {
    for (int i = 0; i < K; ++i) total.relay[static_cast<std::size_t>(i)].merge(t.relay[static_cast<std::size_t>(i)]);
    total.ys.merge(t.ys);
    for (std::uint64_t s = 0; s < sweep.sum_range; ++s) total.per_sum[s] += t.per_sum[s];
  }
  partial.clear();

  std::vector<std::uint64_t> relay_support(static_cast<std::size_t>(K), 0);
  for (int i = 0; i < K; ++i) total.relay[static_cast<std::size_t>(i)].for_each([&](auto, auto) { ++relay_support[static_cast<std::size_t>(i)]; });
  std::vector<std::uint64_t> sum_support(sweep.sum_range, 0);
  total.ys.for_each([&](std::uint64_t code, auto) { ++sum_support[code % sweep.sum_range]; });

  // Pass 2: for every input value w (count(w) = n_z), compare each cell of
  // its conditional table against the product of the marginals.
  struct Verdict {
    std::vector<bool> relay_ok;
    bool server_ok = true;
  };
  std::vector<Verdict> verdicts(chunks, Verdict{std::vector<bool>(static_cast<std::size_t>(K), true), true});
  parallel_chunks(n_w, chunks, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    Verdict& v = verdicts[c];
    std::vector<Symbol> w(view.input_symbols()), in(view.observables()), obs(view.observables()), sum(view.length());
    std::vector<std::vector<std::uint64_t>> relay_codes(static_cast<std::size_t>(K));
    std::vector<std::uint64_t> y_codes;
    for (std::uint64_t wi = begin; wi < end; ++wi) {
      for (auto& rc : relay_codes) rc.clear();
      y_codes.clear();
      std::uint64_t s_code = 0;
      sweep.for_each_key(
          wi,
          [&](std::uint64_t s, std::span<const Symbol> o) {
            s_code = s;
            for (int i = 1; i <= K; ++i) relay_codes[static_cast<std::size_t>(i - 1)].push_back(sweep.relay_code(i, o));
            y_codes.push_back(sweep.y_code(o));
          },
          w, in, obs, sum);
      for (int i = 0; i < K; ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (!v.relay_ok[idx]) continue;
        std::uint64_t distinct = 0;
        bool ok = true;
        detail::for_each_run(relay_codes[idx], [&](std::uint64_t x, std::uint64_t cnt) {
          ++distinct;
          if (u128{N} * cnt != u128{total.relay[idx].get(x)} * n_z) ok = false;
        });
        if (!ok || distinct != relay_support[idx]) v.relay_ok[idx] = false;
      }
      if (v.server_ok) {
        std::uint64_t distinct = 0;
        bool ok = true;
        const std::uint64_t count_s = total.per_sum[s_code];
        detail::for_each_run(y_codes, [&](std::uint64_t y, std::uint64_t cnt) {
          ++distinct;
          if (u128{count_s} * cnt != u128{total.ys.get(y * sweep.sum_range + s_code)} * n_z) ok = false;
        });
        if (!ok || distinct != sum_support[s_code]) v.server_ok = false;
      }
    }
  });

  MiReport report;
  report.states = N;
  report.relay_independent.assign(static_cast<std::size_t>(K), true);
  report.server_independent = true;
  for (const auto& v : verdicts) {
    for (std::size_t i = 0; i < v.relay_ok.size(); ++i)
      report.relay_independent[i] = report.relay_independent[i] && v.relay_ok[i];
    report.server_independent = report.server_independent && v.server_ok;
  }
  return report;
}

inline RecoveryReport exhaustive_recovery_audit(const SchemeParams& p, std::size_t blocks = 1,
                                                std::uint64_t max_states = kDefaultMaxStates) {
  const detail::LinearView view(p, blocks, max_states);
  const detail::Sweep sweep(view);
  const auto& f = p.field;
  const auto K = static_cast<std::size_t>(p.K());
  const auto bs = static_cast<std::size_t>(p.block_size);
  const std::uint64_t n_w = view.input_states();
  const std::size_t chunks = detail::chunk_count(n_w);

  struct Partial {
    std::uint64_t failures = 0;
    detail::CountTable y;
    detail::CountTable ys;
  };
  std::vector<Partial> partial;
  for (std::size_t c = 0; c < chunks; ++c)
    partial.push_back({0, detail::CountTable(sweep.y_range), detail::CountTable(sweep.y_range * sweep.sum_range)});
  parallel_chunks(n_w, chunks, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    Partial& part = partial[c];
    std::vector<Symbol> w(view.input_symbols()), in(view.observables()), obs(view.observables()), sum(view.length());
    std::vector<Symbol> decoded(view.length());
    for (std::uint64_t wi = begin; wi < end; ++wi) {
      sweep.for_each_key(
          wi,
          [&](std::uint64_t s, std::span<const Symbol> o) {
            const auto y = o.subspan(view.y_begin());  // relay-major: Y_i block b at i*blocks + b
            for (std::size_t b = 0; b < blocks; ++b)
              for (std::size_t j = 0; j < bs; ++j) {
                Symbol acc = 0;
                for (std::size_t i = 0; i < K; ++i) acc = f.add(acc, f.mul(y[i * blocks + b], p.R.get(i, j)));
                decoded[b * bs + j] = acc;
              }
            if (detail::encode(decoded, sweep.q) != s) ++part.failures;
            const std::uint64_t yc = sweep.y_code(o);
            part.y.add(yc);
            part.ys.add(yc * sweep.sum_range + s);
          },
          w, in, obs, sum);
    }
  });
  RecoveryReport report;
  report.states = view.states();
  detail::CountTable y(sweep.y_range), ys(sweep.y_range * sweep.sum_range);
  for (const auto& part : partial) {
    report.decode_failures += part.failures;
    y.merge(part.y);
    ys.merge(part.ys);
  }
  std::uint64_t y_support = 0, ys_support = 0;
  y.for_each([&](auto, auto) { ++y_support; });
  ys.for_each([&](auto, auto) { ++ys_support; });
  report.sum_determined = y_support == ys_support;
  return report;
}

struct AuditReport {
  std::string scheme;
  std::vector<RelayCheck> relay_checks;
  ServerCheck server_check;
  std::optional<MiReport> mi;
  std::optional<RecoveryReport> recovery;
  // Set when an exhaustive audit was requested but skipped.
  std::string exhaustive_note;

  bool passed() const {
    return server_check.passed &&
           std::all_of(relay_checks.begin(), relay_checks.end(), [](const RelayCheck& c) { return c.passed; }) &&
           (!mi || mi->passed()) && (!recovery || recovery->passed());
  }
};

inline AuditReport audit_algebraic(const SchemeParams& p) {
  AuditReport r;
  r.scheme = p.name;
  for (int i = 1; i <= p.K(); ++i) r.relay_checks.push_back(relay_security_algebraic(p, i));
  r.server_check = server_security_algebraic(p);
  return r;
}

// Algebraic audits plus, when the state space fits, both exhaustive audits.
inline AuditReport audit_exhaustive(const SchemeParams& p, std::size_t blocks, std::uint64_t max_states) {
  AuditReport r = audit_algebraic(p);
  try {
    r.mi = exhaustive_mi_audit(p, blocks, max_states);
    r.recovery = exhaustive_recovery_audit(p, blocks, max_states);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStateSpaceTooLarge) throw;
    r.exhaustive_note = e.what();
  }
  return r;
}

}  // namespace hsa
