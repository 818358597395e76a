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

// Individual-key generation matrix H (K x max{B, K-B}) and key coefficient
// matrix Lambda (K x K, row k supported on B_k).
//
// The keys mixed into the relay outputs are Lambda^T H Z_sigma^T. Decoding
// with R cancels them iff H^T Lambda R = 0, and the server learns nothing
// beyond the sum iff the null space of H^T Lambda is exactly span(R), i.e.
// rank(Lambda^T H) = K - B. Relays stay oblivious when the B keys landing on
// any relay are independent, which the MDS property of H provides.
//
// Four constructions cover every B:
//   B = 1            Lambda = I, H an extended Vandermonde matrix.
//   2 <= B <= K/2    Lambda = circ(1, g, ..., g^(B-1), 0, ...), H = (Lambda^T)^-1 Q.
//   K/2 < B <= K-1   H Vandermonde, Lambda solved relay by relay with a shared beta.
//   B = K            the (K, K-1) scheme with each user's last link disabled.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hsa/code_design.hpp"
#include "hsa/gf.hpp"
#include "hsa/random.hpp"
#include "hsa/topology.hpp"

namespace hsa {

enum class Regime { kSingleAssociation, kCirculant, kVandermonde, kFullAssociation };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kSingleAssociation: return "B1";
    case Regime::kCirculant: return "Scheme1";
    case Regime::kVandermonde: return "Scheme2";
    case Regime::kFullAssociation: return "BK-reduction";
  }
  return "unknown";
}

inline Regime regime_for(int K, int B) {
  if (B < 1 || B > K) throw Error(ErrorCode::kInvalidParams, "need 1 <= B <= K");
  if (B == K) {
    if (K < 2) throw Error(ErrorCode::kInvalidParams, "B = K needs K >= 2");
    return Regime::kFullAssociation;
  }
  if (B == 1) return Regime::kSingleAssociation;
  if (2 * B <= K) return Regime::kCirculant;
  return Regime::kVandermonde;
}

// Source-key length per block, max{B, K-B}.
constexpr int source_key_length(int K, int B) noexcept { return std::max(B, K - B); }

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Field size that guarantees a valid circulant parameter g:
// C(K,B)(K-B)(K-1)(B-1) + BK + 2.
inline std::uint64_t phi(int K, int B) {
  const auto k = static_cast<std::uint64_t>(K);
  const auto b = static_cast<std::uint64_t>(B);
  return binomial(K, B) * (k - b) * (k - 1) * (b - 1) + b * k + 2;
}

// Smallest qualifying prime for the regime of (K, B).
inline PrimeField select_field(int K, int B) {
  const auto k = static_cast<std::uint64_t>(K);
  std::uint64_t q = 0;
  switch (regime_for(K, B)) {
    case Regime::kCirculant:
      q = std::max<std::uint64_t>(phi(K, B), 2);
      while (!(q % k == 1 && is_prime(q))) ++q;
      break;
    case Regime::kVandermonde:
      q = k * static_cast<std::uint64_t>(B) + 1;
      while (!is_prime(q)) ++q;
      break;
    case Regime::kSingleAssociation:
    case Regime::kFullAssociation:
      q = k + 2;
      while (!is_prime(q)) ++q;
      break;
  }
  return PrimeField(q);
}

struct KeyDesign {
  Regime regime;
  // Association the keys are built for. In the B = K regime this is (K, K-1);
  // `disabled_links` then lists the (user, relay) links of the full (K, K)
  // association that carry an empty message.
  Topology topo;
  Matrix H;
  Matrix Lambda;
  std::optional<Symbol> g;
  std::optional<Symbol> beta;
  std::vector<Link> disabled_links;
  // Parameter candidates examined before acceptance (g or beta search).
  std::uint64_t candidates_tried = 0;
  // Scheme 2 diagnostics: |M_k| per relay and |M| overall.
  std::vector<std::size_t> bad_set_sizes;
  std::size_t global_bad_set_size = 0;
};

// Every `subset` rows of m are linearly independent.
inline bool rows_in_general_position(const Matrix& m, std::size_t subset) {
  if (subset > m.rows()) return true;
  if (subset > m.cols()) return false;
  std::vector<bool> mask(m.rows(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(subset), true);
  std::vector<std::size_t> idx;
  do {
    idx.clear();
    for (std::size_t r = 0; r < mask.size(); ++r)
      if (mask[r]) idx.push_back(r);
    if (mat_rank(m.select_rows(idx)) != subset) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return true;
}

namespace detail {

inline void require_points(const Topology& topo, const EvaluationPoints& pts) {
  if (pts.size() != static_cast<std::size_t>(topo.K())) {
    throw Error(ErrorCode::kSizeMismatch, "need exactly K evaluation points");
  }
}

}  // namespace detail

// circ(1, g, ..., g^(B-1), 0, ..., 0): row k carries g^j at column k + j (mod K).
inline Matrix circulant_lambda(const PrimeField& f, int K, int B, Symbol g) {
  Matrix m(f, static_cast<std::size_t>(K), static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    Symbol a = 1;
    for (int j = 0; j < B; ++j) {
      m.set(static_cast<std::size_t>(k), static_cast<std::size_t>((k + j) % K), a);
      a = f.mul(a, g);
    }
  }
  return m;
}

// H for a given g, or nothing when g is not valid: g = 0, g^K = 1,
// Lambda_g singular, or some (K-B) rows of H dependent.
inline std::optional<Matrix> circulant_key_matrix(const Topology& topo, const EvaluationPoints& pts, Symbol g) {
  const auto& f = pts.field();
  const int K = topo.K();
  const int B = topo.B();
  if (g == 0 || f.pow(g, static_cast<std::uint64_t>(K)) == 1) return std::nullopt;
  const Matrix lambda = circulant_lambda(f, K, B, g);
  if (mat_rank(lambda) != static_cast<std::size_t>(K)) return std::nullopt;
  const Matrix q = vandermonde(f, pts.values(), static_cast<std::size_t>(K - B));
  Matrix h = mat_inverse(lambda.transpose()) * q;
  if (!rows_in_general_position(h, static_cast<std::size_t>(K - B))) return std::nullopt;
  return h;
}

// 2 <= B <= K/2. Searches g in a seed-determined order over GF(q) \ {0}.
inline KeyDesign scheme1_keygen(const Topology& topo, const EvaluationPoints& pts, std::uint64_t seed) {
  detail::require_points(topo, pts);
  if (regime_for(topo.K(), topo.B()) != Regime::kCirculant) {
    throw Error(ErrorCode::kInvalidParams, "circulant key design needs 2 <= B <= K/2");
  }
  const auto& f = pts.field();
  if ((f.modulus() - 1) % static_cast<std::uint64_t>(topo.K()) != 0) {
    throw Error(ErrorCode::kInvalidParams, "circulant key design needs K | (q - 1)");
  }
  SeededOrder order(f.modulus() - 1, seed);
  for (std::uint64_t t = 0; t < order.size(); ++t) {
    const auto g = static_cast<Symbol>(order[t]);
    if (auto h = circulant_key_matrix(topo, pts, g)) {
      return KeyDesign{.regime = Regime::kCirculant,
                       .topo = topo,
                       .H = std::move(*h),
                       .Lambda = circulant_lambda(f, topo.K(), topo.B(), g),
                       .g = g,
                       .beta = std::nullopt,
                       .disabled_links = {},
                       .candidates_tried = t + 1,
                       .bad_set_sizes = {},
                       .global_bad_set_size = 0};
    }
  }
  throw Error(ErrorCode::kNoValidG, "no valid g in GF(" + std::to_string(f.modulus()) + "); try a larger q");
}

// Fraction of uniform draws g in GF(q) that are valid, as (valid, samples).
inline std::pair<std::size_t, std::size_t> sample_circulant_validity(const Topology& topo, const EvaluationPoints& pts,
                                                                     std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, pts.field().modulus() - 1);
  std::size_t valid = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (circulant_key_matrix(topo, pts, static_cast<Symbol>(dist(rng)))) ++valid;
  }
  return {valid, samples};
}

// K/2 < B <= K-1.
inline KeyDesign scheme2_keygen(const Topology& topo, const EvaluationPoints& pts, std::uint64_t seed) {
  detail::require_points(topo, pts);
  if (regime_for(topo.K(), topo.B()) != Regime::kVandermonde) {
    throw Error(ErrorCode::kInvalidParams, "Vandermonde key design needs K/2 < B <= K-1");
  }
  const auto& f = pts.field();
  const int K = topo.K();
  const int B = topo.B();
  Matrix h = vandermonde(f, pts.values(), static_cast<std::size_t>(B));

  // lambda_{U_k} = beta * first_row(Theta_{U_k}^-1) + gamma^(k), gamma^(k) the
  // theta_k-weighted sum of rows 2..K-B.
  struct RelaySolve {
    std::vector<int> users;
    std::vector<Symbol> first;
    std::vector<Symbol> gamma;
  };
  std::vector<RelaySolve> relays;
  std::vector<std::size_t> bad_sizes;
  std::set<Symbol> bad;
  for (int k = 1; k <= K; ++k) {
    RelaySolve rs;
    rs.users = topo.users_of_relay(k);
    std::vector<std::size_t> rows;
    for (int u : rs.users) rows.push_back(static_cast<std::size_t>(u - 1));
    const Matrix inv = mat_inverse(h.select_rows(rows));
    const Symbol tk = pts.theta(k);
    rs.first.assign(inv.row(0).begin(), inv.row(0).end());
    rs.gamma.assign(static_cast<std::size_t>(B), 0);
    Symbol power = tk;
    for (int i = 1; i <= K - B - 1; ++i) {
      for (std::size_t j = 0; j < rs.gamma.size(); ++j)
        rs.gamma[j] = f.add(rs.gamma[j], f.mul(power, inv.get(static_cast<std::size_t>(i), j)));
      power = f.mul(power, tk);
    }
    std::set<Symbol> local;
    for (std::size_t j = 0; j < rs.first.size(); ++j) {
      // Constant terms of Lagrange basis polynomials over distinct nonzero
      // points never vanish.
      if (rs.first[j] == 0) {
        throw Error(ErrorCode::kConstructionFailed,
                    "zero Lagrange constant term at relay " + std::to_string(k) + "; points must be nonzero");
      }
      local.insert(f.neg(f.div(rs.gamma[j], rs.first[j])));
    }
    bad_sizes.push_back(local.size());
    bad.insert(local.begin(), local.end());
    relays.push_back(std::move(rs));
  }

  SeededOrder order(f.modulus() - 1, seed);
  for (std::uint64_t t = 0; t < order.size(); ++t) {
    const auto beta = static_cast<Symbol>(order[t]);
    if (bad.contains(beta)) continue;
    Matrix lambda(f, static_cast<std::size_t>(K), static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
      const auto& rs = relays[static_cast<std::size_t>(k - 1)];
      for (std::size_t j = 0; j < rs.users.size(); ++j) {
        lambda.set(static_cast<std::size_t>(rs.users[j] - 1), static_cast<std::size_t>(k - 1),
                   f.add(f.mul(beta, rs.first[j]), rs.gamma[j]));
      }
    }
    return KeyDesign{.regime = Regime::kVandermonde,
                     .topo = topo,
                     .H = std::move(h),
                     .Lambda = std::move(lambda),
                     .g = std::nullopt,
                     .beta = beta,
                     .disabled_links = {},
                     .candidates_tried = t + 1,
                     .bad_set_sizes = std::move(bad_sizes),
                     .global_bad_set_size = bad.size()};
  }
  throw Error(ErrorCode::kNoValidBeta, "bad set covers GF(" + std::to_string(f.modulus()) + ")\\{0}");
}

// B = 1. Lambda = I; rows 1..K-1 of H are Vandermonde rows and row K is
// chosen so that r^T H = 0 for the single decoding vector r.
inline KeyDesign scheme_b1_keygen(const Topology& topo, const EvaluationPoints& pts) {
  detail::require_points(topo, pts);
  if (topo.B() != 1 || topo.K() < 2) throw Error(ErrorCode::kInvalidParams, "single-association keys need B = 1 < K");
  const auto& f = pts.field();
  const auto K = static_cast<std::size_t>(topo.K());
  const Matrix r = recovery_matrix(mat_inverse(evaluation_matrix(pts)), 1);
  const Matrix top = vandermonde(f, pts.values().first(K - 1), K - 1);
  Matrix h(f, K, K - 1);
  const Symbol scale = f.neg(f.inv(r.get(K - 1, 0)));
  for (std::size_t c = 0; c < K - 1; ++c) {
    Symbol acc = 0;
    for (std::size_t k = 0; k + 1 < K; ++k) {
      h.set(k, c, top.get(k, c));
      acc = f.add(acc, f.mul(r.get(k, 0), top.get(k, c)));
    }
    h.set(K - 1, c, f.mul(acc, scale));
  }
  if (!rows_in_general_position(h, K - 1)) {
    throw Error(ErrorCode::kConstructionFailed, "extended Vandermonde rows are dependent; re-draw points");
  }
  return KeyDesign{.regime = Regime::kSingleAssociation,
                   .topo = topo,
                   .H = std::move(h),
                   .Lambda = Matrix::identity(f, K),
                   .g = std::nullopt,
                   .beta = std::nullopt,
                   .disabled_links = {},
                   .candidates_tried = 0,
                   .bad_set_sizes = {},
                   .global_bad_set_size = 0};
}

inline KeyDesign build_keys(const Topology& topo, const EvaluationPoints& pts, std::uint64_t seed);

// B = K: run the (K, K-1) design and silence link (k, k-1) for every user.
inline KeyDesign scheme_bk_keygen(int K, const EvaluationPoints& pts, std::uint64_t seed) {
  if (K < 2) throw Error(ErrorCode::kInvalidParams, "B = K needs K >= 2");
  KeyDesign keys = build_keys(Topology(K, K - 1), pts, seed);
  keys.regime = Regime::kFullAssociation;
  const Topology full(K, K);
  for (int k = 1; k <= K; ++k) keys.disabled_links.emplace_back(k, full.relays_of_user(k).back());
  return keys;
}

inline KeyDesign build_keys(const Topology& topo, const EvaluationPoints& pts, std::uint64_t seed) {
  switch (regime_for(topo.K(), topo.B())) {
    case Regime::kSingleAssociation: return scheme_b1_keygen(topo, pts);
    case Regime::kCirculant: return scheme1_keygen(topo, pts, seed);
    case Regime::kVandermonde: return scheme2_keygen(topo, pts, seed);
    case Regime::kFullAssociation: return scheme_bk_keygen(topo.K(), pts, seed);
  }
  throw Error(ErrorCode::kInvalidParams, "unknown regime");
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// The five algebraic conditions the security arguments rest on, for keys built
// on association `topo` and decoded with R.
inline ValidationReport validate_keys(const Topology& topo, const Matrix& lambda, const Matrix& h, const Matrix& r) {
  ValidationReport report;
  const auto K = static_cast<std::size_t>(topo.K());
  const auto B = static_cast<std::size_t>(topo.B());

  {
    std::string detail;
    bool ok = lambda.rows() == K && lambda.cols() == K;
    for (std::size_t k = 0; ok && k < K; ++k) {
      for (std::size_t i = 0; i < K; ++i) {
        const bool assoc = topo.associated(static_cast<int>(k + 1), static_cast<int>(i + 1));
        if (assoc != (lambda.get(k, i) != 0)) {
          ok = false;
          detail = "lambda(" + std::to_string(k + 1) + "," + std::to_string(i + 1) + ") " +
                   (assoc ? "is zero on an associated link" : "is nonzero off the association");
          break;
        }
      }
    }
    report.checks.push_back({"lambda_support", ok, detail});
  }

  const Matrix htl = h.transpose() * lambda;
  {
    const bool ok = (htl * r).is_zero();
    report.checks.push_back({"key_cancellation", ok, ok ? "" : "H^T Lambda R != 0"});
  }
  const std::size_t rank = mat_rank(htl);
  {
    const bool ok = rank + B == K;
    report.checks.push_back(
        {"rank_lambda_t_h", ok, "rank " + std::to_string(rank) + ", expected " + std::to_string(K - B)});
  }
  {
    const Matrix null = mat_nullspace(htl);
    const std::size_t rr = mat_rank(r);
    const std::size_t joint = mat_rank(null.hconcat(r));
    const bool ok = null.cols() == B && rr == B && joint == B;
    report.checks.push_back({"nullspace_equals_span_r", ok,
                             "dim null " + std::to_string(null.cols()) + ", rank R " + std::to_string(rr) +
                                 ", rank [N|R] " + std::to_string(joint)});
  }
  {
    const bool ok = rows_in_general_position(h, B);
    report.checks.push_back({"mds_every_b_rows", ok, ok ? "" : "some B rows of H are dependent"});
  }
  return report;
}

inline ValidationReport validate_scheme(const KeyDesign& keys, const CodeDesign& code) {
  if (!(keys.topo == code.topology()) || !(keys.H.field() == code.field())) {
    throw Error(ErrorCode::kInvalidParams, "key and code designs disagree on (K, B, q)");
  }
  return validate_keys(keys.topo, keys.Lambda, keys.H, code.recovery());
}

}  // namespace hsa
