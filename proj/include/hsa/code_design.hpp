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

// Input-coefficient design: which linear combination of W_k's symbols user k
// sends to each of its relays, and how the server decodes the sum.
//
// Each user k owns an association polynomial p_k(x) = prod_{i not in B_k}
// (x - theta_i), which vanishes exactly at the evaluation points of the
// relays user k cannot reach. From it we grow a ladder p_k^(1..B) of
// polynomials of degree K-B, ..., K-1, each monic and divisible by p_k, whose
// top B coefficients form an identity block. Relay i receives
// sum_b p_k^(b)(theta_i) W_k^(b) from each associated user, so summing at the
// relay evaluates w*B at theta_i, and inverting the Vandermonde matrix Theta
// reads off the identity block, i.e. the per-symbol input sums.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsa/gf.hpp"
#include "hsa/topology.hpp"

namespace hsa {

// Distinct nonzero theta_1..theta_K, one per relay.
class EvaluationPoints {
 public:
  EvaluationPoints(PrimeField field, std::vector<Symbol> values) : field_(field), values_(std::move(values)) {
    for (auto& v : values_) {
      if (v >= field_.modulus()) throw Error(ErrorCode::kInvalidParams, "evaluation point not reduced mod q");
      if (v == 0) throw Error(ErrorCode::kInvalidParams, "evaluation points must be nonzero");
    }
    auto sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kDuplicatePoints, "evaluation points must be distinct");
    }
  }

  // theta_i = i; needs q > K.
  static EvaluationPoints canonical(PrimeField field, int K) {
    if (static_cast<std::uint64_t>(K) >= field.modulus()) {
      throw Error(ErrorCode::kInvalidParams, "canonical points 1..K need q > K");
    }
    std::vector<Symbol> v(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) v[static_cast<std::size_t>(i)] = static_cast<Symbol>(i + 1);
    return EvaluationPoints(field, std::move(v));
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Symbol> values() const noexcept { return values_; }
  // 1-based, like relay indices.
  Symbol theta(int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }

 private:
  PrimeField field_;
  std::vector<Symbol> values_;
};

// (user k, relay i), both 1-based.
using Link = std::pair<int, int>;

// alpha_{k,i}^{(j)}, j = 1..blockSize stored at index j-1. Only associated
// links have an entry; a missing entry means the coefficient is zero.
using AlphaTable = std::map<Link, std::vector<Symbol>>;

inline Polynomial association_polynomial(int k, const Topology& topo, const EvaluationPoints& pts) {
  const auto& f = pts.field();
  Polynomial p = Polynomial::constant(f, 1);
  for (int i = 1; i <= topo.K(); ++i) {
    if (!topo.associated(k, i)) p = p * Polynomial::linear_root(f, pts.theta(i));
  }
  return p;
}

inline std::vector<Polynomial> recursive_family(int k, const Topology& topo, const EvaluationPoints& pts) {
  const int K = topo.K();
  const int B = topo.B();
  std::vector<Polynomial> family;
  family.reserve(static_cast<std::size_t>(B));
  family.push_back(association_polynomial(k, topo, pts));
  const Polynomial& base = family.front();
  for (int b = 2; b <= B; ++b) {
    const Polynomial& prev = family.back();
    // Coefficient of x^(K-B-1) in the previous member; zero when K-B-1 < 0.
    const Symbol c = K - B - 1 >= 0 ? prev.coefficient(static_cast<std::size_t>(K - B - 1)) : 0;
    family.push_back(prev.times_x() - base.scaled(c));
  }
  return family;
}

// BK x K, row (i-1)B + b holds the coefficients of p_i^(b).
inline Matrix build_code_matrix(const Topology& topo, const std::vector<std::vector<Polynomial>>& families,
                                const PrimeField& field) {
  const auto K = static_cast<std::size_t>(topo.K());
  const auto B = static_cast<std::size_t>(topo.B());
  Matrix m(field, B * K, K);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t j = 0; j < K; ++j) m.set(i * B + b, j, families[i][b].coefficient(j));
  return m;
}

// Theta = [theta_1, ..., theta_K] with column k = (1, theta_k, ..., theta_k^(K-1))^T.
inline Matrix evaluation_matrix(const EvaluationPoints& pts) {
  return vandermonde(pts.field(), pts.values(), pts.size()).transpose();
}

// Last B columns of Theta^{-1}.
inline Matrix recovery_matrix(const Matrix& theta_inv, int B) {
  std::vector<std::size_t> cols;
  for (std::size_t c = theta_inv.cols() - static_cast<std::size_t>(B); c < theta_inv.cols(); ++c) cols.push_back(c);
  return theta_inv.select_cols(cols);
}

inline AlphaTable input_coefficients(const Topology& topo, const std::vector<std::vector<Polynomial>>& families,
                                     const EvaluationPoints& pts) {
  AlphaTable alpha;
  for (int k = 1; k <= topo.K(); ++k) {
    for (int i : topo.relays_of_user(k)) {
      std::vector<Symbol> coeffs;
      coeffs.reserve(static_cast<std::size_t>(topo.B()));
      for (const auto& p : families[static_cast<std::size_t>(k - 1)]) coeffs.push_back(p.evaluate(pts.theta(i)));
      alpha.emplace(Link{k, i}, std::move(coeffs));
    }
  }
  return alpha;
}

class CodeDesign {
 public:
  CodeDesign(Topology topo, EvaluationPoints points)
      : topo_(topo), points_(std::move(points)), code_(points_.field(), 0, 0), theta_(code_), theta_inv_(code_),
        recovery_(code_) {
    if (points_.size() != static_cast<std::size_t>(topo_.K())) {
      throw Error(ErrorCode::kSizeMismatch, "need exactly K evaluation points");
    }
    const auto& f = points_.field();
    for (int k = 1; k <= topo_.K(); ++k) families_.push_back(recursive_family(k, topo_, points_));
    code_ = build_code_matrix(topo_, families_, f);
    theta_ = evaluation_matrix(points_);
    theta_inv_ = mat_inverse(theta_);
    recovery_ = recovery_matrix(theta_inv_, topo_.B());
    alpha_ = input_coefficients(topo_, families_, points_);
  }

  const Topology& topology() const noexcept { return topo_; }
  const PrimeField& field() const noexcept { return points_.field(); }
  const EvaluationPoints& points() const noexcept { return points_; }
  const std::vector<Polynomial>& family(int k) const { return families_.at(static_cast<std::size_t>(k - 1)); }
  const Matrix& code_matrix() const noexcept { return code_; }
  const Matrix& theta() const noexcept { return theta_; }
  const Matrix& theta_inv() const noexcept { return theta_inv_; }
  const Matrix& recovery() const noexcept { return recovery_; }
  const AlphaTable& alpha() const noexcept { return alpha_; }

 private:
  Topology topo_;
  EvaluationPoints points_;
  std::vector<std::vector<Polynomial>> families_;
  Matrix code_;
  Matrix theta_;
  Matrix theta_inv_;
  Matrix recovery_;
  AlphaTable alpha_;
};

}  // namespace hsa
