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

#include <gtest/gtest.h>

#include <random>

#include "hsa/code_design.hpp"

namespace hsa {
namespace {

TEST(AssociationPolynomial, Examples) {
  const PrimeField f(101);
  const auto pts3 = EvaluationPoints::canonical(f, 3);
  const auto p = association_polynomial(1, Topology(3, 2), pts3);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p.coefficient(0), f.reduce(-3));
  EXPECT_EQ(p.coefficient(1), 1u);

  const auto pts4 = EvaluationPoints::canonical(f, 4);
  const auto p4 = association_polynomial(1, Topology(4, 2), pts4);
  EXPECT_EQ(p4.degree(), 2);
  EXPECT_EQ(p4.coefficient(0), 12u);
  EXPECT_EQ(p4.coefficient(1), f.reduce(-7));
  EXPECT_EQ(p4.coefficient(2), 1u);

  const auto full = association_polynomial(2, Topology(4, 4), pts4);
  EXPECT_EQ(full.degree(), 0);
  EXPECT_EQ(full.coefficient(0), 1u);
}

TEST(RecursiveFamily, HandExpansion) {
  const PrimeField f(101);
  const auto fam = recursive_family(1, Topology(3, 2), EvaluationPoints::canonical(f, 3));
  ASSERT_EQ(fam.size(), 2u);
  // x^2 - 9
  EXPECT_EQ(fam[1].degree(), 2);
  EXPECT_EQ(fam[1].coefficient(0), f.reduce(-9));
  EXPECT_EQ(fam[1].coefficient(1), 0u);
  EXPECT_EQ(fam[1].coefficient(2), 1u);
}

TEST(CodeMatrix, SmallExample) {
  const PrimeField f(101);
  const CodeDesign code(Topology(3, 2), EvaluationPoints::canonical(f, 3));
  const Matrix& b = code.code_matrix();
  ASSERT_EQ(b.rows(), 6u);
  ASSERT_EQ(b.cols(), 3u);
  EXPECT_EQ(std::vector<Symbol>(b.row(0).begin(), b.row(0).end()), (std::vector<Symbol>{f.reduce(-3), 1, 0}));
  EXPECT_EQ(std::vector<Symbol>(b.row(1).begin(), b.row(1).end()), (std::vector<Symbol>{f.reduce(-9), 0, 1}));
}

TEST(CodeMatrix, IdentityTailAndShape) {
  for (int K = 2; K <= 8; ++K)
    for (int B = 1; B < K; ++B) {
      const PrimeField f(101);
      const CodeDesign code(Topology(K, B), EvaluationPoints::canonical(f, K));
      const Matrix& m = code.code_matrix();
      ASSERT_EQ(m.rows(), static_cast<std::size_t>(B * K));
      ASSERT_EQ(m.cols(), static_cast<std::size_t>(K));
      for (int r = 0; r < B * K; ++r)
        for (int c = 0; c < B; ++c)
          EXPECT_EQ(m.get(static_cast<std::size_t>(r), static_cast<std::size_t>(K - B + c)), r % B == c ? 1u : 0u);
    }
}

TEST(Theta, OrientationAndInverse) {
  const PrimeField f(7);
  const CodeDesign code(Topology(3, 2), EvaluationPoints::canonical(f, 3));
  // Column k holds powers of theta_k.
  EXPECT_EQ(code.theta(), Matrix(f, {{1, 1, 1}, {1, 2, 3}, {1, 4, 9}}));
  EXPECT_EQ(code.theta() * code.theta_inv(), Matrix::identity(f, 3));
}

TEST(Recovery, SelectsLastColumnsOfInverse) {
  for (int K = 2; K <= 7; ++K)
    for (int B = 1; B < K; ++B) {
      const PrimeField f(103);
      const CodeDesign code(Topology(K, B), EvaluationPoints::canonical(f, K));
      const Matrix tr = code.theta() * code.recovery();
      ASSERT_EQ(tr.cols(), static_cast<std::size_t>(B));
      for (int r = 0; r < K; ++r)
        for (int c = 0; c < B; ++c)
          EXPECT_EQ(tr.get(static_cast<std::size_t>(r), static_cast<std::size_t>(c)), r == K - B + c ? 1u : 0u);
      EXPECT_EQ(mat_rank(code.recovery()), static_cast<std::size_t>(B));
    }
}

TEST(Alpha, Example) {
  const PrimeField f7(7);
  const CodeDesign code(Topology(3, 2), EvaluationPoints::canonical(f7, 3));
  const auto& a = code.alpha().at(Link{1, 1});
  EXPECT_EQ(a[0], f7.reduce(-2));
  EXPECT_EQ(a[1], f7.reduce(-8));
}

TEST(Alpha, OnlyAssociatedLinksPresent) {
  const PrimeField f(101);
  const Topology topo(6, 3);
  const CodeDesign code(topo, EvaluationPoints::canonical(f, 6));
  for (int k = 1; k <= 6; ++k)
    for (int i = 1; i <= 6; ++i) EXPECT_EQ(code.alpha().contains(Link{k, i}), topo.associated(k, i));
}

// Relay i's coded sum, decoded through R, equals the plain input sum.
TEST(Recovery, KeylessDecodeMatchesSum) {
  std::mt19937_64 rng(3);
  for (int K = 2; K <= 8; ++K)
    for (int B = 1; B < K; ++B) {
      const PrimeField f(K == 3 && B == 2 ? 7 : 101);
      const Topology topo(K, B);
      const CodeDesign code(topo, EvaluationPoints::canonical(f, K));
      std::uniform_int_distribution<std::uint64_t> d(0, f.modulus() - 1);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<Symbol>> w(static_cast<std::size_t>(K), std::vector<Symbol>(static_cast<std::size_t>(B)));
        for (auto& wk : w)
          for (auto& s : wk) s = static_cast<Symbol>(d(rng));
        std::vector<Symbol> y(static_cast<std::size_t>(K), 0);
        for (int i = 1; i <= K; ++i)
          for (int k : topo.users_of_relay(i)) {
            const auto& a = code.alpha().at(Link{k, i});
            for (int j = 0; j < B; ++j)
              y[static_cast<std::size_t>(i - 1)] =
                  f.add(y[static_cast<std::size_t>(i - 1)], f.mul(a[static_cast<std::size_t>(j)], w[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j)]));
          }
        for (int j = 0; j < B; ++j) {
          Symbol dec = 0, sum = 0;
          for (int i = 0; i < K; ++i)
            dec = f.add(dec, f.mul(y[static_cast<std::size_t>(i)], code.recovery().get(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
          for (int k = 0; k < K; ++k) sum = f.add(sum, w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
          EXPECT_EQ(dec, sum);
        }
      }
    }
}

TEST(EvaluationPoints, Validation) {
  const PrimeField f(7);
  EXPECT_THROW(EvaluationPoints(f, {1, 0, 2}), Error);
  EXPECT_THROW(EvaluationPoints(f, {1, 2, 2}), Error);
  EXPECT_THROW(EvaluationPoints::canonical(f, 7), Error);
  EXPECT_NO_THROW(EvaluationPoints::canonical(f, 6));
}

}  // namespace
}  // namespace hsa
