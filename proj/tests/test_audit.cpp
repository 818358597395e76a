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

#include <cstdlib>
#include <tuple>

#include "hsa/audit.hpp"
#include "hsa/rates.hpp"

namespace hsa {
namespace {

TEST(Golden, MessagesMatchDisplay) {
  // Direct transcription of the six X messages; compare on every state.
  const auto p = golden_example1();
  const auto& f = p.field;
  for (std::uint64_t idx = 0; idx < 6561; ++idx) {
    std::uint64_t t = idx;
    InputVector in;
    in.W.assign(3, std::vector<Symbol>(2));
    for (auto& w : in.W)
      for (auto& s : w) {
        s = static_cast<Symbol>(t % 3);
        t /= 3;
      }
    const std::vector<Symbol> n{static_cast<Symbol>(t % 3), static_cast<Symbol>(t / 3 % 3)};
    const std::int64_t n1 = n[0], n2 = n[1], z1 = n1, z2 = n2, z3 = n1 + n2;
    auto w = [&](int k, int j) { return static_cast<std::int64_t>(in.W[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)]); };
    const auto r = execute_round(p, in, n);
    const auto& x = r.transcript.X;
    EXPECT_EQ(x.at({1, 1})[0], f.reduce(-2 * w(1, 1) - z1));
    EXPECT_EQ(x.at({1, 2})[0], f.reduce(-(w(1, 1) + w(1, 2)) + z1));
    EXPECT_EQ(x.at({2, 2})[0], f.reduce(w(2, 1) - w(2, 2) + 2 * z2));
    EXPECT_EQ(x.at({2, 3})[0], f.reduce(2 * w(2, 1) + z2));
    EXPECT_EQ(x.at({3, 3})[0], f.reduce(w(3, 1) + w(3, 2) + z3));
    EXPECT_EQ(x.at({3, 1})[0], f.reduce(w(3, 2) - w(3, 1) + 2 * z3));
    EXPECT_EQ(r.recovered_sum, plain_sum(f, in));
  }
}

TEST(Golden, RelayOneKeysIndependent) {
  // Relay 1 sees keys -N_1 and 2(N_1 + N_2).
  const auto p = golden_example1();
  const auto c = relay_security_algebraic(p, 1);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.rank, 2u);
}

TEST(Golden, KeyCancellingVectorsAreDecoders) {
  const auto p = golden_example1();
  const auto s = server_security_algebraic(p);
  EXPECT_TRUE(s.passed) << s.detail;
  EXPECT_EQ(s.rank, 1u);
  EXPECT_EQ(s.null_dim, 2u);
}

TEST(Golden, ExhaustiveAudits) {
  const auto p = golden_example1();
  const auto mi = exhaustive_mi_audit(p, 1);
  EXPECT_EQ(mi.states, 6561u);
  EXPECT_TRUE(mi.server_independent);
  EXPECT_EQ(mi.relay_independent, std::vector<bool>(3, true));
  const auto rec = exhaustive_recovery_audit(p, 1);
  EXPECT_EQ(rec.states, 6561u);
  EXPECT_EQ(rec.decode_failures, 0u);
  EXPECT_TRUE(rec.sum_determined);
}

TEST(Golden, Rates) {
  const auto p = golden_example1();
  const auto t = run_round(p, random_inputs(p, 2, 1), 1).transcript;
  EXPECT_EQ(measured_rates(t), (RateTuple{1, Rational(1, 2), Rational(1, 2), 1}));
}

TEST(Algebraic, MutatedLambdaFailsRelay) {
  auto p = golden_example1();
  p.Lambda.set(0, 0, 0);
  EXPECT_FALSE(relay_security_algebraic(p, 1).passed);
  EXPECT_TRUE(relay_security_algebraic(p, 2).passed);
}

TEST(Algebraic, DuplicatedKeyRowFails) {
  // h_1 = h_3 in a constructed (3, 2) scheme.
  auto p = build_scheme(3, 2);
  for (std::size_t c = 0; c < p.H.cols(); ++c) p.H.set(2, c, p.H.get(0, c));
  const auto r1 = relay_security_algebraic(p, 1);
  EXPECT_FALSE(r1.passed);
  EXPECT_EQ(r1.rank, 1u);
}

TEST(Algebraic, ZeroedKeyColumnFailsServer) {
  auto p = build_scheme(4, 2);
  for (std::size_t r = 0; r < p.H.rows(); ++r) p.H.set(r, 0, 0);
  const auto s = server_security_algebraic(p);
  EXPECT_FALSE(s.passed);
  EXPECT_LT(s.rank, 2u);
}

TEST(Algebraic, AppendedZeroKeyColumnLeavesRankUnchanged) {
  // A zero column adds a zero row to H^T Lambda: no key randomness gained or
  // lost, so the verdict stays the same.
  const auto p = build_scheme(4, 2);
  auto q = p;
  q.H = p.H.hconcat(Matrix(p.field, p.H.rows(), 1));
  EXPECT_EQ(server_security_algebraic(q).rank, server_security_algebraic(p).rank);
  EXPECT_TRUE(server_security_algebraic(q).passed);
}

TEST(Algebraic, AllConstructedSchemesPass) {
  for (int K = 2; K <= 8; ++K)
    for (int B = 1; B <= K; ++B) {
      const auto p = build_scheme(K, B);
      EXPECT_TRUE(audit_algebraic(p).passed()) << K << "," << B;
    }
}

// Exhaustive and algebraic verdicts must agree wherever both run.
TEST(Agreement, TinyInstancesAndMutants) {
  std::vector<SchemeParams> schemes{golden_example1()};
  for (auto [K, B, q] : std::vector<std::tuple<int, int, int>>{{2, 1, 5}, {3, 1, 5}, {3, 2, 5}, {3, 2, 7}, {2, 2, 5}, {3, 3, 5}}) {
    schemes.push_back(build_scheme(K, B, static_cast<std::uint64_t>(q)));
  }
  auto m1 = golden_example1();
  m1.Lambda.set(0, 0, 0);
  schemes.push_back(m1);
  auto m2 = golden_example1();
  for (std::size_t c = 0; c < 2; ++c) m2.H.set(2, c, m2.H.get(0, c));
  schemes.push_back(m2);
  auto m3 = build_scheme(3, 2, 5);
  m3.Lambda.set(1, 1, 0);
  schemes.push_back(m3);

  for (const auto& p : schemes) {
    const auto mi = exhaustive_mi_audit(p, 1);
    for (int i = 1; i <= p.K(); ++i) {
      const bool alg = relay_security_algebraic(p, i).passed;
      EXPECT_EQ(alg, static_cast<bool>(mi.relay_independent[static_cast<std::size_t>(i - 1)]))
          << p.name << " K=" << p.K() << " relay " << i;
    }
    const bool alg_server = server_security_algebraic(p).passed;
    if (alg_server) {
      EXPECT_TRUE(mi.server_independent) << p.name << " K=" << p.K();
    }
  }
  // The exposed-input mutant fails only at relay 1; the server is untouched.
  const auto mi1 = exhaustive_mi_audit(m1, 1);
  EXPECT_EQ(mi1.relay_independent, (std::vector<bool>{false, true, true}));
}

TEST(Recovery, ZeroKeySlice) {
  const auto p = build_scheme(3, 2, 7);
  const std::vector<Symbol> zero_key(2, 0);
  for (std::uint64_t idx = 0; idx < 117649; idx += 7) {  // every 7th of 7^6 inputs
    std::uint64_t t = idx;
    InputVector in;
    in.W.assign(3, std::vector<Symbol>(2));
    for (auto& w : in.W)
      for (auto& s : w) {
        s = static_cast<Symbol>(t % 7);
        t /= 7;
      }
    ASSERT_EQ(execute_round(p, in, zero_key).recovered_sum, plain_sum(p.field, in));
  }
}

TEST(Recovery, CorruptedRecoveryMatrixFails) {
  auto p = golden_example1();
  p.R.set(0, 0, p.field.add(p.R.get(0, 0), 1));
  const auto rec = exhaustive_recovery_audit(p, 1);
  EXPECT_GT(rec.decode_failures, 0u);
  EXPECT_FALSE(rec.passed());
  // Y still determines the sum; only the decoder is wrong.
  EXPECT_TRUE(rec.sum_determined);
}

TEST(Recovery, NonDecodableSchemeNotDetermined) {
  // Scaling user 1's coefficients on one link breaks the sum structure.
  auto p = golden_example1();
  auto& a = p.alpha.at(Link{1, 1});
  a[0] = p.field.mul(a[0], 2);
  EXPECT_FALSE(exhaustive_recovery_audit(p, 1).sum_determined);
}

TEST(Exhaustive, StateSpaceTooLarge) {
  const auto p = build_scheme(4, 2);
  try {
    exhaustive_mi_audit(p, 1, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateSpaceTooLarge);
  }
  EXPECT_THROW(exhaustive_recovery_audit(golden_example1(), 1, 6560), Error);
  EXPECT_NO_THROW(exhaustive_recovery_audit(golden_example1(), 1, 6561));
}

TEST(Exhaustive, MultipleBlocks) {
  // Two blocks of the golden scheme: 3^12 * 3^4 would be too many, so use B = 1.
  const auto p = build_scheme(2, 1, 5);
  const auto mi = exhaustive_mi_audit(p, 2);
  EXPECT_EQ(mi.states, 5u * 5 * 5 * 5 * 5 * 5);
  EXPECT_TRUE(mi.passed());
  EXPECT_TRUE(exhaustive_recovery_audit(p, 2).passed());
}

TEST(Exhaustive, ThreadCountDoesNotChangeVerdicts) {
  auto p = golden_example1();
  p.Lambda.set(2, 0, 0);
  ::setenv("HSA_THREADS", "1", 1);
  const auto one = exhaustive_mi_audit(p, 1);
  ::setenv("HSA_THREADS", "4", 1);
  const auto four = exhaustive_mi_audit(p, 1);
  ::unsetenv("HSA_THREADS");
  EXPECT_EQ(one.relay_independent, four.relay_independent);
  EXPECT_EQ(one.server_independent, four.server_independent);
}

TEST(Report, PassedImpliesEveryCheckPassed) {
  auto p = golden_example1();
  EXPECT_TRUE(audit_exhaustive(p, 1, kDefaultMaxStates).passed());
  p.Lambda.set(1, 1, 0);
  const auto r = audit_exhaustive(p, 1, kDefaultMaxStates);
  EXPECT_FALSE(r.passed());
  const auto skipped = audit_exhaustive(build_scheme(6, 3), 1, 1000);
  EXPECT_FALSE(skipped.mi);
  EXPECT_FALSE(skipped.exhaustive_note.empty());
  EXPECT_TRUE(skipped.passed());
}

}  // namespace
}  // namespace hsa
