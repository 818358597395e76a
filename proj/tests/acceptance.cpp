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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// fails. All comparisons are exact unless a tolerance constant says otherwise.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsa/hsa.hpp"
#include "property_checks.hpp"

namespace {

using namespace hsa;
using Clock = std::chrono::steady_clock;

// Runtime ceilings, seconds.
constexpr double kGoldenSeconds = 5.0;
constexpr double kSweepSeconds = 120.0;
constexpr double kSamplingSeconds = 30.0;
// Monte-Carlo slack below the lower bound on the valid-g fraction.
constexpr double kSamplingSlack = 0.05;
constexpr std::size_t kSamplingDraws = 200;
constexpr std::size_t kRoundsPerConfig = 100;
constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Corner written from the closed forms, independent of rates.hpp.
RateTuple corner(int K, int B) {
  const Rational b(1, B);
  Rational zs = Rational(K, B) - 1;
  if (zs < 1) zs = 1;
  return {Rational(1), b, b, zs};
}

RateTuple full_association_tuple(int K) { return {Rational(1), Rational(1, K - 1), Rational(1, K - 1), Rational(1)}; }

bool rounds_exact(const SchemeParams& p, std::size_t rounds, std::uint64_t seed, std::vector<RateTuple>* rates) {
  const auto L = static_cast<std::size_t>(p.block_size) * 2;
  for (std::size_t t = 0; t < rounds; ++t) {
    const auto in = random_inputs(p, L, derive_seed(seed, 2 * t));
    const auto r = run_round(p, in, derive_seed(seed, 2 * t + 1));
    if (r.recovered_sum != plain_sum(p.field, in)) return false;
    if (rates) rates->push_back(measured_rates(r.transcript));
  }
  return true;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  const auto p = golden_example1();
  const auto mi = exhaustive_mi_audit(p, 1);
  const auto rec = exhaustive_recovery_audit(p, 1);
  const double dt = seconds_since(t0);
  const auto rates = measured_rates(run_round(p, random_inputs(p, 2, kSeed), kSeed).transcript);
  const RateTuple want{Rational(1), Rational(1, 2), Rational(1, 2), Rational(1)};
  bool relays = mi.relay_independent.size() == 3;
  for (bool b : mi.relay_independent) relays = relays && b;
  const bool ok = mi.states == 6561 && rec.states == 6561 && rec.decode_failures == 0 && rec.sum_determined && relays &&
                  mi.server_independent && rates == want && dt < kGoldenSeconds;
  return {ok, "states=" + std::to_string(mi.states) + " decode_failures=" + std::to_string(rec.decode_failures) +
                  " relays=" + (relays ? "independent" : "LEAK") + " server=" +
                  (mi.server_independent ? "independent" : "LEAK") + " rates=" + to_string(rates) +
                  " time=" + std::to_string(dt) + "s"};
}

struct SweepResult {
  bool ok = true;
  std::string first_failure;
  std::vector<std::pair<std::pair<int, int>, std::vector<RateTuple>>> rates;
};

SweepResult run_sweep() {
  SweepResult s;
  for (int K = 2; K <= 8; ++K)
    for (int B = 1; B <= K - 1; ++B) {
      const std::string at = "(" + std::to_string(K) + "," + std::to_string(B) + ")";
      try {
        const auto p = build_scheme(K, B, std::nullopt, kSeed);
        const auto report = validate_scheme(*p.keys, *p.code);
        bool five = report.checks.size() == 5;
        for (const auto& c : report.checks) five = five && c.passed;
        std::vector<RateTuple> rates;
        const bool exact = rounds_exact(p, kRoundsPerConfig, derive_seed(kSeed, static_cast<std::uint64_t>(K * 16 + B)), &rates);
        if (!five || !exact) {
          s.ok = false;
          if (s.first_failure.empty()) s.first_failure = at + (five ? " recovery" : " validation");
        }
        s.rates.push_back({{K, B}, std::move(rates)});
      } catch (const std::exception& e) {
        s.ok = false;
        if (s.first_failure.empty()) s.first_failure = at + " " + e.what();
      }
    }
  return s;
}

Outcome criterion2(const SweepResult& s, double dt) {
  return {s.ok && dt < kSweepSeconds,
          std::to_string(s.rates.size()) + " configs x " + std::to_string(kRoundsPerConfig) + " rounds, time=" +
              std::to_string(dt) + "s" + (s.first_failure.empty() ? "" : " first failure " + s.first_failure)};
}

Outcome criterion3(const SweepResult& s) {
  std::size_t checked = 0;
  for (const auto& [kb, rates] : s.rates)
    for (const auto& r : rates) {
      if (!(r == corner(kb.first, kb.second)))
        return {false, "(" + std::to_string(kb.first) + "," + std::to_string(kb.second) + ") measured " + to_string(r)};
      ++checked;
    }
  return {checked == s.rates.size() * kRoundsPerConfig && checked > 0, std::to_string(checked) + " transcripts"};
}

std::vector<std::pair<int, std::vector<RateTuple>>> full_rates;

Outcome criterion4() {
  for (int K = 2; K <= 6; ++K) {
    const auto p = build_scheme(K, K, std::nullopt, kSeed);
    if (!audit_algebraic(p).passed()) return {false, "K=" + std::to_string(K) + " algebraic audit"};
    std::vector<RateTuple> rates;
    if (!rounds_exact(p, kRoundsPerConfig, derive_seed(kSeed, static_cast<std::uint64_t>(K)), &rates))
      return {false, "K=" + std::to_string(K) + " recovery"};
    for (const auto& r : rates)
      if (!(r == full_association_tuple(K))) return {false, "K=" + std::to_string(K) + " measured " + to_string(r)};
    full_rates.push_back({K, std::move(rates)});
  }
  return {true, "K=2..6 rates (1, 1/(K-1), 1/(K-1), 1), algebraic audits pass"};
}

Outcome criterion5(const SweepResult& s) {
  if (converse_bounds(8, 3).RZsigma != Rational(5, 3)) return {false, "converse(8,3) RZsigma " + to_string(converse_bounds(8, 3).RZsigma)};
  std::size_t n = 0;
  for (const auto& [kb, rates] : s.rates) {
    const auto lb = converse_bounds(kb.first, kb.second);
    for (const auto& r : rates) {
      if (!r.dominates(lb) || r.RY != lb.RY || r.RZ != lb.RZ || r.RZsigma != lb.RZsigma)
        return {false, "(" + std::to_string(kb.first) + "," + std::to_string(kb.second) + ") " + to_string(r) + " vs " + to_string(lb)};
      ++n;
    }
  }
  for (const auto& [K, rates] : full_rates) {
    const auto lb = converse_bounds(K, K);
    for (const auto& r : rates) {
      if (!r.dominates(lb)) return {false, "K=B=" + std::to_string(K)};
      ++n;
    }
  }
  return {n > 0, "RZsigma(8,3) >= 5/3; " + std::to_string(n) + " tuples dominate their bounds"};
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  const int K = 4, B = 2;
  const PrimeField f = select_field(K, B);
  const auto [valid, draws] =
      sample_circulant_validity(Topology(K, B), EvaluationPoints::canonical(f, K), kSamplingDraws, kSeed);
  const double dt = seconds_since(t0);
  const double frac = static_cast<double>(valid) / static_cast<double>(draws);
  const double bound = 1.0 - static_cast<double>(phi(K, B)) / static_cast<double>(f.modulus()) - kSamplingSlack;
  return {draws == kSamplingDraws && frac >= bound && dt < kSamplingSeconds,
          "q=" + std::to_string(f.modulus()) + " valid " + std::to_string(valid) + "/" + std::to_string(draws) +
              " = " + std::to_string(frac) + " >= " + std::to_string(bound) + ", time=" + std::to_string(dt) + "s"};
}

Outcome criterion7() {
  // q^(K L + L_Zsigma*) = 7^(6 + 2) = 5764801 <= 10^8, so q = 7 runs in full.
  const auto p = build_scheme(3, 2, 7, kSeed);
  const auto mi = exhaustive_mi_audit(p, 1, kDefaultMaxStates);
  const auto rec = exhaustive_recovery_audit(p, 1, kDefaultMaxStates);
  return {mi.passed() && rec.passed() && mi.states == 5764801,
          "q=7 L=2 states=" + std::to_string(mi.states) + " mi=" + (mi.passed() ? "independent" : "LEAK") +
              " recovery=" + (rec.passed() ? "exact" : "FAIL")};
}

Outcome criterion8() {
  const std::vector<std::pair<const char*, std::function<props::Violation()>>> suites{
      {"topology duality K<=12", [] { return props::topology_duality(12); }},
      {"polynomial family K<=8", [] { return props::polynomial_family(8); }},
      {"key cancellation + null space", [] { return props::key_cancellation_and_null_space(8); }},
      {"per-relay rank", [] { return props::per_relay_rank(8); }},
  };
  for (const auto& [name, fn] : suites)
    if (auto v = fn()) return {false, std::string(name) + ": " + *v};
  return {true, "4 suites clean"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::printf("[%s] criterion %d: %s -- %s\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
  };
  auto guarded = [](const std::function<Outcome()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Outcome{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "golden example exhaustive audit", guarded(criterion1));
  const auto t0 = Clock::now();
  const SweepResult sweep = run_sweep();
  const double sweep_dt = seconds_since(t0);
  report(2, "construction sweep K<=8, B<=K-1", criterion2(sweep, sweep_dt));
  report(3, "measured rates equal the region corner", guarded([&] { return criterion3(sweep); }));
  report(4, "B=K reduction", guarded(criterion4));
  report(5, "converse table", guarded([&] { return criterion5(sweep); }));
  report(6, "valid-g sampling at (4,2)", guarded(criterion6));
  report(7, "exhaustive audit of a constructed scheme", guarded(criterion7));
  report(8, "structural property suites", guarded(criterion8));
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
