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

// hsa: build, simulate and audit hierarchical secure aggregation schemes.
//
//   hsa simulate --K 3 --B 2 --trials 100 --seed 7
//   hsa audit --golden-example1 --level exhaustive
//   hsa rates --K-range 2:8 --format csv
//   hsa search-params --K 4 --B 2
//
// Exit codes: 0 pass, 2 construction failure, 3 audit or recovery failure,
// 4 configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hsa/hsa.hpp"
#include "hsa/json.hpp"

namespace {

using hsa::Json;

constexpr int kExitPass = 0;
constexpr int kExitConstruction = 2;
constexpr int kExitAudit = 3;
constexpr int kExitConfig = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int K = 3;
  int B = 2;
  std::optional<std::uint64_t> q;
  std::optional<std::size_t> L;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::string level = "algebraic";
  std::uint64_t max_states = hsa::kDefaultMaxStates;
  std::string out;
  std::string format = "json";
  std::string config;
  bool golden = false;
  std::string k_range = "2:8";
  std::string b_range;
};

int block_size_for(int K, int B) { return B == K ? K - 1 : B; }

// Fills every field the user did not pass on the command line from the JSON
// config file, if one was given.
void merge_config(RunConfig& c, const CLI::App& app) {
  if (c.config.empty()) return;
  std::ifstream in(c.config);
  if (!in) throw ConfigError("cannot open config " + c.config);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("version", 0) != 1) throw ConfigError("config must be an object with \"version\": 1");
  auto unset = [&](const char* flag) {
    const auto* opt = app.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  try {
    if (unset("--K") && j.contains("K")) c.K = j["K"].get<int>();
    if (unset("--B") && j.contains("B")) c.B = j["B"].get<int>();
    if (unset("--q") && j.contains("q")) c.q = j["q"].get<std::uint64_t>();
    if (unset("--L") && j.contains("L")) c.L = j["L"].get<std::size_t>();
    if (unset("--seed") && j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (unset("--trials") && j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (unset("--level") && j.contains("level")) c.level = j["level"].get<std::string>();
    if (unset("--max-states") && j.contains("max_states")) c.max_states = j["max_states"].get<std::uint64_t>();
    if (unset("--format") && j.contains("format")) c.format = j["format"].get<std::string>();
    if (unset("--K-range") && j.contains("K_range")) c.k_range = j["K_range"].get<std::string>();
    if (unset("--B-range") && j.contains("B_range")) c.b_range = j["B_range"].get<std::string>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void check_scheme_config(const RunConfig& c) {
  if (c.K < 1 || c.B < 1 || c.B > c.K) throw ConfigError("need 1 <= B <= K");
  if (c.B == c.K && c.K < 2) throw ConfigError("B = K needs K >= 2");
  if (c.q && !hsa::is_prime(*c.q)) throw ConfigError("q = " + std::to_string(*c.q) + " is not prime");
  if (c.L) {
    const auto bs = static_cast<std::size_t>(block_size_for(c.K, c.B));
    if (*c.L == 0 || *c.L % bs != 0) {
      throw ConfigError("L = " + std::to_string(*c.L) + " is not a positive multiple of block size " +
                        std::to_string(bs));
    }
  }
  if (c.level != "algebraic" && c.level != "exhaustive") throw ConfigError("level must be algebraic or exhaustive");
  if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("bad range '" + s + "', expected lo:hi");
  }
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ConfigError("cannot write " + c.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

hsa::SchemeParams build(const RunConfig& c) { return hsa::build_scheme(c.K, c.B, c.q, c.seed); }

Json scheme_summary(const hsa::SchemeParams& p) {
  Json s = hsa::to_json(p);
  // The coefficient tables are bulky; summaries keep the identifying fields.
  for (const char* key : {"alpha", "Lambda", "H", "R"}) s.erase(key);
  return s;
}

int cmd_simulate(const RunConfig& c) {
  const auto p = build(c);
  const std::size_t L = c.L.value_or(static_cast<std::size_t>(p.block_size));
  const auto& f = p.field;
  std::size_t recovered = 0;
  std::optional<hsa::RateTuple> measured;
  bool rates_consistent = true;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto in = hsa::random_inputs(p, L, hsa::derive_seed(c.seed, 2 * t));
    const auto r = hsa::run_round(p, in, hsa::derive_seed(c.seed, 2 * t + 1));
    if (r.recovered_sum == hsa::plain_sum(f, in)) ++recovered;
    const auto m = hsa::measured_rates(r.transcript);
    if (measured && !(*measured == m)) rates_consistent = false;
    if (!measured) measured = m;
  }
  const auto ach = hsa::achievable_rates(p.K(), p.topo.B());
  const bool ok = recovered == c.trials && rates_consistent && (!measured || *measured == ach);
  Json j{{"command", "simulate"},
         {"scheme", scheme_summary(p)},
         {"L", L},
         {"seed", c.seed},
         {"trials", c.trials},
         {"recovered", recovered},
         {"achievable", hsa::to_json(ach)},
         {"converse", hsa::to_json(hsa::converse_bounds(p.K(), p.topo.B()))},
         {"passed", ok}};
  if (measured) j["measured"] = hsa::to_json(*measured);
  emit(c, dump(j));
  return ok ? kExitPass : kExitAudit;
}

int cmd_audit(const RunConfig& c) {
  const auto p = c.golden ? hsa::golden_example1() : build(c);
  const std::size_t L = c.L.value_or(static_cast<std::size_t>(p.block_size));
  if (L % static_cast<std::size_t>(p.block_size) != 0) throw ConfigError("L is not a multiple of the block size");
  const std::size_t blocks = L / static_cast<std::size_t>(p.block_size);
  const auto report = c.level == "exhaustive" ? hsa::audit_exhaustive(p, blocks, c.max_states) : hsa::audit_algebraic(p);
  Json j{{"command", "audit"},
         {"scheme", scheme_summary(p)},
         {"level", c.level},
         {"L", L},
         {"report", hsa::to_json(report)},
         {"passed", report.passed()}};
  if (c.golden) {
    // The hand-written scheme has no generator; its rates come from one round.
    const auto in = hsa::random_inputs(p, L, c.seed);
    j["measured"] = hsa::to_json(hsa::measured_rates(hsa::run_round(p, in, c.seed).transcript));
  }
  emit(c, dump(j));
  return report.passed() ? kExitPass : kExitAudit;
}

int cmd_rates(const RunConfig& c) {
  const auto [k_lo, k_hi] = parse_range(c.k_range);
  if (k_lo < 2 || k_hi < k_lo) throw ConfigError("K range must satisfy 2 <= lo <= hi");
  std::ostringstream csv;
  csv << "K,B,q,RX_ach,RY_ach,RZ_ach,RZS_ach,RX_lb,RY_lb,RZ_lb,RZS_lb,gap_flags\n";
  Json rows = Json::array();
  for (int K = k_lo; K <= k_hi; ++K) {
    auto [b_lo, b_hi] = c.b_range.empty() ? std::pair{1, K} : parse_range(c.b_range);
    b_lo = std::max(b_lo, 1);
    b_hi = std::min(b_hi, K);
    for (int B = b_lo; B <= b_hi; ++B) {
      const auto q = hsa::select_field(K, B).modulus();
      const auto a = hsa::achievable_rates(K, B);
      const auto lb = hsa::converse_bounds(K, B);
      const std::string gap = a.RZ != lb.RZ ? "RZ" : "none";
      csv << K << ',' << B << ',' << q << ',' << hsa::to_string(a.RX) << ',' << hsa::to_string(a.RY) << ','
          << hsa::to_string(a.RZ) << ',' << hsa::to_string(a.RZsigma) << ',' << hsa::to_string(lb.RX) << ','
          << hsa::to_string(lb.RY) << ',' << hsa::to_string(lb.RZ) << ',' << hsa::to_string(lb.RZsigma) << ',' << gap
          << '\n';
      rows.push_back({{"K", K},
                      {"B", B},
                      {"q", q},
                      {"achievable", hsa::to_json(a)},
                      {"converse", hsa::to_json(lb)},
                      {"gap_flags", gap}});
    }
  }
  emit(c, c.format == "csv" ? csv.str() : dump(Json{{"command", "rates"}, {"rows", rows}}));
  return kExitPass;
}

int cmd_search_params(const RunConfig& c) {
  const auto p = build(c);
  const auto& keys = *p.keys;
  Json j{{"command", "search-params"},
         {"K", p.K()},
         {"B", p.topo.B()},
         {"q", p.field.modulus()},
         {"regime", std::string(hsa::to_string(keys.regime))},
         {"seed", c.seed},
         {"candidates_tried", keys.candidates_tried}};
  if (keys.g) j["g"] = *keys.g;
  if (keys.beta) {
    j["beta"] = *keys.beta;
    j["bad_set_sizes"] = keys.bad_set_sizes;
    j["global_bad_set_size"] = keys.global_bad_set_size;
  }
  if (keys.regime == hsa::Regime::kCirculant) {
    constexpr std::size_t kSamples = 200;
    const auto pts = hsa::EvaluationPoints::canonical(p.field, p.K());
    const auto [valid, samples] =
        hsa::sample_circulant_validity(p.topo, pts, kSamples, hsa::derive_seed(c.seed, 0x5eed));
    const auto ph = hsa::phi(p.K(), p.topo.B());
    j["phi"] = ph;
    j["sampled_valid"] = valid;
    j["samples"] = samples;
    j["valid_fraction_lower_bound"] = 1.0 - static_cast<double>(ph) / static_cast<double>(p.field.modulus());
  }
  emit(c, dump(j));
  return kExitPass;
}

void add_scheme_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--K", c.K, "number of users and relays");
  sub->add_option("--B", c.B, "relays per user");
  sub->add_option("--q", c.q, "prime field size (default: smallest that the construction supports)");
  sub->add_option("--seed", c.seed, "seed for keys, inputs and parameter search");
  sub->add_option("--config", c.config, "JSON config with \"version\": 1; flags take precedence");
  sub->add_option("--out", c.out, "write output here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical secure aggregation with cyclic user association"};
  app.require_subcommand(1);
  RunConfig c;

  auto* sim = app.add_subcommand("simulate", "run seeded rounds and report recovery and rates");
  add_scheme_flags(sim, c);
  sim->add_option("--L", c.L, "input length, a multiple of the block size");
  sim->add_option("--trials", c.trials, "number of rounds");

  auto* aud = app.add_subcommand("audit", "check relay and server security");
  add_scheme_flags(aud, c);
  aud->add_option("--L", c.L, "input length for exhaustive audits");
  aud->add_option("--level", c.level, "algebraic or exhaustive");
  aud->add_option("--max-states", c.max_states, "cap on enumerated (W, Z_sigma) states");
  aud->add_flag("--golden-example1", c.golden, "audit the hand-written K=3, B=2, q=3 scheme");

  auto* rat = app.add_subcommand("rates", "tabulate achievable rates and converse bounds");
  rat->add_option("--K-range", c.k_range, "lo:hi");
  rat->add_option("--B-range", c.b_range, "lo:hi (clipped to 1..K)");
  rat->add_option("--format", c.format, "json or csv");
  rat->add_option("--config", c.config, "JSON config with \"version\": 1; flags take precedence");
  rat->add_option("--out", c.out, "write output here instead of stdout");

  auto* srch = app.add_subcommand("search-params", "report the key-parameter search");
  add_scheme_flags(srch, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    merge_config(c, *active);
    if (active == rat) {
      if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
      return cmd_rates(c);
    }
    if (active == aud && c.golden) {
      if (c.level != "algebraic" && c.level != "exhaustive") throw ConfigError("level must be algebraic or exhaustive");
    } else {
      check_scheme_config(c);
    }
    if (active == sim) return cmd_simulate(c);
    if (active == aud) return cmd_audit(c);
    return cmd_search_params(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const hsa::Error& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitConstruction;
  }
}
