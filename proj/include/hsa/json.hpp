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

// JSON views of the public types. Object keys are emitted sorted, so equal
// values always serialize to equal bytes.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hsa/audit.hpp"
#include "hsa/key_design.hpp"
#include "hsa/protocol.hpp"
#include "hsa/rates.hpp"

namespace hsa {

using Json = nlohmann::json;

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<Symbol>(row.begin(), row.end()));
  }
  return rows;
}

inline std::string link_key(const Link& l) { return std::to_string(l.first) + "," + std::to_string(l.second); }

inline Json to_json(const Transcript& t) {
  Json x = Json::object();
  for (const auto& [link, msg] : t.X) x[link_key(link)] = msg;
  return Json{{"L", t.L}, {"X", x}, {"Y", t.Y}, {"L_X", t.L_X}, {"L_Y", t.L_Y}, {"L_Z", t.L_Z}, {"L_Zsigma", t.L_Zsigma}};
}

inline Json to_json(const RateTuple& r) {
  return Json{{"RX", to_string(r.RX)}, {"RY", to_string(r.RY)}, {"RZ", to_string(r.RZ)}, {"RZsigma", to_string(r.RZsigma)}};
}

inline Json to_json(const ValidationReport& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return Json{{"passed", v.passed()}, {"checks", checks}};
}

inline Json to_json(const AuditReport& a) {
  Json relays = Json::array();
  for (const auto& c : a.relay_checks)
    relays.push_back({{"relay", c.relay}, {"passed", c.passed}, {"rank", c.rank}, {"detail", c.detail}});
  const auto& s = a.server_check;
  Json out{{"scheme", a.scheme},
           {"passed", a.passed()},
           {"relay_checks", relays},
           {"server_check",
            {{"passed", s.passed},
             {"rank", s.rank},
             {"null_dim", s.null_dim},
             {"keys_cancel", s.cancels},
             {"null_plus_R_rank", s.span_rank},
             {"detail", s.detail}}}};
  if (a.mi) {
    out["mi"] = {{"states", a.mi->states},
                 {"relay_independent", a.mi->relay_independent},
                 {"server_independent", a.mi->server_independent},
                 {"passed", a.mi->passed()}};
  }
  if (a.recovery) {
    out["recovery"] = {{"states", a.recovery->states},
                       {"decode_failures", a.recovery->decode_failures},
                       {"sum_determined", a.recovery->sum_determined},
                       {"passed", a.recovery->passed()}};
  }
  if (!a.exhaustive_note.empty()) out["exhaustive_skipped"] = a.exhaustive_note;
  return out;
}

inline Json to_json(const SchemeParams& p) {
  Json alpha = Json::object();
  for (const auto& [link, coeffs] : p.alpha) alpha[link_key(link)] = coeffs;
  Json disabled = Json::array();
  for (const auto& l : p.disabled_links) disabled.push_back({l.first, l.second});
  Json out{{"name", p.name},
           {"K", p.K()},
           {"B", p.topo.B()},
           {"q", p.field.modulus()},
           {"regime", p.regime ? std::string(to_string(*p.regime)) : std::string("literal")},
           {"block_size", p.block_size},
           {"source_key_length", p.key_length},
           {"alpha", alpha},
           {"Lambda", to_json(p.Lambda)},
           {"H", to_json(p.H)},
           {"R", to_json(p.R)},
           {"disabled_links", disabled}};
  if (p.keys) {
    if (p.keys->g) out["g"] = *p.keys->g;
    if (p.keys->beta) out["beta"] = *p.keys->beta;
    out["candidates_tried"] = p.keys->candidates_tried;
  }
  return out;
}

}  // namespace hsa
