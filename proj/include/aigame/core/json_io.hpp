// Copyright 2026 The aigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aigame/core/atk.hpp"
#include "aigame/core/error.hpp"
#include "aigame/core/trace.hpp"
#include "aigame/core/types.hpp"

namespace aigame {

using nlohmann::json;

inline void to_json(json& j, const DataItem& item) {
  if (item.is_vector()) {
    j = json{{"vector", {{"x", item.vector().x}, {"label", item.vector().label}}}};
  } else {
    j = json{{"text", item.text()}};
  }
  j["meta"] = item.meta;
}

inline void from_json(const json& j, DataItem& item) {
  if (j.contains("vector")) {
    item.payload = LabeledVector{j.at("vector").at("x").get<Features>(), j.at("vector").at("label").get<std::string>()};
  } else if (j.contains("text")) {
    item.payload = j.at("text").get<Tokens>();
  } else {
    throw SchemaError("data item needs a vector or text payload");
  }
  item.meta = j.value("meta", std::map<std::string, std::string>{});
}

inline void to_json(json& j, const Corpus& c) { j = json{{"round", c.round_index}, {"items", c.items}}; }

inline void from_json(const json& j, Corpus& c) {
  c.round_index = j.at("round").get<int>();
  c.items = j.at("items").get<std::vector<DataItem>>();
}

inline void to_json(json& j, const Result& r);
inline void from_json(const json& j, Result& r);

inline void to_json(json& j, const Prompt& p) {
  if (p.is_features()) {
    j = json{{"features", p.features()}};
  } else if (p.is_tokens()) {
    j = json{{"tokens", p.tokens()}};
  } else {
    json inner;
    to_json(inner, *p.candidate().prompt);
    json result;
    to_json(result, p.candidate().result);
    j = json{{"candidate", {{"prompt", inner}, {"result", result}}}};
  }
}

inline void from_json(const json& j, Prompt& p) {
  if (j.contains("features")) {
    p = Prompt(j.at("features").get<Features>());
  } else if (j.contains("tokens")) {
    p = Prompt(j.at("tokens").get<Tokens>());
  } else if (j.contains("candidate")) {
    Prompt inner;
    from_json(j.at("candidate").at("prompt"), inner);
    Result result;
    from_json(j.at("candidate").at("result"), result);
    p = make_candidate(std::move(inner), std::move(result));
  } else {
    throw SchemaError("unrecognised prompt encoding");
  }
}

inline void to_json(json& j, const Result& r) {
  if (std::holds_alternative<Empty>(r)) {
    j = json{{"empty", true}};
  } else if (const auto* l = std::get_if<Label>(&r)) {
    j = json{{"label", l->name}};
  } else if (const auto* d = std::get_if<Decision>(&r)) {
    j = json{{"decision", *d == Decision::kAccept ? "accept" : "reject"}};
  } else {
    const auto& g = std::get<Generation>(r);
    j = json{{"generation", {{"text", g.text}, {"actions", g.actions}}}};
  }
}

inline void from_json(const json& j, Result& r) {
  if (j.contains("empty")) {
    r = Empty{};
  } else if (j.contains("label")) {
    r = Label{j.at("label").get<std::string>()};
  } else if (j.contains("decision")) {
    const auto d = j.at("decision").get<std::string>();
    if (d != "accept" && d != "reject") throw SchemaError("decision must be accept or reject");
    r = d == "accept" ? Decision::kAccept : Decision::kReject;
  } else if (j.contains("generation")) {
    r = Generation{j.at("generation").at("text").get<Tokens>(),
                   j.at("generation").at("actions").get<std::vector<Tokens>>()};
  } else {
    throw SchemaError("unrecognised result encoding");
  }
}

inline json context_to_json(const Context& c) {
  if (const auto* t = std::get_if<Tokens>(&c)) return json{{"tokens", *t}};
  return json{{"empty", true}};
}

inline Context context_from_json(const json& j) {
  if (j.contains("tokens")) return Context(j.at("tokens").get<Tokens>());
  return Context(Empty{});
}

inline void to_json(json& j, const AtkSet& atk) { j = json{{"rounds", atk.rounds()}, {"flags", atk.to_string()}}; }

inline void from_json(const json& j, AtkSet& atk) {
  atk = AtkSet::parse(j.at("flags").get<std::string>(), j.at("rounds").get<int>());
}

inline Outcome outcome_from_string(const std::string& s) {
  if (s == "win") return Outcome::kWin;
  if (s == "loss") return Outcome::kLoss;
  if (s == "failure") return Outcome::kFailure;
  throw SchemaError("unknown outcome '" + s + "'");
}

inline void to_json(json& j, const Trace& t) {
  json rounds = json::array();
  for (const auto& r : t.rounds) rounds.push_back({{"before", r.before}, {"after", r.after}, {"view", r.view_shown}});
  json prompt;
  to_json(prompt, t.final.prompt);
  json result;
  to_json(result, t.final.result);
  j = json{{"trial", t.trial},
           {"seed", t.seed},
           {"atk", t.atk_used},
           {"rounds", rounds},
           {"final", {{"prompt", prompt}, {"context", context_to_json(t.final.context)}, {"result", result}}},
           {"outcome", to_string(t.outcome)},
           {"queries", t.oracle_queries},
           {"failure", t.failure}};
}

inline void from_json(const json& j, Trace& t) {
  t.trial = j.at("trial").get<std::size_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.atk_used = j.at("atk").get<AtkSet>();
  t.rounds.clear();
  for (const auto& r : j.at("rounds")) {
    t.rounds.push_back({r.at("before").get<Corpus>(), r.at("after").get<Corpus>(), r.at("view").get<bool>()});
  }
  from_json(j.at("final").at("prompt"), t.final.prompt);
  t.final.context = context_from_json(j.at("final").at("context"));
  from_json(j.at("final").at("result"), t.final.result);
  t.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  t.oracle_queries = j.at("queries").get<std::size_t>();
  t.failure = j.value("failure", std::string());
}

// One trace per line.
inline void write_traces(std::ostream& out, const std::vector<Trace>& traces) {
  for (const auto& t : traces) out << json(t).dump() << '\n';
}

inline std::vector<Trace> read_traces(std::istream& in) {
  std::vector<Trace> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(json::parse(line).get<Trace>());
  }
  return out;
}

}  // namespace aigame
