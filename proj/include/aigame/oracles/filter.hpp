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

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/types.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

// Every token a proposed result exposes: generated text, action tokens, or a label.
inline std::vector<std::string> result_tokens(const Result& result) {
  std::vector<std::string> out;
  if (const auto* g = std::get_if<Generation>(&result)) {
    out = g->text;
    for (const auto& a : g->actions) out.insert(out.end(), a.begin(), a.end());
  } else if (const auto* l = std::get_if<Label>(&result)) {
    out.push_back(l->name);
  }
  return out;
}

// Tokens that follow the secret marker on a context line ("SECRET 4 7 1 9").
inline std::set<std::string> context_secrets(const Context& context, const std::string& marker) {
  std::set<std::string> out;
  if (marker.empty()) return out;
  if (const auto* tokens = std::get_if<Tokens>(&context)) {
    for (const auto& line : split_lines(*tokens)) {
      if (!line.empty() && line.front() == marker) out.insert(line.begin() + 1, line.end());
    }
  }
  return out;
}

// Keyword learner. Corpus items are text lines with meta "harmful" = "1" or "0";
// forbidden = tokens seen in harmful lines minus tokens seen in benign lines,
// accumulated over rounds.
inline Model keyword_learn(const Model& model, const Corpus& corpus) {
  FilterModel m = model.empty() ? FilterModel{} : model.as<FilterModel>("filter model");
  if (corpus.items.empty()) throw DegenerateCorpusError("filter learner got an empty corpus");
  for (const auto& item : corpus.items) {
    auto& seen = item.meta_or("harmful", "0") == "1" ? m.harmful_seen : m.benign_seen;
    for (const auto& t : item.text()) {
      if (t != kEolToken) seen.insert(t);
    }
  }
  m.forbidden.clear();
  for (const auto& t : m.harmful_seen) {
    if (m.benign_seen.count(t) == 0) m.forbidden.insert(t);
  }
  return Model(std::move(m));
}

// Decisional oracle: "accept" or "reject" for a (prompt, candidate) pair. Rejects
// iff the candidate contains a forbidden token or a secret marked in the context.
inline Result filter_infer(const Prompt& prompt_and_candidate, const Context& context, const Model& model) {
  const auto& rules = model.as<FilterModel>("filter model");
  const Candidate& pair = prompt_and_candidate.candidate();
  if (std::holds_alternative<Decision>(pair.result)) throw SchemaError("filter candidate cannot itself be a decision");
  const auto secrets = context_secrets(context, rules.secret_marker);
  for (const auto& t : result_tokens(pair.result)) {
    if (rules.forbidden.count(t) != 0 || secrets.count(t) != 0) return Decision::kReject;
  }
  return Decision::kAccept;
}

inline OracleSpec make_filter_oracle(std::vector<Generator> generators, std::string tag = "filter") {
  OracleSpec spec;
  spec.tag = std::move(tag);
  spec.generators = std::move(generators);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    spec.learners.push_back([](const Model& model, const Corpus& corpus, const Streams&) { return keyword_learn(model, corpus); });
  }
  spec.infer = filter_infer;
  return spec;
}

// A filter whose model is fixed in advance; learning ignores its corpus.
inline OracleSpec make_fixed_filter_oracle(FilterModel rules, std::vector<Generator> generators, std::string tag = "filter") {
  OracleSpec spec = make_filter_oracle(std::move(generators), std::move(tag));
  for (auto& learner : spec.learners) {
    learner = [rules](const Model&, const Corpus&, const Streams&) { return Model(rules); };
  }
  return spec;
}

// Always-reject BAIO, used to probe the dual construction's rejection path.
inline OracleSpec make_reject_all_oracle(std::vector<Generator> generators, std::string tag = "reject_all") {
  OracleSpec spec = make_filter_oracle(std::move(generators), std::move(tag));
  spec.infer = [](const Prompt& p, const Context&, const Model&) -> Result {
    (void)p.candidate();
    return Decision::kReject;
  };
  return spec;
}

}  // namespace aigame
