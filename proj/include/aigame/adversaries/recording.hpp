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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aigame/adversaries/adversary.hpp"

namespace aigame {

// Everything one adversary call saw and answered.
struct TranscriptEntry {
  std::string phase;  // "learn" or "infer"
  int round = 0;      // 0 for infer
  std::optional<Model> view;
  bool oracle_granted = false;
  Corpus corpus_in;
  Corpus corpus_out;
  std::optional<Prompt> prompt;
  std::optional<Context> context;
  AdversaryState state_in;

  bool operator==(const TranscriptEntry&) const = default;
};

using Transcript = std::vector<TranscriptEntry>;

// Forwards to an inner adversary and logs every call. Used to check that a reduction
// runs the outer adversary on exactly what the dual game would have shown it.
class RecordingAdversary : public Adversary {
 public:
  RecordingAdversary(std::unique_ptr<Adversary> inner, std::shared_ptr<Transcript> log)
      : inner_(std::move(inner)), log_(std::move(log)) {}

  LearnMove learn_phase(AdversaryState state, int round, const Model* view, const SourceSet& source,
                        const Corpus& corpus, const Streams& streams) override {
    TranscriptEntry e{"learn", round, view ? std::optional<Model>(*view) : std::nullopt, false, corpus, {}, {}, {}, state};
    LearnMove move = inner_->learn_phase(std::move(state), round, view, source, corpus, streams);
    e.corpus_out = move.corpus;
    log_->push_back(std::move(e));
    return move;
  }

  InferMove infer_phase(AdversaryState state, const Model* view, const SourceSet& source, OracleHandle* oracle,
                        const Streams& streams) override {
    TranscriptEntry e{"infer", 0, view ? std::optional<Model>(*view) : std::nullopt, oracle != nullptr, {}, {}, {}, {},
                      state};
    InferMove move = inner_->infer_phase(std::move(state), view, source, oracle, streams);
    e.prompt = move.prompt;
    e.context = move.context;
    log_->push_back(std::move(e));
    return move;
  }

  std::string kind_tag() const override { return inner_->kind_tag(); }
  AtkSet required(int rounds) const override { return inner_->required(rounds); }

 private:
  std::unique_ptr<Adversary> inner_;
  std::shared_ptr<Transcript> log_;
};

}  // namespace aigame
