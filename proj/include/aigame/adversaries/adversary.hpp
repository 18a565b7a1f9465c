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

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "aigame/core/atk.hpp"
#include "aigame/core/error.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/core/types.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/oracle_spec.hpp"
#include "aigame/oracles/text_world.hpp"

namespace aigame {

// Threaded through the phases of one trial; only the owning adversary reads it.
using AdversaryState = nlohmann::json;

struct LearnMove {
  Corpus corpus;
  AdversaryState state;
};

struct InferMove {
  Context context;
  Prompt prompt;
  AdversaryState state;
};

// Security-game adversary. `view` is null when the game withholds the model, and
// `oracle` is null unless black_box is granted. Instances are created fresh for each
// trial, so they may cache per-trial data in members.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual LearnMove learn_phase(AdversaryState state, int round, const Model* view, const SourceSet& source,
                                const Corpus& corpus, const Streams& streams) = 0;

  virtual InferMove infer_phase(AdversaryState state, const Model* view, const SourceSet& source,
                                OracleHandle* oracle, const Streams& streams) = 0;

  virtual std::string kind_tag() const = 0;

  // Flags the attack is designed around. Descriptive: the game never refuses to run
  // an adversary without them, it simply withholds the capability.
  virtual AtkSet required(int rounds) const { return AtkSet(rounds); }
};

using AdversaryFactory = std::function<std::unique_ptr<Adversary>()>;

// Distinguisher for the DPD game: A' picks (corpus', z0, z1), A guesses b.
struct DpdBuild {
  Corpus corpus;
  DataItem z0;
  DataItem z1;
  AdversaryState state;
};

class DpdAdversary {
 public:
  virtual ~DpdAdversary() = default;

  virtual DpdBuild build_phase(std::size_t n, const SourceSet& source, const Streams& streams) = 0;

  virtual int guess_phase(const AdversaryState& state, const Corpus& corpus, const DataItem& z0, const DataItem& z1,
                          const Model& model, const SourceSet& source, const Streams& streams) = 0;

  virtual std::string kind_tag() const = 0;
};

using DpdAdversaryFactory = std::function<std::unique_ptr<DpdAdversary>()>;

// Algorithm B of the completeness game: draws an honest (prompt, context) without
// any access to the model.
struct BenignGenerator {
  std::string scenario;
  std::function<std::pair<Prompt, Context>(const SourceSet&, const Streams&)> draw;

  std::pair<Prompt, Context> operator()(const SourceSet& source, const Streams& streams) const {
    return draw(source, streams);
  }
};

// catdog: the image of a uniformly drawn source item (a fresh in-distribution image,
// almost never one of the training items). textcorpus: a proper prefix of a public
// benign line. Both with empty context.
inline BenignGenerator benign_sampler(const std::string& scenario) {
  if (scenario == kCatDogSchema) {
    return {scenario, [](const SourceSet& source, const Streams& streams) {
              auto rng = streams.stream("benign");
              std::uniform_int_distribution<std::size_t> pick(0, source.size() - 1);
              return std::pair<Prompt, Context>(Prompt(source[pick(rng)].vector().x), Context(Empty{}));
            }};
  }
  if (scenario == kTextSchema) {
    return {scenario, [](const SourceSet& source, const Streams& streams) {
              auto rng = streams.stream("benign");
              return draw_benign_text_prompt(source, rng);
            }};
  }
  throw ConfigurationError("no benign sampler for scenario '" + scenario + "'");
}

}  // namespace aigame
