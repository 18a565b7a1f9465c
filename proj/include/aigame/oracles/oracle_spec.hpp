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
#include <string>
#include <utility>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/core/types.hpp"
#include "aigame/oracles/model.hpp"

namespace aigame {

using Generator = std::function<Corpus(const SourceSet&, const Streams&)>;
using Learner = std::function<Model(const Model&, const Corpus&, const Streams&)>;
using Inferrer = std::function<Result(const Prompt&, const Context&, const Model&)>;

// An AI oracle: r rounds of (GENERATE_DATA_i, LEARN_i) plus one INFER, 2r+1
// procedures in total. `tag` namespaces the oracle's random streams.
struct OracleSpec {
  std::string tag;
  std::vector<Generator> generators;
  std::vector<Learner> learners;
  Inferrer infer;

  int rounds() const { return static_cast<int>(generators.size()); }
  std::size_t procedure_count() const { return generators.size() + learners.size() + (infer ? 1 : 0); }

  void validate() const {
    if (generators.empty()) throw ConfigurationError("oracle '" + tag + "' has no learning rounds");
    if (generators.size() != learners.size()) {
      throw ConfigurationError("oracle '" + tag + "' has mismatched generator/learner counts");
    }
    if (!infer) throw ConfigurationError("oracle '" + tag + "' has no inferrer");
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (!generators[i] || !learners[i]) throw ConfigurationError("oracle '" + tag + "' has an unset round procedure");
    }
  }

  const Generator& generator(int round) const { return generators.at(static_cast<std::size_t>(round - 1)); }
  const Learner& learner(int round) const { return learners.at(static_cast<std::size_t>(round - 1)); }
};

// All r rounds of honest data generation and learning.
inline Model train(const OracleSpec& oracle, const SourceSet& source, const Streams& streams) {
  Model model;
  for (int i = 1; i <= oracle.rounds(); ++i) {
    Corpus corpus = oracle.generator(i)(source, streams);
    model = oracle.learner(i)(model, corpus, streams);
  }
  return model;
}

// Query access INFER(., ., model) with a hard budget.
class OracleHandle {
 public:
  using Query = std::function<Result(const Prompt&, const Context&)>;

  OracleHandle(Query query, std::size_t budget) : query_(std::move(query)), budget_(budget) {}

  Result query(const Prompt& prompt, const Context& context) {
    if (used_ >= budget_) throw QueryBudgetExceeded("oracle query budget of " + std::to_string(budget_) + " exhausted");
    ++used_;
    return query_(prompt, context);
  }

  std::size_t used() const { return used_; }
  std::size_t budget() const { return budget_; }
  std::size_t remaining() const { return budget_ - used_; }

 private:
  Query query_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

}  // namespace aigame
