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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aigame/core/types.hpp"

namespace aigame {

// Validity predicate phi over (prompt, context, result). Always total and decidable:
// each scenario ships a concrete evaluator instead of the general, non-implementable
// predicate. A predicate built with conjunction() evaluates to the AND of its parts.
class PredicatePhi {
 public:
  using Evaluator = std::function<bool(const Prompt&, const Context&, const Result&)>;

  PredicatePhi(std::string name, Evaluator evaluator)
      : name_(std::move(name)), evaluator_(std::move(evaluator)) {}

  static PredicatePhi conjunction(std::string name, std::vector<PredicatePhi> conjuncts) {
    PredicatePhi phi(std::move(name), nullptr);
    phi.conjuncts_ = std::move(conjuncts);
    return phi;
  }

  bool operator()(const Prompt& p, const Context& c, const Result& r) const {
    if (!conjuncts_.empty()) {
      bool all = true;
      // Every conjunct is evaluated so schema errors surface even after a false part.
      for (const auto& part : conjuncts_) all = part(p, c, r) && all;
      return all;
    }
    if (!evaluator_) return true;
    return evaluator_(p, c, r);
  }

  const std::string& name() const { return name_; }
  const std::vector<PredicatePhi>& conjuncts() const { return conjuncts_; }

 private:
  std::string name_;
  Evaluator evaluator_;
  std::vector<PredicatePhi> conjuncts_;
};

inline bool eval_phi(const PredicatePhi& phi, const Prompt& prompt, const Context& context, const Result& result) {
  return phi(prompt, context, result);
}

inline PredicatePhi always_true_phi() {
  return PredicatePhi("always_true", [](const Prompt&, const Context&, const Result&) { return true; });
}

inline PredicatePhi always_false_phi() {
  return PredicatePhi("always_false", [](const Prompt&, const Context&, const Result&) { return false; });
}

// Companion decisional predicate phi': phi(p, c, r) <=> phi'((p, r), c, accept).
// A "reject" is valid exactly when the proposed result is invalid; any other result
// kind is invalid.
inline PredicatePhi decisional_lift(PredicatePhi phi) {
  std::string name = "lift(" + phi.name() + ")";
  return PredicatePhi(std::move(name), [phi = std::move(phi)](const Prompt& p, const Context& c, const Result& r) {
    const Candidate& pair = p.candidate();
    const auto* decision = std::get_if<Decision>(&r);
    if (decision == nullptr) return false;
    bool proposed_valid = phi(*pair.prompt, c, pair.result);
    return *decision == Decision::kAccept ? proposed_valid : !proposed_valid;
  });
}

}  // namespace aigame
