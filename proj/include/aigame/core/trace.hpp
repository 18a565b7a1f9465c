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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "aigame/core/atk.hpp"
#include "aigame/core/types.hpp"

namespace aigame {

struct RoundRecord {
  Corpus before;  // GENERATE_DATA_i output
  Corpus after;   // what LEARN_i actually consumed
  bool view_shown = false;
  bool operator==(const RoundRecord&) const = default;
};

struct FinalTriple {
  Prompt prompt;
  Context context;
  Result result;
  bool operator==(const FinalTriple&) const = default;
};

enum class Outcome { kLoss, kWin, kFailure };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kLoss: return "loss";
    case Outcome::kWin: return "win";
    case Outcome::kFailure: return "failure";
  }
  return "?";
}

// Full record of one game trial.
struct Trace {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  AtkSet atk_used;
  std::vector<RoundRecord> rounds;
  FinalTriple final;
  Outcome outcome = Outcome::kLoss;
  std::size_t oracle_queries = 0;
  std::string failure;  // message when outcome == kFailure

  bool operator==(const Trace&) const = default;
  bool won() const { return outcome == Outcome::kWin; }
};

// Items present in `after` but not in `before` (multiset difference).
inline std::vector<DataItem> injected_items(const RoundRecord& round) {
  std::vector<DataItem> before = round.before.items;
  std::vector<DataItem> after = round.after.items;
  std::sort(before.begin(), before.end(), item_less);
  std::sort(after.begin(), after.end(), item_less);
  std::vector<DataItem> out;
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(out), item_less);
  return out;
}

// Trace restricted to rounds [first, first + count), 1-based. The final triple is kept.
inline Trace restrict_rounds(const Trace& trace, int first, int count) {
  Trace out = trace;
  out.rounds.assign(trace.rounds.begin() + (first - 1), trace.rounds.begin() + (first - 1 + count));
  return out;
}

// Trivial-win predicate psi over a trace.
class PredicatePsi {
 public:
  using Evaluator = std::function<bool(const Trace&)>;

  PredicatePsi(std::string name, Evaluator evaluator) : name_(std::move(name)), evaluator_(std::move(evaluator)) {}

  bool operator()(const Trace& trace) const { return evaluator_ ? evaluator_(trace) : false; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Evaluator evaluator_;
};

inline PredicatePsi psi_never() {
  return PredicatePsi("never", [](const Trace&) { return false; });
}

// Fires when some injected training item shows up verbatim in the final user prompt:
// the whole injected line as a contiguous token run, or the exact injected feature
// vector. This is the "train that elephants fly, then ask whether elephants fly" win.
inline PredicatePsi psi_verbatim_overlap() {
  return PredicatePsi("verbatim_overlap", [](const Trace& trace) {
    const Prompt& user = innermost_prompt(trace.final.prompt);
    for (const auto& round : trace.rounds) {
      for (const auto& item : injected_items(round)) {
        if (item.is_text() && user.is_tokens()) {
          const Tokens& line = item.text();
          if (!line.empty() && contains_run(user.tokens(), line)) return true;
        } else if (item.is_vector() && user.is_features()) {
          if (item.vector().x == user.features()) return true;
        }
      }
    }
    return false;
  });
}

// psi = psi_1 over the first r1 rounds OR psi_2 over the remaining r2 rounds.
inline PredicatePsi psi_disjunction(PredicatePsi first, PredicatePsi second, int r1, int r2) {
  std::string name = first.name() + "|" + second.name();
  return PredicatePsi(std::move(name), [first = std::move(first), second = std::move(second), r1, r2](const Trace& t) {
    return first(restrict_rounds(t, 1, r1)) || second(restrict_rounds(t, r1 + 1, r2));
  });
}

}  // namespace aigame
