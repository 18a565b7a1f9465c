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

#include <string>

#include "aigame/core/predicate.hpp"
#include "aigame/core/trace.hpp"

namespace aigame {

struct TraceCheck {
  bool flags_honest = true;
  bool verdict_matches = true;
  Outcome expected = Outcome::kLoss;
  std::string detail;

  bool ok() const { return flags_honest && verdict_matches; }
};

// Re-derives a stored security-game verdict from the trace alone, without rerunning
// any oracle: flag enforcement on every round and on the final context, then
// 1 iff phi fails on the final triple and psi (when learning injection was granted)
// does not fire.
inline TraceCheck check_trace(const Trace& trace, const PredicatePhi& phi, const PredicatePsi& psi) {
  TraceCheck out;
  const AtkSet& atk = trace.atk_used;
  if (trace.outcome == Outcome::kFailure) {
    out.expected = Outcome::kFailure;
    return out;
  }
  if (static_cast<int>(trace.rounds.size()) != atk.rounds()) {
    out.flags_honest = false;
    out.detail = "round count differs from the ATK set";
    return out;
  }
  for (int i = 1; i <= atk.rounds(); ++i) {
    const RoundRecord& round = trace.rounds[static_cast<std::size_t>(i - 1)];
    if (!atk.inject_learn(i) && !(round.before == round.after)) {
      out.flags_honest = false;
      out.detail = "round " + std::to_string(i) + " corpus changed without inject_learn";
    }
    if (round.view_shown != atk.see_model(i - 1)) {
      out.flags_honest = false;
      out.detail = "round " + std::to_string(i) + " view does not follow see_model";
    }
  }
  if (!atk.inject_infer() && !is_empty(trace.final.context)) {
    out.flags_honest = false;
    out.detail = "non-empty context without inject_infer";
  }
  if (!atk.black_box() && trace.oracle_queries > 0) {
    out.flags_honest = false;
    out.detail = "oracle queries without black_box";
  }
  const bool valid = phi(trace.final.prompt, trace.final.context, trace.final.result);
  const bool trivial = atk.any_inject_learn() && psi(trace);
  out.expected = (!valid && !trivial) ? Outcome::kWin : Outcome::kLoss;
  out.verdict_matches = out.expected == trace.outcome;
  if (!out.verdict_matches) out.detail = "stored verdict differs from the re-derived one";
  return out;
}

}  // namespace aigame
