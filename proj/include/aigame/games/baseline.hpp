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

#include "aigame/games/security.hpp"

namespace aigame {

struct AdvantageEstimate {
  GameRun completeness;
  GameRun security;
  GameReport report;  // security report against the estimated baseline
};

// Estimates p with the completeness game, then runs the security game and reports
// Adv = win - (1 - p_hat) with CI = both half-widths added. Both games share the
// master seed, so a benign adversary replays the completeness trials exactly.
inline AdvantageEstimate estimate_baseline_then_advantage(const OracleSpec& oracle, const SourceSet& source,
                                                          const PredicatePhi& phi, const BenignGenerator& gen,
                                                          const AdversaryFactory& adversary, GameConfig cfg) {
  cfg.phi = phi;
  AdvantageEstimate out;
  out.completeness = run_completeness(oracle, source, phi, gen, cfg);
  cfg.baseline_p = out.completeness.report.win_rate_exact();
  cfg.baseline_half_width = out.completeness.report.ci_half_width;
  out.security = run_security(oracle, source, adversary, cfg);
  out.report = out.security.report;
  return out;
}

}  // namespace aigame
