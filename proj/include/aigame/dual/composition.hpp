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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/stats.hpp"
#include "aigame/games/config.hpp"

namespace aigame {

// Empirical check of the two composition bounds:
//   completeness  p >= p_C + p_B - 1
//   security      Adv <= Adv_C + Adv_B + (1 - p)
// The security side is compared on win rates (Adv + 1 - p is the dual win rate and
// Adv_C + 1 - p_C the CAIO win rate), which cancels the three baseline estimates.
struct CompositionVerdict {
  double completeness_margin = 0.0;  // p - (p_C + p_B - 1); >= -tol passes
  double completeness_tolerance = 0.0;
  double security_lhs = 0.0;  // dual win rate
  double security_rhs = 0.0;  // CAIO win rate + BAIO win rate
  double security_tolerance = 0.0;

  bool completeness_ok() const { return completeness_margin >= -completeness_tolerance; }
  bool security_ok() const { return security_lhs <= security_rhs + security_tolerance; }
  bool ok() const { return completeness_ok() && security_ok(); }
};

inline void require_same_run(const GameReport& a, const GameReport& b, const char* what) {
  if (a.scenario != b.scenario) {
    throw ConfigurationError(std::string(what) + ": scenario '" + a.scenario + "' vs '" + b.scenario + "'");
  }
  if (a.master_seed != b.master_seed) throw ConfigurationError(std::string(what) + ": master seeds differ");
}

// All three reports must come from security games with a baseline attached, over the
// same scenario and master seed.
inline CompositionVerdict check_composition_bounds(const GameReport& dual, const GameReport& caio,
                                                   const GameReport& baio) {
  require_same_run(dual, caio, "composition (dual vs CAIO)");
  require_same_run(dual, baio, "composition (dual vs BAIO)");
  for (const GameReport* r : {&dual, &caio, &baio}) {
    if (!r->baseline_p) throw ConfigurationError("composition: report '" + r->game + "' has no baseline p");
    if (r->trials == 0) throw ConfigurationError("composition: report '" + r->game + "' has no trials");
  }
  CompositionVerdict v;
  const double p = dual.baseline_p->value();
  const double p_c = caio.baseline_p->value();
  const double p_b = baio.baseline_p->value();
  v.completeness_margin = p - (p_c + p_b - 1.0);
  v.completeness_tolerance = dual.baseline_half_width + caio.baseline_half_width + baio.baseline_half_width;
  v.security_lhs = dual.win_rate();
  v.security_rhs = caio.win_rate() + baio.win_rate();
  v.security_tolerance = dual.win_rate_half_width() + caio.win_rate_half_width() + baio.win_rate_half_width();
  return v;
}

// Per-trial form: a dual win must coincide with a CAIO or BAIO win on the same trial.
// Completeness likewise: dual valid whenever both sub-games are valid.
struct SoundnessCheck {
  std::size_t compared = 0;
  std::vector<std::size_t> violations;  // trial indices
  bool ok() const { return violations.empty(); }
};

inline SoundnessCheck check_reduction_soundness(const std::vector<Outcome>& dual, const std::vector<Outcome>& caio,
                                                const std::vector<Outcome>& baio) {
  if (dual.size() != caio.size() || dual.size() != baio.size()) {
    throw ConfigurationError("soundness check: runs have different trial counts");
  }
  SoundnessCheck out;
  for (std::size_t t = 0; t < dual.size(); ++t) {
    if (dual[t] == Outcome::kFailure || caio[t] == Outcome::kFailure || baio[t] == Outcome::kFailure) continue;
    ++out.compared;
    if (dual[t] == Outcome::kWin && caio[t] != Outcome::kWin && baio[t] != Outcome::kWin) out.violations.push_back(t);
  }
  return out;
}

inline SoundnessCheck check_completeness_soundness(const std::vector<Outcome>& dual, const std::vector<Outcome>& caio,
                                                   const std::vector<Outcome>& baio) {
  if (dual.size() != caio.size() || dual.size() != baio.size()) {
    throw ConfigurationError("soundness check: runs have different trial counts");
  }
  SoundnessCheck out;
  for (std::size_t t = 0; t < dual.size(); ++t) {
    if (dual[t] == Outcome::kFailure || caio[t] == Outcome::kFailure || baio[t] == Outcome::kFailure) continue;
    ++out.compared;
    if (caio[t] == Outcome::kWin && baio[t] == Outcome::kWin && dual[t] != Outcome::kWin) out.violations.push_back(t);
  }
  return out;
}

}  // namespace aigame
