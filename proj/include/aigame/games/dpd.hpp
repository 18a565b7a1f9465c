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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aigame/adversaries/adversary.hpp"
#include "aigame/games/config.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

struct DpdRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  int b = 0;
  int guess = 0;
  bool size_ok = true;      // |corpus'| == n-1
  Outcome outcome = Outcome::kLoss;
  Corpus learned;           // corpus' + {z_b}, canonically sorted; kept with traces
  std::string failure;
};

struct DpdRun {
  GameReport report;
  std::vector<DpdRecord> records;
};

// One DPD(n) trial. The coin comes from the trial's "dpd/coin" stream unless forced.
// corpus' + {z_b} is a set in the game, so it is handed to the learner sorted.
inline DpdRecord dpd_trial(const OracleSpec& oracle, const SourceSet& source, std::size_t n, DpdAdversary& adv,
                           const Streams& streams, std::optional<int> forced_b = std::nullopt) {
  DpdRecord rec;
  rec.seed = streams.seed();
  if (forced_b) {
    rec.b = *forced_b;
  } else {
    auto coin = streams.stream("dpd/coin");
    rec.b = static_cast<int>(coin() & 1U);
  }
  DpdBuild build = adv.build_phase(n, source, streams);
  if (build.corpus.size() + 1 != n) {
    rec.size_ok = false;
    rec.outcome = Outcome::kLoss;
    return rec;
  }
  Corpus learned = build.corpus;
  learned.round_index = 1;
  learned.items.push_back(rec.b == 0 ? build.z0 : build.z1);
  std::stable_sort(learned.items.begin(), learned.items.end(), item_less);
  try {
    const Model model = oracle.learner(1)(Model{}, learned, streams);
    rec.guess = adv.guess_phase(build.state, build.corpus, build.z0, build.z1, model, source, streams);
    rec.outcome = rec.guess == rec.b ? Outcome::kWin : Outcome::kLoss;
  } catch (const DegenerateCorpusError& e) {
    rec.outcome = Outcome::kFailure;
    rec.failure = e.what();
  }
  rec.learned = std::move(learned);
  return rec;
}

// DPD(n) over a single-round oracle. The baseline is the coin: advantage = win - 1/2.
inline DpdRun run_dpd(const OracleSpec& oracle, const SourceSet& source, std::size_t n,
                      const DpdAdversaryFactory& adversary, const GameConfig& cfg) {
  cfg.validate();
  oracle.validate();
  if (oracle.rounds() != 1) throw ConfigurationError("DPD game needs a single-round oracle");
  if (n < 1) throw ConfigurationError("DPD corpus size must be >= 1");
  DpdRun run;
  run.records.resize(cfg.trials);
  for_each_trial(cfg.trials, cfg.jobs, [&](std::size_t t) {
    auto adv = adversary();
    DpdRecord rec = dpd_trial(oracle, source, n, *adv, Streams(trial_seed(cfg.master_seed, t)));
    rec.trial = t;
    if (!cfg.keep_traces) rec.learned = Corpus{};
    run.records[t] = std::move(rec);
  });
  std::vector<Outcome> outcomes;
  outcomes.reserve(run.records.size());
  for (const auto& r : run.records) outcomes.push_back(r.outcome);
  GameConfig with_coin = cfg;
  with_coin.baseline_p = Rational{1, 2};
  with_coin.baseline_half_width = 0.0;
  run.report = tally("dpd", with_coin, outcomes);
  return run;
}

// Pr[b' = 1 | b] as counts over non-failed trials.
inline Rational guess_one_rate(const DpdRun& run, int b) {
  std::int64_t ones = 0;
  std::int64_t total = 0;
  for (const auto& r : run.records) {
    if (r.outcome == Outcome::kFailure || r.b != b) continue;
    ++total;
    if (r.guess == 1) ++ones;
  }
  return Rational{ones, total == 0 ? 1 : total};
}

inline std::size_t branch_trials(const DpdRun& run, int b) {
  std::size_t total = 0;
  for (const auto& r : run.records) {
    if (r.outcome != Outcome::kFailure && r.b == b) ++total;
  }
  return total;
}

}  // namespace aigame
