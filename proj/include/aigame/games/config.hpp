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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "aigame/core/atk.hpp"
#include "aigame/core/error.hpp"
#include "aigame/core/predicate.hpp"
#include "aigame/core/stats.hpp"
#include "aigame/core/trace.hpp"

namespace aigame {

struct GameConfig {
  std::string scenario = "unnamed";
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  std::optional<AtkSet> atk;
  std::optional<PredicatePhi> phi;
  std::optional<PredicatePsi> psi;
  std::size_t query_budget = 16;
  double ci_delta = 0.01;
  // Baseline completeness p to report the advantage against (security games).
  std::optional<Rational> baseline_p;
  double baseline_half_width = 0.0;
  unsigned jobs = 1;          // worker threads; 0 = hardware concurrency
  bool keep_traces = true;    // per-trial outcomes are always kept

  void validate() const {
    if (trials < 1) throw ConfigurationError("game needs at least one trial");
    if (!(ci_delta > 0.0 && ci_delta < 1.0)) throw ConfigurationError("ci delta must lie in (0, 1)");
  }
};

struct GameRun {
  GameReport report;
  std::vector<Outcome> outcomes;  // indexed by trial
  std::vector<Trace> traces;      // empty unless keep_traces
};

// Runs fn(t) for t in [0, trials) on `jobs` threads. Results must be written to
// per-trial slots, which keeps the output independent of scheduling. The first
// exception thrown by any trial is rethrown once all workers have stopped.
template <typename Fn>
void for_each_trial(std::size_t trials, unsigned jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, trials));
  if (jobs <= 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      while (!stop.load()) {
        const std::size_t t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

// Tallies outcomes into a report. Failures are excluded from the rates.
inline GameReport tally(const std::string& game, const GameConfig& cfg, const std::vector<Outcome>& outcomes) {
  GameReport r;
  r.game = game;
  r.scenario = cfg.scenario;
  r.master_seed = cfg.master_seed;
  r.ci_delta = cfg.ci_delta;
  for (Outcome o : outcomes) {
    if (o == Outcome::kFailure) {
      ++r.failures;
    } else {
      ++r.trials;
      if (o == Outcome::kWin) ++r.wins;
    }
  }
  r.ci_half_width = r.win_rate_half_width();
  if (cfg.baseline_p) {
    r.baseline_p = cfg.baseline_p;
    r.baseline_half_width = cfg.baseline_half_width;
    r.ci_half_width += cfg.baseline_half_width;
  }
  return r;
}

}  // namespace aigame
