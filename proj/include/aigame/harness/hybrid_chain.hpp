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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aigame/adversaries/dpd.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/games/dpd.hpp"
#include "aigame/harness/report.hpp"
#include "aigame/oracles/catdog.hpp"

namespace aigame {

struct HybridChainConfig {
  std::size_t n = 8;
  std::size_t trials = 5000;  // per hybrid
  double noise_scale = 0.0;
  std::uint64_t seed = 1;
  double delta = 0.01;
  double separation = 6.0;
  std::size_t dim = 2;
  std::size_t population = 10000;
  std::uint64_t source_seed = 1;
  unsigned jobs = 1;
};

struct HybridLevel {
  std::size_t i = 0;
  GameReport report;          // DPD report of A_i; advantage = eps_i
  double eps = 0.0;           // win rate - 1/2
  double eps_half_width = 0.0;
  Rational one_given_b0;      // Pr[b'=1 | b=0]
  Rational one_given_b1;      // Pr[b'=1 | b=1]
};

struct HybridChainReport {
  HybridChainConfig config;
  std::vector<HybridLevel> levels;  // i = 0..n
  double p = 0.0;                   // Pr[b'=1 | A_0, b=0]
  double q = 0.0;                   // Pr[b'=1 | A_n, b=1]
  double p_half_width = 0.0;
  double q_half_width = 0.0;
  double sum_two_eps = 0.0;         // sum_i 2|eps_i|
  double tolerance = 0.0;           // p, q and every eps width, each eps width doubled
  double max_eps = 0.0;             // max_i |eps_i|
  double max_eps_half_width = 0.0;
  double completeness = 0.0;        // p_c = (p + 1 - q) / 2
  double completeness_half_width = 0.0;

  // |p - q| <= sum 2|eps_i| + tol
  BoundCheck telescoping() const {
    const double margin = sum_two_eps + tolerance - std::abs(p - q);
    return {"hybrid_telescoping", margin >= 0.0, margin,
            "|p-q|=" + std::to_string(std::abs(p - q)) + " sum2eps=" + std::to_string(sum_two_eps)};
  }
  // p_c <= 1/2 + n max|eps| (+ tolerance of both sides)
  BoundCheck utility_bound() const {
    const double bound = 0.5 + static_cast<double>(config.n) * max_eps;
    const double tol = completeness_half_width + static_cast<double>(config.n) * max_eps_half_width;
    const double margin = bound + tol - completeness;
    return {"hybrid_utility_bound", margin >= 0.0, margin,
            "p_c=" + std::to_string(completeness) + " bound=" + std::to_string(bound)};
  }
  // Every eps_i within its CI of 0.
  bool all_eps_near_zero() const {
    return std::all_of(levels.begin(), levels.end(),
                       [](const HybridLevel& l) { return std::abs(l.eps) <= l.eps_half_width; });
  }
  bool completeness_near_half() const { return std::abs(completeness - 0.5) <= completeness_half_width; }
};

inline double branch_half_width(std::size_t trials, double delta) {
  return trials == 0 ? 1.0 : hoeffding_half_width(trials, delta);
}

// DPD with A_0..A_n on the nearest-centroid oracle trained on corpora of size n.
inline HybridChainReport run_hybrid_chain(const HybridChainConfig& cfg) {
  if (cfg.n < 1) throw ConfigurationError("hybrid chain needs n >= 1");
  CatDogParams params;
  params.separation = cfg.separation;
  params.dim = cfg.dim;
  params.noise_scale = cfg.noise_scale;
  params.train_size = cfg.n;
  const SourceSet source = make_catdog_source(params, cfg.population, cfg.source_seed);
  const OracleSpec oracle = make_catdog_oracle(params);

  HybridChainReport out;
  out.config = cfg;
  for (std::size_t i = 0; i <= cfg.n; ++i) {
    GameConfig g;
    g.scenario = "hybrid_" + std::to_string(i);
    g.trials = cfg.trials;
    g.master_seed = derive_seed(cfg.seed, i);
    g.ci_delta = cfg.delta;
    g.jobs = cfg.jobs;
    g.keep_traces = false;
    const Inferrer infer = oracle.infer;
    DpdRun run = run_dpd(oracle, source, cfg.n, [&] { return std::make_unique<HybridAdversary>(i, cfg.n, params, infer); },
                         g);
    HybridLevel level;
    level.i = i;
    level.report = run.report;
    level.eps = run.report.win_rate() - 0.5;
    level.eps_half_width = run.report.win_rate_half_width();
    level.one_given_b0 = guess_one_rate(run, 0);
    level.one_given_b1 = guess_one_rate(run, 1);
    if (i == 0) {
      out.p = level.one_given_b0.value();
      out.p_half_width = branch_half_width(branch_trials(run, 0), cfg.delta);
    }
    if (i == cfg.n) {
      out.q = level.one_given_b1.value();
      out.q_half_width = branch_half_width(branch_trials(run, 1), cfg.delta);
    }
    out.levels.push_back(std::move(level));
  }
  out.tolerance = out.p_half_width + out.q_half_width;
  for (const auto& l : out.levels) {
    out.sum_two_eps += 2.0 * std::abs(l.eps);
    out.tolerance += 2.0 * l.eps_half_width;
    if (std::abs(l.eps) >= out.max_eps) {
      out.max_eps = std::abs(l.eps);
      out.max_eps_half_width = l.eps_half_width;
    }
  }
  out.completeness = (out.p + 1.0 - out.q) / 2.0;
  out.completeness_half_width = (out.p_half_width + out.q_half_width) / 2.0;
  return out;
}

inline SuiteResult hybrid_chain_suite(const std::vector<HybridChainReport>& chains, const std::string& name) {
  SuiteResult s;
  for (const auto& chain : chains) {
    const std::string level_tag = "noise=" + csv_number(chain.config.noise_scale);
    const bool tele = chain.telescoping().pass;
    for (const auto& l : chain.levels) {
      ScenarioRow row;
      row.report = l.report;
      row.report.scenario = l.report.scenario + "@" + level_tag;
      row.verdict = tele ? "pass" : "fail";
      s.rows.push_back(std::move(row));
    }
    BoundCheck t = chain.telescoping();
    t.name += "@" + level_tag;
    BoundCheck u = chain.utility_bound();
    u.name += "@" + level_tag;
    s.checks.push_back(std::move(t));
    s.checks.push_back(std::move(u));
  }
  if (!chains.empty()) {
    const auto& c = chains.front().config;
    s.fingerprint = {name, c.seed, c.trials, c.delta, kAigameVersion, s.rows.size()};
  }
  return s;
}

}  // namespace aigame
