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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aigame/adversaries/adversary.hpp"
#include "aigame/core/trace.hpp"
#include "aigame/games/config.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

// One completeness trial. Outcome kWin means the honest triple was valid.
inline Trace completeness_trial(const OracleSpec& oracle, const SourceSet& source, const PredicatePhi& phi,
                                const BenignGenerator& gen, const Streams& streams) {
  Trace trace;
  trace.seed = streams.seed();
  trace.atk_used = AtkSet(oracle.rounds());
  try {
    Model model;
    for (int i = 1; i <= oracle.rounds(); ++i) {
      Corpus corpus = oracle.generator(i)(source, streams);
      trace.rounds.push_back({corpus, corpus, false});
      model = oracle.learner(i)(model, corpus, streams);
    }
    auto [prompt, context] = gen(source, streams);
    Result result = oracle.infer(prompt, context, model);
    const bool valid = phi(prompt, context, result);
    trace.final = {std::move(prompt), std::move(context), std::move(result)};
    trace.outcome = valid ? Outcome::kWin : Outcome::kLoss;
  } catch (const DegenerateCorpusError& e) {
    trace.outcome = Outcome::kFailure;
    trace.failure = e.what();
  }
  return trace;
}

// Completeness game: r honest rounds, a benign (prompt, context), and phi on the
// result. The report's win rate is the completeness estimate p.
inline GameRun run_completeness(const OracleSpec& oracle, const SourceSet& source, const PredicatePhi& phi,
                                const BenignGenerator& gen, const GameConfig& cfg) {
  cfg.validate();
  oracle.validate();
  GameRun run;
  run.outcomes.assign(cfg.trials, Outcome::kFailure);
  if (cfg.keep_traces) run.traces.resize(cfg.trials);
  for_each_trial(cfg.trials, cfg.jobs, [&](std::size_t t) {
    Trace trace = completeness_trial(oracle, source, phi, gen, Streams(trial_seed(cfg.master_seed, t)));
    trace.trial = t;
    run.outcomes[t] = trace.outcome;
    if (cfg.keep_traces) run.traces[t] = std::move(trace);
  });
  GameConfig no_baseline = cfg;
  no_baseline.baseline_p.reset();
  run.report = tally("completeness", no_baseline, run.outcomes);
  return run;
}

// One trial of the full security game, line by line: view gated on see_model_{i-1},
// corpus override on inject_learn_i, final view on see_model_r, oracle on black_box,
// context zeroed without inject_infer; 0 if phi holds, 0 if psi fires, else 1. psi is
// only consulted when some inject_learn flag is granted (it is identically false
// otherwise).
inline Trace security_trial(const OracleSpec& oracle, const SourceSet& source, Adversary& adversary, const AtkSet& atk,
                            const PredicatePhi& phi, const PredicatePsi* psi, std::size_t query_budget,
                            const Streams& streams) {
  Trace trace;
  trace.seed = streams.seed();
  trace.atk_used = atk;
  const int r = oracle.rounds();
  try {
    Model model;
    AdversaryState state;
    for (int i = 1; i <= r; ++i) {
      Corpus corpus = oracle.generator(i)(source, streams);
      const bool shown = atk.see_model(i - 1);
      LearnMove move = adversary.learn_phase(std::move(state), i, shown ? &model : nullptr, source, corpus, streams);
      state = std::move(move.state);
      Corpus learned = atk.inject_learn(i) ? std::move(move.corpus) : corpus;
      model = oracle.learner(i)(model, learned, streams);
      trace.rounds.push_back({std::move(corpus), std::move(learned), shown});
    }
    const Model* view = atk.see_model(r) ? &model : nullptr;
    std::optional<OracleHandle> handle;
    if (atk.black_box()) {
      handle.emplace([&oracle, &model](const Prompt& p, const Context& c) { return oracle.infer(p, c, model); },
                     query_budget);
    }
    InferMove move = adversary.infer_phase(std::move(state), view, source, handle ? &*handle : nullptr, streams);
    Context context = atk.inject_infer() ? std::move(move.context) : Context(Empty{});
    Result result = oracle.infer(move.prompt, context, model);
    trace.oracle_queries = handle ? handle->used() : 0;
    const bool valid = phi(move.prompt, context, result);
    trace.final = {std::move(move.prompt), std::move(context), std::move(result)};
    if (valid) {
      trace.outcome = Outcome::kLoss;
    } else if (psi != nullptr && atk.any_inject_learn() && (*psi)(trace)) {
      trace.outcome = Outcome::kLoss;
    } else {
      trace.outcome = Outcome::kWin;
    }
  } catch (const DegenerateCorpusError& e) {
    trace.outcome = Outcome::kFailure;
    trace.failure = e.what();
  }
  return trace;
}

inline void check_security_config(const OracleSpec& oracle, const GameConfig& cfg) {
  cfg.validate();
  oracle.validate();
  if (!cfg.atk) throw ConfigurationError("security game needs an ATK set");
  if (cfg.atk->rounds() != oracle.rounds()) {
    throw ConfigurationError("ATK set has " + std::to_string(cfg.atk->rounds()) + " rounds but oracle '" + oracle.tag +
                             "' has " + std::to_string(oracle.rounds()));
  }
  if (!cfg.phi) throw ConfigurationError("security game needs a phi predicate");
  if (cfg.atk->any_inject_learn() && !cfg.psi) {
    throw ConfigurationError("inject_learn granted: the scenario must supply an explicit psi");
  }
}

inline GameRun run_security(const OracleSpec& oracle, const SourceSet& source, const AdversaryFactory& adversary,
                            const GameConfig& cfg, const std::string& game = "security") {
  check_security_config(oracle, cfg);
  GameRun run;
  run.outcomes.assign(cfg.trials, Outcome::kFailure);
  if (cfg.keep_traces) run.traces.resize(cfg.trials);
  const PredicatePsi* psi = cfg.psi ? &*cfg.psi : nullptr;
  for_each_trial(cfg.trials, cfg.jobs, [&](std::size_t t) {
    auto adv = adversary();
    Trace trace = security_trial(oracle, source, *adv, *cfg.atk, *cfg.phi, psi, cfg.query_budget,
                                 Streams(trial_seed(cfg.master_seed, t)));
    trace.trial = t;
    run.outcomes[t] = trace.outcome;
    if (cfg.keep_traces) run.traces[t] = std::move(trace);
  });
  run.report = tally(game, cfg, run.outcomes);
  return run;
}

// The simple game: white-box prompt and context injection only.
inline GameRun run_simple_security(const OracleSpec& oracle, const SourceSet& source, const AdversaryFactory& adversary,
                                   const GameConfig& cfg) {
  if (!cfg.atk || !(*cfg.atk == AtkSet::simple(oracle.rounds()))) {
    throw AssertionFailure("simple security game requires ATK = {see_model_r, inject_infer}");
  }
  return run_security(oracle, source, adversary, cfg, "simple_security");
}

}  // namespace aigame
