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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aigame/adversaries/adversary.hpp"
#include "aigame/dual/dual.hpp"

namespace aigame {

// ATK of the standalone CAIO game seen by A_C: the dual flags of rounds r1+1..r.
inline AtkSet caio_atk(const AtkSet& dual, int r1, int r2) {
  AtkSet atk(r2);
  for (int k = 0; k <= r2; ++k) atk.set_see_model(k, dual.see_model(r1 + k));
  for (int j = 1; j <= r2; ++j) atk.set_inject_learn(j, dual.inject_learn(r1 + j));
  atk.set_inject_infer(dual.inject_infer()).set_black_box(dual.black_box());
  return atk;
}

// ATK of the standalone BAIO game seen by A_B. A_B replays the CAIO rounds after the
// BAIO game is over, so any dual view from round r1 on needs the final BAIO model.
inline AtkSet baio_atk(const AtkSet& dual, int r1, int r2) {
  AtkSet atk(r1);
  for (int k = 0; k < r1; ++k) atk.set_see_model(k, dual.see_model(k));
  bool late_view = false;
  for (int k = r1; k <= r1 + r2; ++k) late_view = late_view || dual.see_model(k);
  atk.set_see_model(r1, late_view);
  for (int j = 1; j <= r1; ++j) atk.set_inject_learn(j, dual.inject_learn(j));
  atk.set_inject_infer(dual.inject_infer()).set_black_box(dual.black_box());
  return atk;
}

namespace detail {

inline Model dual_view(int round_before, const Model& m1, const Model& m2) {
  // Before round 1 the dual model is still the plain empty model.
  return round_before == 0 ? Model{} : make_pair_model(m1, m2);
}

}  // namespace detail

// A_C: plays the CAIO game by running the outer dual adversary, simulating the BAIO
// learning rounds itself and answering every dual view with (model_BAIO, view) and
// every dual oracle query with the CAIO oracle followed by the simulated filter.
class ReductionC : public Adversary {
 public:
  ReductionC(std::unique_ptr<Adversary> outer, DualSpec spec, AtkSet dual_atk)
      : outer_(std::move(outer)), spec_(std::move(spec)), dual_atk_(std::move(dual_atk)) {}

  LearnMove learn_phase(AdversaryState state, int round, const Model* view, const SourceSet& source,
                        const Corpus& corpus, const Streams& streams) override {
    const int r1 = spec_.r1();
    if (round == 1) simulate_baio(source, streams);
    const int dual_round = r1 + round;
    std::optional<Model> outer_view;
    if (dual_atk_.see_model(dual_round - 1)) {
      if (view == nullptr) throw UnsupportedConfiguration("A_C: CAIO game withheld a model view the dual game grants");
      outer_view = detail::dual_view(dual_round - 1, model1_, *view);
    }
    LearnMove move = outer_->learn_phase(std::move(outer_state_), dual_round, outer_view ? &*outer_view : nullptr,
                                         source, corpus, streams);
    outer_state_ = std::move(move.state);
    return {std::move(move.corpus), std::move(state)};
  }

  InferMove infer_phase(AdversaryState state, const Model* view, const SourceSet& source, OracleHandle* oracle,
                        const Streams& streams) override {
    std::optional<Model> outer_view;
    if (dual_atk_.see_model(spec_.rounds())) {
      if (view == nullptr) throw UnsupportedConfiguration("A_C: CAIO game withheld the final model view");
      outer_view = make_pair_model(model1_, *view);
    }
    std::optional<OracleHandle> dual_oracle;
    if (dual_atk_.black_box()) {
      if (oracle == nullptr) throw UnsupportedConfiguration("A_C: CAIO game withheld the oracle");
      dual_oracle.emplace(
          [this, oracle](const Prompt& p, const Context& c) -> Result {
            Result proposed = oracle->query(p, c);
            const Result verdict = spec_.baio.infer(make_candidate(p, proposed), c, model1_);
            const auto* d = std::get_if<Decision>(&verdict);
            if (d == nullptr) throw ContractViolation("BAIO answered something other than accept/reject");
            return *d == Decision::kAccept ? proposed : Result(Empty{});
          },
          oracle->budget());
    }
    InferMove move = outer_->infer_phase(std::move(outer_state_), outer_view ? &*outer_view : nullptr, source,
                                         dual_oracle ? &*dual_oracle : nullptr, streams);
    return {std::move(move.context), std::move(move.prompt), std::move(state)};
  }

  std::string kind_tag() const override { return "reduction_C(" + outer_->kind_tag() + ")"; }

 private:
  void simulate_baio(const SourceSet& source, const Streams& streams) {
    Model m1;
    for (int j = 1; j <= spec_.r1(); ++j) {
      Corpus corpus = spec_.baio.generator(j)(source, streams);
      std::optional<Model> outer_view;
      if (dual_atk_.see_model(j - 1)) outer_view = detail::dual_view(j - 1, m1, Model{});
      LearnMove move = outer_->learn_phase(std::move(outer_state_), j, outer_view ? &*outer_view : nullptr, source,
                                           corpus, streams);
      outer_state_ = std::move(move.state);
      const Corpus& learned = dual_atk_.inject_learn(j) ? move.corpus : corpus;
      m1 = spec_.baio.learner(j)(m1, learned, streams);
    }
    model1_ = std::move(m1);
  }

  std::unique_ptr<Adversary> outer_;
  DualSpec spec_;
  AtkSet dual_atk_;
  AdversaryState outer_state_;
  Model model1_;
};

// A_B: plays the BAIO game by running the outer dual adversary through the BAIO
// rounds, then simulating the CAIO rounds during its inference phase, and finally
// turning the outer (prompt, context) into ((prompt, CAIO result), context).
class ReductionB : public Adversary {
 public:
  ReductionB(std::unique_ptr<Adversary> outer, DualSpec spec, AtkSet dual_atk)
      : outer_(std::move(outer)), spec_(std::move(spec)), dual_atk_(std::move(dual_atk)) {}

  LearnMove learn_phase(AdversaryState state, int round, const Model* view, const SourceSet& source,
                        const Corpus& corpus, const Streams& streams) override {
    std::optional<Model> outer_view;
    if (dual_atk_.see_model(round - 1)) {
      if (view == nullptr) throw UnsupportedConfiguration("A_B: BAIO game withheld a model view the dual game grants");
      outer_view = detail::dual_view(round - 1, *view, Model{});
    }
    LearnMove move = outer_->learn_phase(std::move(outer_state_), round, outer_view ? &*outer_view : nullptr, source,
                                         corpus, streams);
    outer_state_ = std::move(move.state);
    return {std::move(move.corpus), std::move(state)};
  }

  InferMove infer_phase(AdversaryState state, const Model* view, const SourceSet& source, OracleHandle* oracle,
                        const Streams& streams) override {
    const int r1 = spec_.r1();
    auto need_m1 = [view]() -> const Model& {
      if (view == nullptr) throw UnsupportedConfiguration("A_B: BAIO game withheld the final BAIO model");
      return *view;
    };
    Model m2;
    for (int k = 1; k <= spec_.r2(); ++k) {
      Corpus corpus = spec_.caio.generator(k)(source, streams);
      std::optional<Model> outer_view;
      if (dual_atk_.see_model(r1 + k - 1)) outer_view = make_pair_model(need_m1(), m2);
      LearnMove move = outer_->learn_phase(std::move(outer_state_), r1 + k, outer_view ? &*outer_view : nullptr,
                                           source, corpus, streams);
      outer_state_ = std::move(move.state);
      const Corpus& learned = dual_atk_.inject_learn(r1 + k) ? move.corpus : corpus;
      m2 = spec_.caio.learner(k)(m2, learned, streams);
    }
    std::optional<Model> outer_view;
    if (dual_atk_.see_model(spec_.rounds())) outer_view = make_pair_model(need_m1(), m2);
    std::optional<OracleHandle> dual_oracle;
    if (dual_atk_.black_box()) {
      if (oracle == nullptr) throw UnsupportedConfiguration("A_B: BAIO game withheld the oracle");
      dual_oracle.emplace(
          [this, oracle, &m2](const Prompt& p, const Context& c) -> Result {
            Result proposed = spec_.caio.infer(p, c, m2);
            const Result verdict = oracle->query(make_candidate(p, proposed), c);
            const auto* d = std::get_if<Decision>(&verdict);
            if (d == nullptr) throw ContractViolation("BAIO answered something other than accept/reject");
            return *d == Decision::kAccept ? proposed : Result(Empty{});
          },
          oracle->budget());
    }
    InferMove move = outer_->infer_phase(std::move(outer_state_), outer_view ? &*outer_view : nullptr, source,
                                         dual_oracle ? &*dual_oracle : nullptr, streams);
    const Context effective = dual_atk_.inject_infer() ? move.context : Context(Empty{});
    Result proposed = spec_.caio.infer(move.prompt, effective, m2);
    return {std::move(move.context), make_candidate(std::move(move.prompt), std::move(proposed)), std::move(state)};
  }

  std::string kind_tag() const override { return "reduction_B(" + outer_->kind_tag() + ")"; }

 private:
  std::unique_ptr<Adversary> outer_;
  DualSpec spec_;
  AtkSet dual_atk_;
  AdversaryState outer_state_;
};

inline AdversaryFactory reduction_adversary_C(AdversaryFactory outer, DualSpec spec, AtkSet dual_atk) {
  return [outer = std::move(outer), spec = std::move(spec), atk = std::move(dual_atk)] {
    return std::make_unique<ReductionC>(outer(), spec, atk);
  };
}

inline AdversaryFactory reduction_adversary_B(AdversaryFactory outer, DualSpec spec, AtkSet dual_atk) {
  return [outer = std::move(outer), spec = std::move(spec), atk = std::move(dual_atk)] {
    return std::make_unique<ReductionB>(outer(), spec, atk);
  };
}

// Benign side of A_B in the BAIO completeness game: trains the CAIO itself, draws the
// honest (prompt, context) and proposes the CAIO's answer for filtering.
inline BenignGenerator baio_benign_generator(BenignGenerator gen, OracleSpec caio) {
  std::string scenario = gen.scenario;
  return {std::move(scenario), [gen = std::move(gen), caio = std::move(caio)](const SourceSet& source,
                                                                               const Streams& streams) {
            const Model m2 = train(caio, source, streams);
            auto [prompt, context] = gen(source, streams);
            Result proposed = caio.infer(prompt, context, m2);
            return std::pair<Prompt, Context>(make_candidate(std::move(prompt), std::move(proposed)),
                                              std::move(context));
          }};
}

}  // namespace aigame
