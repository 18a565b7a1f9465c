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
#include <string>
#include <utility>

#include "aigame/core/error.hpp"
#include "aigame/core/predicate.hpp"
#include "aigame/core/trace.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

// A boring (decisional) oracle filtering the results of a creative one. BAIO learns
// in rounds 1..r1, CAIO in rounds r1+1..r1+r2; the composed model is the pair
// (model_BAIO, model_CAIO).
struct DualSpec {
  OracleSpec baio;
  OracleSpec caio;
  OracleSpec composed;

  int r1() const { return baio.rounds(); }
  int r2() const { return caio.rounds(); }
  int rounds() const { return r1() + r2(); }
};

namespace detail {

inline void check_dual_round(int i, int r1, int r2) {
  if (i < 1 || i > r1 + r2) {
    throw ConfigurationError("dual round " + std::to_string(i) + " outside 1.." + std::to_string(r1 + r2));
  }
}

inline Corpus dual_generate(int i, const SourceSet& source, const OracleSpec& baio, const OracleSpec& caio,
                            const Streams& streams) {
  check_dual_round(i, baio.rounds(), caio.rounds());
  if (i <= baio.rounds()) return baio.generator(i)(source, streams);
  return caio.generator(i - baio.rounds())(source, streams);
}

inline Model dual_learn(int i, const Model& model, const Corpus& corpus, const OracleSpec& baio, const OracleSpec& caio,
                        const Streams& streams) {
  check_dual_round(i, baio.rounds(), caio.rounds());
  const Model current = i == 1 ? make_pair_model(Model{}, Model{}) : model;
  const auto& pair = current.as<ModelPair>("(model1, model2) pair");
  if (i <= baio.rounds()) return make_pair_model(baio.learner(i)(*pair.first, corpus, streams), *pair.second);
  return make_pair_model(*pair.first, caio.learner(i - baio.rounds())(*pair.second, corpus, streams));
}

inline Result dual_infer(const Prompt& prompt, const Context& context, const Model& model, const OracleSpec& baio,
                         const OracleSpec& caio) {
  const auto& pair = model.as<ModelPair>("(model1, model2) pair");
  Result proposed = caio.infer(prompt, context, *pair.second);
  const Result verdict = baio.infer(make_candidate(prompt, proposed), context, *pair.first);
  const auto* decision = std::get_if<Decision>(&verdict);
  if (decision == nullptr) throw ContractViolation("BAIO answered something other than accept/reject");
  if (*decision == Decision::kAccept) return proposed;
  return Empty{};
}

}  // namespace detail

inline Corpus dual_generate_data(int i, const SourceSet& source, const DualSpec& spec, const Streams& streams) {
  return detail::dual_generate(i, source, spec.baio, spec.caio, streams);
}

inline Model dual_learn(int i, const Model& model, const Corpus& corpus, const DualSpec& spec, const Streams& streams) {
  return detail::dual_learn(i, model, corpus, spec.baio, spec.caio, streams);
}

inline Result dual_infer(const Prompt& prompt, const Context& context, const Model& model, const DualSpec& spec) {
  return detail::dual_infer(prompt, context, model, spec.baio, spec.caio);
}

inline DualSpec make_dual(OracleSpec baio, OracleSpec caio, std::string tag = "dual") {
  baio.validate();
  caio.validate();
  DualSpec spec{std::move(baio), std::move(caio), {}};
  auto parts = std::make_shared<const std::pair<OracleSpec, OracleSpec>>(spec.baio, spec.caio);
  spec.composed.tag = std::move(tag);
  for (int i = 1; i <= spec.rounds(); ++i) {
    spec.composed.generators.push_back([parts, i](const SourceSet& source, const Streams& streams) {
      return detail::dual_generate(i, source, parts->first, parts->second, streams);
    });
    spec.composed.learners.push_back([parts, i](const Model& model, const Corpus& corpus, const Streams& streams) {
      return detail::dual_learn(i, model, corpus, parts->first, parts->second, streams);
    });
  }
  spec.composed.infer = [parts](const Prompt& p, const Context& c, const Model& m) {
    return detail::dual_infer(p, c, m, parts->first, parts->second);
  };
  return spec;
}

// Predicates of a dual scenario: phi = phi1 (harmlessness, decided by the BAIO) AND
// phi2 (usefulness, the CAIO's problem); psi = psi1 on BAIO rounds OR psi2 on CAIO
// rounds.
struct DualPredicates {
  PredicatePhi phi1;
  PredicatePhi phi2;
  PredicatePsi psi1;
  PredicatePsi psi2;

  PredicatePhi phi() const { return PredicatePhi::conjunction("phi1&phi2", {phi1, phi2}); }
  PredicatePhi baio_phi() const { return decisional_lift(phi1); }
  const PredicatePhi& caio_phi() const { return phi2; }
  PredicatePsi psi(int r1, int r2) const { return psi_disjunction(psi1, psi2, r1, r2); }
};

}  // namespace aigame
