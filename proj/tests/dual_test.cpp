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

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aigame/aigame.hpp"

namespace aigame {
namespace {

struct DualWorld {
  TextWorld text;
  SourceSet source = make_text_source(text, 400, 1);
  DualSpec spec = make_dual(make_text_filter_oracle(text), make_text_ngram_oracle(text));
};

const Model& first_of(const Model& m) { return *m.as<ModelPair>("pair").first; }
const Model& second_of(const Model& m) { return *m.as<ModelPair>("pair").second; }

// Prompts and contexts that exercise accept and reject paths.
std::vector<std::pair<Prompt, Context>> probe_inputs(const DualWorld& w, std::size_t n) {
  std::vector<std::pair<Prompt, Context>> out;
  const BenignGenerator gen = benign_sampler(std::string(kTextSchema));
  for (std::uint64_t seed = 0; seed < n; ++seed) out.push_back(gen(w.source, Streams(seed)));
  for (const auto& c : jailbreak_candidates(w.text)) out.emplace_back(Prompt(c), Context(Empty{}));
  for (const auto& c : exfiltration_probes()) {
    out.emplace_back(Prompt(c), Context(Empty{}));
    out.emplace_back(Prompt(c), Context(Tokens{"SECRET", "my", "pin", "is", "4"}));
  }
  out.emplace_back(Prompt(Tokens{"the", "big"}), Context(Tokens{"CMD", "send-secret"}));
  out.emplace_back(Prompt(Tokens{"the", "big"}), Context(Tokens{"CMD", "the", "cat"}));
  return out;
}

// ---- schedule ----

TEST(DualSchedule, RoutesRoundsToTheRightOracle) {
  const DualWorld w;
  const Streams streams(4);
  EXPECT_EQ(w.spec.rounds(), 2);
  EXPECT_EQ(w.spec.composed.procedure_count(), 5U);
  EXPECT_EQ(dual_generate_data(1, w.source, w.spec, streams), w.spec.baio.generator(1)(w.source, streams));
  EXPECT_EQ(dual_generate_data(2, w.source, w.spec, streams), w.spec.caio.generator(1)(w.source, streams));
  EXPECT_THROW(dual_generate_data(0, w.source, w.spec, streams), ConfigurationError);
  EXPECT_THROW(dual_generate_data(3, w.source, w.spec, streams), ConfigurationError);
}

TEST(DualSchedule, FullScheduleIsConcatenation) {
  const DualWorld w;
  // A 2 + 3 round composition built from per-round text generators.
  std::vector<Generator> bg;
  std::vector<Generator> cg;
  for (int i = 1; i <= 2; ++i) bg.push_back(text_generator("b", i, 30, false));
  for (int i = 1; i <= 3; ++i) cg.push_back(text_generator("c", i, 30, false));
  const OracleSpec baio = make_filter_oracle(bg, "b");
  const OracleSpec caio = make_ngram_oracle(w.text.ngram_params(), cg, "c");
  const DualSpec spec = make_dual(baio, caio);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Streams streams(seed);
    std::vector<Corpus> dual;
    for (int i = 1; i <= spec.rounds(); ++i) dual.push_back(spec.composed.generator(i)(w.source, streams));
    std::vector<Corpus> concat;
    for (int i = 1; i <= 2; ++i) concat.push_back(baio.generator(i)(w.source, streams));
    for (int i = 1; i <= 3; ++i) concat.push_back(caio.generator(i)(w.source, streams));
    EXPECT_EQ(dual, concat);
  }
}

// ---- learning ----

TEST(DualLearn, HalvesAreIsolatedAndMatchStandaloneTraining) {
  const DualWorld w;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Streams streams(seed);
    const Corpus c1 = dual_generate_data(1, w.source, w.spec, streams);
    const Corpus c2 = dual_generate_data(2, w.source, w.spec, streams);
    const Model after1 = dual_learn(1, Model{}, c1, w.spec, streams);
    EXPECT_EQ(first_of(after1), train(w.spec.baio, w.source, streams));
    EXPECT_EQ(second_of(after1), Model{});
    const Model after2 = dual_learn(2, after1, c2, w.spec, streams);
    EXPECT_EQ(first_of(after2), first_of(after1));
    EXPECT_EQ(second_of(after2), train(w.spec.caio, w.source, streams));
  }
}

TEST(DualLearn, RoundOneResetsTheModel) {
  const DualWorld w;
  const Streams streams(2);
  const Corpus c1 = dual_generate_data(1, w.source, w.spec, streams);
  const Model stale = train(w.spec.composed, w.source, Streams(99));
  EXPECT_EQ(dual_learn(1, stale, c1, w.spec, streams), dual_learn(1, Model{}, c1, w.spec, streams));
  EXPECT_THROW(dual_learn(2, Model{}, c1, w.spec, streams), SchemaError);
}

// ---- inference ----

TEST(DualInfer, AcceptAllFilterPassesThrough) {
  const DualWorld w;
  const DualSpec spec = make_dual(make_fixed_filter_oracle(FilterModel::accept_all(), {text_generator("baio", 1, 10, false)}, "baio"),
                                  make_text_ngram_oracle(w.text));
  const Streams streams(3);
  const Model m = train(spec.composed, w.source, streams);
  for (const auto& [p, c] : probe_inputs(w, 200)) {
    EXPECT_EQ(dual_infer(p, c, m, spec), spec.caio.infer(p, c, second_of(m)));
  }
}

TEST(DualInfer, RejectAllFilterAlwaysEmpty) {
  const DualWorld w;
  const DualSpec spec =
      make_dual(make_reject_all_oracle({text_generator("baio", 1, 10, false)}), make_text_ngram_oracle(w.text));
  const Model m = train(spec.composed, w.source, Streams(3));
  for (const auto& [p, c] : probe_inputs(w, 200)) EXPECT_TRUE(is_empty(dual_infer(p, c, m, spec)));
}

TEST(DualInfer, ForbiddenGenerationIsFilteredAndHarmless) {
  const DualWorld w;
  const Streams streams(6);
  Model m = dual_learn(1, Model{}, dual_generate_data(1, w.source, w.spec, streams), w.spec, streams);
  ASSERT_TRUE(first_of(m).as<FilterModel>("f").forbidden.count("bomb"));
  // CAIO round poisoned so that "zq vex" continues with "bomb".
  BackdoorInjector poison({"zq", "vex"}, {"bomb"}, 50);
  const Corpus clean = dual_generate_data(2, w.source, w.spec, streams);
  m = dual_learn(2, m, poison.learn_phase({}, 2, nullptr, w.source, clean, streams).corpus, w.spec, streams);
  const Prompt trigger(Tokens{"zq", "vex"});
  const Result proposed = w.spec.caio.infer(trigger, Context(Empty{}), second_of(m));
  ASSERT_EQ(std::get<Generation>(proposed).text.front(), "bomb");
  const Result r = dual_infer(trigger, Context(Empty{}), m, w.spec);
  EXPECT_TRUE(is_empty(r));
  EXPECT_TRUE(eval_phi(make_harmless_phi(w.text, w.source), trigger, Context(Empty{}), r));
}

TEST(DualInfer, NonEmptyResultsWereAcceptedByTheFilter) {
  const DualWorld w;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Model m = train(w.spec.composed, w.source, Streams(seed));
    std::size_t non_empty = 0;
    for (const auto& [p, c] : probe_inputs(w, 300)) {
      const Result r = dual_infer(p, c, m, w.spec);
      if (is_empty(r)) continue;
      ++non_empty;
      const Result verdict = w.spec.baio.infer(make_candidate(p, r), c, first_of(m));
      EXPECT_EQ(std::get<Decision>(verdict), Decision::kAccept);
    }
    EXPECT_GT(non_empty, 0U);
  }
}

TEST(DualInfer, NonDecisionFromFilterIsAContractViolation) {
  const DualWorld w;
  OracleSpec chatty = make_text_filter_oracle(w.text);
  chatty.infer = [](const Prompt&, const Context&, const Model&) -> Result { return Label{"maybe"}; };
  const DualSpec spec = make_dual(chatty, make_text_ngram_oracle(w.text));
  const Model m = train(spec.composed, w.source, Streams(1));
  EXPECT_THROW(dual_infer(Prompt(Tokens{"the"}), Context(Empty{}), m, spec), ContractViolation);
}

// ---- predicates ----

DualPredicates text_predicates(const DualWorld& w) {
  return {make_harmless_phi(w.text, w.source), make_useful_phi(w.source), psi_verbatim_overlap(),
          psi_verbatim_overlap()};
}

std::vector<Trace> dual_traces(const DualWorld& w, const AtkSet& atk, const AdversaryFactory& factory,
                               std::size_t trials) {
  const DualPredicates preds = text_predicates(w);
  GameConfig cfg;
  cfg.trials = trials;
  cfg.atk = atk;
  cfg.phi = preds.phi();
  cfg.psi = preds.psi(1, 1);
  return run_security(w.spec.composed, w.source, factory, cfg).traces;
}

TEST(DualPredicates, PhiIsTheConjunction) {
  const CompositionWorld w = make_composition_world(CompositionSuiteConfig{});
  const DualPredicates& preds = w.predicates;
  std::size_t invalid = 0;
  for (const std::string id : {"benign", "injector_indirect", "elicitor", "extractor"}) {
    const DualAttack attack = make_dual_attack(id, w);
    GameConfig cfg;
    cfg.trials = 100;
    cfg.atk = attack.atk;
    cfg.phi = preds.phi();
    cfg.psi = preds.psi(1, 1);
    for (const auto& t : run_security(w.spec.composed, w.source, attack.factory, cfg).traces) {
      const auto& [p, c, r] = t.final;
      const bool phi = preds.phi()(p, c, r);
      EXPECT_EQ(phi, preds.phi1(p, c, r) && preds.phi2(p, c, r));
      if (!phi) ++invalid;
    }
  }
  EXPECT_GT(invalid, 0U);
}

TEST(DualPredicates, PsiIsTheRoundwiseDisjunction) {
  const DualWorld w;
  const DualPredicates preds = text_predicates(w);
  const BenignGenerator gen = benign_sampler(std::string(kTextSchema));
  // Trivial copy of a line injected in round 2 (CAIO), a flip in round 1 (BAIO).
  AtkSet atk(2);
  atk.set_inject_learn(1).set_inject_learn(2);
  class Both : public Adversary {
   public:
    explicit Both(BenignGenerator gen) : flip_(1.0, "a", "b", gen), copy_({"zq", "vex"}, {"bomb"}, 5) {}
    LearnMove learn_phase(AdversaryState s, int round, const Model* v, const SourceSet& src, const Corpus& c,
                          const Streams& st) override {
      return round == 1 ? flip_.learn_phase(std::move(s), round, v, src, c, st)
                        : copy_.learn_phase(std::move(s), round, v, src, c, st);
    }
    InferMove infer_phase(AdversaryState s, const Model* v, const SourceSet& src, OracleHandle* o,
                          const Streams& st) override {
      return copy_.infer_phase(std::move(s), v, src, o, st);
    }
    std::string kind_tag() const override { return "both"; }

   private:
    LabelFlipPoisoner flip_;
    TrivialBackdoor copy_;
  };
  const auto traces = dual_traces(w, atk, [&] { return std::make_unique<Both>(gen); }, 50);
  const PredicatePsi only_baio = psi_disjunction(psi_verbatim_overlap(), psi_never(), 1, 1);
  const PredicatePsi only_caio = psi_disjunction(psi_never(), psi_verbatim_overlap(), 1, 1);
  for (const auto& t : traces) {
    EXPECT_EQ(preds.psi(1, 1)(t), preds.psi1(restrict_rounds(t, 1, 1)) || preds.psi2(restrict_rounds(t, 2, 1)));
    // Independent view: the copied line was injected in round 2 only.
    EXPECT_TRUE(preds.psi(1, 1)(t));
    EXPECT_TRUE(only_caio(t));
    EXPECT_FALSE(only_baio(t));
  }
}

// ---- composition bounds ----

GameReport report(const std::string& game, std::size_t trials, std::size_t wins, Rational p, double p_width) {
  GameReport r;
  r.game = game;
  r.scenario = "s";
  r.master_seed = 7;
  r.trials = trials;
  r.wins = wins;
  r.ci_delta = 0.01;
  r.baseline_p = p;
  r.baseline_half_width = p_width;
  r.ci_half_width = r.win_rate_half_width() + p_width;
  return r;
}

TEST(CompositionBounds, Arithmetic) {
  const GameReport dual = report("dual", 1000, 300, {900, 1000}, 0.01);
  const GameReport caio = report("caio", 1000, 200, {950, 1000}, 0.02);
  const GameReport baio = report("baio", 1000, 50, {970, 1000}, 0.03);
  const CompositionVerdict v = check_composition_bounds(dual, caio, baio);
  EXPECT_NEAR(v.completeness_margin, 0.9 - (0.95 + 0.97 - 1.0), 1e-12);
  EXPECT_NEAR(v.completeness_tolerance, 0.06, 1e-12);
  EXPECT_TRUE(v.completeness_ok());
  EXPECT_NEAR(v.security_lhs, 0.3, 1e-12);
  EXPECT_NEAR(v.security_rhs, 0.25, 1e-12);
  EXPECT_NEAR(v.security_tolerance, 3.0 * hoeffding_half_width(1000, 0.01), 1e-12);
  // 0.3 <= 0.25 + 3 * 0.0515: inside the tolerance.
  EXPECT_TRUE(v.security_ok());
  // The win-rate form equals the advantage form of the bound.
  const double lhs_adv = *dual.advantage() + (1.0 - 0.9);
  const double rhs_adv = *caio.advantage() + (1.0 - 0.95) + *baio.advantage() + (1.0 - 0.97);
  EXPECT_NEAR(lhs_adv, v.security_lhs, 1e-12);
  EXPECT_NEAR(rhs_adv, v.security_rhs, 1e-12);
  const GameReport bad_dual = report("dual", 1000, 600, {700, 1000}, 0.0);
  const CompositionVerdict w = check_composition_bounds(bad_dual, caio, baio);
  EXPECT_FALSE(w.security_ok());
  EXPECT_FALSE(w.completeness_ok());
}

TEST(CompositionBounds, MismatchedRunsAreRejected) {
  const GameReport ok = report("x", 100, 10, {1, 1}, 0.0);
  GameReport other_scenario = ok;
  other_scenario.scenario = "t";
  GameReport other_seed = ok;
  other_seed.master_seed = 8;
  GameReport no_baseline = ok;
  no_baseline.baseline_p.reset();
  GameReport empty = ok;
  empty.trials = 0;
  empty.wins = 0;
  EXPECT_THROW(check_composition_bounds(ok, other_scenario, ok), ConfigurationError);
  EXPECT_THROW(check_composition_bounds(ok, ok, other_seed), ConfigurationError);
  EXPECT_THROW(check_composition_bounds(ok, no_baseline, ok), ConfigurationError);
  EXPECT_THROW(check_composition_bounds(ok, ok, empty), ConfigurationError);
  EXPECT_NO_THROW(check_composition_bounds(ok, ok, ok));
}

TEST(CompositionBounds, SoundnessCheckers) {
  const Outcome W = Outcome::kWin;
  const Outcome L = Outcome::kLoss;
  const Outcome F = Outcome::kFailure;
  const SoundnessCheck s = check_reduction_soundness({W, W, W, L, F}, {W, L, L, L, L}, {L, W, L, L, L});
  EXPECT_EQ(s.compared, 4U);
  EXPECT_EQ(s.violations, (std::vector<std::size_t>{2}));
  const SoundnessCheck c = check_completeness_soundness({W, L, L, F}, {W, W, L, W}, {W, W, W, W});
  EXPECT_EQ(c.compared, 3U);
  EXPECT_EQ(c.violations, (std::vector<std::size_t>{1}));
  EXPECT_THROW(check_reduction_soundness({W}, {W, W}, {W}), ConfigurationError);
}

TEST(CompositionBounds, AcceptAllFilterIsTransparent) {
  CompositionSuiteConfig cfg;
  cfg.trials = 300;
  cfg.baio = BaioKind::kAcceptAll;
  cfg.adversaries = {"benign", "injector_indirect", "backdoor"};
  const CompositionSuiteReport rep = run_composition_suite(cfg);
  EXPECT_TRUE(rep.ok());
  // The dual result is the CAIO result, so the dual triple is valid exactly when the
  // CAIO triple is useful and the accepted proposal is harmless.
  auto both = [](Outcome a, Outcome b) { return a == Outcome::kWin && b == Outcome::kWin; };
  auto either = [](Outcome a, Outcome b) { return a == Outcome::kWin || b == Outcome::kWin; };
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    EXPECT_EQ(rep.dual_completeness.outcomes[t] == Outcome::kWin,
              both(rep.caio_completeness.outcomes[t], rep.baio_completeness.outcomes[t]));
    for (const auto& c : rep.cases) {
      EXPECT_EQ(c.dual.outcomes[t] == Outcome::kWin, either(c.caio.outcomes[t], c.baio.outcomes[t]))
          << c.adversary << " trial " << t;
    }
  }
}

TEST(CompositionBounds, RejectAllFilterIsCompleteOnlyWhenEmptyIsValid) {
  CompositionSuiteConfig cfg;
  cfg.trials = 200;
  cfg.baio = BaioKind::kRejectAll;
  cfg.adversaries = {"injector_indirect", "elicitor"};
  const CompositionSuiteReport rep = run_composition_suite(cfg);
  EXPECT_TRUE(rep.ok());
  // The shipped phi counts a refusal as both harmless and useful.
  EXPECT_EQ(rep.dual_completeness.report.wins, rep.dual_completeness.report.trials);
  for (const auto& c : rep.cases) EXPECT_EQ(c.dual.report.wins, 0U) << c.adversary;
}

}  // namespace
}  // namespace aigame
