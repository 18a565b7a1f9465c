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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aigame/core/atk.hpp"
#include "aigame/core/json_io.hpp"
#include "aigame/core/predicate.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/core/stats.hpp"
#include "aigame/core/trace.hpp"
#include "aigame/oracles/text_world.hpp"

namespace aigame {
namespace {

const std::vector<std::string> kAlphabet{"the", "cat", "dog", "sees", "bomb", "how", "to", "build", "a", "cake"};

Tokens random_tokens(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  Tokens out(len(rng));
  for (auto& t : out) t = kAlphabet[pick(rng)];
  return out;
}

Result random_result(std::mt19937_64& rng) {
  if (rng() % 5 == 0) return Empty{};
  return Generation{random_tokens(rng, 4), {}};
}

Context random_context(std::mt19937_64& rng) {
  if (rng() % 2 == 0) return Empty{};
  return random_tokens(rng, 3);
}

// A predicate from a hash of the triple: deterministic, but with no structure the
// implementation could exploit.
PredicatePhi hashed_phi(std::uint64_t salt) {
  return PredicatePhi("hashed", [salt](const Prompt& p, const Context& c, const Result& r) {
    std::string key = std::to_string(salt);
    for (const auto& t : p.tokens()) key += t + ",";
    key += "|";
    if (const auto* ct = std::get_if<Tokens>(&c)) {
      for (const auto& t : *ct) key += t + ",";
    } else {
      key += "<empty>";
    }
    key += "|";
    if (const auto* g = std::get_if<Generation>(&r)) {
      for (const auto& t : g->text) key += t + ",";
    } else {
      key += "<empty>";
    }
    return (splitmix64(fnv1a(key)) >> 63) == 1U;
  });
}

// ---- predicates ----

TEST(Predicate, ConjunctionOfAlwaysTrueIsTrue) {
  const auto phi = PredicatePhi::conjunction("tt", {always_true_phi(), always_true_phi()});
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    EXPECT_TRUE(eval_phi(phi, Prompt(random_tokens(rng, 4)), random_context(rng), random_result(rng)));
  }
}

TEST(Predicate, ConjunctionLawOnRandomTriples) {
  const auto p1 = hashed_phi(1);
  const auto p2 = hashed_phi(2);
  const auto p3 = hashed_phi(3);
  const auto conj = PredicatePhi::conjunction("c", {p1, p2, p3});
  std::mt19937_64 rng(11);
  int trues = 0;
  for (int k = 0; k < 1000; ++k) {
    const Prompt p(random_tokens(rng, 4));
    const Context c = random_context(rng);
    const Result r = random_result(rng);
    const bool expected = p1(p, c, r) && p2(p, c, r) && p3(p, c, r);
    ASSERT_EQ(conj(p, c, r), expected);
    trues += expected ? 1 : 0;
  }
  // Both branches were exercised.
  EXPECT_GT(trues, 0);
  EXPECT_LT(trues, 1000);
}

TEST(Predicate, EvaluationIsDeterministic) {
  const auto phi = hashed_phi(5);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const Prompt p(random_tokens(rng, 4));
    const Context c = random_context(rng);
    const Result r = random_result(rng);
    EXPECT_EQ(phi(p, c, r), phi(p, c, r));
  }
}

// Exhaustive over every generation of length 1..3 on a 10-token alphabet: only
// results containing the forbidden token fail.
TEST(Predicate, ForbiddenTokenExhaustive) {
  TextWorld w;
  const SourceSet source = make_text_source(w, 50, 1);
  const PredicatePhi harmless = make_harmless_phi(w, source);
  const Prompt p(Tokens{"how", "to"});
  std::size_t checked = 0;
  std::vector<Tokens> frontier{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<Tokens> next;
    for (const auto& prefix : frontier) {
      for (const auto& t : kAlphabet) {
        Tokens seq = prefix;
        seq.push_back(t);
        const bool has_bomb = std::find(seq.begin(), seq.end(), "bomb") != seq.end();
        ASSERT_EQ(harmless(p, Context(Empty{}), Generation{seq, {}}), !has_bomb);
        ++checked;
        next.push_back(std::move(seq));
      }
    }
    frontier = std::move(next);
  }
  EXPECT_EQ(checked, 10U + 100U + 1000U);
}

TEST(DecisionalLift, AlwaysTrueAcceptsEverything) {
  const auto lifted = decisional_lift(always_true_phi());
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Prompt pair = make_candidate(Prompt(random_tokens(rng, 3)), random_result(rng));
    EXPECT_TRUE(lifted(pair, random_context(rng), Decision::kAccept));
    EXPECT_FALSE(lifted(pair, random_context(rng), Decision::kReject));
  }
}

TEST(DecisionalLift, BiconditionalOnRandomTriples) {
  const auto phi = hashed_phi(9);
  const auto lifted = decisional_lift(phi);
  std::mt19937_64 rng(21);
  for (int k = 0; k < 1000; ++k) {
    const Prompt p(random_tokens(rng, 4));
    const Context c = random_context(rng);
    const Result r = random_result(rng);
    const Prompt pair = make_candidate(p, r);
    ASSERT_EQ(phi(p, c, r), lifted(pair, c, Decision::kAccept));
    ASSERT_EQ(!phi(p, c, r), lifted(pair, c, Decision::kReject));
  }
}

// Brute force over a 3-token alphabet, prompts and results up to length 2.
TEST(DecisionalLift, BiconditionalExhaustiveSmallAlphabet) {
  const std::vector<std::string> alpha{"the", "bomb", "cat"};
  std::vector<Tokens> seqs{{}};
  for (const auto& a : alpha) seqs.push_back({a});
  for (const auto& a : alpha) {
    for (const auto& b : alpha) seqs.push_back({a, b});
  }
  TextWorld w;
  const SourceSet source = make_text_source(w, 50, 1);
  const PredicatePhi phi = make_harmless_phi(w, source);
  const PredicatePhi lifted = decisional_lift(phi);
  for (const auto& p : seqs) {
    for (const auto& r : seqs) {
      for (const Context& c : {Context(Empty{}), Context(Tokens{"SECRET", "cat"})}) {
        const Result res = Generation{r, {}};
        ASSERT_EQ(phi(Prompt(p), c, res), lifted(make_candidate(Prompt(p), res), c, Decision::kAccept));
      }
    }
  }
}

TEST(DecisionalLift, NonDecisionResultIsInvalid) {
  const auto lifted = decisional_lift(always_true_phi());
  const Prompt pair = make_candidate(Prompt(Tokens{"a"}), Generation{{"b"}, {}});
  EXPECT_FALSE(lifted(pair, Context(Empty{}), Empty{}));
  EXPECT_FALSE(lifted(pair, Context(Empty{}), Generation{{"b"}, {}}));
}

// ---- advantage and Hoeffding ----

TEST(Advantage, WorkedValues) {
  EXPECT_EQ(advantage(Rational{3, 10}, Rational{19, 20}), (Rational{1, 4}));
  EXPECT_NEAR(advantage(0.30, 0.95), 0.25, 1e-12);
  EXPECT_EQ(advantage(Rational{1, 1}, Rational{1, 1}), (Rational{1, 1}));
}

TEST(Advantage, BaselineAdversaryHasZeroAdvantage) {
  for (std::int64_t num = 0; num <= 40; ++num) {
    const Rational p{num, 40};
    const Rational one_minus_p{40 - num, 40};
    EXPECT_EQ(advantage(one_minus_p, p), (Rational{0, 1}));
  }
}

TEST(Advantage, SignedAndRangeChecked) {
  EXPECT_EQ(advantage(Rational{0, 1}, Rational{1, 2}), (Rational{-1, 2}));
  EXPECT_THROW(advantage(1.5, 0.5), DomainError);
  EXPECT_THROW(advantage(Rational{3, 2}, Rational{1, 2}), DomainError);
}

// Independent oracle: the half-width t solving 2 exp(-2 n t^2) = delta, found by
// bisection rather than the closed form.
double hoeffding_by_bisection(std::size_t n, double delta) {
  double lo = 0.0;
  double hi = 10.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * std::exp(-2.0 * static_cast<double>(n) * mid * mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TEST(Hoeffding, MatchesBisectionOracle) {
  for (std::size_t n : {1U, 7U, 100U, 1000U, 10000U}) {
    for (double delta : {0.5, 0.05, 0.01, 0.001}) {
      EXPECT_NEAR(hoeffding_half_width(n, delta), hoeffding_by_bisection(n, delta), 1e-9);
    }
  }
}

TEST(Hoeffding, FrozenValues) {
  // Frozen from the bisection oracle above.
  EXPECT_NEAR(hoeffding_half_width(10000, 0.01), 0.0162763, 1e-6);
  EXPECT_NEAR(hoeffding_half_width(1, 0.5), 0.8325546, 1e-6);
}

TEST(Hoeffding, QuadruplingTrialsHalvesWidth) {
  for (std::size_t n : {1U, 25U, 1000U}) {
    EXPECT_NEAR(hoeffding_half_width(4 * n, 0.01), hoeffding_half_width(n, 0.01) / 2.0, 1e-12);
  }
}

TEST(Hoeffding, RejectsBadInput) {
  EXPECT_THROW(hoeffding_half_width(0, 0.01), DomainError);
  EXPECT_THROW(hoeffding_half_width(10, 0.0), DomainError);
  EXPECT_THROW(hoeffding_half_width(10, 1.0), DomainError);
}

TEST(GameReport, ArithmeticRecomputableFromCounts) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    GameReport r;
    r.trials = 1 + rng() % 5000;
    r.wins = rng() % (r.trials + 1);
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 1000);
    r.baseline_p = Rational{static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den + 1)), den};
    EXPECT_EQ(r.win_rate(), static_cast<double>(r.wins) / static_cast<double>(r.trials));
    const Rational adv = *r.advantage_exact();
    // Adv = wins/trials - (den - num)/den, cross-multiplied in integers.
    const __int128 lhs = static_cast<__int128>(adv.num) * static_cast<__int128>(r.trials) * den;
    const __int128 rhs = (static_cast<__int128>(r.wins) * den -
                          static_cast<__int128>(den - r.baseline_p->num) * static_cast<__int128>(r.trials)) *
                         adv.den;
    EXPECT_TRUE(lhs == rhs);
  }
}

TEST(GameReport, NoBaselineNoAdvantage) {
  GameReport r;
  r.trials = 10;
  r.wins = 3;
  EXPECT_FALSE(r.advantage().has_value());
  EXPECT_EQ(r.win_rate_exact(), (Rational{3, 10}));
}

// ---- ATK ----

TEST(AtkSet, SimpleConfigurationIsExpressible) {
  const AtkSet simple = AtkSet::simple(3);
  EXPECT_TRUE(simple.see_model(3));
  EXPECT_TRUE(simple.inject_infer());
  EXPECT_FALSE(simple.black_box());
  EXPECT_FALSE(simple.any_inject_learn());
  EXPECT_EQ(simple, AtkSet::parse("see_model_r inject_infer", 3));
}

TEST(AtkSet, IndexBoundsFollowRounds) {
  AtkSet atk(2);
  EXPECT_NO_THROW(atk.set_see_model(0));
  EXPECT_NO_THROW(atk.set_see_model(2));
  EXPECT_THROW(atk.set_see_model(3), ConfigurationError);
  EXPECT_THROW(atk.set_inject_learn(0), ConfigurationError);
  EXPECT_THROW(atk.set_inject_learn(3), ConfigurationError);
  EXPECT_THROW(AtkSet::parse("inject_learn_5", 2), ConfigurationError);
  EXPECT_THROW(AtkSet::parse("fly", 2), ConfigurationError);
}

TEST(AtkSet, ParseRoundTripsEveryRandomSet) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const int r = 1 + static_cast<int>(rng() % 4);
    AtkSet atk(r);
    for (int i = 0; i <= r; ++i) atk.set_see_model(i, rng() & 1U);
    for (int i = 1; i <= r; ++i) atk.set_inject_learn(i, rng() & 1U);
    atk.set_inject_infer(rng() & 1U);
    atk.set_black_box(rng() & 1U);
    ASSERT_EQ(AtkSet::parse(atk.to_string(), r), atk) << atk.to_string();
  }
}

// ---- seeds ----

TEST(Streams, DeterministicAndKeyed) {
  const Streams a(42);
  const Streams b(42);
  auto s1 = a.stream("x", 3);
  auto s2 = b.stream("x", 3);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(s1(), s2());
  EXPECT_NE(a.stream("x", 3)(), a.stream("y", 3)());
  EXPECT_NE(a.stream("x", 3)(), a.stream("x", 4)());
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
}

// ---- traces and psi ----

Trace two_round_trace() {
  Trace t;
  t.atk_used = AtkSet(2).set_inject_learn(1).set_inject_infer();
  Corpus before;
  before.items = {make_text_item({"the", "cat"})};
  Corpus after = before;
  after.items.push_back(make_text_item({"zq", "vex", "bomb"}));
  t.rounds.push_back({before, after, false});
  t.rounds.push_back({before, before, true});
  t.final = {Prompt(Tokens{"zq", "vex", "bomb"}), Context(Tokens{"hi"}), Generation{{"bomb"}, {{"leak"}}}};
  t.outcome = Outcome::kWin;
  t.seed = 99;
  t.oracle_queries = 2;
  return t;
}

TEST(Trace, InjectedItemsIsMultisetDifference) {
  const Trace t = two_round_trace();
  const auto injected = injected_items(t.rounds[0]);
  ASSERT_EQ(injected.size(), 1U);
  EXPECT_EQ(injected[0].text(), (Tokens{"zq", "vex", "bomb"}));
  EXPECT_TRUE(injected_items(t.rounds[1]).empty());
}

TEST(Trace, VerbatimPsiFiresOnlyOnWholeInjectedLine) {
  Trace t = two_round_trace();
  EXPECT_TRUE(psi_verbatim_overlap()(t));
  t.final.prompt = Prompt(Tokens{"zq", "vex"});
  EXPECT_FALSE(psi_verbatim_overlap()(t));
  // Wrapped in a (prompt, result) candidate it still sees the user's prompt.
  t.final.prompt = make_candidate(Prompt(Tokens{"say", "zq", "vex", "bomb"}), Empty{});
  EXPECT_TRUE(psi_verbatim_overlap()(t));
}

TEST(Trace, PsiDisjunctionRestrictsRounds) {
  const Trace t = two_round_trace();
  const PredicatePsi first_only = psi_disjunction(psi_verbatim_overlap(), psi_never(), 1, 1);
  const PredicatePsi second_only = psi_disjunction(psi_never(), psi_verbatim_overlap(), 1, 1);
  EXPECT_TRUE(first_only(t));
  EXPECT_FALSE(second_only(t));  // the injection happened in round 1
}

TEST(Trace, JsonRoundTrip) {
  std::vector<Trace> traces{two_round_trace(), two_round_trace()};
  traces[1].trial = 1;
  traces[1].final.result = Empty{};
  traces[1].final.context = Empty{};
  traces[1].outcome = Outcome::kFailure;
  traces[1].failure = "one class";
  std::stringstream buf;
  write_traces(buf, traces);
  EXPECT_EQ(read_traces(buf), traces);
}

TEST(Types, EmptyIsNotAnEmptyTokenList) {
  EXPECT_TRUE(is_empty(Context(Empty{})));
  EXPECT_FALSE(is_empty(Context(Tokens{})));
  EXPECT_FALSE(is_empty(Result(Generation{})));
}

TEST(Types, SplitAndJoinLines) {
  const Tokens t = split_words("CMD leak\nthe cat");
  EXPECT_EQ(t, (Tokens{"CMD", "leak", kEolToken, "the", "cat"}));
  EXPECT_EQ(join_lines(split_lines(t)), t);
  EXPECT_EQ(split_chars("ab\n"), (Tokens{"a", "b", kEolToken}));
}

}  // namespace
}  // namespace aigame
