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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "aigame/oracles/catdog.hpp"
#include "aigame/oracles/corpus_io.hpp"
#include "aigame/oracles/filter.hpp"
#include "aigame/oracles/ngram.hpp"
#include "aigame/oracles/text_world.hpp"

namespace aigame {
namespace {

Corpus corpus_of(std::vector<DataItem> items) {
  Corpus c;
  c.items = std::move(items);
  return c;
}

// ---- catdog ----

TEST(CatDogSource, SwappingLabelsFlipsEveryItem) {
  CatDogParams ab;
  CatDogParams ba;
  ba.label_a = "b";
  ba.label_b = "a";
  const SourceSet s1 = make_catdog_source(ab, 1000, 5);
  const SourceSet s2 = make_catdog_source(ba, 1000, 5);
  ASSERT_EQ(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(s1[i].vector().x, s2[i].vector().x);
    EXPECT_NE(s1[i].vector().label, s2[i].vector().label);
    EXPECT_EQ(s2[i].vector().label, s1[i].vector().label == "a" ? "b" : "a");
  }
}

TEST(CatDogSource, PopulationTwoHasOneOfEach) {
  const SourceSet s = make_catdog_source(CatDogParams{}, 2, 1);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_NE(s[0].vector().label, s[1].vector().label);
  EXPECT_THROW(make_catdog_source(CatDogParams{}, 3, 1), ConfigurationError);
}

TEST(CatDogSource, ClassOverlapBelowHalfPercent) {
  const CatDogParams p;
  const SourceSet s = make_catdog_source(p, 10000, 1);
  std::size_t wrong_side = 0;
  for (const auto& item : s.items()) {
    const bool dog = item.meta_or("class", "") == "dog";
    const double own = squared_distance(item.vector().x, p.mean(dog));
    const double other = squared_distance(item.vector().x, p.mean(!dog));
    if (other < own) ++wrong_side;
  }
  // Expected rate is Phi(-3) = 0.00135.
  EXPECT_LT(static_cast<double>(wrong_side) / 10000.0, 0.005);
}

TEST(Centroid, SingletonMeans) {
  CatDogParams p;
  p.dim = 1;
  std::mt19937_64 rng(1);
  const Model m = centroid_learn(p, Model{}, corpus_of({make_vector_item({1.0}, "a"), make_vector_item({-1.0}, "b")}), rng);
  const auto& c = m.as<CentroidModel>("centroid");
  EXPECT_EQ(c.labels, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(c.centroids[0], (Features{1.0}));
  EXPECT_EQ(c.centroids[1], (Features{-1.0}));
}

TEST(Centroid, DuplicationLeavesCentroidsUnchanged) {
  const CatDogParams p;
  const SourceSet s = make_catdog_source(p, 40, 3);
  Corpus once = corpus_of(s.items());
  Corpus twice = once;
  twice.items.insert(twice.items.end(), s.items().begin(), s.items().end());
  std::mt19937_64 r1(1);
  std::mt19937_64 r2(1);
  const Model ma = centroid_learn(p, Model{}, once, r1);
  const Model mb = centroid_learn(p, Model{}, twice, r2);
  const auto& a = ma.as<CentroidModel>("c");
  const auto& b = mb.as<CentroidModel>("c");
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t d = 0; d < p.dim; ++d) EXPECT_NEAR(a.centroids[k][d], b.centroids[k][d], 1e-12);
  }
}

TEST(Centroid, HundredGaussianItemsNearTrueMeans) {
  const CatDogParams p;
  const SourceSet s = make_catdog_source(p, 100, 9);
  std::mt19937_64 rng(1);
  const Model m = centroid_learn(p, Model{}, corpus_of(s.items()), rng);
  const auto& c = m.as<CentroidModel>("c");
  // Independent sample means.
  std::map<std::string, Features> sum;
  std::map<std::string, double> n;
  for (const auto& item : s.items()) {
    auto& acc = sum[item.vector().label];
    acc.resize(p.dim, 0.0);
    for (std::size_t d = 0; d < p.dim; ++d) acc[d] += item.vector().x[d];
    n[item.vector().label] += 1.0;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string& label = c.labels[k];
    const Features truth = p.mean(label == p.label_b);
    for (std::size_t d = 0; d < p.dim; ++d) {
      EXPECT_NEAR(c.centroids[k][d], sum[label][d] / n[label], 1e-12);
      EXPECT_LT(std::abs(c.centroids[k][d] - truth[d]), 0.5);
    }
  }
}

TEST(Centroid, OneClassCorpusIsDegenerate) {
  const CatDogParams p;
  std::mt19937_64 rng(1);
  EXPECT_THROW(centroid_learn(p, Model{}, corpus_of({make_vector_item({0.0, 0.0}, "a")}), rng), DegenerateCorpusError);
  EXPECT_THROW(centroid_learn(p, Model{}, corpus_of({make_vector_item({0.0}, "a"), make_vector_item({1.0}, "b")}), rng),
               SchemaError);
}

TEST(Centroid, InferAtCentroidAndNearerSide) {
  CentroidModel c{{"a", "b"}, {{-1.0}, {1.0}}};
  const Model m(c);
  EXPECT_EQ(std::get<Label>(centroid_infer(Prompt(Features{-1.0}), Context(Empty{}), m)).name, "a");
  EXPECT_EQ(std::get<Label>(centroid_infer(Prompt(Features{0.2}), Context(Empty{}), m)).name, "b");
  EXPECT_THROW(centroid_infer(Prompt(Features{0.2, 0.1}), Context(Empty{}), m), SchemaError);
}

TEST(Centroid, MidpointsTieToLowerLabel) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    // Integer-valued centroids keep the midpoint exact in binary floating point.
    const Features a{std::round(g(rng)), std::round(g(rng))};
    Features b{std::round(g(rng)), std::round(g(rng))};
    if (a == b) b[0] += 2.0;
    const Features mid{(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0};
    const Model m(CentroidModel{{"a", "b"}, {a, b}});
    EXPECT_EQ(std::get<Label>(centroid_infer(Prompt(mid), Context(Empty{}), m)).name, "a");
    const Model swapped(CentroidModel{{"a", "b"}, {b, a}});
    EXPECT_EQ(std::get<Label>(centroid_infer(Prompt(mid), Context(Empty{}), swapped)).name, "a");
  }
}

TEST(Centroid, AccuracyOnFreshTestSet) {
  const CatDogParams p;
  const SourceSet train_source = make_catdog_source(p, 10000, 1);
  const SourceSet test_source = make_catdog_source(p, 10000, 777);
  const OracleSpec oracle = make_catdog_oracle(p);
  const Model m = train(oracle, train_source, Streams(5));
  std::size_t correct = 0;
  for (const auto& item : test_source.items()) {
    const Result r = oracle.infer(Prompt(item.vector().x), Context(Empty{}), m);
    if (std::get<Label>(r).name == item.vector().label) ++correct;
  }
  EXPECT_GE(static_cast<double>(correct) / 10000.0, 0.99);
}

TEST(CatDogPhi, SourceImageWithItsLabelIsValid) {
  const CatDogParams p;
  const SourceSet s = make_catdog_source(p, 100, 1);
  const PredicatePhi phi = make_catdog_phi(s, p);
  const auto& cat = s[0].vector();  // items alternate cat, dog
  ASSERT_EQ(s[0].meta_or("class", ""), "cat");
  EXPECT_TRUE(eval_phi(phi, Prompt(cat.x), Context(Empty{}), Label{"a"}));
  EXPECT_FALSE(eval_phi(phi, Prompt(cat.x), Context(Empty{}), Label{"b"}));
  EXPECT_FALSE(eval_phi(phi, Prompt(cat.x), Context(Empty{}), Empty{}));
  // Not a source image: any answer other than a or b is fine.
  EXPECT_TRUE(eval_phi(phi, Prompt(Features{100.0, 100.0}), Context(Empty{}), Label{"unsure"}));
  EXPECT_FALSE(eval_phi(phi, Prompt(Features{100.0, 100.0}), Context(Empty{}), Label{"a"}));
}

// ---- n-gram ----

NgramParams char_params(const std::vector<std::string>& alphabet, int order = 2, std::size_t max_tokens = 8) {
  NgramParams p;
  p.vocab = std::make_shared<const Vocabulary>(alphabet);
  p.order = order;
  p.max_tokens = max_tokens;
  return p;
}

TEST(Ngram, AbabCounts) {
  const NgramParams p = char_params({"a", "b"});
  const Model model = ngram_learn(p, Model{}, corpus_of({make_text_item(split_chars("abab"))}));
  const auto& m = model.as<NgramModel>("ngram");
  const auto& v = *m.vocab;
  // Independent count of adjacent character pairs in the raw string.
  const std::string text = "abab";
  std::map<std::pair<char, char>, int> pairs;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) ++pairs[{text[i], text[i + 1]}];
  EXPECT_EQ(m.count({v.id("a")}, v.id("b")), static_cast<std::uint64_t>(pairs[{'a', 'b'}]));
  EXPECT_EQ(m.count({v.id("b")}, v.id("a")), static_cast<std::uint64_t>(pairs[{'b', 'a'}]));
  EXPECT_EQ(m.count({v.id("a")}, v.id("b")), 2U);
  EXPECT_EQ(m.count({v.id("b")}, v.id("a")), 1U);
  EXPECT_EQ(m.count({v.id("b")}, v.eol()), 1U);
  EXPECT_EQ(m.count({v.bos()}, v.id("a")), 1U);
}

TEST(Ngram, RelearningDoublesCounts) {
  const NgramParams p = char_params({"a", "b"});
  const Corpus c = corpus_of({make_text_item(split_chars("abab")), make_text_item(split_chars("bba"))});
  const Model once = ngram_learn(p, Model{}, c);
  const Model twice = ngram_learn(p, once, c);
  const auto& m1 = once.as<NgramModel>("n");
  const auto& m2 = twice.as<NgramModel>("n");
  ASSERT_EQ(m1.counts.size(), m2.counts.size());
  for (const auto& [history, row] : m1.counts) {
    for (std::size_t k = 0; k < row.size(); ++k) EXPECT_EQ(m2.counts.at(history)[k], 2 * row[k]);
  }
}

TEST(Ngram, SecondRoundAddsWithoutDisturbingFirst) {
  const NgramParams p = char_params({"a", "b", "c", "d"});
  const Model r1 = ngram_learn(p, Model{}, corpus_of({make_text_item(split_chars("ab"))}));
  const Model r2 = ngram_learn(p, r1, corpus_of({make_text_item(split_chars("cd"))}));
  const Model only2 = ngram_learn(p, Model{}, corpus_of({make_text_item(split_chars("cd"))}));
  const auto& m1 = r1.as<NgramModel>("n");
  const auto& m2 = r2.as<NgramModel>("n");
  const auto& o2 = only2.as<NgramModel>("n");
  for (const auto& [history, row] : m2.counts) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::uint64_t a = m1.counts.count(history) ? m1.counts.at(history)[k] : 0;
      const std::uint64_t b = o2.counts.count(history) ? o2.counts.at(history)[k] : 0;
      EXPECT_EQ(row[k], a + b);
    }
  }
}

TEST(Ngram, GreedyContinuationOfAbab) {
  const NgramParams p = char_params({"a", "b"}, 2, 6);
  const Model m = ngram_learn(p, Model{}, corpus_of({make_text_item(split_chars("abab"))}));
  // Hand argmax: after a -> b (2 of 2); after b -> a (1) ties <eol> (1), lower id a.
  const Result r = ngram_infer(p, Prompt(Tokens{"a"}), Context(Empty{}), m);
  const auto& g = std::get<Generation>(r);
  EXPECT_EQ(g.text, (Tokens{"b", "a", "b", "a", "b", "a"}));
  EXPECT_TRUE(g.actions.empty());
}

TEST(Ngram, ContextDoesNotChangeGeneratedText) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 400, 1);
  const OracleSpec o = make_text_ngram_oracle(w);
  const Model m = train(o, s, Streams(3));
  for (const auto& prompt : {Tokens{"the"}, Tokens{"how", "to"}, Tokens{"the", "big"}}) {
    const auto a = std::get<Generation>(o.infer(Prompt(prompt), Context(Empty{}), m));
    const auto b = std::get<Generation>(o.infer(Prompt(prompt), Context(Tokens{"meeting", "moved"}), m));
    EXPECT_EQ(a.text, b.text);
    EXPECT_EQ(a.actions, b.actions);
  }
}

TEST(Ngram, CmdLineInContextBecomesAction) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 400, 1);
  const OracleSpec o = make_text_ngram_oracle(w);
  const Model m = train(o, s, Streams(3));
  const auto g = std::get<Generation>(o.infer(Prompt(Tokens{"the", "big"}), Context(Tokens{"CMD", "leak"}), m));
  ASSERT_FALSE(g.actions.empty());
  EXPECT_EQ(g.actions.front(), (Tokens{"leak"}));
  // A bare instruction without the marker is data, not an action.
  const auto h = std::get<Generation>(o.infer(Prompt(Tokens{"the", "big"}), Context(Tokens{"leak"}), m));
  EXPECT_TRUE(std::none_of(h.actions.begin(), h.actions.end(), [](const Tokens& a) {
    return std::find(a.begin(), a.end(), "leak") != a.end();
  }));
}

TEST(Ngram, RowsAreNormalized) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 400, 2);
  const Model model = train(make_text_ngram_oracle(w), s, Streams(1));
  const auto& m = model.as<NgramModel>("n");
  ASSERT_FALSE(m.counts.empty());
  for (const auto& [history, row] : m.counts) {
    double total = 0.0;
    for (TokenId id = 0; id < m.vocab->size(); ++id) total += m.probability(history, id);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
  // Unseen history: uniform.
  double unseen = 0.0;
  for (TokenId id = 0; id < m.vocab->size(); ++id) unseen += m.probability({m.vocab->id("zq")}, id);
  EXPECT_NEAR(unseen, 1.0, 1e-9);
}

TEST(Perplexity, DuplicatedRecordBeatsItsPermutation) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 20, 4);
  Corpus c = corpus_of(s.items());
  DataItem dup = make_text_item({"the", "quiet", "owl", "finds", "the", "fox"}, {{"copies", "10"}});
  c.items.push_back(dup);
  const Model m = ngram_learn(w.ngram_params(), Model{}, c);
  const double seen = perplexity(m, dup.text());
  const double perm = perplexity(m, {"fox", "the", "finds", "owl", "quiet", "the"});
  EXPECT_LT(seen, perm);
}

TEST(Perplexity, UntrainedModelIsAlphabetSize) {
  const NgramParams p = char_params({"a", "b", "c"});
  const Model empty = Model(p.empty_model());
  const double v = static_cast<double>(p.vocab->size());
  for (const auto& seq : {split_chars("abc"), split_chars("aaaa"), split_chars("c")}) {
    EXPECT_NEAR(perplexity(p, Model{}, seq), v, 1e-9);
    EXPECT_NEAR(perplexity(empty, seq), v, 1e-9);
  }
}

TEST(Perplexity, DependsOnlyOnFinalCounts) {
  const NgramParams p = char_params({"a", "b", "c"});
  const DataItem x = make_text_item(split_chars("abca"));
  const DataItem y = make_text_item(split_chars("cab"));
  const Model one_round = ngram_learn(p, Model{}, corpus_of({x, y}));
  const Model two_rounds = ngram_learn(p, ngram_learn(p, Model{}, corpus_of({x})), corpus_of({y}));
  EXPECT_EQ(one_round, two_rounds);
  for (const auto& seq : {split_chars("abc"), split_chars("ccc")}) {
    EXPECT_EQ(perplexity(one_round, seq), perplexity(two_rounds, seq));
  }
}

// ---- filter ----

Prompt pair_of(const Tokens& prompt, const Tokens& text, std::vector<Tokens> actions = {}) {
  return make_candidate(Prompt(prompt), Generation{text, std::move(actions)});
}

TEST(Filter, EmptyRuleSetAcceptsEverything) {
  const Model m(FilterModel::accept_all());
  std::mt19937_64 rng(2);
  TextWorld w;
  const auto vocab = w.vocabulary()->tokens();
  for (int k = 0; k < 200; ++k) {
    Tokens t;
    for (int j = 0; j < 5; ++j) t.push_back(vocab[rng() % vocab.size()]);
    EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"x"}, t), Context(Empty{}), m)), Decision::kAccept);
    EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"x"}, t, {t}), Context(Tokens{"SECRET", t[0]}), m)),
              Decision::kAccept);
  }
}

TEST(Filter, ForbiddenTokenRejectedAndRemovalAccepted) {
  const Model m(FilterModel::with_rules({"bomb"}));
  const Tokens bad{"how", "to", "build", "a", "bomb"};
  Tokens clean = bad;
  clean.erase(std::remove(clean.begin(), clean.end(), "bomb"), clean.end());
  EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"how"}, bad), Context(Empty{}), m)), Decision::kReject);
  EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"how"}, clean), Context(Empty{}), m)), Decision::kAccept);
  EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"how"}, clean, {{"bomb"}}), Context(Empty{}), m)),
            Decision::kReject);
}

TEST(Filter, ContextSecretsAreRejected) {
  const Model m(FilterModel{});
  const Context ctx(Tokens{"SECRET", "4", "7"});
  EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"x"}, {"my", "4"}), ctx, m)), Decision::kReject);
  EXPECT_EQ(std::get<Decision>(filter_infer(pair_of({"x"}, {"my", "pin"}), ctx, m)), Decision::kAccept);
}

TEST(Filter, OutputIsAlwaysADecision) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 400, 1);
  const OracleSpec o = make_text_filter_oracle(w);
  const Model m = train(o, s, Streams(8));
  const auto vocab = w.vocabulary()->tokens();
  std::mt19937_64 rng(6);
  for (int k = 0; k < 2000; ++k) {
    Tokens t;
    const std::size_t len = rng() % 6;
    for (std::size_t j = 0; j < len; ++j) t.push_back(vocab[rng() % vocab.size()]);
    Result proposed = Generation{t, {}};
    if (k % 7 == 0) proposed = Empty{};
    if (k % 11 == 0) proposed = Label{vocab[rng() % vocab.size()]};
    Context c = k % 3 == 0 ? Context(Tokens{"SECRET", "cat"}) : Context(Empty{});
    const Result r = o.infer(make_candidate(Prompt(t), proposed), c, m);
    ASSERT_TRUE(std::holds_alternative<Decision>(r));
  }
  EXPECT_THROW(o.infer(make_candidate(Prompt(Tokens{"x"}), Decision::kAccept), Context(Empty{}), m), SchemaError);
}

TEST(Filter, LearnsHarmfulMinusBenignTokens) {
  Corpus c = corpus_of({make_text_item({"how", "to", "build", "a", "bomb"}, {{"harmful", "1"}}),
                        make_text_item({"how", "to", "build", "a", "boat"}, {{"harmful", "0"}})});
  const Model m = keyword_learn(Model{}, c);
  EXPECT_EQ(m.as<FilterModel>("f").forbidden, (std::set<std::string>{"bomb"}));
  // Accumulates: a later benign "bomb" line clears the rule.
  const Model m2 = keyword_learn(m, corpus_of({make_text_item({"bomb"}, {{"harmful", "0"}})}));
  EXPECT_TRUE(m2.as<FilterModel>("f").forbidden.empty());
}

// ---- oracle spec ----

TEST(OracleSpec, HasTwoRPlusOneProcedures) {
  TextWorld w;
  const auto params = w.ngram_params();
  for (int r = 1; r <= 3; ++r) {
    std::vector<Generator> gens;
    for (int i = 1; i <= r; ++i) gens.push_back(text_generator("g", i, 10, false));
    const OracleSpec o = make_ngram_oracle(params, gens);
    EXPECT_EQ(o.rounds(), r);
    EXPECT_EQ(o.procedure_count(), static_cast<std::size_t>(2 * r + 1));
    EXPECT_NO_THROW(o.validate());
  }
  EXPECT_EQ(make_catdog_oracle(CatDogParams{}).procedure_count(), 3U);
}

TEST(OracleSpec, EndToEndDeterministic) {
  TextWorld w;
  const SourceSet s = make_text_source(w, 400, 1);
  const OracleSpec o = make_text_ngram_oracle(w);
  EXPECT_EQ(train(o, s, Streams(12)), train(o, s, Streams(12)));
  const CatDogParams p;
  const SourceSet cs = make_catdog_source(p, 1000, 1);
  EXPECT_EQ(train(make_catdog_oracle(p), cs, Streams(4)), train(make_catdog_oracle(p), cs, Streams(4)));
  p.validate();
  CatDogParams noisy = p;
  noisy.noise_scale = 1.0;
  EXPECT_EQ(train(make_catdog_oracle(noisy), cs, Streams(4)), train(make_catdog_oracle(noisy), cs, Streams(4)));
}

TEST(OracleHandle, BudgetIsHard) {
  OracleHandle h([](const Prompt&, const Context&) -> Result { return Empty{}; }, 2);
  h.query(Prompt(Tokens{"a"}), Context(Empty{}));
  h.query(Prompt(Tokens{"a"}), Context(Empty{}));
  EXPECT_THROW(h.query(Prompt(Tokens{"a"}), Context(Empty{})), QueryBudgetExceeded);
  EXPECT_EQ(h.used(), 2U);
}

// ---- corpus files ----

TEST(CorpusIo, ReadsTextLines) {
  std::istringstream in("the cat sees the dog\n\nhow to make a cake\n");
  const SourceSet s = read_text_source(in);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[1].text(), (Tokens{"how", "to", "make", "a", "cake"}));
  EXPECT_EQ(s.schema_tag(), kTextSchema);
}

TEST(CorpusIo, ReadsVectorCsv) {
  std::istringstream in("f1,f2,label\n1.5,-2,a\n0,0.25,b\n");
  const SourceSet s = read_vector_csv(in);
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0].vector().x, (Features{1.5, -2.0}));
  EXPECT_EQ(s[1].vector().label, "b");
}

TEST(CorpusIo, RejectsMalformedCsv) {
  for (const char* bad : {"", "x,label\n", "f1,f2\n1,2\n", "f1,label\n1,2,a\n", "f1,label\nabc,a\n", "f1,label\n1,\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_vector_csv(in), SchemaError) << bad;
  }
  EXPECT_THROW(load_vector_csv("/nonexistent/file.csv"), ConfigurationError);
}

}  // namespace
}  // namespace aigame
