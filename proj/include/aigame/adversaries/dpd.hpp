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
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aigame/adversaries/adversary.hpp"
#include "aigame/oracles/catdog.hpp"
#include "aigame/oracles/ngram.hpp"
#include "aigame/oracles/text_world.hpp"

namespace aigame {

// Picks (corpus', z0, z1) for a membership experiment.
using PairSampler = std::function<DpdBuild(std::size_t n, const SourceSet&, std::mt19937_64&)>;
// Membership score of z under the model; lower means "more likely trained on".
using MembershipScorer = std::function<double(const Model&, const Corpus& corpus, const DataItem& z)>;

// n-1 distinct public lines, then z0 and z1: two further lines with different text,
// each annotated to be learned `copies` times (a duplicated record).
inline PairSampler text_membership_sampler(std::size_t copies) {
  return [copies](std::size_t n, const SourceSet& source, std::mt19937_64& rng) {
    if (n < 1) throw ConfigurationError("DPD corpus size must be >= 1");
    const auto pub = public_indices(source);
    auto idx = sample_indices(pub.size(), pub.size(), rng);
    if (idx.size() < n + 1) throw ConfigurationError("text source too small for the membership experiment");
    DpdBuild out;
    for (std::size_t k = 0; k + 1 < n; ++k) out.corpus.items.push_back(source[pub[idx[k]]]);
    out.z0 = source[pub[idx[n - 1]]];
    std::size_t j = n;
    while (j < idx.size() && source[pub[idx[j]]].text() == out.z0.text()) ++j;
    if (j == idx.size()) throw ConfigurationError("text source has no second distinct line");
    out.z1 = source[pub[idx[j]]];
    out.z0.meta["copies"] = std::to_string(copies);
    out.z1.meta["copies"] = std::to_string(copies);
    return out;
  };
}

// n-1 distinct source images, z0 the next one and z1 the same image moved by `shift`
// along the last axis (same label).
inline PairSampler catdog_membership_sampler(double shift) {
  return [shift](std::size_t n, const SourceSet& source, std::mt19937_64& rng) {
    if (n < 1) throw ConfigurationError("DPD corpus size must be >= 1");
    auto idx = sample_indices(source.size(), n, rng);
    DpdBuild out;
    for (std::size_t k = 0; k + 1 < n; ++k) out.corpus.items.push_back(source[idx[k]]);
    out.z0 = source[idx[n - 1]];
    out.z1 = out.z0;
    std::get<LabeledVector>(out.z1.payload).x.back() += shift;
    return out;
  };
}

inline MembershipScorer perplexity_scorer() {
  return [](const Model& model, const Corpus&, const DataItem& z) { return perplexity(model, z.text()); };
}

// Distance between the model's centroid for z's label and the centroid that label
// would have if the model were trained on corpus' plus z.
inline MembershipScorer centroid_shift_scorer() {
  return [](const Model& model, const Corpus& corpus, const DataItem& z) {
    const auto& m = model.as<CentroidModel>("centroid model");
    const LabeledVector& zv = z.vector();
    std::size_t k = zv.label == m.labels[0] ? 0 : 1;
    Features mean = zv.x;
    double count = 1.0;
    for (const auto& item : corpus.items) {
      if (item.vector().label != zv.label) continue;
      for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += item.vector().x[d];
      count += 1.0;
    }
    for (auto& v : mean) v /= count;
    return squared_distance(mean, m.centroids[k]);
  };
}

enum class ThresholdMode { kFixed, kCalibrated };

// b' = 1 iff score(z1) < score(z0). Calibrated mode first plays `shadow_runs` games
// against itself with the public learner and flips the comparison if members turned
// out to score higher.
class MembershipAttacker : public DpdAdversary {
 public:
  MembershipAttacker(ThresholdMode mode, PairSampler sampler, MembershipScorer scorer, Learner learner = nullptr,
                     std::size_t shadow_runs = 8)
      : mode_(mode), sampler_(std::move(sampler)), scorer_(std::move(scorer)), learner_(std::move(learner)),
        shadow_runs_(shadow_runs) {
    if (mode_ == ThresholdMode::kCalibrated && !learner_) {
      throw ConfigurationError("calibrated membership attacker needs a shadow learner");
    }
  }

  DpdBuild build_phase(std::size_t n, const SourceSet& source, const Streams& streams) override {
    auto rng = streams.stream("adv/build");
    DpdBuild out = sampler_(n, source, rng);
    int direction = 1;
    if (mode_ == ThresholdMode::kCalibrated) direction = calibrate(n, source, streams);
    out.state["direction"] = direction;
    return out;
  }

  int guess_phase(const AdversaryState& state, const Corpus& corpus, const DataItem& z0, const DataItem& z1,
                  const Model& model, const SourceSet&, const Streams&) override {
    const double s0 = scorer_(model, corpus, z0);
    const double s1 = scorer_(model, corpus, z1);
    const int direction = state.value("direction", 1);
    return direction > 0 ? (s1 < s0 ? 1 : 0) : (s1 > s0 ? 1 : 0);
  }

  std::string kind_tag() const override { return "membership"; }

 private:
  int calibrate(std::size_t n, const SourceSet& source, const Streams& streams) const {
    int lower = 0;
    int higher = 0;
    for (std::size_t k = 0; k < shadow_runs_; ++k) {
      const Streams shadow(derive_seed(streams.seed(), fnv1a("adv/shadow") + k));
      auto rng = shadow.stream("adv/build");
      DpdBuild b = sampler_(n, source, rng);
      Corpus train = b.corpus;
      train.items.push_back(b.z0);
      const Model m = learner_(Model{}, train, shadow);
      const double member = scorer_(m, b.corpus, b.z0);
      const double other = scorer_(m, b.corpus, b.z1);
      if (member < other) ++lower;
      if (member > other) ++higher;
    }
    return lower >= higher ? 1 : -1;
  }

  ThresholdMode mode_;
  PairSampler sampler_;
  MembershipScorer scorer_;
  Learner learner_;
  std::size_t shadow_runs_;
};

// Ignores the model: b' is a fair coin, or a constant when `constant` is 0 or 1.
class GuessingAdversary : public DpdAdversary {
 public:
  explicit GuessingAdversary(PairSampler sampler, int constant = -1)
      : sampler_(std::move(sampler)), constant_(constant) {}

  DpdBuild build_phase(std::size_t n, const SourceSet& source, const Streams& streams) override {
    auto rng = streams.stream("adv/build");
    return sampler_(n, source, rng);
  }

  int guess_phase(const AdversaryState&, const Corpus&, const DataItem&, const DataItem&, const Model&,
                  const SourceSet&, const Streams& streams) override {
    if (constant_ == 0 || constant_ == 1) return constant_;
    auto rng = streams.stream("adv/guess");
    return static_cast<int>(rng() & 1U);
  }

  std::string kind_tag() const override { return constant_ < 0 ? "random_guess" : "constant_guess"; }

 private:
  PairSampler sampler_;
  int constant_;
};

// Hybrid A_i over the catdog source. corpus_0 (n items) splits into A (first i-1),
// z (item i) and B (the rest); corpus' = flip(A) + B, z0 = z, z1 = flip(z). A_0 is
// the identity hybrid: z is the first item and z0 = z1 = z. The guess is whether the
// trained model labels a fresh source image correctly.
class HybridAdversary : public DpdAdversary {
 public:
  HybridAdversary(std::size_t i, std::size_t n, CatDogParams params, Inferrer infer)
      : i_(i), n_(n), params_(std::move(params)), infer_(std::move(infer)) {
    if (n_ < 1) throw ConfigurationError("hybrid chain length must be >= 1");
    if (i_ > n_) throw ConfigurationError("hybrid index " + std::to_string(i_) + " outside 0.." + std::to_string(n_));
  }

  DataItem flip(DataItem item) const {
    auto& label = std::get<LabeledVector>(item.payload).label;
    label = label == params_.label_a ? params_.label_b : params_.label_a;
    return item;
  }

  DpdBuild build_phase(std::size_t n, const SourceSet& source, const Streams& streams) override {
    if (n != n_) throw ConfigurationError("hybrid adversary built for n=" + std::to_string(n_));
    auto rng = streams.stream("hybrid/corpus0");
    const Corpus corpus0 = sample_corpus(source, n_, rng, 1);
    DpdBuild out;
    const std::size_t zi = i_ == 0 ? 0 : i_ - 1;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == zi) continue;
      out.corpus.items.push_back(k < zi ? flip(corpus0.items[k]) : corpus0.items[k]);
    }
    out.z0 = corpus0.items[zi];
    out.z1 = i_ == 0 ? out.z0 : flip(out.z0);
    return out;
  }

  int guess_phase(const AdversaryState&, const Corpus&, const DataItem&, const DataItem&, const Model& model,
                  const SourceSet& source, const Streams& streams) override {
    auto rng = streams.stream("hybrid/w");
    std::uniform_int_distribution<std::size_t> pick(0, source.size() - 1);
    const LabeledVector& w = source[pick(rng)].vector();
    const Result r = infer_(Prompt(w.x), Context(Empty{}), model);
    const auto* label = std::get_if<Label>(&r);
    return label != nullptr && label->name == w.label ? 1 : 0;
  }

  std::string kind_tag() const override { return "hybrid_" + std::to_string(i_); }

 private:
  std::size_t i_;
  std::size_t n_;
  CatDogParams params_;
  Inferrer infer_;
};

}  // namespace aigame
