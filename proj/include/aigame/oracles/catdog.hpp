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
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/predicate.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/core/types.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

struct CatDogParams {
  std::string label_a = "a";  // name given to cats
  std::string label_b = "b";  // name given to dogs
  std::size_t dim = 2;
  double separation = 6.0;    // distance between class means, in within-class std devs
  double noise_scale = 0.0;   // std dev of the perturbation added to learned centroids
  std::size_t train_size = 50;

  void validate() const {
    if (!(separation > 0.0)) throw ConfigurationError("catdog separation must be > 0");
    if (dim < 1) throw ConfigurationError("catdog dim must be >= 1");
    if (!(noise_scale >= 0.0)) throw ConfigurationError("catdog noise_scale must be >= 0");
    if (label_a == label_b) throw ConfigurationError("catdog labels must differ");
  }

  // Class means: cats at -separation/2 and dogs at +separation/2 on the first axis.
  Features mean(bool dog) const {
    Features m(dim, 0.0);
    m[0] = (dog ? 0.5 : -0.5) * separation;
    return m;
  }
};

inline double squared_distance(const Features& a, const Features& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

// source_{a,b}: population/2 cats labelled a and population/2 dogs labelled b, unit
// Gaussian features around the class means. Items alternate cat, dog, cat, ... and
// carry meta "class". Same seed gives the same images whatever the label names.
inline SourceSet make_catdog_source(const CatDogParams& params, std::size_t population, std::uint64_t seed) {
  params.validate();
  if (population < 2 || population % 2 != 0) {
    throw ConfigurationError("catdog population must be even and >= 2");
  }
  std::mt19937_64 rng(derive_seed(seed, fnv1a("catdog/source")));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<DataItem> items;
  items.reserve(population);
  for (std::size_t i = 0; i < population; ++i) {
    const bool dog = (i % 2) == 1;
    Features x = params.mean(dog);
    for (auto& v : x) v += gauss(rng);
    DataItem item = make_vector_item(std::move(x), dog ? params.label_b : params.label_a);
    item.meta["class"] = dog ? "dog" : "cat";
    items.push_back(std::move(item));
  }
  return SourceSet(std::string(kCatDogSchema), std::move(items));
}

// Uniform sample of k distinct indices from [0, n), in sampling order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (k > n) throw ConfigurationError("cannot sample more items than the source holds");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

inline Corpus sample_corpus(const SourceSet& source, std::size_t k, std::mt19937_64& rng, int round) {
  Corpus corpus;
  corpus.round_index = round;
  for (std::size_t i : sample_indices(source.size(), k, rng)) corpus.items.push_back(source[i]);
  return corpus;
}

// Per-label means plus independent N(0, noise_scale^2) perturbation per coordinate.
inline Model centroid_learn(const CatDogParams& params, const Model& model, const Corpus& corpus, std::mt19937_64& rng) {
  if (!model.empty()) throw SchemaError("centroid learner is single-round and expects the empty model");
  CentroidModel out;
  out.labels = {std::min(params.label_a, params.label_b), std::max(params.label_a, params.label_b)};
  out.centroids.assign(2, Features(params.dim, 0.0));
  std::size_t n[2] = {0, 0};
  for (const auto& item : corpus.items) {
    const LabeledVector& lv = item.vector();
    if (lv.x.size() != params.dim) throw SchemaError("corpus feature dimension mismatch");
    std::size_t k;
    if (lv.label == out.labels[0]) {
      k = 0;
    } else if (lv.label == out.labels[1]) {
      k = 1;
    } else {
      throw SchemaError("corpus label '" + lv.label + "' is neither catdog label");
    }
    for (std::size_t d = 0; d < params.dim; ++d) out.centroids[k][d] += lv.x[d];
    ++n[k];
  }
  for (std::size_t k = 0; k < 2; ++k) {
    if (n[k] == 0) throw DegenerateCorpusError("corpus has no item labelled '" + out.labels[k] + "'");
    for (auto& v : out.centroids[k]) v /= static_cast<double>(n[k]);
  }
  if (params.noise_scale > 0.0) {
    std::normal_distribution<double> gauss(0.0, params.noise_scale);
    for (auto& c : out.centroids) {
      for (auto& v : c) v += gauss(rng);
    }
  }
  return Model(std::move(out));
}

// Label of the nearer centroid; exact ties go to labels[0].
inline Result centroid_infer(const Prompt& prompt, const Context& /*context*/, const Model& model) {
  const auto& m = model.as<CentroidModel>("centroid model");
  const Features& x = prompt.features();
  if (x.size() != m.centroids[0].size()) throw SchemaError("prompt dimension does not match the centroid model");
  const double d0 = squared_distance(x, m.centroids[0]);
  const double d1 = squared_distance(x, m.centroids[1]);
  return Label{d1 < d0 ? m.labels[1] : m.labels[0]};
}

// Single-round nearest-centroid oracle. GENERATE_DATA_1 draws train_size distinct
// items uniformly from the source.
inline OracleSpec make_catdog_oracle(const CatDogParams& params, std::string tag = "catdog") {
  params.validate();
  OracleSpec spec;
  spec.tag = tag;
  spec.generators.push_back([params, tag](const SourceSet& source, const Streams& streams) {
    auto rng = streams.stream(tag + "/gen", 1);
    return sample_corpus(source, params.train_size, rng, 1);
  });
  spec.learners.push_back([params, tag](const Model& model, const Corpus& corpus, const Streams& streams) {
    auto rng = streams.stream(tag + "/learn", 1);
    return centroid_learn(params, model, corpus, rng);
  });
  spec.infer = centroid_infer;
  return spec;
}

// phi_{a,b}: valid iff (result is neither a nor b and the prompt is no source image)
// or (prompt, result) is in source_{a,b}. Source membership is decided by exact
// feature lookup.
inline PredicatePhi make_catdog_phi(const SourceSet& source, const CatDogParams& params) {
  auto index = std::make_shared<std::map<Features, std::string>>();
  for (const auto& item : source.items()) index->emplace(item.vector().x, item.vector().label);
  return PredicatePhi("catdog", [index, a = params.label_a, b = params.label_b](const Prompt& p, const Context&,
                                                                                  const Result& r) {
    const Features& x = p.features();
    const Label* label = std::get_if<Label>(&r);
    if (label == nullptr && !is_empty(r)) throw SchemaError("catdog predicate expects a label or empty result");
    auto it = index->find(x);
    if (it != index->end()) return label != nullptr && label->name == it->second;
    return label == nullptr || (label->name != a && label->name != b);
  });
}

}  // namespace aigame
