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

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "aigame/core/box.hpp"
#include "aigame/core/types.hpp"

namespace aigame {

using TokenId = std::uint32_t;

// Fixed token alphabet of an n-gram model. Ids follow the order given at
// construction, then <unk>, then <eol>; <bos> (history padding only, never
// predicted) sits one past the end.
class Vocabulary {
 public:
  explicit Vocabulary(const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
      if (t == kUnk || t == kEolToken || t == kBos || index_.count(t) != 0) continue;
      add(t);
    }
    unk_ = add(kUnk);
    eol_ = add(kEolToken);
  }

  static constexpr std::string_view kUnk = "<unk>";
  static constexpr std::string_view kBos = "<bos>";

  // Size of the predicted alphabet (user tokens + <unk> + <eol>).
  std::size_t size() const { return tokens_.size(); }
  TokenId unk() const { return unk_; }
  TokenId eol() const { return eol_; }
  TokenId bos() const { return static_cast<TokenId>(tokens_.size()); }

  TokenId id(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? unk_ : it->second;
  }
  bool known(const std::string& token) const { return index_.count(token) != 0 && token != kUnk; }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  TokenId add(std::string_view t) {
    auto id = static_cast<TokenId>(tokens_.size());
    tokens_.emplace_back(t);
    index_.emplace(std::string(t), id);
    return id;
  }

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId unk_ = 0;
  TokenId eol_ = 0;
};

struct CentroidModel {
  std::vector<std::string> labels;  // sorted; tie-break favours labels[0]
  std::vector<Features> centroids;
  bool operator==(const CentroidModel&) const = default;
};

// Order-k count tables with add-k smoothing.
struct NgramModel {
  std::shared_ptr<const Vocabulary> vocab;
  int order = 2;
  double smoothing = 1.0;
  std::map<std::vector<TokenId>, std::vector<std::uint64_t>> counts;
  std::map<std::vector<TokenId>, std::uint64_t> totals;

  std::uint64_t count(const std::vector<TokenId>& history, TokenId next) const {
    auto it = counts.find(history);
    return it == counts.end() ? 0 : it->second.at(next);
  }

  double probability(const std::vector<TokenId>& history, TokenId next) const {
    const double v = static_cast<double>(vocab->size());
    auto it = counts.find(history);
    if (it == counts.end()) return 1.0 / v;
    const double total = static_cast<double>(totals.at(history));
    return (static_cast<double>(it->second.at(next)) + smoothing) / (total + smoothing * v);
  }

  bool operator==(const NgramModel& o) const {
    return *vocab == *o.vocab && order == o.order && smoothing == o.smoothing && counts == o.counts;
  }
};

// Keyword rule set of the boring (filter) oracle. `forbidden` is what inference
// consults; the seen-sets let the learner accumulate across rounds.
struct FilterModel {
  std::set<std::string> forbidden;
  std::set<std::string> harmful_seen;
  std::set<std::string> benign_seen;
  std::string secret_marker = "SECRET";  // empty disables the secret rule

  static FilterModel with_rules(std::set<std::string> rules) {
    FilterModel m;
    m.forbidden = std::move(rules);
    return m;
  }
  // No keyword rule and no secret rule: accepts every proposal.
  static FilterModel accept_all() {
    FilterModel m;
    m.secret_marker.clear();
    return m;
  }
  bool operator==(const FilterModel&) const = default;
};

struct Model;

struct ModelPair {
  Box<Model> first;
  Box<Model> second;
  bool operator==(const ModelPair&) const = default;
};

struct Model {
  std::variant<Empty, CentroidModel, NgramModel, FilterModel, ModelPair> value;

  Model() = default;
  Model(Empty) {}                                   // NOLINT
  Model(CentroidModel m) : value(std::move(m)) {}   // NOLINT
  Model(NgramModel m) : value(std::move(m)) {}      // NOLINT
  Model(FilterModel m) : value(std::move(m)) {}     // NOLINT
  Model(ModelPair m) : value(std::move(m)) {}       // NOLINT

  bool operator==(const Model&) const = default;

  bool empty() const { return std::holds_alternative<Empty>(value); }

  template <typename T>
  const T& as(const char* what) const {
    if (const T* p = std::get_if<T>(&value)) return *p;
    throw SchemaError(std::string("model is not a ") + what);
  }
};

inline Model make_pair_model(Model first, Model second) {
  return Model(ModelPair{Box<Model>(std::move(first)), Box<Model>(std::move(second))});
}

}  // namespace aigame
