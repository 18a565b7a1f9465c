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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/types.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/oracle_spec.hpp"

namespace aigame {

struct NgramParams {
  std::shared_ptr<const Vocabulary> vocab;
  int order = 2;           // n of the n-gram: histories hold order-1 tokens
  double smoothing = 1.0;  // add-k constant
  std::size_t max_tokens = 8;

  void validate() const {
    if (!vocab) throw ConfigurationError("n-gram params need a vocabulary");
    if (order < 1) throw ConfigurationError("n-gram order must be >= 1");
    if (!(smoothing > 0.0)) throw ConfigurationError("n-gram smoothing must be > 0");
  }

  NgramModel empty_model() const {
    NgramModel m;
    m.vocab = vocab;
    m.order = order;
    m.smoothing = smoothing;
    return m;
  }
};

namespace detail {

inline std::vector<TokenId> bos_history(const NgramModel& m) {
  return std::vector<TokenId>(static_cast<std::size_t>(m.order - 1), m.vocab->bos());
}

inline void push_history(std::vector<TokenId>& history, TokenId next) {
  if (history.empty()) return;
  history.erase(history.begin());
  history.push_back(next);
}

// Walks one line (without its terminator) and calls visit(history, next) for every
// predicted position, <eol> included.
template <typename Visit>
void walk_line(const NgramModel& m, const Tokens& line, Visit&& visit) {
  auto history = bos_history(m);
  for (const auto& t : line) {
    TokenId id = m.vocab->id(t);
    visit(history, id);
    push_history(history, id);
  }
  visit(history, m.vocab->eol());
}

}  // namespace detail

// Adds the corpus counts to `model` (or to a fresh table when `model` is empty).
// Items may span several lines; meta "copies" repeats an item.
inline Model ngram_learn(const NgramParams& params, const Model& model, const Corpus& corpus) {
  params.validate();
  if (corpus.items.empty()) throw DegenerateCorpusError("n-gram learner got an empty corpus");
  NgramModel m = model.empty() ? params.empty_model() : model.as<NgramModel>("n-gram model");
  const std::size_t v = m.vocab->size();
  for (const auto& item : corpus.items) {
    const std::uint64_t copies = std::stoull(item.meta_or("copies", "1"));
    for (const auto& line : split_lines(item.text())) {
      detail::walk_line(m, line, [&](const std::vector<TokenId>& history, TokenId next) {
        auto& row = m.counts[history];
        if (row.empty()) row.assign(v, 0);
        row[next] += copies;
        m.totals[history] += copies;
      });
    }
  }
  return Model(std::move(m));
}

// Greedy continuation: argmax of the smoothed conditional, lowest id on ties.
inline TokenId ngram_argmax(const NgramModel& m, const std::vector<TokenId>& history) {
  auto it = m.counts.find(history);
  if (it == m.counts.end()) return 0;
  const auto& row = it->second;
  TokenId best = 0;
  for (TokenId id = 1; id < row.size(); ++id) {
    if (row[id] > row[best]) best = id;
  }
  return best;
}

// Context lines, then prompt lines, then up to max_tokens greedily generated tokens
// continuing the prompt's last line (history resets after <eol>). Every line of that
// stream whose first token is CMD contributes its remaining tokens as an action; the
// oracle makes no distinction between instructions and data.
inline Result ngram_infer(const NgramParams& params, const Prompt& prompt, const Context& context, const Model& model) {
  const auto& m = model.as<NgramModel>("n-gram model");
  const Tokens& user = prompt.tokens();

  auto history = detail::bos_history(m);
  for (const auto& t : user) {
    if (t == kEolToken) {
      history = detail::bos_history(m);
    } else {
      detail::push_history(history, m.vocab->id(t));
    }
  }
  Generation out;
  for (std::size_t k = 0; k < params.max_tokens; ++k) {
    TokenId next = ngram_argmax(m, history);
    out.text.push_back(m.vocab->token(next));
    if (next == m.vocab->eol()) {
      history = detail::bos_history(m);
    } else {
      detail::push_history(history, next);
    }
  }

  Tokens stream;
  if (const auto* ctx = std::get_if<Tokens>(&context)) {
    stream = *ctx;
    stream.push_back(kEolToken);
  }
  stream.insert(stream.end(), user.begin(), user.end());
  stream.insert(stream.end(), out.text.begin(), out.text.end());
  for (auto& line : split_lines(stream)) {
    if (line.size() > 1 && line.front() == kCmdToken) out.actions.emplace_back(line.begin() + 1, line.end());
  }
  return out;
}

// exp of the mean negative log smoothed probability over the sequence's tokens and
// its closing <eol>.
inline double perplexity(const Model& model, const Tokens& sequence) {
  if (model.empty()) throw SchemaError("perplexity needs an n-gram model");
  const auto& m = model.as<NgramModel>("n-gram model");
  double nll = 0.0;
  std::size_t n = 0;
  for (const auto& line : split_lines(sequence)) {
    detail::walk_line(m, line, [&](const std::vector<TokenId>& history, TokenId next) {
      nll -= std::log(m.probability(history, next));
      ++n;
    });
  }
  return std::exp(nll / static_cast<double>(n));
}

// Same, for an untrained model over the given vocabulary (pure smoothing).
inline double perplexity(const NgramParams& params, const Model& model, const Tokens& sequence) {
  return perplexity(model.empty() ? Model(params.empty_model()) : model, sequence);
}

inline OracleSpec make_ngram_oracle(const NgramParams& params, std::vector<Generator> generators, std::string tag = "ngram") {
  params.validate();
  OracleSpec spec;
  spec.tag = std::move(tag);
  spec.generators = std::move(generators);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    spec.learners.push_back([params](const Model& model, const Corpus& corpus, const Streams&) {
      return ngram_learn(params, model, corpus);
    });
  }
  spec.infer = [params](const Prompt& p, const Context& c, const Model& m) { return ngram_infer(params, p, c, m); };
  return spec;
}

}  // namespace aigame
