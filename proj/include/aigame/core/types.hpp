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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "aigame/core/box.hpp"
#include "aigame/core/error.hpp"

namespace aigame {

using Features = std::vector<double>;
using Tokens = std::vector<std::string>;

inline constexpr std::string_view kCatDogSchema = "catdog";
inline constexpr std::string_view kTextSchema = "textcorpus";

// Line separator inside token sequences.
inline const std::string kEolToken = "<eol>";
// First token of a line that the text oracle treats as an instruction.
inline const std::string kCmdToken = "CMD";

// The distinguished `empty` value. Used for contexts, results and models; it is
// deliberately not the same thing as an empty token list.
struct Empty {
  friend bool operator==(Empty, Empty) { return true; }
};

struct LabeledVector {
  Features x;
  std::string label;
  bool operator==(const LabeledVector&) const = default;
};

// One element of a source set or corpus.
struct DataItem {
  std::variant<LabeledVector, Tokens> payload;
  std::map<std::string, std::string> meta;

  bool operator==(const DataItem&) const = default;

  bool is_vector() const { return std::holds_alternative<LabeledVector>(payload); }
  bool is_text() const { return std::holds_alternative<Tokens>(payload); }

  const LabeledVector& vector() const {
    if (!is_vector()) throw SchemaError("data item is not a labeled vector");
    return std::get<LabeledVector>(payload);
  }
  const Tokens& text() const {
    if (!is_text()) throw SchemaError("data item is not a token sequence");
    return std::get<Tokens>(payload);
  }

  std::string meta_or(const std::string& key, std::string fallback) const {
    auto it = meta.find(key);
    return it == meta.end() ? std::move(fallback) : it->second;
  }
};

inline DataItem make_vector_item(Features x, std::string label) {
  return DataItem{LabeledVector{std::move(x), std::move(label)}, {}};
}

inline DataItem make_text_item(Tokens line, std::map<std::string, std::string> meta = {}) {
  return DataItem{std::move(line), std::move(meta)};
}

// Total order used to canonicalise unordered corpora.
inline bool item_less(const DataItem& a, const DataItem& b) {
  if (a.payload.index() != b.payload.index()) return a.payload.index() < b.payload.index();
  if (a.is_vector()) {
    const auto& va = a.vector();
    const auto& vb = b.vector();
    if (va.x != vb.x) return std::lexicographical_compare(va.x.begin(), va.x.end(), vb.x.begin(), vb.x.end());
    if (va.label != vb.label) return va.label < vb.label;
  } else {
    if (a.text() != b.text()) return a.text() < b.text();
  }
  return a.meta < b.meta;
}

inline bool schema_matches(const DataItem& item, std::string_view schema) {
  if (schema == kCatDogSchema) return item.is_vector();
  if (schema == kTextSchema) return item.is_text();
  return false;
}

// The inaccessible population algorithms sample from. Random read access by index;
// never mutated during a game run.
class SourceSet {
 public:
  SourceSet() = default;
  SourceSet(std::string schema_tag, std::vector<DataItem> items)
      : schema_tag_(std::move(schema_tag)), items_(std::move(items)) {
    for (const auto& item : items_) {
      if (!schema_matches(item, schema_tag_)) {
        throw SchemaError("source item kind does not match schema '" + schema_tag_ + "'");
      }
    }
  }

  const std::string& schema_tag() const { return schema_tag_; }
  const std::vector<DataItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  const DataItem& operator[](std::size_t i) const { return items_.at(i); }

 private:
  std::string schema_tag_;
  std::vector<DataItem> items_;
};

struct Corpus {
  std::vector<DataItem> items;
  int round_index = 1;

  bool operator==(const Corpus&) const = default;
  std::size_t size() const { return items.size(); }
};

// Result of the text oracle: the generated tokens plus every instruction found on a
// line that begins with CMD.
struct Generation {
  Tokens text;
  std::vector<Tokens> actions;
  bool operator==(const Generation&) const = default;
};

struct Label {
  std::string name;
  bool operator==(const Label&) const = default;
};

enum class Decision { kAccept, kReject };

using Result = std::variant<Empty, Label, Decision, Generation>;

inline bool is_empty(const Result& r) { return std::holds_alternative<Empty>(r); }

struct Prompt;

// A (prompt, proposed result) pair: the input of a decisional oracle.
struct Candidate {
  Box<Prompt> prompt;
  Result result;
  bool operator==(const Candidate&) const = default;
};

struct Prompt {
  std::variant<Features, Tokens, Candidate> value;

  Prompt() = default;
  Prompt(Features f) : value(std::move(f)) {}   // NOLINT
  Prompt(Tokens t) : value(std::move(t)) {}     // NOLINT
  Prompt(Candidate c) : value(std::move(c)) {}  // NOLINT

  bool operator==(const Prompt&) const = default;

  bool is_features() const { return std::holds_alternative<Features>(value); }
  bool is_tokens() const { return std::holds_alternative<Tokens>(value); }
  bool is_candidate() const { return std::holds_alternative<Candidate>(value); }
  const Features& features() const {
    if (!is_features()) throw SchemaError("prompt is not a feature vector");
    return std::get<Features>(value);
  }
  const Tokens& tokens() const {
    if (!is_tokens()) throw SchemaError("prompt is not a token sequence");
    return std::get<Tokens>(value);
  }
  const Candidate& candidate() const {
    if (!is_candidate()) throw SchemaError("prompt is not a (prompt, result) pair");
    return std::get<Candidate>(value);
  }
};

inline Prompt make_candidate(Prompt prompt, Result result) {
  return Prompt(Candidate{Box<Prompt>(std::move(prompt)), std::move(result)});
}

// Strips (prompt, result) wrappers down to the prompt the user actually typed.
inline const Prompt& innermost_prompt(const Prompt& p) {
  const Prompt* cur = &p;
  while (cur->is_candidate()) cur = &*cur->candidate().prompt;
  return *cur;
}

using Context = std::variant<Empty, Tokens>;

inline bool is_empty(const Context& c) { return std::holds_alternative<Empty>(c); }

// Splits a token sequence into lines on <eol>.
inline std::vector<Tokens> split_lines(const Tokens& tokens) {
  std::vector<Tokens> lines(1);
  for (const auto& t : tokens) {
    if (t == kEolToken) {
      lines.emplace_back();
    } else {
      lines.back().push_back(t);
    }
  }
  return lines;
}

inline Tokens join_lines(const std::vector<Tokens>& lines) {
  Tokens out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out.push_back(kEolToken);
    out.insert(out.end(), lines[i].begin(), lines[i].end());
  }
  return out;
}

inline Tokens split_words(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    if (i >= text.size()) break;
    if (text[i] == '\n') {
      out.push_back(kEolToken);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' && text[j] != '\n') ++j;
    out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

inline Tokens split_chars(std::string_view text) {
  Tokens out;
  for (char c : text) out.push_back(c == '\n' ? kEolToken : std::string(1, c));
  return out;
}

inline bool contains_run(const Tokens& haystack, const Tokens& needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

}  // namespace aigame
