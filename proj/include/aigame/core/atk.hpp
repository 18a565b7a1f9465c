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

#include <sstream>
#include <string>
#include <vector>

#include "aigame/core/error.hpp"

namespace aigame {

// Adversary capability flags for an oracle with `rounds` learning rounds:
// see_model_i for i in 0..r, inject_learn_i for i in 1..r, inject_infer, black_box.
class AtkSet {
 public:
  AtkSet() : AtkSet(1) {}
  explicit AtkSet(int rounds) : rounds_(rounds) {
    if (rounds < 1) throw ConfigurationError("AtkSet needs at least one round");
    see_model_.assign(static_cast<std::size_t>(rounds) + 1, false);
    inject_learn_.assign(static_cast<std::size_t>(rounds) + 1, false);
  }

  // The white-box prompt+context injection configuration {see_model_r, inject_infer}.
  static AtkSet simple(int rounds) {
    AtkSet atk(rounds);
    atk.set_see_model(rounds).set_inject_infer();
    return atk;
  }

  int rounds() const { return rounds_; }

  bool see_model(int i) const { return see_model_.at(check_view_index(i)); }
  bool inject_learn(int i) const { return inject_learn_.at(check_learn_index(i)); }
  bool inject_infer() const { return inject_infer_; }
  bool black_box() const { return black_box_; }

  AtkSet& set_see_model(int i, bool on = true) {
    see_model_.at(check_view_index(i)) = on;
    return *this;
  }
  AtkSet& set_inject_learn(int i, bool on = true) {
    inject_learn_.at(check_learn_index(i)) = on;
    return *this;
  }
  AtkSet& set_inject_infer(bool on = true) {
    inject_infer_ = on;
    return *this;
  }
  AtkSet& set_black_box(bool on = true) {
    black_box_ = on;
    return *this;
  }

  bool any_inject_learn() const {
    for (int i = 1; i <= rounds_; ++i) {
      if (inject_learn_[i]) return true;
    }
    return false;
  }

  bool operator==(const AtkSet&) const = default;

  // Space separated flag list, e.g. "see_model_1 inject_infer".
  std::string to_string() const {
    std::vector<std::string> parts;
    for (int i = 0; i <= rounds_; ++i) {
      if (see_model_[i]) parts.push_back("see_model_" + std::to_string(i));
    }
    for (int i = 1; i <= rounds_; ++i) {
      if (inject_learn_[i]) parts.push_back("inject_learn_" + std::to_string(i));
    }
    if (inject_infer_) parts.emplace_back("inject_infer");
    if (black_box_) parts.emplace_back("black_box");
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += ' ';
      out += p;
    }
    return out;
  }

  // Inverse of to_string. Accepts "see_model_r"/"inject_learn_r" as aliases for the
  // last round, and commas as separators.
  static AtkSet parse(const std::string& text, int rounds) {
    AtkSet atk(rounds);
    std::string normalized = text;
    for (char& c : normalized) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(normalized);
    std::string flag;
    while (in >> flag) {
      if (flag == "inject_infer") {
        atk.set_inject_infer();
      } else if (flag == "black_box") {
        atk.set_black_box();
      } else if (flag.rfind("see_model_", 0) == 0) {
        atk.set_see_model(parse_index(flag.substr(10), rounds, flag));
      } else if (flag.rfind("inject_learn_", 0) == 0) {
        atk.set_inject_learn(parse_index(flag.substr(13), rounds, flag));
      } else if (flag != "none") {
        throw ConfigurationError("unknown ATK flag '" + flag + "'");
      }
    }
    return atk;
  }

 private:
  static int parse_index(const std::string& s, int rounds, const std::string& flag) {
    if (s == "r") return rounds;
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw ConfigurationError("bad ATK flag '" + flag + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ConfigurationError("bad ATK flag '" + flag + "'");
    }
  }

  std::size_t check_view_index(int i) const {
    if (i < 0 || i > rounds_) {
      throw ConfigurationError("see_model index " + std::to_string(i) + " outside 0.." + std::to_string(rounds_));
    }
    return static_cast<std::size_t>(i);
  }
  std::size_t check_learn_index(int i) const {
    if (i < 1 || i > rounds_) {
      throw ConfigurationError("inject_learn index " + std::to_string(i) + " outside 1.." + std::to_string(rounds_));
    }
    return static_cast<std::size_t>(i);
  }

  int rounds_;
  std::vector<bool> see_model_;
  std::vector<bool> inject_learn_;
  bool inject_infer_ = false;
  bool black_box_ = false;
};

}  // namespace aigame
