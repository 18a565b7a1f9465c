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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aigame/core/atk.hpp"

namespace aigame {

// The attack-classification dimensions. Knowledge is "none" for data-based attacks,
// which need no model access at all.
struct Taxonomy {
  std::string attack_vector;       // data-based | prompt-based
  std::string attack_phase;        // learning | inference
  std::string knowledge;           // white-box | black-box | none
  std::string adversary_source;    // user | third-party | supply-chain
  std::string persistence;         // transient | persistent
  std::set<std::string> security_goal;  // subset of confidentiality, integrity, availability

  bool operator==(const Taxonomy&) const = default;
};

// One row of the category table. Rows that list several knowledge levels or sources
// accept any one of them; gray-box appears in the table but is never accepted since
// the games do not model it.
struct TaxonomyRow {
  std::string name;
  std::string attack_vector;
  std::string attack_phase;
  std::set<std::string> knowledge;
  std::set<std::string> security_goal;
  std::string persistence;
  std::set<std::string> adversary_source;
};

inline const std::vector<TaxonomyRow>& taxonomy_rows() {
  static const std::vector<TaxonomyRow> rows{
      {"prompt_injection", "prompt-based", "inference", {"white-box", "black-box", "gray-box"}, {"confidentiality"},
       "transient", {"user", "third-party"}},
      {"jailbreak", "prompt-based", "inference", {"white-box", "black-box", "gray-box"}, {"integrity"}, "transient",
       {"user"}},
      {"data_exfiltration", "prompt-based", "inference", {"black-box"}, {"confidentiality"}, "transient", {"user"}},
      {"membership_inference", "prompt-based", "inference", {"black-box"}, {"confidentiality"}, "transient", {"user"}},
      {"data_poisoning", "data-based", "learning", {"none"}, {"integrity", "availability"}, "persistent",
       {"supply-chain"}},
      {"backdoor", "data-based", "learning", {"none"}, {"integrity"}, "persistent", {"supply-chain"}},
  };
  return rows;
}

inline const TaxonomyRow* find_taxonomy_row(const std::string& category) {
  for (const auto& row : taxonomy_rows()) {
    if (row.name == category) return &row;
  }
  return nullptr;
}

// Accepted spellings of each dimension.
inline const std::map<std::string, std::set<std::string>>& taxonomy_domains() {
  static const std::map<std::string, std::set<std::string>> domains{
      {"attack_vector", {"data-based", "prompt-based"}},
      {"attack_phase", {"learning", "inference"}},
      {"knowledge", {"white-box", "black-box", "none"}},
      {"adversary_source", {"user", "third-party", "supply-chain"}},
      {"persistence", {"transient", "persistent"}},
      {"security_goal", {"confidentiality", "integrity", "availability"}},
  };
  return domains;
}

// Problems with a descriptor's dimensions, one message per problem. `category` is
// the reference row to match (if any); `atk` is checked against the knowledge and
// vector dimensions.
inline std::vector<std::string> taxonomy_problems(const Taxonomy& t, const std::optional<std::string>& category,
                                                  const AtkSet& atk) {
  std::vector<std::string> out;
  const auto& domains = taxonomy_domains();
  auto in_domain = [&](const char* field, const std::string& value) {
    if (domains.at(field).count(value) == 0) out.push_back(std::string(field) + " '" + value + "' is not a known value");
  };
  in_domain("attack_vector", t.attack_vector);
  in_domain("attack_phase", t.attack_phase);
  if (t.knowledge == "gray-box") {
    out.emplace_back("knowledge 'gray-box' is not modelled by the games");
  } else {
    in_domain("knowledge", t.knowledge);
  }
  in_domain("adversary_source", t.adversary_source);
  in_domain("persistence", t.persistence);
  if (t.security_goal.empty()) out.emplace_back("security_goal must name at least one goal");
  for (const auto& g : t.security_goal) in_domain("security_goal", g);

  if (category) {
    if (const TaxonomyRow* row = find_taxonomy_row(*category)) {
      auto mismatch = [&](const char* field, const std::string& got, const std::string& want) {
        out.push_back(std::string(field) + " is '" + got + "' but the reference row lists '" + want + "' for " + row->name);
      };
      if (t.attack_vector != row->attack_vector) mismatch("attack_vector", t.attack_vector, row->attack_vector);
      if (t.attack_phase != row->attack_phase) mismatch("attack_phase", t.attack_phase, row->attack_phase);
      if (t.persistence != row->persistence) mismatch("persistence", t.persistence, row->persistence);
      if (row->knowledge.count(t.knowledge) == 0) {
        out.push_back("knowledge '" + t.knowledge + "' is not listed in the reference row for " + row->name);
      }
      if (row->adversary_source.count(t.adversary_source) == 0) {
        out.push_back("adversary_source '" + t.adversary_source + "' is not listed in the reference row for " + row->name);
      }
      if (t.security_goal != row->security_goal) {
        out.push_back("security_goal differs from the reference goals for " + row->name);
      }
    }
  }

  const int r = atk.rounds();
  if (t.attack_vector == "data-based" && !atk.any_inject_learn()) {
    out.emplace_back("data-based attack without any inject_learn flag");
  }
  if (t.knowledge == "white-box" && !atk.see_model(r)) out.emplace_back("white-box attack without see_model_r");
  if (t.knowledge == "black-box") {
    if (!atk.black_box()) out.emplace_back("black-box attack without black_box");
    if (atk.see_model(r)) out.emplace_back("black-box attack with see_model_r");
  }
  return out;
}

}  // namespace aigame
