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
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "aigame/core/atk.hpp"
#include "aigame/core/error.hpp"
#include "aigame/harness/taxonomy.hpp"

namespace aigame {

// Ids the scenario registry understands.
inline const std::set<std::string>& known_oracles() {
  static const std::set<std::string> ids{"catdog", "ngram", "dual"};
  return ids;
}
inline const std::set<std::string>& known_adversaries() {
  static const std::set<std::string> ids{
      "benign",          "label_flip",        "backdoor",   "backdoor_trivial",      "backdoor_clean",
      "elicitor",        "extractor",         "injector_direct", "injector_indirect", "injector_nomarker",
      "membership",      "membership_calibrated", "random_guess", "constant_guess"};
  return ids;
}
inline const std::set<std::string>& known_phis() {
  static const std::set<std::string> ids{"catdog", "harmless", "useful", "harmless_useful", "always_true"};
  return ids;
}
inline const std::set<std::string>& known_psis() {
  static const std::set<std::string> ids{"never", "verbatim"};
  return ids;
}
inline const std::set<std::string>& known_games() {
  static const std::set<std::string> ids{"completeness", "security", "simple_security", "dpd", "advantage"};
  return ids;
}

inline int oracle_rounds(const std::string& oracle) { return oracle == "dual" ? 2 : 1; }

// One row of a suite config: what to run and how the attack is classified.
struct ScenarioDescriptor {
  std::string name;
  std::optional<std::string> category;  // reference row to match; defaults to the name when it is one
  std::optional<Taxonomy> taxonomy;
  std::string oracle;
  std::string adversary = "benign";
  AtkSet atk;
  std::string phi;
  std::string psi = "never";
  bool psi_explicit = false;
  std::string game = "advantage";
  std::optional<std::size_t> trials;
  std::map<std::string, std::string> params;
  // Expectations turned into the row verdict. No expectation means the row only reports.
  std::optional<double> expect_min_advantage;
  std::optional<double> expect_max_advantage;
  std::optional<double> expect_min_win_rate;
  bool expect_advantage_zero = false;  // |Adv| within its CI
  bool expect_significant = false;     // Adv - CI > 0

  bool has_expectation() const {
    return expect_min_advantage || expect_max_advantage || expect_min_win_rate || expect_advantage_zero ||
           expect_significant;
  }

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::logic_error&) {
      throw ConfigurationError("scenario '" + name + "': param " + key + " = '" + it->second + "' is not a number");
    }
  }
  std::size_t count_param(const std::string& key, std::size_t fallback) const {
    const double v = param(key, static_cast<double>(fallback));
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw ConfigurationError("scenario '" + name + "': param " + key + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
  }
  std::string text_param(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct SuiteConfig {
  std::string name = "suite";
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  double delta = 0.01;
  unsigned jobs = 1;
  std::vector<ScenarioDescriptor> scenarios;
};

namespace detail {

inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys{
      "category", "attack_vector", "attack_phase", "knowledge", "adversary_source", "persistence", "security_goal",
      "oracle", "adversary", "atk", "phi", "psi", "game", "trials", "params", "expect_min_advantage",
      "expect_max_advantage", "expect_min_win_rate", "expect_advantage_zero", "expect_significant"};
  return keys;
}

inline std::set<std::string> split_set(const std::string& text) {
  std::set<std::string> out;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::string word;
  while (in >> word) out.insert(word);
  return out;
}

inline std::map<std::string, std::string> parse_params(const std::string& text, std::vector<std::string>& problems) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string pair;
  while (in >> pair) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      problems.push_back("param '" + pair + "' is not key=value");
      continue;
    }
    out[pair.substr(0, eq)] = pair.substr(eq + 1);
  }
  return out;
}

inline std::optional<double> parse_double(const std::string& key, const std::string& text,
                                          std::vector<std::string>& problems) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  problems.push_back(key + " = '" + text + "' is not a number");
  return std::nullopt;
}

inline bool parse_bool(const std::string& key, const std::string& text, std::vector<std::string>& problems) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  problems.push_back(key + " = '" + text + "' is not a boolean");
  return false;
}

inline ScenarioDescriptor parse_scenario(const std::string& name, const boost::property_tree::ptree& section,
                                         std::vector<std::string>& problems) {
  ScenarioDescriptor d;
  d.name = name;
  auto get = [&section](const std::string& key) -> std::optional<std::string> {
    auto child = section.get_child_optional(key);
    if (!child) return std::nullopt;
    return child->get_value<std::string>();
  };
  for (const auto& [key, value] : section) {
    (void)value;
    if (scenario_keys().count(key) == 0) problems.push_back("unknown key '" + key + "'");
  }

  if (auto v = get("category")) d.category = *v;
  if (!d.category && find_taxonomy_row(name) != nullptr) d.category = name;
  if (d.category && find_taxonomy_row(*d.category) == nullptr) {
    problems.push_back("category '" + *d.category + "' is not a reference taxonomy row");
  }

  const std::vector<std::string> tax_keys{"attack_vector", "attack_phase", "knowledge", "adversary_source",
                                          "persistence", "security_goal"};
  std::size_t present = 0;
  for (const auto& k : tax_keys) present += get(k) ? 1 : 0;
  if (present > 0 || d.category) {
    if (present != tax_keys.size()) {
      for (const auto& k : tax_keys) {
        if (!get(k)) problems.push_back("taxonomy field '" + k + "' is missing");
      }
    } else {
      Taxonomy t;
      t.attack_vector = *get("attack_vector");
      t.attack_phase = *get("attack_phase");
      t.knowledge = *get("knowledge");
      t.adversary_source = *get("adversary_source");
      t.persistence = *get("persistence");
      t.security_goal = split_set(*get("security_goal"));
      d.taxonomy = t;
    }
  }

  if (auto v = get("oracle")) {
    d.oracle = *v;
    if (known_oracles().count(d.oracle) == 0) problems.push_back("unknown oracle id '" + d.oracle + "'");
  } else {
    problems.emplace_back("oracle is required");
  }
  if (auto v = get("adversary")) d.adversary = *v;
  if (known_adversaries().count(d.adversary) == 0) problems.push_back("unknown adversary id '" + d.adversary + "'");
  if (auto v = get("phi")) {
    d.phi = *v;
    if (known_phis().count(d.phi) == 0) problems.push_back("unknown phi id '" + d.phi + "'");
  } else {
    problems.emplace_back("phi is required");
  }
  if (auto v = get("psi")) {
    d.psi = *v;
    d.psi_explicit = true;
    if (known_psis().count(d.psi) == 0) problems.push_back("unknown psi id '" + d.psi + "'");
  }
  if (auto v = get("game")) d.game = *v;
  if (known_games().count(d.game) == 0) problems.push_back("unknown game '" + d.game + "'");

  const int rounds = oracle_rounds(d.oracle);
  try {
    d.atk = AtkSet::parse(get("atk").value_or(""), rounds);
  } catch (const ConfigurationError& e) {
    problems.emplace_back(e.what());
    d.atk = AtkSet(rounds);
  }
  if (d.atk.any_inject_learn() && !d.psi_explicit) {
    problems.emplace_back("inject_learn granted: an explicit psi is required");
  }

  if (auto v = get("trials")) {
    if (auto t = parse_double("trials", *v, problems)) {
      if (*t < 1 || *t != static_cast<double>(static_cast<std::size_t>(*t))) {
        problems.emplace_back("trials must be a positive integer");
      } else {
        d.trials = static_cast<std::size_t>(*t);
      }
    }
  }
  if (auto v = get("params")) d.params = parse_params(*v, problems);
  if (auto v = get("expect_min_advantage")) d.expect_min_advantage = parse_double("expect_min_advantage", *v, problems);
  if (auto v = get("expect_max_advantage")) d.expect_max_advantage = parse_double("expect_max_advantage", *v, problems);
  if (auto v = get("expect_min_win_rate")) d.expect_min_win_rate = parse_double("expect_min_win_rate", *v, problems);
  if (auto v = get("expect_advantage_zero")) d.expect_advantage_zero = parse_bool("expect_advantage_zero", *v, problems);
  if (auto v = get("expect_significant")) d.expect_significant = parse_bool("expect_significant", *v, problems);

  if (d.taxonomy) {
    for (auto& p : taxonomy_problems(*d.taxonomy, d.category, d.atk)) problems.push_back(std::move(p));
  }
  return d;
}

}  // namespace detail

// Parses a suite config held in memory. Every problem found is collected and reported
// together, prefixed by its section, in one ConfigurationError.
inline SuiteConfig parse_config(std::istream& in, const std::string& origin = "<config>") {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigurationError(origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  SuiteConfig cfg;
  std::vector<std::string> problems;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      problems.push_back("top-level key '" + section + "' outside any section");
      continue;
    }
    if (section == "suite") {
      for (const auto& [key, value] : body) {
        const std::string v = value.get_value<std::string>();
        std::vector<std::string> local;
        if (key == "name") {
          cfg.name = v;
        } else if (key == "seed") {
          try {
            std::size_t used = 0;
            cfg.seed = std::stoull(v, &used);
            if (used != v.size()) local.emplace_back("seed is not an integer");
          } catch (const std::logic_error&) {
            local.emplace_back("seed is not an integer");
          }
        } else if (key == "trials") {
          auto t = detail::parse_double("trials", v, local);
          if (t && (*t < 1 || *t != static_cast<double>(static_cast<std::size_t>(*t)))) {
            local.emplace_back("trials must be a positive integer");
          } else if (t) {
            cfg.trials = static_cast<std::size_t>(*t);
          }
        } else if (key == "delta") {
          auto d = detail::parse_double("delta", v, local);
          if (d && !(*d > 0.0 && *d < 1.0)) local.emplace_back("delta must lie in (0, 1)");
          if (d) cfg.delta = *d;
        } else if (key == "jobs") {
          auto j = detail::parse_double("jobs", v, local);
          if (j) cfg.jobs = static_cast<unsigned>(*j);
        } else {
          local.push_back("unknown key '" + key + "'");
        }
        for (auto& p : local) problems.push_back("[suite] " + p);
      }
      continue;
    }
    std::vector<std::string> local;
    ScenarioDescriptor d = detail::parse_scenario(section, body, local);
    for (auto& p : local) problems.push_back("[" + section + "] " + p);
    cfg.scenarios.push_back(std::move(d));
  }
  if (!problems.empty()) {
    std::string msg = origin + ": " + std::to_string(problems.size()) + " problem(s)";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigurationError(msg);
  }
  return cfg;
}

inline SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

}  // namespace aigame
