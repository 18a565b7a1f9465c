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

// aigame: runs the security games, the hybrid chain, the composition check and the
// agent demo, and writes CSV or JSON reports.
//
// Exit status: 0 every verdict passed, 1 some bound or expectation failed,
// 2 bad flags, config or input.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aigame/aigame.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr const char* kOutDirEnv = "AIGAME_OUT_DIR";

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> delta;
  std::optional<unsigned> jobs;
  std::string out;
  std::string format = "csv";
  std::vector<std::string> scenarios;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* cfg = sub->add_option("--config", c.config, "Scenario config file (INI)");
  if (needs_config) cfg->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "Master seed (overrides the config)");
  sub->add_option("--trials", c.trials, "Trials per game (overrides the config)")->check(CLI::PositiveNumber);
  sub->add_option("--delta", c.delta, "Hoeffding failure probability")->check(CLI::Range(1e-12, 0.999999));
  sub->add_option("--jobs", c.jobs, "Worker threads; 0 = hardware concurrency");
  sub->add_option("--out", c.out, "Report path (default: $AIGAME_OUT_DIR/<command>.<format>, else stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

// [suite] defaults from --config when given, then flag overrides.
aigame::SuiteConfig base_config(const Common& c) {
  aigame::SuiteConfig cfg = c.config.empty() ? aigame::SuiteConfig{} : aigame::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.trials) {
    cfg.trials = *c.trials;
    for (auto& d : cfg.scenarios) d.trials = *c.trials;
  }
  if (c.delta) cfg.delta = *c.delta;
  if (c.jobs) cfg.jobs = *c.jobs;
  return cfg;
}

// Keeps the scenarios named by --scenario, in config order.
void select_scenarios(aigame::SuiteConfig& cfg, const std::vector<std::string>& names) {
  if (names.empty()) return;
  std::set<std::string> wanted(names.begin(), names.end());
  std::vector<aigame::ScenarioDescriptor> kept;
  for (auto& d : cfg.scenarios) {
    if (wanted.erase(d.name)) kept.push_back(std::move(d));
  }
  if (!wanted.empty()) throw aigame::ConfigurationError("no scenario named '" + *wanted.begin() + "' in the config");
  cfg.scenarios = std::move(kept);
}

std::string output_path(const Common& c, const std::string& command) {
  if (!c.out.empty()) return c.out;
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (command + "." + c.format)).string();
  }
  return {};
}

int finish(const aigame::SuiteResult& s, const Common& c, const std::string& command) {
  const aigame::ReportFormat fmt = aigame::parse_format(c.format);
  const std::string path = output_path(c, command);
  if (path.empty()) {
    std::cout << aigame::render_report(s, fmt);
  } else {
    aigame::emit_report(s, fmt, path);
  }
  for (const auto& row : s.rows) {
    if (row.verdict == "fail") std::cerr << "FAIL " << row.report.scenario << ": " << row.note << "\n";
  }
  for (const auto& check : s.checks) {
    std::cerr << (check.pass ? "pass " : "FAIL ") << check.name;
    if (!check.detail.empty()) std::cerr << " (" << check.detail << ")";
    std::cerr << "\n";
  }
  return s.all_pass() ? kExitPass : kExitFail;
}

// completeness / security / dpd: the config's scenarios forced into one game family.
int run_game_command(const std::string& command, const Common& c) {
  aigame::SuiteConfig cfg = base_config(c);
  const bool explicit_selection = !c.scenarios.empty();
  select_scenarios(cfg, c.scenarios);
  std::vector<aigame::ScenarioDescriptor> kept;
  for (auto& d : cfg.scenarios) {
    const bool dpd = aigame::is_dpd_adversary(d.adversary);
    if (command == "completeness") {
      d.game = "completeness";
    } else if (command == "dpd") {
      if (!dpd) {
        if (explicit_selection) throw aigame::ConfigurationError("scenario '" + d.name + "' has no DPD adversary");
        continue;
      }
      d.game = "dpd";
    } else {
      if (dpd) {
        if (explicit_selection) throw aigame::ConfigurationError("scenario '" + d.name + "' is a DPD scenario");
        continue;
      }
      if (d.game == "completeness" || d.game == "dpd") d.game = "advantage";
    }
    kept.push_back(std::move(d));
  }
  cfg.scenarios = std::move(kept);
  cfg.name += "/" + command;
  return finish(aigame::run_suite(cfg, cfg.jobs), c, command);
}

std::vector<double> parse_noise_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    for (const auto& tok : aigame::comma_tokens(item)) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !(v >= 0.0)) throw std::invalid_argument(tok);
        out.push_back(v);
      } catch (const std::logic_error&) {
        throw aigame::ConfigurationError("--noise: '" + tok + "' is not a non-negative number");
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aigame: game-based security checks for toy AI oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aigame::kAigameVersion));

  Common common;

  auto* completeness = app.add_subcommand("completeness", "Completeness probability of each scenario's oracle");
  add_common(completeness, common, true);
  completeness->add_option("--scenario", common.scenarios, "Run only these scenarios");

  auto* security = app.add_subcommand("security", "Security games with baseline-corrected advantage");
  add_common(security, common, true);
  security->add_option("--scenario", common.scenarios, "Run only these scenarios");

  auto* dpd = app.add_subcommand("dpd", "Data-privacy distinguishing games");
  add_common(dpd, common, true);
  dpd->add_option("--scenario", common.scenarios, "Run only these scenarios");

  auto* suite = app.add_subcommand("suite", "Every scenario of a config, each with its configured game");
  add_common(suite, common, true);
  suite->add_option("--scenario", common.scenarios, "Run only these scenarios");

  std::size_t chain_n = 8;
  std::vector<std::string> noise_items{"0", "1000"};
  auto* hybrid = app.add_subcommand("hybrid-chain", "DPD hybrid chain on the nearest-centroid oracle");
  add_common(hybrid, common, false);
  hybrid->add_option("--n", chain_n, "Corpus size and chain length")->check(CLI::PositiveNumber);
  hybrid->add_option("--noise", noise_items, "Centroid noise levels (comma separated)");

  std::string baio_kind = "learned";
  std::vector<std::string> dual_adversaries;
  auto* composition = app.add_subcommand("composition", "Dual-construction composition bounds and reductions");
  add_common(composition, common, false);
  composition->add_option("--baio", baio_kind, "learned, accept_all or reject_all")
      ->check(CLI::IsMember({"learned", "accept_all", "reject_all"}));
  composition->add_option("--adversary", dual_adversaries, "Dual-game adversaries (default: all shipped)");

  auto* agent = app.add_subcommand("agent-demo", "Two-step email agent, clean and poisoned, with and without filter");
  add_common(agent, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (completeness->parsed()) return run_game_command("completeness", common);
    if (security->parsed()) return run_game_command("security", common);
    if (dpd->parsed()) return run_game_command("dpd", common);
    if (suite->parsed()) {
      aigame::SuiteConfig cfg = base_config(common);
      select_scenarios(cfg, common.scenarios);
      return finish(aigame::run_suite(cfg, cfg.jobs), common, "suite");
    }
    if (hybrid->parsed()) {
      const aigame::SuiteConfig base = base_config(common);
      std::vector<aigame::HybridChainReport> chains;
      for (double noise : parse_noise_list(noise_items)) {
        aigame::HybridChainConfig h;
        h.n = chain_n;
        h.noise_scale = noise;
        h.seed = base.seed;
        h.delta = base.delta;
        h.jobs = base.jobs;
        if (common.trials) h.trials = *common.trials;
        chains.push_back(aigame::run_hybrid_chain(h));
      }
      return finish(aigame::hybrid_chain_suite(chains, "hybrid-chain"), common, "hybrid-chain");
    }
    if (composition->parsed()) {
      const aigame::SuiteConfig base = base_config(common);
      aigame::CompositionSuiteConfig cc;
      cc.seed = base.seed;
      cc.delta = base.delta;
      cc.jobs = base.jobs;
      if (common.trials) cc.trials = *common.trials;
      cc.baio = aigame::parse_baio_kind(baio_kind);
      if (!dual_adversaries.empty()) cc.adversaries = dual_adversaries;
      return finish(aigame::composition_suite_result(aigame::run_composition_suite(cc)), common, "composition");
    }
    if (agent->parsed()) {
      const aigame::SuiteConfig base = base_config(common);
      const aigame::AgentDemoReport rep = aigame::run_agent_demo(base.seed);
      return finish(aigame::agent_demo_suite(rep, base.seed), common, "agent-demo");
    }
  } catch (const std::exception& e) {
    std::cerr << "aigame: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
