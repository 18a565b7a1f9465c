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
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aigame/core/error.hpp"
#include "aigame/core/stats.hpp"

namespace aigame {

inline constexpr const char* kAigameVersion = "1.0.0";

struct ScenarioRow {
  GameReport report;
  std::string verdict = "report";  // pass | fail | report (no expectation attached)
  std::string note;

  bool operator==(const ScenarioRow&) const;
};

// A named bound or property check with its signed slack (>= 0 means satisfied).
struct BoundCheck {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::string detail;

  bool operator==(const BoundCheck&) const = default;
};

// What a re-run must match to reproduce the numbers. Thread counts are left out on
// purpose: results do not depend on them.
struct Fingerprint {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double delta = 0.01;
  std::string version = kAigameVersion;
  std::size_t scenarios = 0;

  bool operator==(const Fingerprint&) const = default;
};

struct SuiteResult {
  std::vector<ScenarioRow> rows;
  std::vector<BoundCheck> checks;
  Fingerprint fingerprint;

  bool all_pass() const {
    for (const auto& r : rows) {
      if (r.verdict == "fail") return false;
    }
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  bool operator==(const SuiteResult&) const = default;
};

inline bool same_report(const GameReport& a, const GameReport& b) {
  return a.game == b.game && a.scenario == b.scenario && a.master_seed == b.master_seed && a.trials == b.trials &&
         a.wins == b.wins && a.failures == b.failures && a.baseline_p.has_value() == b.baseline_p.has_value() &&
         (!a.baseline_p || (a.baseline_p->num == b.baseline_p->num && a.baseline_p->den == b.baseline_p->den)) &&
         a.baseline_half_width == b.baseline_half_width && a.ci_delta == b.ci_delta &&
         a.ci_half_width == b.ci_half_width;
}

inline bool ScenarioRow::operator==(const ScenarioRow& o) const {
  return same_report(report, o.report) && verdict == o.verdict && note == o.note;
}

// ---- structured text (JSON) ----

inline nlohmann::json report_to_json(const GameReport& r) {
  nlohmann::json j{{"game", r.game},
                   {"scenario", r.scenario},
                   {"master_seed", r.master_seed},
                   {"trials", r.trials},
                   {"wins", r.wins},
                   {"failures", r.failures},
                   {"baseline_half_width", r.baseline_half_width},
                   {"ci_delta", r.ci_delta},
                   {"ci_half_width", r.ci_half_width}};
  if (r.baseline_p) {
    j["baseline_p"] = {{"num", r.baseline_p->num}, {"den", r.baseline_p->den}};
  } else {
    j["baseline_p"] = nullptr;
  }
  return j;
}

inline GameReport report_from_json(const nlohmann::json& j) {
  GameReport r;
  r.game = j.at("game").get<std::string>();
  r.scenario = j.at("scenario").get<std::string>();
  r.master_seed = j.at("master_seed").get<std::uint64_t>();
  r.trials = j.at("trials").get<std::size_t>();
  r.wins = j.at("wins").get<std::size_t>();
  r.failures = j.at("failures").get<std::size_t>();
  r.baseline_half_width = j.at("baseline_half_width").get<double>();
  r.ci_delta = j.at("ci_delta").get<double>();
  r.ci_half_width = j.at("ci_half_width").get<double>();
  if (!j.at("baseline_p").is_null()) {
    r.baseline_p = Rational{j.at("baseline_p").at("num").get<std::int64_t>(),
                            j.at("baseline_p").at("den").get<std::int64_t>()};
  }
  return r;
}

inline nlohmann::json suite_to_json(const SuiteResult& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : s.rows) {
    nlohmann::json j = report_to_json(row.report);
    j["verdict"] = row.verdict;
    j["note"] = row.note;
    // Derived numbers for readers; ignored on parse.
    j["win_rate"] = row.report.win_rate();
    if (auto a = row.report.advantage()) j["advantage"] = *a;
    rows.push_back(std::move(j));
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}, {"detail", c.detail}});
  }
  const auto& f = s.fingerprint;
  return {{"fingerprint",
           {{"suite", f.suite},
            {"seed", f.seed},
            {"trials", f.trials},
            {"delta", f.delta},
            {"version", f.version},
            {"scenarios", f.scenarios}}},
          {"rows", rows},
          {"checks", checks}};
}

inline SuiteResult suite_from_json(const nlohmann::json& j) {
  SuiteResult s;
  const auto& f = j.at("fingerprint");
  s.fingerprint.suite = f.at("suite").get<std::string>();
  s.fingerprint.seed = f.at("seed").get<std::uint64_t>();
  s.fingerprint.trials = f.at("trials").get<std::size_t>();
  s.fingerprint.delta = f.at("delta").get<double>();
  s.fingerprint.version = f.at("version").get<std::string>();
  s.fingerprint.scenarios = f.at("scenarios").get<std::size_t>();
  for (const auto& row : j.at("rows")) {
    s.rows.push_back({report_from_json(row), row.at("verdict").get<std::string>(), row.at("note").get<std::string>()});
  }
  for (const auto& c : j.at("checks")) {
    s.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("margin").get<double>(),
                        c.at("detail").get<std::string>()});
  }
  return s;
}

// ---- CSV ----

inline const char* kCsvHeader = "scenario,trials,wins,win_rate,baseline_p,advantage,ci,verdict";

inline std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void write_csv(std::ostream& out, const SuiteResult& s) {
  out << kCsvHeader << '\n';
  for (const auto& row : s.rows) {
    const GameReport& r = row.report;
    out << csv_field(r.scenario) << ',' << r.trials << ',' << r.wins << ',' << csv_number(r.win_rate()) << ',';
    if (r.baseline_p) out << csv_number(r.baseline_p->value());
    out << ',';
    if (auto a = r.advantage()) out << csv_number(*a);
    out << ',' << csv_number(r.ci_half_width) << ',' << row.verdict << '\n';
  }
}

inline std::string to_csv(const SuiteResult& s) {
  std::ostringstream out;
  write_csv(out, s);
  return out.str();
}

enum class ReportFormat { kCsv, kJson };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  throw ConfigurationError("unknown report format '" + s + "' (csv or json)");
}

inline std::string render_report(const SuiteResult& s, ReportFormat format) {
  if (format == ReportFormat::kCsv) return to_csv(s);
  return suite_to_json(s).dump(2) + "\n";
}

inline void emit_report(const SuiteResult& s, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigurationError("cannot write report to '" + path + "'");
  out << render_report(s, format);
  if (!out) throw ConfigurationError("failed writing report to '" + path + "'");
}

}  // namespace aigame
