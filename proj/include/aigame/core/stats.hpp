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
#include <numeric>
#include <optional>
#include <string>

#include "aigame/core/error.hpp"

namespace aigame {

// Exact probability as counts. Reports keep these so every derived number can be
// recomputed from the raw tallies.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational reduced() const {
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return g == 0 ? *this : Rational{num / g, den / g};
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

inline double advantage(double win_rate, double baseline_p) {
  if (!(win_rate >= 0.0 && win_rate <= 1.0) || !(baseline_p >= 0.0 && baseline_p <= 1.0)) {
    throw DomainError("advantage arguments must lie in [0, 1]");
  }
  return win_rate - (1.0 - baseline_p);
}

// Exact form: wins/trials - (1 - p).
inline Rational advantage(const Rational& win_rate, const Rational& baseline_p) {
  if (win_rate.den <= 0 || baseline_p.den <= 0 || win_rate.num < 0 || win_rate.num > win_rate.den ||
      baseline_p.num < 0 || baseline_p.num > baseline_p.den) {
    throw DomainError("advantage arguments must lie in [0, 1]");
  }
  return Rational{win_rate.num * baseline_p.den - (baseline_p.den - baseline_p.num) * win_rate.den,
                  win_rate.den * baseline_p.den}
      .reduced();
}

// Two-sided Hoeffding half-width for the mean of `trials` Bernoulli draws at failure
// probability `delta`.
inline double hoeffding_half_width(std::size_t trials, double delta) {
  if (trials < 1) throw DomainError("hoeffding_half_width needs at least one trial");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(trials)));
}

struct GameReport {
  std::string game;
  std::string scenario;
  std::uint64_t master_seed = 0;
  std::size_t trials = 0;    // trials that produced a verdict
  std::size_t wins = 0;
  std::size_t failures = 0;  // degenerate-oracle trials, excluded from the rates
  std::optional<Rational> baseline_p;
  double baseline_half_width = 0.0;  // estimation error of baseline_p, 0 when it is exact
  double ci_delta = 0.01;
  double ci_half_width = 0.0;        // of the advantage when a baseline is present, else of the win rate

  Rational win_rate_exact() const {
    return Rational{static_cast<std::int64_t>(wins), static_cast<std::int64_t>(trials == 0 ? 1 : trials)};
  }
  double win_rate() const { return trials == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(trials); }

  std::optional<Rational> advantage_exact() const {
    if (!baseline_p || trials == 0) return std::nullopt;
    return aigame::advantage(win_rate_exact(), *baseline_p);
  }
  std::optional<double> advantage() const {
    auto a = advantage_exact();
    if (!a) return std::nullopt;
    return a->value();
  }

  // Half-width of the win rate alone, independent of any baseline error.
  double win_rate_half_width() const { return trials == 0 ? 1.0 : hoeffding_half_width(trials, ci_delta); }
};

}  // namespace aigame
