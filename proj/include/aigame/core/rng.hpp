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
#include <random>
#include <string_view>

namespace aigame {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Child seed of `parent` at position `child`. Distinct children give independent
// streams; the same (parent, child) pair always gives the same seed.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child) {
  return splitmix64(splitmix64(parent) ^ splitmix64(child + 0x632be59bd9b4e019ULL));
}

// Seed of trial `index` under `master_seed`.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
  return derive_seed(master_seed, index);
}

// Per-trial randomness. Every randomized procedure asks for its own stream keyed by
// (purpose, index), e.g. ("caio/gen", 2) for the CAIO's round-2 data generator. Two
// games run with the same trial seed therefore agree on every component they share,
// regardless of the order in which components are executed.
class Streams {
 public:
  explicit Streams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::mt19937_64 stream(std::string_view purpose, std::uint64_t index = 0) const {
    return std::mt19937_64(derive_seed(derive_seed(seed_, fnv1a(purpose)), index));
  }

 private:
  std::uint64_t seed_;
};

}  // namespace aigame
