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
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "aigame/core/error.hpp"
#include "aigame/core/types.hpp"

namespace aigame {

// One whitespace-tokenised line per item; blank lines are skipped.
inline SourceSet read_text_source(std::istream& in) {
  std::vector<DataItem> items;
  std::string line;
  while (std::getline(in, line)) {
    Tokens tokens = split_words(line);
    if (!tokens.empty()) items.push_back(make_text_item(std::move(tokens), {{"harmful", "0"}}));
  }
  return SourceSet(std::string(kTextSchema), std::move(items));
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

// Header f1,...,fd,label followed by one labelled vector per row.
inline SourceSet read_vector_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("vector CSV is empty");
  const auto header = detail::split_csv_line(line);
  if (header.size() < 2 || header.back() != "label") throw SchemaError("vector CSV header must be f1..fd,label");
  const std::size_t dim = header.size() - 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (header[k] != "f" + std::to_string(k + 1)) {
      throw SchemaError("vector CSV column " + std::to_string(k + 1) + " must be named f" + std::to_string(k + 1));
    }
  }
  std::vector<DataItem> items;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != dim + 1) throw SchemaError("vector CSV row " + std::to_string(row) + " has wrong arity");
    Features x;
    for (std::size_t k = 0; k < dim; ++k) {
      try {
        std::size_t used = 0;
        x.push_back(std::stod(cells[k], &used));
        if (used != cells[k].size()) throw std::invalid_argument(cells[k]);
      } catch (const std::logic_error&) {
        throw SchemaError("vector CSV row " + std::to_string(row) + ": '" + cells[k] + "' is not a number");
      }
    }
    if (cells[dim].empty()) throw SchemaError("vector CSV row " + std::to_string(row) + " has an empty label");
    items.push_back(make_vector_item(std::move(x), cells[dim]));
  }
  return SourceSet(std::string(kCatDogSchema), std::move(items));
}

inline SourceSet load_text_source(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open text corpus '" + path + "'");
  return read_text_source(in);
}

inline SourceSet load_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open vector CSV '" + path + "'");
  return read_vector_csv(in);
}

}  // namespace aigame
