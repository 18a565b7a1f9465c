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

#include <stdexcept>
#include <string>

namespace aigame {

// Bad parameters, unknown ids, flag/round mismatches. Raised before any trial runs.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value of the wrong kind reached a predicate or an oracle procedure.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric argument outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A learner could not produce a model from the corpus it was given (e.g. one class
// missing). Games count these trials as failures, never as wins or losses.
class DegenerateCorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sub-oracle broke its output contract (a BAIO answering something other than
// accept/reject).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A reduction adversary was asked to simulate a view it has no access to.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game's hard precondition failed (e.g. the simple game run with other flags).
class AssertionFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class QueryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aigame
