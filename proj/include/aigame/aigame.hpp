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

#include "aigame/adversaries/adversary.hpp"
#include "aigame/adversaries/canned.hpp"
#include "aigame/adversaries/dpd.hpp"
#include "aigame/adversaries/recording.hpp"
#include "aigame/core/atk.hpp"
#include "aigame/core/error.hpp"
#include "aigame/core/json_io.hpp"
#include "aigame/core/predicate.hpp"
#include "aigame/core/rng.hpp"
#include "aigame/core/stats.hpp"
#include "aigame/core/trace.hpp"
#include "aigame/core/types.hpp"
#include "aigame/dual/composition.hpp"
#include "aigame/dual/dual.hpp"
#include "aigame/dual/reduction.hpp"
#include "aigame/games/baseline.hpp"
#include "aigame/games/checker.hpp"
#include "aigame/games/config.hpp"
#include "aigame/games/dpd.hpp"
#include "aigame/games/security.hpp"
#include "aigame/harness/agent_demo.hpp"
#include "aigame/harness/composition_suite.hpp"
#include "aigame/harness/config.hpp"
#include "aigame/harness/hybrid_chain.hpp"
#include "aigame/harness/report.hpp"
#include "aigame/harness/scenarios.hpp"
#include "aigame/harness/taxonomy.hpp"
#include "aigame/oracles/catdog.hpp"
#include "aigame/oracles/corpus_io.hpp"
#include "aigame/oracles/filter.hpp"
#include "aigame/oracles/model.hpp"
#include "aigame/oracles/ngram.hpp"
#include "aigame/oracles/oracle_spec.hpp"
#include "aigame/oracles/text_world.hpp"
