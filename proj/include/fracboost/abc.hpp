// Copyright 2026 The fracboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fracboost {

struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
};

/// Artificial Bee Colony settings. colony_size is the number of food sources
/// (one employed and one onlooker evaluation each per cycle).
struct AbcConfig {
  int colony_size = 10;
  int max_iterations = 20;
  int limit = 0;                   // 0 selects colony_size * dimension
  std::vector<Bounds> bounds;
  std::uint64_t seed = 1;
  std::size_t max_evaluations = 0; // 0 means no evaluation budget

  /// Throws std::invalid_argument on colony_size < 2, negative limit or
  /// iterations, an empty box, or any non-finite or lo >= hi bound.
  void validate() const;
  int effective_limit() const;
  std::size_t dimension() const { return bounds.size(); }
};

struct Candidate {
  std::vector<double> position;
  double cost = 0.0;
  int trials = 0;
};

struct IterationRecord {
  int iteration = 0;          // 0 is the initial population
  double best_cost = 0.0;     // global best so far
  double mean_cost = 0.0;     // mean over current food sources
  std::size_t evaluations = 0;
};

struct AbcResult {
  Candidate best;
  std::vector<IterationRecord> history;
  std::vector<Candidate> food_sources;
  std::size_t evaluations = 0;
};

/// Cost of a position. Must be safe to call concurrently from several threads
/// when the OpenMP execution is selected.
using Objective = std::function<double(std::span<const double>)>;

enum class Execution { Serial, OpenMP };

/// Evaluates objective at every point. The serial path is the reference; the
/// OpenMP path writes each cost to its own slot, so both give identical costs.
/// Non-finite costs are stored as +infinity.
void evaluate_batch(const Objective& objective, std::span<const std::vector<double>> points,
                    std::span<double> costs, Execution execution);

/// Minimizes objective over the box in cfg.
///
/// Each cycle runs an employed phase, an onlooker phase (roulette selection on
/// fitness 1/(1 + cost)) and a scout phase (re-seeding every source whose
/// trial counter exceeds the limit). All random draws of a phase are made on
/// one generator before the phase's evaluations are dispatched, so the result
/// does not depend on the execution mode or thread count.
AbcResult optimize(const Objective& objective, const AbcConfig& cfg,
                   Execution execution = Execution::OpenMP);

}  // namespace fracboost
