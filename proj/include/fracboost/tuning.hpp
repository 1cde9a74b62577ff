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

#include <span>
#include <string_view>
#include <vector>

#include "fracboost/abc.hpp"
#include "fracboost/fopid.hpp"
#include "fracboost/plant.hpp"
#include "fracboost/simloop.hpp"

namespace fracboost {

enum class ControllerKind { Pid, Fopid };

std::string_view to_string(ControllerKind kind);

/// Per-parameter search ranges.
struct SearchBox {
  Bounds kp{0.1, 10.0};
  Bounds ti{1e-5, 1e-2};
  Bounds td{1e-4, 0.1};
  Bounds lambda{0.1, 1.2};
  Bounds mu{0.1, 1.2};
};

/// Everything needed to score one controller on the converter.
struct TuningProblem {
  ConverterParams converter;
  double f_sw = 10e3;
  OraBand ora;
  Scenario scenario;
  SaturationLimits limits;
  double differentiator_tau = 0.0;  // 0 selects 2*dt
  SearchBox box;
  double penalty = 1e6;
};

/// Decision vector layout: [kp, ti, td] for PID, [kp, ti, td, lambda, mu] for FOPID.
std::vector<Bounds> search_bounds(ControllerKind kind, const SearchBox& box);
FopidParams decode(ControllerKind kind, std::span<const double> position);

/// Builds the controller for problem.scenario.dt.
Controller make_controller(ControllerKind kind, const FopidParams& params,
                           const TuningProblem& problem);

/// Closed-loop J_IAE, or problem.penalty when the breaker fires or the
/// parameters are rejected. Records no trace.
double tuning_cost(ControllerKind kind, const FopidParams& params, const TuningProblem& problem);

struct TuningResult {
  ControllerKind kind = ControllerKind::Fopid;
  FopidParams params;
  SimResult simulation;  // re-run of the best controller, with trace
  AbcResult search;
  bool feasible = false;  // false when every evaluation hit the penalty
};

/// ABC search over the box; cfg.bounds is replaced by the box of kind.
TuningResult tune(ControllerKind kind, const TuningProblem& problem, AbcConfig cfg,
                  Execution execution = Execution::OpenMP);

inline TuningResult tune_fopid(const TuningProblem& problem, AbcConfig cfg,
                               Execution execution = Execution::OpenMP) {
  return tune(ControllerKind::Fopid, problem, std::move(cfg), execution);
}

/// lambda and mu of the result are exactly 1.
inline TuningResult tune_pid(const TuningProblem& problem, AbcConfig cfg,
                             Execution execution = Execution::OpenMP) {
  return tune(ControllerKind::Pid, problem, std::move(cfg), execution);
}

}  // namespace fracboost
