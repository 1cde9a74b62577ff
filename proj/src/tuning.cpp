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

#include "fracboost/tuning.hpp"

#include <cmath>
#include <stdexcept>

namespace fracboost {

std::string_view to_string(ControllerKind kind) {
  return kind == ControllerKind::Pid ? "pid" : "fopid";
}

std::vector<Bounds> search_bounds(ControllerKind kind, const SearchBox& box) {
  std::vector<Bounds> b{box.kp, box.ti, box.td};
  if (kind == ControllerKind::Fopid) {
    b.push_back(box.lambda);
    b.push_back(box.mu);
  }
  return b;
}

FopidParams decode(ControllerKind kind, std::span<const double> position) {
  const std::size_t expected = kind == ControllerKind::Pid ? 3 : 5;
  if (position.size() != expected) {
    throw std::invalid_argument("decode: wrong decision vector length");
  }
  FopidParams p;
  p.kp = position[0];
  p.ti = position[1];
  p.td = position[2];
  p.lambda = kind == ControllerKind::Fopid ? position[3] : 1.0;
  p.mu = kind == ControllerKind::Fopid ? position[4] : 1.0;
  return p;
}

Controller make_controller(ControllerKind kind, const FopidParams& params,
                           const TuningProblem& problem) {
  if (kind == ControllerKind::Pid) {
    return build_pid(params, problem.scenario.dt, problem.limits, problem.differentiator_tau);
  }
  return build_fopid(params, problem.ora, problem.scenario.dt, problem.limits,
                     problem.differentiator_tau);
}

double tuning_cost(ControllerKind kind, const FopidParams& params,
                   const TuningProblem& problem) {
  Controller controller;
  try {
    controller = make_controller(kind, params, problem);
  } catch (const std::invalid_argument&) {
    return problem.penalty;
  }
  Scenario scenario = problem.scenario;
  scenario.record_decimation = 0;
  const SimResult r =
      simulate(controller, problem.converter, PwmModulator(problem.f_sw), scenario);
  if (!r.stable || !std::isfinite(r.j_iae)) return problem.penalty;
  return r.j_iae;
}

TuningResult tune(ControllerKind kind, const TuningProblem& problem, AbcConfig cfg,
                  Execution execution) {
  problem.converter.validate();
  problem.ora.validate();
  problem.scenario.validate();
  problem.limits.validate();
  steps_per_period(PwmModulator(problem.f_sw), problem.scenario.dt);
  cfg.bounds = search_bounds(kind, problem.box);

  const Objective objective = [&](std::span<const double> x) {
    return tuning_cost(kind, decode(kind, x), problem);
  };

  TuningResult result;
  result.kind = kind;
  result.search = optimize(objective, cfg, execution);
  result.params = decode(kind, result.search.best.position);
  result.feasible = result.search.best.cost < problem.penalty;
  result.simulation = simulate(make_controller(kind, result.params, problem), problem.converter,
                               PwmModulator(problem.f_sw), problem.scenario);
  return result;
}

}  // namespace fracboost
