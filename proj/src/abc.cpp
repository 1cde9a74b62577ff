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

#include "fracboost/abc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>

namespace fracboost {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double sanitize(double cost) { return std::isnan(cost) ? kInfinity : cost; }

double fitness(double cost) {
  return cost >= 0.0 ? 1.0 / (1.0 + cost) : 1.0 + std::abs(cost);
}

struct Proposal {
  std::size_t source = 0;
  std::vector<double> position;
};

class Colony {
 public:
  Colony(const Objective& objective, const AbcConfig& cfg, Execution execution)
      : objective_(objective), cfg_(cfg), execution_(execution), rng_(cfg.seed) {
    best_.cost = kInfinity;
  }

  AbcResult run() {
    initialize();
    record(0);
    for (int iteration = 1; iteration <= cfg_.max_iterations && !exhausted(); ++iteration) {
      employed_phase();
      onlooker_phase();
      scout_phase();
      record(iteration);
    }
    AbcResult result;
    result.best = best_;
    result.history = std::move(history_);
    result.food_sources = std::move(sources_);
    result.evaluations = evaluations_;
    return result;
  }

 private:
  std::size_t dim() const { return cfg_.bounds.size(); }
  std::size_t colony() const { return static_cast<std::size_t>(cfg_.colony_size); }
  bool exhausted() const {
    return cfg_.max_evaluations > 0 && evaluations_ >= cfg_.max_evaluations;
  }

  std::vector<double> random_position() {
    std::vector<double> x(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      std::uniform_real_distribution<double> u(cfg_.bounds[j].lo, cfg_.bounds[j].hi);
      x[j] = u(rng_);
    }
    return x;
  }

  // v_ij = x_ij + phi * (x_ij - x_kj), phi in [-1, 1], k != i, clipped to the box.
  std::vector<double> neighbour(std::size_t i) {
    std::uniform_int_distribution<std::size_t> pick_dim(0, dim() - 1);
    std::uniform_int_distribution<std::size_t> pick_partner(0, colony() - 2);
    std::uniform_real_distribution<double> phi_dist(-1.0, 1.0);
    const std::size_t j = pick_dim(rng_);
    std::size_t k = pick_partner(rng_);
    if (k >= i) ++k;
    const double phi = phi_dist(rng_);

    std::vector<double> v = sources_[i].position;
    const double xij = sources_[i].position[j];
    v[j] = std::clamp(xij + phi * (xij - sources_[k].position[j]), cfg_.bounds[j].lo,
                      cfg_.bounds[j].hi);
    return v;
  }

  // Evaluates as many proposals as the budget allows; returns their costs.
  std::vector<double> evaluate(std::vector<Proposal>& proposals) {
    if (cfg_.max_evaluations > 0) {
      const std::size_t remaining = cfg_.max_evaluations - evaluations_;
      if (proposals.size() > remaining) proposals.resize(remaining);
    }
    std::vector<std::vector<double>> points;
    points.reserve(proposals.size());
    for (const auto& p : proposals) points.push_back(p.position);
    std::vector<double> costs(points.size());
    evaluate_batch(objective_, points, costs, execution_);
    evaluations_ += points.size();
    for (std::size_t m = 0; m < points.size(); ++m) {
      if (costs[m] < best_.cost) {
        best_.position = points[m];
        best_.cost = costs[m];
        best_.trials = 0;
      }
    }
    return costs;
  }

  void greedy_apply(const std::vector<Proposal>& proposals, const std::vector<double>& costs) {
    for (std::size_t m = 0; m < costs.size(); ++m) {
      Candidate& src = sources_[proposals[m].source];
      if (costs[m] < src.cost) {
        src.position = proposals[m].position;
        src.cost = costs[m];
        src.trials = 0;
      } else {
        ++src.trials;
      }
    }
  }

  void initialize() {
    std::vector<Proposal> proposals(colony());
    for (std::size_t i = 0; i < colony(); ++i) proposals[i] = {i, random_position()};
    const std::vector<double> costs = evaluate(proposals);
    sources_.resize(colony());
    for (std::size_t i = 0; i < colony(); ++i) {
      sources_[i].position = std::move(proposals[i].position);
      sources_[i].cost = i < costs.size() ? costs[i] : kInfinity;
      sources_[i].trials = 0;
    }
  }

  void employed_phase() {
    if (exhausted()) return;
    std::vector<Proposal> proposals(colony());
    for (std::size_t i = 0; i < colony(); ++i) proposals[i] = {i, neighbour(i)};
    greedy_apply(proposals, evaluate(proposals));
  }

  void onlooker_phase() {
    if (exhausted()) return;
    std::vector<double> cumulative(colony());
    double total = 0.0;
    for (std::size_t i = 0; i < colony(); ++i) {
      total += fitness(sources_[i].cost);
      cumulative[i] = total;
    }
    // Every source infinitely bad: fall back to uniform selection.
    if (!(total > 0.0)) {
      for (std::size_t i = 0; i < colony(); ++i) cumulative[i] = static_cast<double>(i + 1);
      total = static_cast<double>(colony());
    }
    std::uniform_real_distribution<double> spin(0.0, total);
    std::vector<Proposal> proposals(colony());
    for (std::size_t m = 0; m < colony(); ++m) {
      const double r = spin(rng_);
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
      const auto i = std::min<std::size_t>(it - cumulative.begin(), colony() - 1);
      proposals[m] = {i, neighbour(i)};
    }
    greedy_apply(proposals, evaluate(proposals));
  }

  void scout_phase() {
    if (exhausted()) return;
    const int limit = cfg_.effective_limit();
    std::vector<Proposal> proposals;
    for (std::size_t i = 0; i < colony(); ++i) {
      if (sources_[i].trials > limit) proposals.push_back({i, random_position()});
    }
    if (proposals.empty()) return;
    const std::vector<double> costs = evaluate(proposals);
    for (std::size_t m = 0; m < costs.size(); ++m) {
      Candidate& src = sources_[proposals[m].source];
      src.position = proposals[m].position;
      src.cost = costs[m];
      src.trials = 0;
    }
  }

  void record(int iteration) {
    double sum = 0.0;
    for (const auto& s : sources_) sum += s.cost;
    history_.push_back({iteration, best_.cost, sum / static_cast<double>(colony()),
                        evaluations_});
  }

  const Objective& objective_;
  const AbcConfig& cfg_;
  Execution execution_;
  std::mt19937_64 rng_;
  std::vector<Candidate> sources_;
  Candidate best_;
  std::vector<IterationRecord> history_;
  std::size_t evaluations_ = 0;
};

}  // namespace

void AbcConfig::validate() const {
  if (colony_size < 2) throw std::invalid_argument("ABC: colony_size must be >= 2");
  if (max_iterations < 0) throw std::invalid_argument("ABC: max_iterations must be >= 0");
  if (limit < 0) throw std::invalid_argument("ABC: limit must be >= 0 (0 selects the default)");
  if (bounds.empty()) throw std::invalid_argument("ABC: at least one dimension is required");
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      throw std::invalid_argument("ABC: every bound must be finite with lo < hi");
    }
  }
  if (max_evaluations > 0 && max_evaluations < static_cast<std::size_t>(colony_size)) {
    throw std::invalid_argument("ABC: evaluation budget smaller than the colony");
  }
}

int AbcConfig::effective_limit() const {
  return limit > 0 ? limit : colony_size * static_cast<int>(bounds.size());
}

void evaluate_batch(const Objective& objective, std::span<const std::vector<double>> points,
                    std::span<double> costs, Execution execution) {
  if (points.size() != costs.size()) {
    throw std::invalid_argument("evaluate_batch: points and costs differ in size");
  }
  const auto n = static_cast<std::int64_t>(points.size());
  if (execution == Execution::Serial) {
    for (std::int64_t m = 0; m < n; ++m) costs[m] = sanitize(objective(points[m]));
    return;
  }

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t m = 0; m < n; ++m) {
    try {
      costs[m] = sanitize(objective(points[m]));
    } catch (...) {
#pragma omp critical(fracboost_abc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

AbcResult optimize(const Objective& objective, const AbcConfig& cfg, Execution execution) {
  cfg.validate();
  return Colony(objective, cfg, execution).run();
}

}  // namespace fracboost
