// Copyright 2026 The wplan Authors
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "internal.hpp"

namespace wplan::solvers {

void SamplingSolverConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (num_candidates < 1) throw ConfigError("num_candidates must be >= 1");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (num_elites < 1 || num_elites > num_candidates) {
    throw ConfigError("num_elites must be in [1, num_candidates]");
  }
  if (!(init_scale >= 0.0)) throw ConfigError("init_scale must be >= 0");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (!std::isfinite(noise_beta) || noise_beta < 0.0) {
    throw ConfigError("noise_beta must be finite and >= 0");
  }
  if (!(momentum >= 0.0 && momentum <= 1.0)) {
    throw ConfigError("momentum must be in [0, 1]");
  }
  if (elites_keep < 0 || elites_keep > num_elites) {
    throw ConfigError("elites_keep must be in [0, num_elites]");
  }
  if (!(smoothing >= 0.0)) throw ConfigError("smoothing must be >= 0");
}

void GradientSolverConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (num_candidates < 1) throw ConfigError("num_candidates must be >= 1");
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (!(step_size > 0.0)) throw ConfigError("step_size must be > 0");
  if (!(init_scale >= 0.0)) throw ConfigError("init_scale must be >= 0");
  if (!(action_noise >= 0.0)) throw ConfigError("action_noise must be >= 0");
  if (!(gradient_clip >= 0.0)) throw ConfigError("gradient_clip must be >= 0");
}

void LagrangianConfig::validate() const {
  base.validate();
  if (outer_iterations < 1) throw ConfigError("outer_iterations must be >= 1");
  if (!(penalty_init > 0.0)) throw ConfigError("penalty_init must be > 0");
  if (!(penalty_max >= penalty_init)) {
    throw ConfigError("penalty_max must be >= penalty_init");
  }
  if (!(penalty_scale >= 1.0)) throw ConfigError("penalty_scale must be >= 1");
}

GraspConfig GraspConfig::with_schedules(int horizon, int iterations,
                                        double goal_weight, double initial_noise) {
  GraspConfig cfg;
  cfg.horizon = horizon;
  cfg.iterations = iterations;
  cfg.goal_weights.assign(static_cast<std::size_t>(std::max(iterations, 0)),
                          goal_weight);
  cfg.state_noise.resize(cfg.goal_weights.size());
  for (int k = 0; k < iterations; ++k) {
    cfg.state_noise[static_cast<std::size_t>(k)] =
        initial_noise * (1.0 - static_cast<double>(k) / iterations);
  }
  cfg.sync_cem.horizon = horizon;
  return cfg;
}

void GraspConfig::validate() const {
  if (horizon < 2) throw ConfigError("GRASP horizon must be >= 2");
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (!(action_step > 0.0)) throw ConfigError("action_step must be > 0");
  if (!(state_step > 0.0)) throw ConfigError("state_step must be > 0");
  if (goal_weights.size() != static_cast<std::size_t>(iterations) ||
      state_noise.size() != static_cast<std::size_t>(iterations)) {
    throw ConfigError("goal_weights and state_noise schedules need one entry per iteration");
  }
  for (std::size_t k = 0; k < goal_weights.size(); ++k) {
    if (!(goal_weights[k] >= 0.0) || !(state_noise[k] >= 0.0)) {
      throw ConfigError("GRASP schedules must be nonnegative");
    }
  }
  if (sync_interval < 0) throw ConfigError("sync_interval must be >= 0");
  if (sync_interval > 0) sync_cem.validate();
}

std::vector<int> select_elites(const std::vector<double>& costs, int count) {
  std::vector<int> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int i) {
    const double c = costs[static_cast<std::size_t>(i)];
    return std::isnan(c) ? std::numeric_limits<double>::infinity() : c;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    // inf vs NaN: a real infinity ranks ahead of NaN
    return !std::isnan(costs[static_cast<std::size_t>(a)]) &&
           std::isnan(costs[static_cast<std::size_t>(b)]);
  });
  order.resize(static_cast<std::size_t>(
      std::clamp<int>(count, 0, static_cast<int>(costs.size()))));
  return order;
}

std::pair<ActionSequence, ActionSequence> refit_gaussian(
    std::span<const ActionSequence> elites) {
  if (elites.empty()) throw ContractError("refit_gaussian: empty elite set");
  const double n = static_cast<double>(elites.size());
  ActionSequence mean = ActionSequence::Zero(elites[0].rows(), elites[0].cols());
  for (const auto& e : elites) mean += e;
  mean /= n;
  ActionSequence variance = ActionSequence::Zero(mean.rows(), mean.cols());
  for (const auto& e : elites) variance.array() += (e - mean).array().square();
  variance /= n;
  return {mean, variance.array().sqrt().matrix()};
}

std::vector<double> softmin_weights(const std::vector<double>& costs,
                                    double temperature) {
  if (!(temperature > 0.0)) throw ContractError("softmin_weights: temperature must be > 0");
  if (costs.empty()) return {};
  const double c_min = *std::min_element(costs.begin(), costs.end());
  std::vector<double> weights(costs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    weights[i] = std::exp(-(costs[i] - c_min) / temperature);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

namespace internal {

ContinuousActionSpace require_box(const ActionSpace& space,
                                         const char* solver) {
  const auto* box = std::get_if<ContinuousActionSpace>(&space);
  if (box == nullptr) {
    throw ConfigError(std::string(solver) + " requires a continuous action space");
  }
  return *box;
}

int require_discrete(const ActionSpace& space, const char* solver) {
  const auto* discrete = std::get_if<DiscreteActionSpace>(&space);
  if (discrete == nullptr) {
    throw ConfigError(std::string(solver) + " requires a discrete action space");
  }
  return discrete->cardinality();
}

ActionSequence initial_sequence(const InitSequence& init, int horizon, int width,
                                const char* solver) {
  if (!init) return ActionSequence::Zero(horizon, width);
  if (init->rows() != horizon || init->cols() != width) {
    throw ContractError(std::string(solver) + ": initial sequence is " +
                        std::to_string(init->rows()) + "x" +
                        std::to_string(init->cols()) + ", expected " +
                        std::to_string(horizon) + "x" + std::to_string(width));
  }
  return *init;
}

std::vector<double> evaluate_batch(const CostModel& model, const StateVec& s0,
                                   const std::vector<ActionSequence>& candidates,
                                   SolverResult& result, const char* solver) {
  std::vector<double> costs = model.batched_cost(s0, candidates);
  if (costs.size() != candidates.size()) {
    throw SolverError(std::string(solver) + ": cost model returned " +
                      std::to_string(costs.size()) + " costs for " +
                      std::to_string(candidates.size()) + " candidates");
  }
  result.cost_evaluations += static_cast<long>(candidates.size());
  bool any_finite = false;
  for (double& c : costs) {
    if (std::isfinite(c)) {
      any_finite = true;
    } else {
      c = std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (!any_finite) {
    throw SolverError(std::string(solver) + ": every candidate has a non-finite cost");
  }
  return costs;
}

double lowest(const std::vector<double>& costs) {
  const int i = argmin_index(costs);
  return i < 0 ? std::numeric_limits<double>::quiet_NaN()
               : costs[static_cast<std::size_t>(i)];
}

void clip_gradient_norm(ActionSequence& grad, double threshold) {
  if (threshold <= 0.0) return;
  const double norm = grad.norm();
  if (norm > threshold) grad *= threshold / norm;
}

void check_finite_gradient(const ActionSequence& grad, int iteration,
                           const char* solver) {
  if (!grad.allFinite()) {
    throw SolverError(std::string(solver) + ": non-finite gradient at iteration " +
                      std::to_string(iteration));
  }
}

}  // namespace internal
}  // namespace wplan::solvers
