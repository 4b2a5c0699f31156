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

#include <limits>
#include <string>
#include <vector>

#include "internal.hpp"
#include "wplan/noise/noise.hpp"

namespace wplan::solvers {
namespace {

void require_gradient(const CostModel& model, const char* solver) {
  if (!model.has_gradient()) {
    throw ConfigError(std::string(solver) +
                      " requires a differentiable cost model (attach "
                      "FiniteDifferenceCostModel for non-differentiable ones)");
  }
}

}  // namespace

SolverResult gd_solve(const CostModel& model, const StateVec& s0,
                      const GradientSolverConfig& cfg, RandomStream& rng,
                      const InitSequence& init) {
  constexpr const char* kName = "gd";
  internal::Stopwatch clock;
  cfg.validate();
  require_gradient(model, kName);
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  const int dims = box.dim();

  ActionSequence base = internal::initial_sequence(init, cfg.horizon, dims, kName);
  clip_to_bounds_inplace(base, box);
  std::vector<ActionSequence> candidates{base};
  for (const auto& eps :
       noise::sample_gaussian(rng, cfg.num_candidates - 1, cfg.horizon, dims)) {
    candidates.push_back(clip_to_bounds(base + cfg.init_scale * eps, box));
  }

  SolverResult result;
  ActionSequence grad;
  for (int k = 0; k < cfg.iterations; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (auto& candidate : candidates) {
      const double cost = model.cost_and_grad(s0, candidate, grad);
      ++result.cost_evaluations;
      if (cost < best) best = cost;
      internal::check_finite_gradient(grad, k, kName);
      internal::clip_gradient_norm(grad, cfg.gradient_clip);
      candidate -= cfg.step_size * grad;
      if (cfg.action_noise > 0.0) {
        for (Eigen::Index t = 0; t < candidate.rows(); ++t) {
          for (Eigen::Index j = 0; j < candidate.cols(); ++j) {
            candidate(t, j) += cfg.action_noise * rng.normal();
          }
        }
      }
      clip_to_bounds_inplace(candidate, box);
    }
    result.cost_trace.push_back(best);
    ++result.iterations_run;
  }

  const std::vector<double> costs =
      internal::evaluate_batch(model, s0, candidates, result, kName);
  const int best = argmin_index(costs);
  result.best_sequence = candidates[static_cast<std::size_t>(best)];
  result.best_cost = costs[static_cast<std::size_t>(best)];
  result.wall_time = clock.seconds();
  return result;
}

SolverResult pgd_solve(const CostModel& model, const StateVec& s0,
                       const GradientSolverConfig& cfg, RandomStream& rng,
                       const InitSequence& init) {
  constexpr const char* kName = "pgd";
  internal::Stopwatch clock;
  cfg.validate();
  require_gradient(model, kName);
  const int num_actions = internal::require_discrete(model.action_space(), kName);

  Eigen::MatrixXd base;
  if (init) {
    base = internal::initial_sequence(init, cfg.horizon, num_actions, kName);
    project_rows_to_simplex(base);
  } else {
    base = Eigen::MatrixXd::Constant(cfg.horizon, num_actions, 1.0 / num_actions);
  }
  std::vector<Eigen::MatrixXd> candidates{base};
  for (const auto& eps :
       noise::sample_gaussian(rng, cfg.num_candidates - 1, cfg.horizon, num_actions)) {
    Eigen::MatrixXd p = base + cfg.init_scale * eps;
    project_rows_to_simplex(p);
    candidates.push_back(std::move(p));
  }

  SolverResult result;
  ActionSequence grad;
  for (int k = 0; k < cfg.iterations; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (auto& p : candidates) {
      const double cost = model.cost_and_grad(s0, p, grad);
      ++result.cost_evaluations;
      if (cost < best) best = cost;
      internal::check_finite_gradient(grad, k, kName);
      internal::clip_gradient_norm(grad, cfg.gradient_clip);
      p -= cfg.step_size * grad;
      if (cfg.action_noise > 0.0) {
        for (Eigen::Index t = 0; t < p.rows(); ++t) {
          for (Eigen::Index a = 0; a < p.cols(); ++a) {
            p(t, a) += cfg.action_noise * rng.normal();
          }
        }
      }
      project_rows_to_simplex(p);
    }
    result.cost_trace.push_back(best);
    ++result.iterations_run;
  }

  // Decode every candidate and keep the best one-hot sequence; the relaxed
  // optimum can decode badly when probability mass is split.
  std::vector<ActionSequence> decoded;
  decoded.reserve(candidates.size());
  for (const auto& p : candidates) {
    decoded.push_back(one_hot(argmax_rows(p), num_actions));
  }
  const std::vector<double> costs =
      internal::evaluate_batch(model, s0, decoded, result, kName);
  const int winner = argmin_index(costs);
  result.distribution = candidates[static_cast<std::size_t>(winner)];
  result.best_sequence = decoded[static_cast<std::size_t>(winner)];
  result.best_cost = costs[static_cast<std::size_t>(winner)];
  result.wall_time = clock.seconds();
  return result;
}

}  // namespace wplan::solvers
