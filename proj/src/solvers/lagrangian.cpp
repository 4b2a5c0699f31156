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
#include <limits>
#include <string>
#include <vector>

#include "internal.hpp"
#include "wplan/core/finite_difference.hpp"
#include "wplan/noise/noise.hpp"

namespace wplan::solvers {
namespace {

constexpr const char* kName = "lagrangian";

Eigen::VectorXd checked_constraints(const CostModel& model, const StateVec& s0,
                                    const ActionSequence& actions,
                                    std::vector<ActionSequence>* grads) {
  Eigen::VectorXd g;
  if (grads == nullptr) {
    g = model.constraints(s0, actions);
  } else if (model.has_constraint_gradient()) {
    g = model.constraints_and_grad(s0, actions, *grads);
  } else {
    g = model.constraints(s0, actions);
    *grads = finite_difference_constraint_gradients(model, s0, actions);
  }
  if (!g.allFinite()) {
    throw SolverError("lagrangian: non-finite constraint value");
  }
  return g;
}

}  // namespace

SolverResult lagrangian_solve(const CostModel& model, const StateVec& s0,
                              const LagrangianConfig& cfg, RandomStream& rng,
                              const InitSequence& init) {
  internal::Stopwatch clock;
  cfg.validate();
  const GradientSolverConfig& inner = cfg.base;
  if (!model.has_gradient()) {
    throw ConfigError("lagrangian requires a differentiable cost model");
  }
  const int num_constraints = model.num_constraints(inner.horizon);
  if (num_constraints < 1) {
    throw ConfigError("lagrangian requires a cost model exposing constraints");
  }
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  const int dims = box.dim();

  ActionSequence base = internal::initial_sequence(init, inner.horizon, dims, kName);
  clip_to_bounds_inplace(base, box);
  std::vector<ActionSequence> candidates{base};
  for (const auto& eps :
       noise::sample_gaussian(rng, inner.num_candidates - 1, inner.horizon, dims)) {
    candidates.push_back(clip_to_bounds(base + inner.init_scale * eps, box));
  }

  Eigen::VectorXd multipliers = Eigen::VectorXd::Zero(num_constraints);
  double penalty = cfg.penalty_init;
  SolverResult result;
  ActionSequence grad;
  std::vector<ActionSequence> constraint_grads;
  int step_index = 0;

  for (int outer = 0; outer < cfg.outer_iterations; ++outer) {
    for (int k = 0; k < inner.iterations; ++k, ++step_index) {
      double best = std::numeric_limits<double>::infinity();
      for (auto& candidate : candidates) {
        const double cost = model.cost_and_grad(s0, candidate, grad);
        ++result.cost_evaluations;
        if (cost < best) best = cost;
        const Eigen::VectorXd g =
            checked_constraints(model, s0, candidate, &constraint_grads);
        if (g.size() != num_constraints) {
          throw SolverError("lagrangian: constraint count changed between calls");
        }
        // d/dA [lambda . g + rho ||[g]+||^2]
        for (int j = 0; j < num_constraints; ++j) {
          const double coefficient =
              multipliers[j] + 2.0 * penalty * std::max(0.0, g[j]);
          if (coefficient != 0.0) {
            grad += coefficient * constraint_grads[static_cast<std::size_t>(j)];
          }
        }
        internal::check_finite_gradient(grad, step_index, kName);
        internal::clip_gradient_norm(grad, inner.gradient_clip);
        candidate -= inner.step_size * grad;
        if (inner.action_noise > 0.0) {
          for (Eigen::Index t = 0; t < candidate.rows(); ++t) {
            for (Eigen::Index j = 0; j < candidate.cols(); ++j) {
              candidate(t, j) += inner.action_noise * rng.normal();
            }
          }
        }
        clip_to_bounds_inplace(candidate, box);
      }
      result.cost_trace.push_back(best);
      ++result.iterations_run;
    }

    Eigen::VectorXd mean_violation = Eigen::VectorXd::Zero(num_constraints);
    for (const auto& candidate : candidates) {
      mean_violation += checked_constraints(model, s0, candidate, nullptr);
    }
    mean_violation /= static_cast<double>(candidates.size());
    multipliers = (multipliers + penalty * mean_violation).cwiseMax(0.0);
    penalty = std::min(cfg.penalty_max, cfg.penalty_scale * penalty);
    result.multipliers.push_back(multipliers);
  }

  const std::vector<double> costs =
      internal::evaluate_batch(model, s0, candidates, result, kName);
  const int best = argmin_index(costs);
  result.best_sequence = candidates[static_cast<std::size_t>(best)];
  result.best_cost = costs[static_cast<std::size_t>(best)];
  result.wall_time = clock.seconds();
  return result;
}

}  // namespace wplan::solvers
