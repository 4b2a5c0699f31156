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

#include <cmath>
#include <string>
#include <vector>

#include "internal.hpp"

namespace wplan::solvers {

// Virtual states z_1..z_{H-1} are free variables; z_0 = s0 and z_H = goal
// stay pinned. Each iteration predicts every transition from the current
// (stop-gradient) z_t in parallel and descends
//   sum_t ||zhat_{t+1} - z_{t+1}||^2 + gamma_k ||zhat_{t+1} - goal||^2
// in the actions and in the free states.
SolverResult grasp_solve(const StepModel& dynamics, const CostModel& rollout_cost,
                         const StateVec& s0, const StateVec& goal,
                         const GraspConfig& cfg, RandomStream& rng,
                         const InitSequence& init, SyncOperator sync,
                         GraspObserver observer) {
  constexpr const char* kName = "grasp";
  internal::Stopwatch clock;
  cfg.validate();
  if (!dynamics.has_action_jacobian()) {
    throw ConfigError("grasp requires a step model with action Jacobians");
  }
  const ContinuousActionSpace box = internal::require_box(rollout_cost.action_space(), kName);
  if (box.dim() != dynamics.action_dim()) {
    throw ContractError("grasp: step model and cost model disagree on action dimension");
  }
  if (s0.size() != dynamics.state_dim() || goal.size() != dynamics.state_dim()) {
    throw ContractError("grasp: start/goal state dimension mismatch");
  }
  const int horizon = cfg.horizon;
  const int state_dim = dynamics.state_dim();

  GraspState state;
  state.actions = internal::initial_sequence(init, horizon, box.dim(), kName);
  clip_to_bounds_inplace(state.actions, box);
  state.virtual_states.resize(static_cast<std::size_t>(horizon + 1));
  for (int t = 0; t <= horizon; ++t) {
    const double w = static_cast<double>(t) / horizon;
    state.virtual_states[static_cast<std::size_t>(t)] = (1.0 - w) * s0 + w * goal;
  }
  state.virtual_states.front() = s0;
  state.virtual_states.back() = goal;

  SolverResult result;
  RandomStream sync_rng = rng.split(0x53594E43);  // "SYNC"
  if (!sync && cfg.sync_interval > 0) {
    sync = [&](const ActionSequence& warm) {
      SamplingSolverConfig sync_cfg = cfg.sync_cem;
      sync_cfg.horizon = horizon;
      SolverResult synced = cem_solve(rollout_cost, s0, sync_cfg, sync_rng, warm);
      result.cost_evaluations += synced.cost_evaluations;
      return synced.best_sequence;
    };
  }

  std::vector<StateVec> predicted(static_cast<std::size_t>(horizon));
  ActionSequence action_grad(horizon, box.dim());
  for (int k = 0; k < cfg.iterations; ++k) {
    const double gamma = cfg.goal_weights[static_cast<std::size_t>(k)];
    auto& z = state.virtual_states;
    double loss = 0.0;
    for (int t = 0; t < horizon; ++t) {
      const Action a = state.actions.row(t).transpose();
      predicted[static_cast<std::size_t>(t)] =
          dynamics.predict(z[static_cast<std::size_t>(t)], a);
      const StateVec residual =
          predicted[static_cast<std::size_t>(t)] - z[static_cast<std::size_t>(t + 1)];
      const StateVec to_goal = predicted[static_cast<std::size_t>(t)] - goal;
      loss += residual.squaredNorm() + gamma * to_goal.squaredNorm();
      const Eigen::MatrixXd jac = dynamics.action_jacobian(z[static_cast<std::size_t>(t)], a);
      action_grad.row(t) = (jac.transpose() * (2.0 * residual + 2.0 * gamma * to_goal)).transpose();
    }
    result.cost_evaluations += horizon;
    result.cost_trace.push_back(loss);
    if (!std::isfinite(loss)) {
      throw SolverError("grasp: non-finite loss at iteration " + std::to_string(k));
    }
    internal::check_finite_gradient(action_grad, k, kName);

    state.actions -= cfg.action_step * action_grad;
    clip_to_bounds_inplace(state.actions, box);
    const double noise_scale = cfg.state_noise[static_cast<std::size_t>(k)];
    for (int t = 1; t < horizon; ++t) {
      // dL/dz_t only through the residual that targets z_t
      const StateVec residual =
          predicted[static_cast<std::size_t>(t - 1)] - z[static_cast<std::size_t>(t)];
      z[static_cast<std::size_t>(t)] += cfg.state_step * 2.0 * residual;
      if (noise_scale > 0.0) {
        for (int i = 0; i < state_dim; ++i) {
          z[static_cast<std::size_t>(t)][i] += noise_scale * rng.normal();
        }
      }
    }

    if (cfg.sync_interval > 0 && k > 0 && (k + 1) % cfg.sync_interval == 0) {
      state.actions = sync(state.actions);
      clip_to_bounds_inplace(state.actions, box);
    }
    ++result.iterations_run;
    if (observer) observer(k, state);
  }

  std::vector<ActionSequence> single{state.actions};
  const std::vector<double> cost =
      internal::evaluate_batch(rollout_cost, s0, single, result, kName);
  result.best_sequence = std::move(single.front());
  result.best_cost = cost.front();
  result.wall_time = clock.seconds();
  return result;
}

}  // namespace wplan::solvers
