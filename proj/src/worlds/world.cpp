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

#include "wplan/worlds/world.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wplan::worlds {

Eigen::MatrixXd WorldDynamics::action_jacobian(const StateVec&, const Action&) const {
  throw ConfigError("dynamics are not differentiable");
}

Eigen::MatrixXd WorldDynamics::state_jacobian(const StateVec&, const Action&) const {
  throw ConfigError("dynamics are not differentiable");
}

StateVec WorldDynamics::goal_distance_sq_grad(const StateVec&, const StateVec&) const {
  throw ConfigError("goal distance is not differentiable");
}

RolloutCostModel::RolloutCostModel(WorldDynamicsPtr dynamics, StateVec goal,
                                   ActionSpace space, double action_weight)
    : dynamics_(std::move(dynamics)),
      goal_(std::move(goal)),
      space_(std::move(space)),
      action_weight_(action_weight) {
  if (!dynamics_) throw ContractError("RolloutCostModel: null dynamics");
  if (goal_.size() != dynamics_->state_dim()) {
    throw ContractError("goal has dimension " + std::to_string(goal_.size()) +
                        ", world state has " + std::to_string(dynamics_->state_dim()));
  }
  if (sequence_width(space_) != dynamics_->action_dim()) {
    throw ContractError("action space width does not match the dynamics");
  }
}

void RolloutCostModel::check(const StateVec& s0, const ActionSequence& actions) const {
  if (s0.size() != dynamics_->state_dim()) {
    throw ContractError("initial state has wrong dimension");
  }
  if (actions.cols() != dynamics_->action_dim()) {
    throw ContractError("action sequence has " + std::to_string(actions.cols()) +
                        " columns, expected " + std::to_string(dynamics_->action_dim()));
  }
}

std::pair<double, double> RolloutCostModel::cost_components(
    const StateVec& s0, const ActionSequence& actions) const {
  check(s0, actions);
  double position_term = 0.0;
  double action_term = 0.0;
  StateVec s = s0;
  for (Eigen::Index t = 0; t < actions.rows(); ++t) {
    const Action a = actions.row(t).transpose();
    s = dynamics_->predict(s, a);
    position_term += dynamics_->goal_distance_sq(s, goal_);
    action_term += action_weight_ * a.squaredNorm();
  }
  return {position_term, action_term};
}

double RolloutCostModel::cost(const StateVec& s0, const ActionSequence& actions) const {
  const auto [position_term, action_term] = cost_components(s0, actions);
  return position_term + action_term;
}

double RolloutCostModel::cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                                       ActionSequence& grad) const {
  check(s0, actions);
  if (!has_gradient()) {
    throw ConfigError("cost model has no gradient; wrap it in FiniteDifferenceCostModel");
  }
  const Eigen::Index horizon = actions.rows();
  std::vector<StateVec> states(static_cast<std::size_t>(horizon + 1));
  states[0] = s0;
  double total = 0.0;
  for (Eigen::Index t = 0; t < horizon; ++t) {
    const Action a = actions.row(t).transpose();
    states[static_cast<std::size_t>(t + 1)] =
        dynamics_->predict(states[static_cast<std::size_t>(t)], a);
    total += dynamics_->goal_distance_sq(states[static_cast<std::size_t>(t + 1)], goal_) +
             action_weight_ * a.squaredNorm();
  }

  grad.resize(horizon, actions.cols());
  StateVec adjoint = StateVec::Zero(dynamics_->state_dim());
  for (Eigen::Index t = horizon - 1; t >= 0; --t) {
    const StateVec& s = states[static_cast<std::size_t>(t)];
    const Action a = actions.row(t).transpose();
    adjoint += dynamics_->goal_distance_sq_grad(states[static_cast<std::size_t>(t + 1)], goal_);
    grad.row(t) = (dynamics_->action_jacobian(s, a).transpose() * adjoint +
                   2.0 * action_weight_ * a)
                      .transpose();
    adjoint = dynamics_->state_jacobian(s, a).transpose() * adjoint;
  }
  return total;
}

ResetResult World::reset(std::uint64_t seed, const ResetOptions& options) {
  ResetOptions effective = options;
  for (const auto& f : variation_space().factors()) {
    if (f.task_factor && !options.variation_values.contains(f.key)) {
      effective.variation.push_back(f.key);
    }
  }
  RandomStream rng = make_rng(seed);
  factors_ = sample_variation(variation_space(), rng, effective);
  configure(factors_);
  state_ = initial_state();
  goal_ = initial_goal();
  steps_ = 0;
  ready_ = true;
  return {state_, goal_, factors_};
}

StepResult World::step(const Action& action) {
  if (!ready_) throw ContractError(id() + ": step called before reset");
  if (!state_.allFinite()) throw ContractError(id() + ": non-finite state");
  state_ = transition(state_, action);
  if (!state_.allFinite()) throw NumericError(id() + ": transition produced a non-finite state");
  ++steps_;
  return {state_, success(state_, goal_)};
}

void World::restore(const StateVec& state, const FactorValues& factors,
                    const StateVec& goal) {
  if (state.size() != state_dim() || goal.size() != state_dim()) {
    throw ContractError(id() + ": restore with wrong state dimension");
  }
  FactorValues merged = variation_space().defaults();
  for (const auto& [key, value] : factors) {
    const FactorSpec& spec = variation_space().factor(key);
    if (!spec.contains(value)) {
      throw ContractError(id() + ": stored value for factor " + key + " is out of bounds");
    }
    merged[key] = value;
  }
  factors_ = std::move(merged);
  configure(factors_);
  state_ = state;
  goal_ = goal;
  steps_ = 0;
  ready_ = true;
}

CostModelPtr World::cost_model(const StateVec& goal, double action_weight) const {
  return std::make_shared<RolloutCostModel>(dynamics_for_planning(), goal,
                                            action_space(), action_weight);
}

CostModelPtr World::differentiable_cost_model(const StateVec& goal,
                                              double action_weight) const {
  return std::make_shared<RolloutCostModel>(differentiable_dynamics(), goal,
                                            action_space(), action_weight);
}

double World::action_norm_limit() const {
  const ActionSpace space = action_space();
  if (const auto* box = std::get_if<ContinuousActionSpace>(&space)) {
    return box->high().cwiseAbs().cwiseMax(box->low().cwiseAbs()).norm();
  }
  return 1.0;
}

double wrap_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  wrapped -= std::numbers::pi;
  // fmod lands on -pi for odd multiples of pi; the range is (-pi, pi]
  return wrapped <= -std::numbers::pi ? std::numbers::pi : wrapped;
}

}  // namespace wplan::worlds
