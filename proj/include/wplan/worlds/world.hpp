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

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "wplan/core/cost_model.hpp"
#include "wplan/core/step_model.hpp"
#include "wplan/worlds/variation.hpp"

namespace wplan::worlds {

inline constexpr double kDefaultActionWeight = 0.01;

/// Predictor used both for planning rollouts and (when differentiable) for
/// gradients. Adds the state Jacobian and the world's goal distance to the
/// StepModel contract.
class WorldDynamics : public StepModel {
 public:
  bool has_action_jacobian() const override { return false; }
  Eigen::MatrixXd action_jacobian(const StateVec& state,
                                  const Action& action) const override;
  // state_dim x state_dim.
  virtual Eigen::MatrixXd state_jacobian(const StateVec& state,
                                         const Action& action) const;

  // Squared distance between a state and the goal in the world's task
  // geometry, and its gradient with respect to the state.
  virtual double goal_distance_sq(const StateVec& state, const StateVec& goal) const = 0;
  virtual StateVec goal_distance_sq_grad(const StateVec& state,
                                         const StateVec& goal) const;
};

using WorldDynamicsPtr = std::shared_ptr<const WorldDynamics>;

/// J(s0, A) = sum_t [ d(s_{t+1}, goal)^2 + w ||a_t||^2 ], s_{t+1} = f(s_t, a_t).
/// The gradient, when the dynamics provide Jacobians, is computed by a
/// backward (adjoint) sweep over the stored rollout.
class RolloutCostModel : public CostModel {
 public:
  RolloutCostModel(WorldDynamicsPtr dynamics, StateVec goal, ActionSpace space,
                   double action_weight = kDefaultActionWeight);

  ActionSpace action_space() const override { return space_; }
  double cost(const StateVec& s0, const ActionSequence& actions) const override;
  bool has_gradient() const override { return dynamics_->has_action_jacobian(); }
  double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                       ActionSequence& grad) const override;

  // Position-term and action-term parts of J, reported separately.
  std::pair<double, double> cost_components(const StateVec& s0,
                                            const ActionSequence& actions) const;

  const WorldDynamics& dynamics() const { return *dynamics_; }
  const StateVec& goal() const { return goal_; }
  double action_weight() const { return action_weight_; }

 private:
  void check(const StateVec& s0, const ActionSequence& actions) const;

  WorldDynamicsPtr dynamics_;
  StateVec goal_;
  ActionSpace space_;
  double action_weight_;
};

struct ResetResult {
  StateVec state;
  StateVec goal;
  FactorValues factors;
};

struct StepResult {
  StateVec state;
  bool terminated = false;
};

/// A resettable, steppable environment with a factor-of-variation space.
/// Factor values are applied at reset and held for the whole episode.
/// Instances are single-threaded.
class World {
 public:
  virtual ~World() = default;

  virtual std::string id() const = 0;
  virtual const VariationSpace& variation_space() const = 0;
  // Action space under the currently applied factors.
  virtual ActionSpace action_space() const = 0;
  virtual int state_dim() const = 0;
  virtual int max_steps() const = 0;

  ResetResult reset(std::uint64_t seed, const ResetOptions& options = {});
  StepResult step(const Action& action);
  // Places the world in an arbitrary stored configuration (dataset replay).
  void restore(const StateVec& state, const FactorValues& factors, const StateVec& goal);

  virtual bool success(const StateVec& state, const StateVec& goal) const = 0;

  // Planning model for the current factors. `dynamics_for_planning` is the
  // true (possibly non-differentiable) predictor; `differentiable_dynamics`
  // is the gradient-capable surrogate used by gradient planners, which is
  // the true predictor when that one is already differentiable.
  virtual WorldDynamicsPtr dynamics_for_planning() const = 0;
  virtual WorldDynamicsPtr differentiable_dynamics() const = 0;
  CostModelPtr cost_model(const StateVec& goal,
                          double action_weight = kDefaultActionWeight) const;
  CostModelPtr differentiable_cost_model(
      const StateVec& goal, double action_weight = kDefaultActionWeight) const;
  // Largest action norm allowed by the box; used as the default bound of the
  // action-norm constraint adapter.
  double action_norm_limit() const;

  virtual std::unique_ptr<World> clone_fresh() const = 0;

  const StateVec& state() const { return state_; }
  const StateVec& goal() const { return goal_; }
  const FactorValues& factors() const { return factors_; }
  int steps_taken() const { return steps_; }

 protected:
  // Apply factor values to the world's parameters.
  virtual void configure(const FactorValues& factors) = 0;
  virtual StateVec initial_state() const = 0;
  virtual StateVec initial_goal() const = 0;
  virtual StateVec transition(const StateVec& state, const Action& action) const = 0;

 private:
  StateVec state_;
  StateVec goal_;
  FactorValues factors_;
  int steps_ = 0;
  bool ready_ = false;
};

using WorldPtr = std::unique_ptr<World>;

// Wrap an angle to (-pi, pi].
double wrap_angle(double angle);

}  // namespace wplan::worlds
