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

#include <memory>
#include <numbers>
#include <string>

#include "wplan/worlds/world.hpp"

namespace wplan::worlds {

struct PendulumParams {
  double gravity = 9.8;
  double length = 1.0;
  double mass = 1.0;
  double damping = 0.05;
  double u_max = 2.5;
  double dt = 0.05;
};

inline constexpr double kPendulumAngleTolerance = 0.1;
inline constexpr double kPendulumRateTolerance = 1.0;

// State (theta, theta_dot), scalar torque. theta is measured from the
// unstable equilibrium, so
//   theta_ddot = (g / l) sin(theta) + u / (m l^2) - b theta_dot
// and theta = pi is where the pendulum comes to rest.
class PendulumDynamics : public WorldDynamics {
 public:
  explicit PendulumDynamics(PendulumParams params);

  int state_dim() const override { return 2; }
  int action_dim() const override { return 1; }
  StateVec predict(const StateVec& state, const Action& action) const override;
  bool has_action_jacobian() const override { return true; }
  Eigen::MatrixXd action_jacobian(const StateVec& state,
                                  const Action& action) const override;
  Eigen::MatrixXd state_jacobian(const StateVec& state,
                                 const Action& action) const override;
  // Squared distance between pole tips.
  double goal_distance_sq(const StateVec& state, const StateVec& goal) const override;
  StateVec goal_distance_sq_grad(const StateVec& state,
                                 const StateVec& goal) const override;

  Eigen::Vector2d tip(double theta) const;
  const PendulumParams& params() const { return params_; }

 private:
  PendulumParams params_;
};

class PendulumWorld : public World {
 public:
  static constexpr const char* kId = "pendulum";

  PendulumWorld();

  std::string id() const override { return kId; }
  const VariationSpace& variation_space() const override { return space_; }
  ActionSpace action_space() const override;
  int state_dim() const override { return 2; }
  int max_steps() const override { return 300; }
  bool success(const StateVec& state, const StateVec& goal) const override;
  WorldDynamicsPtr dynamics_for_planning() const override;
  WorldDynamicsPtr differentiable_dynamics() const override;
  std::unique_ptr<World> clone_fresh() const override;

  const PendulumParams& params() const { return params_; }

 protected:
  void configure(const FactorValues& factors) override;
  StateVec initial_state() const override;
  StateVec initial_goal() const override;
  StateVec transition(const StateVec& state, const Action& action) const override;

 private:
  VariationSpace space_;
  PendulumParams params_;
  double theta0_ = 0.0;
};

}  // namespace wplan::worlds
