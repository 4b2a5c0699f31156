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
#include <string>

#include "wplan/worlds/world.hpp"

namespace wplan::worlds {

struct TwoRoomParams {
  double door_center = 0.5;
  double door_width = 0.2;
  double dt = 0.1;
  double drag = 0.0;
  double v_max = 1.0;
};

inline constexpr double kWallX = 0.5;
inline constexpr double kWallOffset = 1e-3;
inline constexpr double kTwoRoomSuccessRadius = 0.05;

// State (x, y, vx, vy), action (ax, ay) in [-1, 1]^2.
class WalledPointMassDynamics : public WorldDynamics {
 public:
  enum class Distance { kGeodesic, kEuclidean };

  explicit WalledPointMassDynamics(TwoRoomParams params,
                                   Distance distance = Distance::kGeodesic);

  int state_dim() const override { return 4; }
  int action_dim() const override { return 2; }
  StateVec predict(const StateVec& state, const Action& action) const override;
  // Squared length of the shortest path through the door when the two
  // points are in different rooms, plain squared distance otherwise.
  double goal_distance_sq(const StateVec& state, const StateVec& goal) const override;

  const TwoRoomParams& params() const { return params_; }

 private:
  TwoRoomParams params_;
  Distance distance_;
};

// Wall-free, unclamped variant: s' = A s + B a. Differentiable everywhere.
class FreePointMassDynamics : public WorldDynamics {
 public:
  FreePointMassDynamics(double dt = 0.1, double drag = 0.0);

  int state_dim() const override { return 4; }
  int action_dim() const override { return 2; }
  StateVec predict(const StateVec& state, const Action& action) const override;
  bool has_action_jacobian() const override { return true; }
  Eigen::MatrixXd action_jacobian(const StateVec& state,
                                  const Action& action) const override;
  Eigen::MatrixXd state_jacobian(const StateVec& state,
                                 const Action& action) const override;
  double goal_distance_sq(const StateVec& state, const StateVec& goal) const override;
  StateVec goal_distance_sq_grad(const StateVec& state,
                                 const StateVec& goal) const override;

 private:
  double dt_;
  double drag_;
};

// Point on the wall the geodesic passes through.
Eigen::Vector2d door_waypoint(const Eigen::Vector2d& from, const Eigen::Vector2d& to,
                              const TwoRoomParams& params);
bool same_room(double x0, double x1);

class TwoRoomWorld : public World {
 public:
  static constexpr const char* kId = "tworoom";

  TwoRoomWorld();

  std::string id() const override { return kId; }
  const VariationSpace& variation_space() const override { return space_; }
  ActionSpace action_space() const override;
  int state_dim() const override { return 4; }
  int max_steps() const override { return 200; }
  bool success(const StateVec& state, const StateVec& goal) const override;
  WorldDynamicsPtr dynamics_for_planning() const override;
  WorldDynamicsPtr differentiable_dynamics() const override;
  std::unique_ptr<World> clone_fresh() const override;

  const TwoRoomParams& params() const { return params_; }

 protected:
  void configure(const FactorValues& factors) override;
  StateVec initial_state() const override;
  StateVec initial_goal() const override;
  StateVec transition(const StateVec& state, const Action& action) const override;

 private:
  VariationSpace space_;
  TwoRoomParams params_;
  Eigen::Vector2d start_{0.2, 0.5};
  Eigen::Vector2d goal_pos_{0.8, 0.5};
};

}  // namespace wplan::worlds
