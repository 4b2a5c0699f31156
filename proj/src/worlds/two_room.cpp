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

#include "wplan/worlds/two_room.hpp"

#include <algorithm>
#include <cmath>

namespace wplan::worlds {
namespace {

double clamp_abs(double v, double limit) { return std::clamp(v, -limit, limit); }

VariationSpace make_space() {
  std::vector<FactorSpec> factors = {
      {"agent.start", FactorKind::kBox, {0.05, 0.05}, {0.95, 0.95}, {0.2, 0.5}, true,
       "start position of the agent"},
      {"goal.position", FactorKind::kBox, {0.05, 0.05}, {0.95, 0.95}, {0.8, 0.5}, true,
       "goal position"},
      {"door.center", FactorKind::kBox, {0.3}, {0.7}, {0.5}, false,
       "vertical center of the door gap"},
      {"door.width", FactorKind::kBox, {0.1}, {0.3}, {0.2}, false, "height of the door gap"},
      {"physics.dt", FactorKind::kBox, {0.05}, {0.15}, {0.1}, false, "integration step"},
      {"physics.drag", FactorKind::kBox, {0.0}, {0.2}, {0.0}, false,
       "fraction of velocity lost per step"},
      {"physics.v_max", FactorKind::kBox, {0.5}, {1.5}, {1.0}, false,
       "per-axis speed limit"},
  };
  std::vector<VariationConstraint> constraints = {
      {"start and goal in different rooms",
       {"agent.start", "goal.position"},
       [](const FactorValues& v) {
         const double sx = v.at("agent.start")[0];
         const double gx = v.at("goal.position")[0];
         return !same_room(sx, gx) && std::abs(sx - kWallX) >= 0.05 &&
                std::abs(gx - kWallX) >= 0.05;
       }},
  };
  return VariationSpace(std::move(factors), std::move(constraints));
}

}  // namespace

bool same_room(double x0, double x1) { return (x0 < kWallX) == (x1 < kWallX); }

Eigen::Vector2d door_waypoint(const Eigen::Vector2d& from, const Eigen::Vector2d& to,
                              const TwoRoomParams& params) {
  const double lo = params.door_center - 0.5 * params.door_width;
  const double hi = params.door_center + 0.5 * params.door_width;
  const double margin = std::min(0.02, 0.25 * params.door_width);
  double y = params.door_center;
  const double dx = to.x() - from.x();
  if (std::abs(dx) > 1e-12) {
    y = from.y() + (kWallX - from.x()) / dx * (to.y() - from.y());
  }
  return {kWallX, std::clamp(y, lo + margin, hi - margin)};
}

WalledPointMassDynamics::WalledPointMassDynamics(TwoRoomParams params, Distance distance)
    : params_(params), distance_(distance) {}

StateVec WalledPointMassDynamics::predict(const StateVec& state, const Action& action) const {
  if (state.size() != 4 || action.size() != 2) {
    throw ContractError("two-room: expected state of size 4 and action of size 2");
  }
  const TwoRoomParams& p = params_;
  const double ax = std::clamp(action[0], -1.0, 1.0);
  const double ay = std::clamp(action[1], -1.0, 1.0);
  double vx = clamp_abs((1.0 - p.drag) * state[2] + p.dt * ax, p.v_max);
  double vy = clamp_abs((1.0 - p.drag) * state[3] + p.dt * ay, p.v_max);
  const double x0 = state[0];
  const double y0 = state[1];
  double x = x0 + p.dt * vx;
  double y = y0 + p.dt * vy;

  if (!same_room(x0, x)) {
    const double y_cross = y0 + (kWallX - x0) / (x - x0) * (y - y0);
    const double lo = p.door_center - 0.5 * p.door_width;
    const double hi = p.door_center + 0.5 * p.door_width;
    if (y_cross < lo || y_cross > hi) {
      x = x0 < kWallX ? kWallX - kWallOffset : kWallX + kWallOffset;
      vx = 0.0;
    }
  }
  if (x < 0.0 || x > 1.0) {
    x = std::clamp(x, 0.0, 1.0);
    vx = 0.0;
  }
  if (y < 0.0 || y > 1.0) {
    y = std::clamp(y, 0.0, 1.0);
    vy = 0.0;
  }
  StateVec out(4);
  out << x, y, vx, vy;
  return out;
}

double WalledPointMassDynamics::goal_distance_sq(const StateVec& state,
                                                 const StateVec& goal) const {
  const Eigen::Vector2d pos = state.head<2>();
  const Eigen::Vector2d target = goal.head<2>();
  if (distance_ == Distance::kEuclidean || same_room(pos.x(), target.x())) {
    return (pos - target).squaredNorm();
  }
  const Eigen::Vector2d w = door_waypoint(pos, target, params_);
  const double d = (pos - w).norm() + (w - target).norm();
  return d * d;
}

FreePointMassDynamics::FreePointMassDynamics(double dt, double drag)
    : dt_(dt), drag_(drag) {
  if (!(dt > 0.0) || drag < 0.0 || drag >= 1.0) {
    throw ContractError("free point mass: need dt > 0 and drag in [0, 1)");
  }
}

StateVec FreePointMassDynamics::predict(const StateVec& state, const Action& action) const {
  if (state.size() != 4 || action.size() != 2) {
    throw ContractError("point mass: expected state of size 4 and action of size 2");
  }
  StateVec out(4);
  out.tail<2>() = (1.0 - drag_) * state.tail<2>() + dt_ * action;
  out.head<2>() = state.head<2>() + dt_ * out.tail<2>();
  return out;
}

Eigen::MatrixXd FreePointMassDynamics::action_jacobian(const StateVec&,
                                                       const Action&) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 2);
  j(0, 0) = j(1, 1) = dt_ * dt_;
  j(2, 0) = j(3, 1) = dt_;
  return j;
}

Eigen::MatrixXd FreePointMassDynamics::state_jacobian(const StateVec&,
                                                      const Action&) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(4, 4);
  j(0, 2) = j(1, 3) = dt_ * (1.0 - drag_);
  j(2, 2) = j(3, 3) = 1.0 - drag_;
  return j;
}

double FreePointMassDynamics::goal_distance_sq(const StateVec& state,
                                               const StateVec& goal) const {
  return (state.head<2>() - goal.head<2>()).squaredNorm();
}

StateVec FreePointMassDynamics::goal_distance_sq_grad(const StateVec& state,
                                                      const StateVec& goal) const {
  StateVec g = StateVec::Zero(4);
  g.head<2>() = 2.0 * (state.head<2>() - goal.head<2>());
  return g;
}

TwoRoomWorld::TwoRoomWorld() : space_(make_space()) { configure(space_.defaults()); }

ActionSpace TwoRoomWorld::action_space() const {
  return ContinuousActionSpace::symmetric(2, 1.0);
}

bool TwoRoomWorld::success(const StateVec& state, const StateVec& goal) const {
  return (state.head<2>() - goal.head<2>()).norm() <= kTwoRoomSuccessRadius;
}

WorldDynamicsPtr TwoRoomWorld::dynamics_for_planning() const {
  return std::make_shared<WalledPointMassDynamics>(params_);
}

WorldDynamicsPtr TwoRoomWorld::differentiable_dynamics() const {
  return std::make_shared<FreePointMassDynamics>(params_.dt, params_.drag);
}

std::unique_ptr<World> TwoRoomWorld::clone_fresh() const {
  return std::make_unique<TwoRoomWorld>();
}

void TwoRoomWorld::configure(const FactorValues& f) {
  params_.door_center = f.at("door.center")[0];
  params_.door_width = f.at("door.width")[0];
  params_.dt = f.at("physics.dt")[0];
  params_.drag = f.at("physics.drag")[0];
  params_.v_max = f.at("physics.v_max")[0];
  start_ = {f.at("agent.start")[0], f.at("agent.start")[1]};
  goal_pos_ = {f.at("goal.position")[0], f.at("goal.position")[1]};
}

StateVec TwoRoomWorld::initial_state() const {
  StateVec s = StateVec::Zero(4);
  s.head<2>() = start_;
  return s;
}

StateVec TwoRoomWorld::initial_goal() const {
  StateVec g = StateVec::Zero(4);
  g.head<2>() = goal_pos_;
  return g;
}

StateVec TwoRoomWorld::transition(const StateVec& state, const Action& action) const {
  return WalledPointMassDynamics(params_).predict(state, action);
}

}  // namespace wplan::worlds
