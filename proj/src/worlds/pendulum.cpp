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

#include "wplan/worlds/pendulum.hpp"

#include <algorithm>
#include <cmath>

namespace wplan::worlds {
namespace {

constexpr double kPi = std::numbers::pi;

VariationSpace make_space() {
  std::vector<FactorSpec> factors = {
      {"physics.gravity", FactorKind::kBox, {8.0}, {12.0}, {9.8}, false,
       "gravitational acceleration"},
      {"pole.length", FactorKind::kBox, {0.5}, {1.5}, {1.0}, false, "pole length"},
      {"pole.mass", FactorKind::kBox, {0.5}, {2.0}, {1.0}, false, "tip mass"},
      {"physics.damping", FactorKind::kBox, {0.0}, {0.3}, {0.05}, false,
       "viscous damping coefficient"},
      {"actuator.u_max", FactorKind::kBox, {1.5}, {4.0}, {2.5}, false, "torque limit"},
      {"agent.start", FactorKind::kBox, {-kPi}, {kPi}, {0.0}, true, "initial angle"},
  };
  return VariationSpace(std::move(factors));
}

}  // namespace

PendulumDynamics::PendulumDynamics(PendulumParams params) : params_(params) {}

StateVec PendulumDynamics::predict(const StateVec& state, const Action& action) const {
  if (state.size() != 2 || action.size() != 1) {
    throw ContractError("pendulum: expected state of size 2 and action of size 1");
  }
  const PendulumParams& p = params_;
  const double u = std::clamp(action[0], -p.u_max, p.u_max);
  const double accel = p.gravity / p.length * std::sin(state[0]) +
                       u / (p.mass * p.length * p.length) - p.damping * state[1];
  StateVec out(2);
  out[1] = state[1] + p.dt * accel;
  out[0] = wrap_angle(state[0] + p.dt * out[1]);
  return out;
}

Eigen::MatrixXd PendulumDynamics::action_jacobian(const StateVec& state,
                                                  const Action& action) const {
  (void)state;
  const PendulumParams& p = params_;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 1);
  if (action[0] < -p.u_max || action[0] > p.u_max) return j;
  const double dv = p.dt / (p.mass * p.length * p.length);
  j(1, 0) = dv;
  j(0, 0) = p.dt * dv;
  return j;
}

Eigen::MatrixXd PendulumDynamics::state_jacobian(const StateVec& state,
                                                 const Action&) const {
  const PendulumParams& p = params_;
  const double dv_dtheta = p.dt * p.gravity / p.length * std::cos(state[0]);
  const double dv_domega = 1.0 - p.dt * p.damping;
  Eigen::MatrixXd j(2, 2);
  j << 1.0 + p.dt * dv_dtheta, p.dt * dv_domega, dv_dtheta, dv_domega;
  return j;
}

Eigen::Vector2d PendulumDynamics::tip(double theta) const {
  return {params_.length * std::sin(theta), params_.length * std::cos(theta)};
}

double PendulumDynamics::goal_distance_sq(const StateVec& state,
                                          const StateVec& goal) const {
  return (tip(state[0]) - tip(goal[0])).squaredNorm();
}

StateVec PendulumDynamics::goal_distance_sq_grad(const StateVec& state,
                                                 const StateVec& goal) const {
  const Eigen::Vector2d diff = tip(state[0]) - tip(goal[0]);
  const Eigen::Vector2d dtip(params_.length * std::cos(state[0]),
                             -params_.length * std::sin(state[0]));
  StateVec g = StateVec::Zero(2);
  g[0] = 2.0 * diff.dot(dtip);
  return g;
}

PendulumWorld::PendulumWorld() : space_(make_space()) { configure(space_.defaults()); }

ActionSpace PendulumWorld::action_space() const {
  return ContinuousActionSpace::symmetric(1, params_.u_max);
}

bool PendulumWorld::success(const StateVec& state, const StateVec& goal) const {
  return std::abs(wrap_angle(state[0] - goal[0])) <= kPendulumAngleTolerance &&
         std::abs(state[1] - goal[1]) <= kPendulumRateTolerance;
}

WorldDynamicsPtr PendulumWorld::dynamics_for_planning() const {
  return std::make_shared<PendulumDynamics>(params_);
}

WorldDynamicsPtr PendulumWorld::differentiable_dynamics() const {
  return dynamics_for_planning();
}

std::unique_ptr<World> PendulumWorld::clone_fresh() const {
  return std::make_unique<PendulumWorld>();
}

void PendulumWorld::configure(const FactorValues& f) {
  params_.gravity = f.at("physics.gravity")[0];
  params_.length = f.at("pole.length")[0];
  params_.mass = f.at("pole.mass")[0];
  params_.damping = f.at("physics.damping")[0];
  params_.u_max = f.at("actuator.u_max")[0];
  theta0_ = f.at("agent.start")[0];
}

StateVec PendulumWorld::initial_state() const {
  StateVec s(2);
  s << wrap_angle(theta0_), 0.0;
  return s;
}

StateVec PendulumWorld::initial_goal() const {
  StateVec g(2);
  g << kPi, 0.0;
  return g;
}

StateVec PendulumWorld::transition(const StateVec& state, const Action& action) const {
  return PendulumDynamics(params_).predict(state, action);
}

}  // namespace wplan::worlds
