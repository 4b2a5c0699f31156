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

#include "wplan/policy/expert_policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wplan::policy {
namespace {

template <typename W>
const W& world_as(const PolicyInput& input) {
  const auto* w = dynamic_cast<const W*>(input.world);
  if (w == nullptr) throw ConfigError("expert policy used on the wrong world");
  return *w;
}

constexpr double kKp = 9.0;
constexpr double kKd = 5.0;
constexpr double kDoorApproach = 0.08;
constexpr double kDoorExit = 0.1;

}  // namespace

Eigen::Vector2d TwoRoomExpert::waypoint(const Eigen::Vector2d& pos, const Eigen::Vector2d& goal,
                                        const worlds::TwoRoomParams& params) {
  if (worlds::same_room(pos.x(), goal.x())) return goal;
  const double side = goal.x() >= worlds::kWallX ? 1.0 : -1.0;
  const double half = 0.5 * params.door_width;
  const double slack = std::max(0.25 * half, half - 0.03);
  if (std::abs(pos.y() - params.door_center) <= slack) {
    return {worlds::kWallX + side * kDoorExit, params.door_center};
  }
  return {worlds::kWallX - side * kDoorApproach, params.door_center};
}

Action TwoRoomExpert::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  const auto& world = world_as<worlds::TwoRoomWorld>(input);
  const Eigen::Vector2d pos = input.state.head<2>();
  const Eigen::Vector2d vel = input.state.tail<2>();
  const Eigen::Vector2d target = waypoint(pos, input.goal.head<2>(), world.params());
  Eigen::Vector2d a = kKp * (target - pos) - kKd * vel;
  return a.cwiseMax(-1.0).cwiseMin(1.0);
}

Action PendulumExpert::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  const auto& p = world_as<worlds::PendulumWorld>(input).params();
  const double theta = input.state[0];
  const double omega = input.state[1];
  const double w2 = p.gravity / p.length;
  const double inertia = p.mass * p.length * p.length;
  const double error = worlds::wrap_angle(theta - input.goal[0]);

  double u = 0.0;
  if (std::abs(error) < 0.6 && std::abs(omega) < 2.5) {
    u = inertia * (-w2 * std::sin(theta) - 6.0 * error - 3.0 * omega + p.damping * omega);
  } else {
    const double energy = 0.5 * omega * omega + w2 * (std::cos(theta) + 1.0);
    const double target = w2 * (std::cos(input.goal[0]) + 1.0);
    u = -3.0 * (energy - target) * omega;
  }
  Action a(1);
  a[0] = std::clamp(u, -p.u_max, p.u_max);
  return a;
}

Action GridExpert::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  const auto& world = world_as<worlds::GridWorld>(input);
  const int size = world.layout().size();
  const int a = world.layout().next_action(worlds::cell_of(input.state, size),
                                           worlds::cell_of(input.goal, size));
  return worlds::grid_action(a);
}

PolicyPtr make_expert_policy(std::string_view world_id) {
  if (world_id == worlds::TwoRoomWorld::kId) return std::make_unique<TwoRoomExpert>();
  if (world_id == worlds::PendulumWorld::kId) return std::make_unique<PendulumExpert>();
  if (world_id == worlds::GridWorld::kId) return std::make_unique<GridExpert>();
  throw ConfigError("no expert policy for world '" + std::string(world_id) + "'");
}

}  // namespace wplan::policy
