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

#include <string>
#include <string_view>

#include "wplan/policy/policy.hpp"
#include "wplan/worlds/gridworld.hpp"
#include "wplan/worlds/pendulum.hpp"
#include "wplan/worlds/two_room.hpp"

namespace wplan::policy {

// Waypoint PD controller: heads for the door when the goal is in the other
// room, then for the goal.
class TwoRoomExpert : public Policy {
 public:
  std::string name() const override { return "expert"; }
  Action get_action(int slot, const PolicyInput& input) override;

  // Current waypoint for a position/goal pair.
  static Eigen::Vector2d waypoint(const Eigen::Vector2d& pos, const Eigen::Vector2d& goal,
                                  const worlds::TwoRoomParams& params);
};

// Pumps or removes energy until the goal energy level, then PD capture
// with gravity compensation near the goal angle.
class PendulumExpert : public Policy {
 public:
  std::string name() const override { return "expert"; }
  Action get_action(int slot, const PolicyInput& input) override;
};

// First move of a BFS shortest path.
class GridExpert : public Policy {
 public:
  std::string name() const override { return "expert"; }
  Action get_action(int slot, const PolicyInput& input) override;
};

// Throws ConfigError for worlds without a scripted expert.
PolicyPtr make_expert_policy(std::string_view world_id);

}  // namespace wplan::policy
