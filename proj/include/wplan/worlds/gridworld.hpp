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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wplan/worlds/world.hpp"

namespace wplan::worlds {

enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };
inline constexpr int kNumGridActions = 5;

struct GridCell {
  int x = 0;
  int y = 0;
  bool operator==(const GridCell&) const = default;
};

/// W x W occupancy grid. Cell (x, y) is stored at y * W + x.
class GridLayout {
 public:
  GridLayout() = default;
  // walls_seed == 0 gives an empty grid; otherwise each cell is a wall with
  // probability kWallDensity, except the two `keep_free` cells.
  GridLayout(int size, std::uint64_t walls_seed, GridCell keep_free_a, GridCell keep_free_b);

  static constexpr double kWallDensity = 0.2;

  int size() const { return size_; }
  bool blocked(int x, int y) const;
  // Cell reached by the move, or the same cell when the move is blocked.
  GridCell move(GridCell from, int action) const;
  // Displacement of the move from `from` (zero when blocked).
  Eigen::Vector2d displacement(GridCell from, int action) const;
  // Shortest path length from a to b; nullopt when disconnected.
  std::optional<int> distance(GridCell a, GridCell b) const;
  // First action on a shortest path, lowest action index among ties.
  // kStay when already there or unreachable.
  int next_action(GridCell from, GridCell to) const;

 private:
  std::vector<int> distances_from(GridCell target) const;

  int size_ = 0;
  std::vector<std::uint8_t> walls_;
};

GridCell fraction_to_cell(const std::vector<double>& fraction, int size);
GridCell cell_of(const StateVec& state, int size);
Action grid_action(int index);
// Index of a one-hot action row. Throws ContractError on anything else.
int grid_action_index(const Action& action);

/// Relaxed dynamics over probability rows p in the 5-simplex:
///   pos' = clip(pos + sum_a p_a d_a(round(pos)), 0, W - 1).
/// At one-hot rows and integer positions this is the discrete move.
class GridDynamics : public WorldDynamics {
 public:
  explicit GridDynamics(std::shared_ptr<const GridLayout> layout);

  int state_dim() const override { return 2; }
  int action_dim() const override { return kNumGridActions; }
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
  Eigen::Vector2d unclipped(const StateVec& state, const Action& action) const;

  std::shared_ptr<const GridLayout> layout_;
};

class GridWorld : public World {
 public:
  static constexpr const char* kId = "gridworld";

  GridWorld();

  std::string id() const override { return kId; }
  const VariationSpace& variation_space() const override { return space_; }
  ActionSpace action_space() const override { return DiscreteActionSpace(kNumGridActions); }
  int state_dim() const override { return 2; }
  int max_steps() const override { return 100; }
  bool success(const StateVec& state, const StateVec& goal) const override;
  WorldDynamicsPtr dynamics_for_planning() const override;
  WorldDynamicsPtr differentiable_dynamics() const override;
  std::unique_ptr<World> clone_fresh() const override;

  const GridLayout& layout() const { return *layout_; }

 protected:
  void configure(const FactorValues& factors) override;
  StateVec initial_state() const override;
  StateVec initial_goal() const override;
  StateVec transition(const StateVec& state, const Action& action) const override;

 private:
  VariationSpace space_;
  std::shared_ptr<const GridLayout> layout_;
  GridCell start_;
  GridCell goal_cell_;
};

}  // namespace wplan::worlds
