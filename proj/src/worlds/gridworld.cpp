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

#include "wplan/worlds/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace wplan::worlds {
namespace {

constexpr std::array<std::array<int, 2>, kNumGridActions> kMoves = {
    {{0, 1}, {0, -1}, {-1, 0}, {1, 0}, {0, 0}}};

GridLayout layout_from(const FactorValues& f) {
  const int size = static_cast<int>(f.at("grid.size")[0]);
  return GridLayout(size, static_cast<std::uint64_t>(f.at("walls.seed")[0]),
                    fraction_to_cell(f.at("agent.start"), size),
                    fraction_to_cell(f.at("goal.position"), size));
}

VariationSpace make_space() {
  std::vector<FactorSpec> factors = {
      {"grid.size", FactorKind::kDiscrete, {5}, {12}, {8}, false, "grid side length"},
      {"walls.seed", FactorKind::kDiscrete, {0}, {10000}, {0}, false,
       "wall layout seed, 0 for an empty grid"},
      {"agent.start", FactorKind::kBox, {0.0, 0.0}, {1.0, 1.0}, {0.0625, 0.0625}, true,
       "start cell as a fraction of the grid"},
      {"goal.position", FactorKind::kBox, {0.0, 0.0}, {1.0, 1.0}, {0.9375, 0.9375}, true,
       "goal cell as a fraction of the grid"},
  };
  std::vector<VariationConstraint> constraints = {
      {"start and goal distinct and connected",
       {"grid.size", "walls.seed", "agent.start", "goal.position"},
       [](const FactorValues& f) {
         const int size = static_cast<int>(f.at("grid.size")[0]);
         const GridCell a = fraction_to_cell(f.at("agent.start"), size);
         const GridCell b = fraction_to_cell(f.at("goal.position"), size);
         if (a == b) return false;
         return layout_from(f).distance(a, b).has_value();
       }},
  };
  return VariationSpace(std::move(factors), std::move(constraints));
}

}  // namespace

GridLayout::GridLayout(int size, std::uint64_t walls_seed, GridCell keep_free_a,
                       GridCell keep_free_b)
    : size_(size), walls_(static_cast<std::size_t>(size * size), 0) {
  if (size < 2) throw ContractError("grid size must be at least 2");
  if (walls_seed != 0) {
    RandomStream rng(walls_seed);
    for (auto& w : walls_) w = rng.uniform() < kWallDensity ? 1 : 0;
  }
  for (const GridCell c : {keep_free_a, keep_free_b}) {
    if (c.x >= 0 && c.x < size && c.y >= 0 && c.y < size) {
      walls_[static_cast<std::size_t>(c.y * size + c.x)] = 0;
    }
  }
}

bool GridLayout::blocked(int x, int y) const {
  if (x < 0 || y < 0 || x >= size_ || y >= size_) return true;
  return walls_[static_cast<std::size_t>(y * size_ + x)] != 0;
}

GridCell GridLayout::move(GridCell from, int action) const {
  if (action < 0 || action >= kNumGridActions) {
    throw ContractError("grid action index out of range: " + std::to_string(action));
  }
  const GridCell to{from.x + kMoves[static_cast<std::size_t>(action)][0],
                    from.y + kMoves[static_cast<std::size_t>(action)][1]};
  return blocked(to.x, to.y) ? from : to;
}

Eigen::Vector2d GridLayout::displacement(GridCell from, int action) const {
  const GridCell to = move(from, action);
  return {static_cast<double>(to.x - from.x), static_cast<double>(to.y - from.y)};
}

std::vector<int> GridLayout::distances_from(GridCell target) const {
  std::vector<int> dist(walls_.size(), -1);
  if (blocked(target.x, target.y)) return dist;
  std::deque<GridCell> queue{target};
  dist[static_cast<std::size_t>(target.y * size_ + target.x)] = 0;
  while (!queue.empty()) {
    const GridCell c = queue.front();
    queue.pop_front();
    const int d = dist[static_cast<std::size_t>(c.y * size_ + c.x)];
    for (int a = 0; a < 4; ++a) {
      const GridCell n = move(c, a);
      auto& slot = dist[static_cast<std::size_t>(n.y * size_ + n.x)];
      if (slot < 0) {
        slot = d + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

std::optional<int> GridLayout::distance(GridCell a, GridCell b) const {
  if (blocked(a.x, a.y)) return std::nullopt;
  const int d = distances_from(b)[static_cast<std::size_t>(a.y * size_ + a.x)];
  if (d < 0) return std::nullopt;
  return d;
}

int GridLayout::next_action(GridCell from, GridCell to) const {
  if (from == to || blocked(from.x, from.y)) return kStay;
  const std::vector<int> dist = distances_from(to);
  const int here = dist[static_cast<std::size_t>(from.y * size_ + from.x)];
  if (here < 0) return kStay;
  for (int a = 0; a < 4; ++a) {
    const GridCell n = move(from, a);
    if (dist[static_cast<std::size_t>(n.y * size_ + n.x)] == here - 1) return a;
  }
  return kStay;
}

GridCell fraction_to_cell(const std::vector<double>& fraction, int size) {
  auto one = [size](double f) {
    return std::clamp(static_cast<int>(std::floor(f * size)), 0, size - 1);
  };
  return {one(fraction.at(0)), one(fraction.at(1))};
}

GridCell cell_of(const StateVec& state, int size) {
  return {std::clamp(static_cast<int>(std::lround(state[0])), 0, size - 1),
          std::clamp(static_cast<int>(std::lround(state[1])), 0, size - 1)};
}

Action grid_action(int index) {
  if (index < 0 || index >= kNumGridActions) {
    throw ContractError("grid action index out of range: " + std::to_string(index));
  }
  Action a = Action::Zero(kNumGridActions);
  a[index] = 1.0;
  return a;
}

int grid_action_index(const Action& action) {
  if (action.size() != kNumGridActions) {
    throw ContractError("grid action must be a one-hot row of width 5");
  }
  int index = -1;
  for (int i = 0; i < kNumGridActions; ++i) {
    if (action[i] == 1.0 && index < 0) {
      index = i;
    } else if (action[i] != 0.0) {
      index = -2;
      break;
    }
  }
  if (index < 0) throw ContractError("grid action is not a valid one-hot index");
  return index;
}

GridDynamics::GridDynamics(std::shared_ptr<const GridLayout> layout)
    : layout_(std::move(layout)) {}

Eigen::Vector2d GridDynamics::unclipped(const StateVec& state, const Action& action) const {
  if (state.size() != 2 || action.size() != kNumGridActions) {
    throw ContractError("gridworld: expected state of size 2 and action of size 5");
  }
  const GridCell c = cell_of(state, layout_->size());
  Eigen::Vector2d pos = state.head<2>();
  for (int a = 0; a < kNumGridActions; ++a) {
    if (action[a] != 0.0) pos += action[a] * layout_->displacement(c, a);
  }
  return pos;
}

StateVec GridDynamics::predict(const StateVec& state, const Action& action) const {
  const double hi = layout_->size() - 1;
  const Eigen::Vector2d pos = unclipped(state, action);
  StateVec out(2);
  out << std::clamp(pos.x(), 0.0, hi), std::clamp(pos.y(), 0.0, hi);
  return out;
}

Eigen::MatrixXd GridDynamics::action_jacobian(const StateVec& state,
                                              const Action& action) const {
  const double hi = layout_->size() - 1;
  const Eigen::Vector2d pos = unclipped(state, action);
  const GridCell c = cell_of(state, layout_->size());
  Eigen::MatrixXd j(2, kNumGridActions);
  for (int a = 0; a < kNumGridActions; ++a) j.col(a) = layout_->displacement(c, a);
  for (int k = 0; k < 2; ++k) {
    if (pos[k] < 0.0 || pos[k] > hi) j.row(k).setZero();
  }
  return j;
}

Eigen::MatrixXd GridDynamics::state_jacobian(const StateVec& state,
                                             const Action& action) const {
  const double hi = layout_->size() - 1;
  const Eigen::Vector2d pos = unclipped(state, action);
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(2, 2);
  for (int k = 0; k < 2; ++k) {
    if (pos[k] < 0.0 || pos[k] > hi) j(k, k) = 0.0;
  }
  return j;
}

double GridDynamics::goal_distance_sq(const StateVec& state, const StateVec& goal) const {
  return (state.head<2>() - goal.head<2>()).squaredNorm();
}

StateVec GridDynamics::goal_distance_sq_grad(const StateVec& state,
                                             const StateVec& goal) const {
  return 2.0 * (state.head<2>() - goal.head<2>());
}

GridWorld::GridWorld() : space_(make_space()) { configure(space_.defaults()); }

bool GridWorld::success(const StateVec& state, const StateVec& goal) const {
  return cell_of(state, layout_->size()) == cell_of(goal, layout_->size());
}

WorldDynamicsPtr GridWorld::dynamics_for_planning() const {
  return std::make_shared<GridDynamics>(layout_);
}

WorldDynamicsPtr GridWorld::differentiable_dynamics() const {
  return dynamics_for_planning();
}

std::unique_ptr<World> GridWorld::clone_fresh() const {
  return std::make_unique<GridWorld>();
}

void GridWorld::configure(const FactorValues& f) {
  layout_ = std::make_shared<const GridLayout>(layout_from(f));
  start_ = fraction_to_cell(f.at("agent.start"), layout_->size());
  goal_cell_ = fraction_to_cell(f.at("goal.position"), layout_->size());
}

StateVec GridWorld::initial_state() const {
  StateVec s(2);
  s << start_.x, start_.y;
  return s;
}

StateVec GridWorld::initial_goal() const {
  StateVec g(2);
  g << goal_cell_.x, goal_cell_.y;
  return g;
}

StateVec GridWorld::transition(const StateVec& state, const Action& action) const {
  const int index = grid_action_index(action);
  const GridCell to = layout_->move(cell_of(state, layout_->size()), index);
  StateVec out(2);
  out << to.x, to.y;
  return out;
}

}  // namespace wplan::worlds
