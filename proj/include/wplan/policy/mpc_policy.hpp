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

#include <optional>
#include <string>
#include <vector>

#include "wplan/policy/policy.hpp"
#include "wplan/solvers/dispatch.hpp"

namespace wplan::policy {

// Where gradient solvers get their gradients from.
enum class GradientSource {
  kSurrogate,         // the world's differentiable dynamics
  kFiniteDifference,  // central differences of the true planning model
};

struct MPCPolicyConfig {
  solvers::SolverSpec solver;
  int replan_every = 1;  // actions executed per solve, 1 <= K <= H
  bool warm_start = true;
  GradientSource gradient_source = GradientSource::kSurrogate;
  double action_weight = worlds::kDefaultActionWeight;
  // Worker threads for batched cost evaluation (results do not depend on it).
  int cost_workers = 1;

  void validate() const;
};

/// Solves from the current state every K steps and executes the stored plan
/// in between. The warm start for the next solve is the previous plan
/// shifted left by K and padded with zeros (continuous) or uniform rows
/// (discrete).
class MPCPolicy : public Policy {
 public:
  explicit MPCPolicy(MPCPolicyConfig cfg);

  std::string name() const override;
  void configure(int num_slots) override;
  void on_reset(int slot, const worlds::World& world, const RandomStream& episode_rng) override;
  Action get_action(int slot, const PolicyInput& input) override;

  const MPCPolicyConfig& config() const { return cfg_; }
  // Solver calls in the slot's current episode.
  int solves(int slot) const;
  const std::optional<solvers::SolverResult>& last_result(int slot) const;

 private:
  struct Slot {
    RandomStream rng{0};
    ActionSequence plan;
    int cursor = 0;
    int solves = 0;
    std::optional<solvers::SolverResult> last;
  };

  solvers::PlanningProblem problem_for(const PolicyInput& input) const;

  MPCPolicyConfig cfg_;
  std::vector<Slot> slots_;
};

// Drop the first k rows and pad at the end to the same length.
ActionSequence shift_plan(const ActionSequence& plan, int k, bool discrete);

}  // namespace wplan::policy
