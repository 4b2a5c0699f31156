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

#include <vector>

#include "wplan/policy/policy.hpp"

namespace wplan::policy {

struct RolloutResult {
  bool success = false;
  int steps = 0;  // environment steps taken
  // s_0 .. s_steps and a_0 .. a_{steps-1}; filled when recording.
  std::vector<StateVec> states;
  std::vector<Action> actions;
  // Wall-clock seconds of each get_action call.
  std::vector<double> latencies;
};

// Runs one episode on an already reset (or restored) world for at most
// `budget` steps, stopping when the success predicate fires. A start that
// already satisfies the predicate succeeds with zero steps.
RolloutResult run_rollout(worlds::World& world, Policy& policy, int slot,
                          const RandomStream& episode_rng, int budget, bool record,
                          const ActionSequence* recorded_actions = nullptr);

}  // namespace wplan::policy
