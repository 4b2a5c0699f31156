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

#include "wplan/policy/rollout.hpp"

#include <chrono>
#include <string>

namespace wplan::policy {
namespace {

void check_action(const ActionSpace& space, const Action& a, const std::string& who) {
  if (a.size() != sequence_width(space) || !a.allFinite()) {
    throw ContractError(who + " returned an action of the wrong size or with non-finite entries");
  }
}

}  // namespace

RolloutResult run_rollout(worlds::World& world, Policy& policy, int slot,
                          const RandomStream& episode_rng, int budget, bool record,
                          const ActionSequence* recorded_actions) {
  if (budget < 1) throw ConfigError("budget must be >= 1");
  policy.on_reset(slot, world, episode_rng);
  if (recorded_actions != nullptr) policy.on_recorded_actions(slot, *recorded_actions);

  RolloutResult out;
  if (record) out.states.push_back(world.state());
  if (world.success(world.state(), world.goal())) {
    out.success = true;
    return out;
  }
  const ActionSpace space = world.action_space();
  for (int t = 0; t < budget; ++t) {
    const PolicyInput input{&world, world.state(), world.goal(), t};
    const auto begin = std::chrono::steady_clock::now();
    Action a = policy.get_action(slot, input);
    out.latencies.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count());
    check_action(space, a, policy.name());
    const worlds::StepResult r = world.step(a);
    ++out.steps;
    if (record) {
      out.actions.push_back(std::move(a));
      out.states.push_back(r.state);
    }
    if (r.terminated) {
      out.success = true;
      break;
    }
  }
  return out;
}

}  // namespace wplan::policy
