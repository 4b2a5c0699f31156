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

#include "wplan/policy/policy.hpp"

#include <algorithm>
#include <string>

namespace wplan::policy {

void Policy::configure(int num_slots) {
  if (num_slots < 1) throw ContractError("policy needs at least one slot");
  num_slots_ = num_slots;
}

void Policy::on_reset(int slot, const worlds::World&, const RandomStream&) {
  check_slot(slot);
}

void Policy::on_recorded_actions(int slot, const ActionSequence&) { check_slot(slot); }

std::vector<Action> Policy::get_actions(std::span<const PolicyInput> inputs) {
  if (static_cast<int>(inputs.size()) > num_slots_) {
    throw ContractError("get_actions: more inputs than configured slots");
  }
  std::vector<Action> out;
  out.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    out.push_back(get_action(static_cast<int>(i), inputs[i]));
  }
  return out;
}

void Policy::check_slot(int slot) const {
  if (slot < 0 || slot >= num_slots_) {
    throw ContractError("policy slot " + std::to_string(slot) + " out of range [0, " +
                        std::to_string(num_slots_) + ")");
  }
}

Action sample_uniform_action(const ActionSpace& space, RandomStream& rng) {
  if (const auto* box = std::get_if<ContinuousActionSpace>(&space)) {
    Action a(box->dim());
    for (int j = 0; j < box->dim(); ++j) a[j] = rng.uniform(box->low()[j], box->high()[j]);
    return a;
  }
  const int n = std::get<DiscreteActionSpace>(space).cardinality();
  Action a = Action::Zero(n);
  a[static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(n)))] = 1.0;
  return a;
}

RandomPolicy::RandomPolicy(std::uint64_t seed) : seed_(seed) { configure(1); }

void RandomPolicy::configure(int num_slots) {
  Policy::configure(num_slots);
  streams_.assign(static_cast<std::size_t>(num_slots), RandomStream(seed_));
}

void RandomPolicy::on_reset(int slot, const worlds::World&, const RandomStream& episode_rng) {
  check_slot(slot);
  streams_[static_cast<std::size_t>(slot)] = episode_rng.split(seed_);
}

Action RandomPolicy::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  if (input.world == nullptr) throw ContractError("random policy: input has no world");
  return sample_uniform_action(input.world->action_space(),
                               streams_[static_cast<std::size_t>(slot)]);
}

void ReplayPolicy::configure(int num_slots) {
  Policy::configure(num_slots);
  recorded_.assign(static_cast<std::size_t>(num_slots), ActionSequence());
}

void ReplayPolicy::on_recorded_actions(int slot, const ActionSequence& actions) {
  check_slot(slot);
  if (actions.rows() == 0) throw ContractError("replay policy: no recorded actions");
  recorded_[static_cast<std::size_t>(slot)] = actions;
}

Action ReplayPolicy::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  const ActionSequence& actions = recorded_[static_cast<std::size_t>(slot)];
  if (actions.rows() == 0) {
    throw ContractError("replay policy: no recorded actions for slot " + std::to_string(slot));
  }
  const Eigen::Index row = std::min<Eigen::Index>(input.step, actions.rows() - 1);
  return actions.row(row).transpose();
}

}  // namespace wplan::policy
