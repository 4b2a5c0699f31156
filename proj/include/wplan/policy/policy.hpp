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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wplan/core/rng.hpp"
#include "wplan/core/types.hpp"
#include "wplan/worlds/world.hpp"

namespace wplan::policy {

// What a policy sees for one environment at one step.
struct PolicyInput {
  const worlds::World* world = nullptr;
  StateVec state;
  StateVec goal;
  int step = 0;
};

/// Maps per-environment observations to actions. A policy serves a pool of
/// `num_slots` environments; slot s is only ever driven by one thread at a
/// time, so per-slot state needs no locking. Actions are always inside the
/// world's action space; discrete worlds get one-hot rows.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;

  // Sizes per-slot state. Must be called before use; the default is 1 slot.
  virtual void configure(int num_slots);
  int num_slots() const { return num_slots_; }

  // Start of an episode in `slot`. `episode_rng` is the episode's own
  // stream, so results do not depend on which slot runs the episode.
  virtual void on_reset(int slot, const worlds::World& world, const RandomStream& episode_rng);

  // Dataset replays pass the recorded actions that follow the start state.
  // Ignored by default.
  virtual void on_recorded_actions(int slot, const ActionSequence& actions);

  virtual Action get_action(int slot, const PolicyInput& input) = 0;

  // One action per environment; input i is served by slot i.
  std::vector<Action> get_actions(std::span<const PolicyInput> inputs);

 protected:
  void check_slot(int slot) const;

 private:
  int num_slots_ = 1;
};

using PolicyPtr = std::unique_ptr<Policy>;

/// Uniform actions: inside the box for continuous worlds, uniform one-hot
/// rows for discrete worlds.
class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed);

  std::string name() const override { return "random"; }
  void configure(int num_slots) override;
  void on_reset(int slot, const worlds::World& world, const RandomStream& episode_rng) override;
  Action get_action(int slot, const PolicyInput& input) override;

 private:
  std::uint64_t seed_;
  std::vector<RandomStream> streams_;
};

/// Plays back the actions handed over by on_recorded_actions and holds the
/// last one once they run out.
class ReplayPolicy : public Policy {
 public:
  ReplayPolicy() { configure(1); }

  std::string name() const override { return "replay"; }
  void configure(int num_slots) override;
  void on_recorded_actions(int slot, const ActionSequence& actions) override;
  Action get_action(int slot, const PolicyInput& input) override;

 private:
  std::vector<ActionSequence> recorded_;
};

Action sample_uniform_action(const ActionSpace& space, RandomStream& rng);

}  // namespace wplan::policy
