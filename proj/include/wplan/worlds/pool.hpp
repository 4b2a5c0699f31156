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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wplan/core/rng.hpp"
#include "wplan/worlds/world.hpp"

namespace wplan::worlds {

// Streams for episode i of a run seeded with `seed`. Depend only on
// (seed, i), never on which pool slot runs the episode.
struct EpisodeSeeds {
  std::uint64_t reset_seed;
  RandomStream policy_rng;
};
EpisodeSeeds episode_seeds(std::uint64_t seed, std::uint64_t episode);

/// N independent world instances, one thread each. Item i always runs on
/// slot i % N, and callers gather results by item index, so results do not
/// depend on N.
class WorldPool {
 public:
  WorldPool(std::string_view world_id, int num_envs);

  int size() const { return static_cast<int>(worlds_.size()); }
  World& world(int slot);
  const std::string& world_id() const { return world_id_; }

  // Calls fn(slot, item) for every item in [0, n). If any call throws, the
  // exception of the lowest failing item is rethrown after all slots stop.
  void run(std::uint64_t n, const std::function<void(int slot, std::uint64_t item)>& fn);

 private:
  std::string world_id_;
  std::vector<WorldPtr> worlds_;
};

}  // namespace wplan::worlds
