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

#include "wplan/worlds/pool.hpp"

#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "wplan/worlds/registry.hpp"

namespace wplan::worlds {

EpisodeSeeds episode_seeds(std::uint64_t seed, std::uint64_t episode) {
  const RandomStream root = RandomStream(seed).split(episode);
  RandomStream reset = root.split(0);
  return {reset.next_u64(), root.split(1)};
}

WorldPool::WorldPool(std::string_view world_id, int num_envs) : world_id_(world_id) {
  if (num_envs < 1) throw ConfigError("num_envs must be >= 1");
  for (int i = 0; i < num_envs; ++i) worlds_.push_back(make_world(world_id));
}

World& WorldPool::world(int slot) {
  if (slot < 0 || slot >= size()) throw ContractError("pool slot out of range");
  return *worlds_[static_cast<std::size_t>(slot)];
}

void WorldPool::run(std::uint64_t n,
                    const std::function<void(int slot, std::uint64_t item)>& fn) {
  std::mutex mutex;
  std::uint64_t failed_item = std::numeric_limits<std::uint64_t>::max();
  std::exception_ptr failure;

  auto work = [&](int slot) {
    for (std::uint64_t item = static_cast<std::uint64_t>(slot); item < n;
         item += static_cast<std::uint64_t>(size())) {
      try {
        fn(slot, item);
      } catch (...) {
        const std::lock_guard lock(mutex);
        if (item < failed_item) {
          failed_item = item;
          failure = std::current_exception();
        }
        return;
      }
    }
  };

  if (size() == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (int slot = 0; slot < size(); ++slot) threads.emplace_back(work, slot);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wplan::worlds
