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
#include <string>
#include <vector>

#include "wplan/data/trajectory_file.hpp"
#include "wplan/policy/policy.hpp"
#include "wplan/worlds/variation.hpp"

namespace wplan::data {

// Column and attribute names of collected files.
inline constexpr const char* kStateColumn = "state";
inline constexpr const char* kActionColumn = "action";
inline constexpr const char* kTerminatedColumn = "terminated";
inline constexpr const char* kGoalColumn = "goal";
inline constexpr const char* kVariationColumn = "variation";
inline constexpr const char* kWorldAttribute = "world";
inline constexpr const char* kLayoutAttribute = "variation_layout";

struct CollectConfig {
  std::string world_id;
  std::uint64_t episodes = 1;
  std::uint64_t seed = 0;
  worlds::ResetOptions options;
  int num_envs = 1;
  int max_steps = 0;  // 0: the world's own limit
};

struct CollectSummary {
  std::uint64_t episodes = 0;
  std::uint64_t total_steps = 0;  // environment steps
  std::uint64_t terminated = 0;   // episodes ending in success
};

/// Runs `episodes` episodes and writes them to `path`. Episode e has
/// steps+1 rows: states s_0..s_T, actions a_0..a_{T-1} followed by a zero
/// row, and a terminated flag that can only be set on the last row. Goal
/// and factor values are stored once per episode.
CollectSummary collect(const CollectConfig& cfg, policy::Policy& policy,
                       const std::string& path);

// "key:size;key:size" in the space's declaration order.
std::string variation_layout(const worlds::VariationSpace& space);
std::vector<double> pack_variation(const worlds::VariationSpace& space,
                                   const worlds::FactorValues& values);
worlds::FactorValues unpack_variation(const std::string& layout,
                                      const std::vector<double>& packed);

}  // namespace wplan::data
