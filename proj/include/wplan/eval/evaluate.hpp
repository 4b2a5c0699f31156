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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wplan/policy/policy.hpp"
#include "wplan/worlds/variation.hpp"

namespace wplan::eval {

struct EvalConfig {
  std::string world_id;
  std::uint64_t episodes = 100;  // episodes, or dataset pairs to sample
  std::uint64_t seed = 0;
  int budget = 50;  // max environment steps per episode
  worlds::ResetOptions options;
  int num_envs = 1;
  // Latency is wall-clock and varies run to run; it is left out of the
  // report unless requested so that reports are reproducible.
  bool timing = false;

  // Dataset-driven protocol.
  std::string dataset;
  int goal_offset = 25;
  // Explicit (episode, start) pairs; when empty, `episodes` pairs are
  // sampled from the seed.
  std::vector<std::uint64_t> episode_indices;
  std::vector<std::uint64_t> start_steps;

  void validate() const;
};

struct EvalReport {
  std::string protocol;  // "episodic" or "dataset"
  std::string world;
  std::string policy;
  std::string factor = "baseline";  // sweep row label
  std::uint64_t seed = 0;
  int budget = 0;
  std::vector<std::string> variation;
  std::string dataset;
  int goal_offset = 0;

  std::vector<bool> successes;
  double success_rate = 0.0;
  // Steps to success, successful episodes only, in episode order.
  std::vector<int> time_to_goal;
  std::optional<double> mean_time_to_goal;
  // Reset seed of each episode (episodic) ...
  std::vector<std::uint64_t> episode_seeds;
  // ... or (episode, start step) of each pair (dataset).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;

  std::optional<double> mean_latency_s;
  std::optional<double> p95_latency_s;

  std::uint64_t n() const { return successes.size(); }
  bool operator==(const EvalReport&) const = default;
};

// n episodes, episode i reset from episode_seeds(cfg.seed, i) with
// cfg.options.
EvalReport evaluate_episodic(policy::Policy& policy, const EvalConfig& cfg);

// Restores stored (state, factors) at step t of a dataset episode, uses the
// stored state at t + goal_offset as the goal, and runs the policy for at
// most cfg.budget steps. The recorded actions from t on are offered to the
// policy through on_recorded_actions.
EvalReport evaluate_from_dataset(policy::Policy& policy, const EvalConfig& cfg);

// Baseline row (cfg as given) plus one row per factor selector with that
// selector added to the sampled set. Rows share episode seeds.
std::vector<EvalReport> fov_sweep(policy::Policy& policy, const EvalConfig& cfg,
                                  const std::vector<std::string>& factors);

}  // namespace wplan::eval
