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

#include "wplan/eval/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wplan/data/collect.hpp"
#include "wplan/data/trajectory_file.hpp"
#include "wplan/policy/rollout.hpp"
#include "wplan/worlds/pool.hpp"
#include "wplan/worlds/registry.hpp"

namespace wplan::eval {
namespace {

constexpr std::uint64_t kPairStream = 0x50414952;  // "PAIR"

struct EpisodeOutcome {
  bool success = false;
  int steps = 0;
  std::vector<double> latencies;
};

void summarize(const EvalConfig& cfg, const std::vector<EpisodeOutcome>& outcomes,
               EvalReport& report) {
  report.seed = cfg.seed;
  report.budget = cfg.budget;
  report.variation = cfg.options.variation;
  std::vector<double> latencies;
  long total_steps = 0;
  for (const auto& o : outcomes) {
    report.successes.push_back(o.success);
    if (o.success) {
      report.time_to_goal.push_back(o.steps);
      total_steps += o.steps;
    }
    latencies.insert(latencies.end(), o.latencies.begin(), o.latencies.end());
  }
  const auto wins = static_cast<double>(report.time_to_goal.size());
  report.success_rate = outcomes.empty() ? 0.0 : wins / static_cast<double>(outcomes.size());
  if (!report.time_to_goal.empty()) {
    report.mean_time_to_goal = static_cast<double>(total_steps) / wins;
  }
  if (cfg.timing && !latencies.empty()) {
    report.mean_latency_s =
        std::accumulate(latencies.begin(), latencies.end(), 0.0) /
        static_cast<double>(latencies.size());
    std::sort(latencies.begin(), latencies.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(latencies.size())));
    report.p95_latency_s = latencies[std::max<std::size_t>(rank, 1) - 1];
  }
}

ActionSequence rows_to_matrix(const std::vector<double>& values, std::size_t rows,
                              std::size_t cols) {
  ActionSequence m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
    }
  }
  return m;
}

}  // namespace

void EvalConfig::validate() const {
  if (world_id.empty()) throw ConfigError("no world selected");
  if (budget < 1) throw ConfigError("budget must be >= 1");
  if (num_envs < 1) throw ConfigError("num_envs must be >= 1");
  if (goal_offset < 1) throw ConfigError("goal offset must be >= 1");
  if (!start_steps.empty() && start_steps.size() != episode_indices.size()) {
    throw ConfigError("start steps must match the episode indices one to one");
  }
}

EvalReport evaluate_episodic(policy::Policy& policy, const EvalConfig& cfg) {
  cfg.validate();
  if (cfg.episodes < 1) throw ConfigError("need at least one episode");
  worlds::WorldPool pool(cfg.world_id, cfg.num_envs);
  policy.configure(pool.size());

  std::vector<EpisodeOutcome> outcomes(cfg.episodes);
  std::vector<std::uint64_t> seeds(cfg.episodes);
  pool.run(cfg.episodes, [&](int slot, std::uint64_t e) {
    try {
      worlds::World& world = pool.world(slot);
      const worlds::EpisodeSeeds s = worlds::episode_seeds(cfg.seed, e);
      seeds[e] = s.reset_seed;
      world.reset(s.reset_seed, cfg.options);
      policy::RolloutResult r =
          policy::run_rollout(world, policy, slot, s.policy_rng, cfg.budget, false);
      outcomes[e] = {r.success, r.steps, std::move(r.latencies)};
    } catch (...) {
      rethrow_with_context("evaluate episode " + std::to_string(e));
    }
  });

  EvalReport report;
  report.protocol = "episodic";
  report.world = cfg.world_id;
  report.policy = policy.name();
  report.episode_seeds = std::move(seeds);
  summarize(cfg, outcomes, report);
  return report;
}

EvalReport evaluate_from_dataset(policy::Policy& policy, const EvalConfig& cfg) {
  cfg.validate();
  if (cfg.dataset.empty()) throw ConfigError("dataset protocol needs a dataset path");
  const data::TrajectoryReader reader(cfg.dataset);
  const std::string stored_world = reader.attribute(data::kWorldAttribute);
  if (stored_world != cfg.world_id) {
    throw ConfigError("dataset was collected on '" + stored_world + "', not '" +
                      cfg.world_id + "'");
  }
  const std::string layout = reader.attribute(data::kLayoutAttribute);
  const auto offset = static_cast<std::uint64_t>(cfg.goal_offset);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (!cfg.episode_indices.empty()) {
    for (std::size_t i = 0; i < cfg.episode_indices.size(); ++i) {
      const std::uint64_t ep = cfg.episode_indices[i];
      const std::uint64_t start = cfg.start_steps.empty() ? 0 : cfg.start_steps[i];
      const std::uint64_t len = reader.episode_length(ep);
      if (start + offset > len - 1) {
        throw RangeError("episode " + std::to_string(ep) + ": start " + std::to_string(start) +
                         " + goal offset " + std::to_string(offset) +
                         " is past its last step " + std::to_string(len - 1));
      }
      pairs.emplace_back(ep, start);
    }
  } else {
    if (cfg.episodes < 1) throw ConfigError("need at least one pair");
    std::vector<std::uint64_t> eligible;
    for (std::uint64_t e = 0; e < reader.num_episodes(); ++e) {
      if (reader.episode_length(e) - 1 >= offset) eligible.push_back(e);
    }
    if (eligible.empty()) {
      throw RangeError("no dataset episode is longer than the goal offset " +
                       std::to_string(offset));
    }
    RandomStream rng = RandomStream(cfg.seed).split(kPairStream);
    for (std::uint64_t i = 0; i < cfg.episodes; ++i) {
      const std::uint64_t ep = eligible[rng.uniform_int(eligible.size())];
      const std::uint64_t last_start = reader.episode_length(ep) - 1 - offset;
      pairs.emplace_back(ep, rng.uniform_int(last_start + 1));
    }
  }

  worlds::WorldPool pool(cfg.world_id, cfg.num_envs);
  policy.configure(pool.size());
  const auto state_dim = static_cast<std::size_t>(pool.world(0).state_dim());
  const auto action_dim = static_cast<std::size_t>(sequence_width(pool.world(0).action_space()));

  std::vector<EpisodeOutcome> outcomes(pairs.size());
  pool.run(pairs.size(), [&](int slot, std::uint64_t i) {
    const auto [ep, start] = pairs[i];
    try {
      worlds::World& world = pool.world(slot);
      const std::vector<double> states =
          reader.read_column({ep, start, offset + 1}, data::kStateColumn);
      const std::vector<double> actions =
          reader.read_column({ep, start, offset}, data::kActionColumn);
      const worlds::FactorValues factors =
          data::unpack_variation(layout, reader.read_column({ep, 0, 1}, data::kVariationColumn));
      const StateVec s0 = Eigen::Map<const StateVec>(states.data(),
                                                     static_cast<Eigen::Index>(state_dim));
      const StateVec goal = Eigen::Map<const StateVec>(
          states.data() + offset * state_dim, static_cast<Eigen::Index>(state_dim));
      world.restore(s0, factors, goal);
      const ActionSequence recorded = rows_to_matrix(actions, offset, action_dim);
      policy::RolloutResult r =
          policy::run_rollout(world, policy, slot, worlds::episode_seeds(cfg.seed, i).policy_rng,
                              cfg.budget, false, &recorded);
      outcomes[i] = {r.success, r.steps, std::move(r.latencies)};
    } catch (...) {
      rethrow_with_context("dataset pair " + std::to_string(i) + " (episode " +
                           std::to_string(ep) + ", step " + std::to_string(start) + ")");
    }
  });

  EvalReport report;
  report.protocol = "dataset";
  report.world = cfg.world_id;
  report.policy = policy.name();
  report.dataset = cfg.dataset;
  report.goal_offset = cfg.goal_offset;
  report.pairs = std::move(pairs);
  summarize(cfg, outcomes, report);
  return report;
}

std::vector<EvalReport> fov_sweep(policy::Policy& policy, const EvalConfig& cfg,
                                  const std::vector<std::string>& factors) {
  cfg.validate();
  const worlds::WorldPtr probe = worlds::make_world(cfg.world_id);
  for (const auto& key : factors) {
    try {
      probe->variation_space().resolve(key);
    } catch (const ContractError& e) {
      throw ConfigError("invalid factor '" + key + "' for " + cfg.world_id + ": " + e.what());
    }
  }
  std::vector<EvalReport> rows;
  rows.push_back(evaluate_episodic(policy, cfg));
  for (const auto& key : factors) {
    EvalConfig row_cfg = cfg;
    row_cfg.options.variation.push_back(key);
    EvalReport row = evaluate_episodic(policy, row_cfg);
    row.factor = key;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wplan::eval
