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

#include "wplan/data/collect.hpp"

#include <sstream>
#include <string>

#include "wplan/policy/rollout.hpp"
#include "wplan/worlds/pool.hpp"
#include "wplan/worlds/registry.hpp"

namespace wplan::data {

std::string variation_layout(const worlds::VariationSpace& space) {
  std::string out;
  for (const auto& f : space.factors()) {
    if (!out.empty()) out += ';';
    out += f.key + ':' + std::to_string(f.size());
  }
  return out;
}

std::vector<double> pack_variation(const worlds::VariationSpace& space,
                                   const worlds::FactorValues& values) {
  std::vector<double> out;
  for (const auto& f : space.factors()) {
    const auto& v = values.at(f.key);
    if (v.size() != f.size()) throw ContractError("factor " + f.key + " has the wrong size");
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

worlds::FactorValues unpack_variation(const std::string& layout,
                                      const std::vector<double>& packed) {
  worlds::FactorValues out;
  std::size_t pos = 0;
  std::stringstream in(layout);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw FormatError("bad variation layout entry '" + item + "'");
    std::size_t size = 0;
    try {
      size = std::stoul(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw FormatError("bad variation layout entry '" + item + "'");
    }
    if (pos + size > packed.size()) throw FormatError("variation blob shorter than its layout");
    out[item.substr(0, colon)] =
        std::vector<double>(packed.begin() + static_cast<std::ptrdiff_t>(pos),
                            packed.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  if (pos != packed.size()) throw FormatError("variation blob longer than its layout");
  return out;
}

CollectSummary collect(const CollectConfig& cfg, policy::Policy& policy,
                       const std::string& path) {
  if (cfg.episodes < 1) throw ConfigError("collect needs at least one episode");
  worlds::WorldPool pool(cfg.world_id, cfg.num_envs);
  policy.configure(pool.size());

  const worlds::World& probe = pool.world(0);
  const int budget = cfg.max_steps > 0 ? cfg.max_steps : probe.max_steps();
  const auto state_dim = static_cast<std::uint32_t>(probe.state_dim());
  const auto action_dim = static_cast<std::uint32_t>(sequence_width(probe.action_space()));
  const std::vector<double> packed_defaults =
      pack_variation(probe.variation_space(), probe.variation_space().defaults());

  TrajectorySchema schema{{
      {kStateColumn, DType::kF64, false, {state_dim}},
      {kActionColumn, DType::kF64, false, {action_dim}},
      {kTerminatedColumn, DType::kU8, false, {}},
      {kGoalColumn, DType::kF64, true, {state_dim}},
      {kVariationColumn, DType::kF64, true,
       {static_cast<std::uint32_t>(packed_defaults.size())}},
  }};
  Attributes attributes{
      {kWorldAttribute, cfg.world_id},
      {kLayoutAttribute, variation_layout(probe.variation_space())},
      {"policy", policy.name()},
      {"seed", std::to_string(cfg.seed)},
  };

  std::vector<Episode> episodes(cfg.episodes);
  std::vector<char> terminated(cfg.episodes, 0);  // not vector<bool>: slots write concurrently
  pool.run(cfg.episodes, [&](int slot, std::uint64_t e) {
    try {
      worlds::World& world = pool.world(slot);
      const worlds::EpisodeSeeds seeds = worlds::episode_seeds(cfg.seed, e);
      const worlds::ResetResult reset = world.reset(seeds.reset_seed, cfg.options);
      const policy::RolloutResult r =
          policy::run_rollout(world, policy, slot, seeds.policy_rng, budget, true);

      Episode& ep = episodes[e];
      ep.steps = static_cast<std::uint64_t>(r.states.size());
      auto& states = ep.columns[kStateColumn];
      auto& actions = ep.columns[kActionColumn];
      auto& flags = ep.columns[kTerminatedColumn];
      for (std::size_t t = 0; t < r.states.size(); ++t) {
        states.insert(states.end(), r.states[t].data(), r.states[t].data() + state_dim);
        if (t < r.actions.size()) {
          actions.insert(actions.end(), r.actions[t].data(), r.actions[t].data() + action_dim);
        } else {
          actions.insert(actions.end(), action_dim, 0.0);
        }
        flags.push_back(t + 1 == r.states.size() && r.success ? 1.0 : 0.0);
      }
      ep.columns[kGoalColumn] = std::vector<double>(reset.goal.data(),
                                                    reset.goal.data() + state_dim);
      ep.columns[kVariationColumn] = pack_variation(world.variation_space(), reset.factors);
      terminated[e] = r.success;
    } catch (...) {
      rethrow_with_context("collect episode " + std::to_string(e));
    }
  });

  CollectSummary summary;
  TrajectoryWriter writer(path, std::move(schema), std::move(attributes));
  for (std::uint64_t e = 0; e < cfg.episodes; ++e) {
    writer.add_episode(episodes[e]);
    summary.total_steps += episodes[e].steps - 1;
    if (terminated[e]) ++summary.terminated;
    episodes[e] = Episode{};
  }
  writer.finish();
  summary.episodes = cfg.episodes;
  return summary;
}

}  // namespace wplan::data
