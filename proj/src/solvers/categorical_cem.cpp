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

#include <vector>

#include "internal.hpp"
#include "wplan/noise/noise.hpp"

namespace wplan::solvers {

SolverResult categorical_cem_solve(const CostModel& model, const StateVec& s0,
                                   const SamplingSolverConfig& cfg,
                                   RandomStream& rng) {
  constexpr const char* kName = "categorical_cem";
  internal::Stopwatch clock;
  cfg.validate();
  const int num_actions = internal::require_discrete(model.action_space(), kName);
  const int horizon = cfg.horizon;
  const int n = cfg.num_candidates;

  Eigen::MatrixXd probs =
      Eigen::MatrixXd::Constant(horizon, num_actions, 1.0 / num_actions);
  SolverResult result;
  // choices[i][t]: action of candidate i at step t
  std::vector<std::vector<int>> choices(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(horizon)));
  std::vector<ActionSequence> candidates(static_cast<std::size_t>(n));

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int t = 0; t < horizon; ++t) {
      const Eigen::VectorXd row = probs.row(t).transpose();
      const std::vector<int> draws = noise::gumbel_max_sample(
          rng, std::span<const double>(row.data(), static_cast<std::size_t>(row.size())), n);
      for (int i = 0; i < n; ++i) {
        choices[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] =
            draws[static_cast<std::size_t>(i)];
      }
    }
    choices.front() = argmax_rows(probs);
    for (int i = 0; i < n; ++i) {
      candidates[static_cast<std::size_t>(i)] =
          one_hot(choices[static_cast<std::size_t>(i)], num_actions);
    }

    const std::vector<double> costs =
        internal::evaluate_batch(model, s0, candidates, result, kName);
    result.cost_trace.push_back(internal::lowest(costs));

    const std::vector<int> elites = select_elites(costs, cfg.num_elites);
    Eigen::MatrixXd frequencies = Eigen::MatrixXd::Zero(horizon, num_actions);
    for (int i : elites) {
      const auto& picks = choices[static_cast<std::size_t>(i)];
      for (int t = 0; t < horizon; ++t) frequencies(t, picks[static_cast<std::size_t>(t)]) += 1.0;
    }
    frequencies /= static_cast<double>(elites.size());
    if (cfg.smoothing > 0.0) {
      frequencies = (frequencies.array() + cfg.smoothing) /
                    (1.0 + num_actions * cfg.smoothing);
    }
    probs = cfg.momentum * probs + (1.0 - cfg.momentum) * frequencies;
    ++result.iterations_run;
  }

  std::vector<ActionSequence> decoded{one_hot(argmax_rows(probs), num_actions)};
  const std::vector<double> cost = internal::evaluate_batch(model, s0, decoded, result, kName);
  result.best_sequence = std::move(decoded.front());
  result.best_cost = cost.front();
  result.distribution = std::move(probs);
  result.wall_time = clock.seconds();
  return result;
}

}  // namespace wplan::solvers
