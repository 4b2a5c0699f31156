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

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "wplan/noise/noise.hpp"

namespace wplan::solvers {
namespace {

using internal::evaluate_batch;
using internal::lowest;

// Smallest per-coordinate standard deviation kept after a refit. Zero when
// sampling started degenerate, so sigma_0 = 0 keeps the mean fixed.
double sigma_floor(double init_scale) {
  return init_scale > 0.0 ? std::min(1e-6, init_scale) : 0.0;
}

void finish(SolverResult& result, const CostModel& model, const StateVec& s0,
            ActionSequence sequence, const char* solver) {
  std::vector<ActionSequence> single{std::move(sequence)};
  const std::vector<double> cost = evaluate_batch(model, s0, single, result, solver);
  result.best_sequence = std::move(single.front());
  result.best_cost = cost.front();
}

// mean + scale (elementwise) * noise, clipped.
ActionSequence perturb(const ActionSequence& mean, const ActionSequence& scale,
                       const Eigen::MatrixXd& noise,
                       const ContinuousActionSpace& box) {
  ActionSequence candidate = mean + scale.cwiseProduct(noise);
  clip_to_bounds_inplace(candidate, box);
  return candidate;
}

}  // namespace

SolverResult predictive_sampling_solve(const CostModel& model, const StateVec& s0,
                                       const SamplingSolverConfig& cfg,
                                       RandomStream& rng,
                                       const InitSequence& nominal) {
  constexpr const char* kName = "predictive_sampling";
  internal::Stopwatch clock;
  cfg.validate();
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  ActionSequence base = internal::initial_sequence(nominal, cfg.horizon, box.dim(), kName);
  clip_to_bounds_inplace(base, box);

  const ActionSequence scale =
      ActionSequence::Constant(cfg.horizon, box.dim(), cfg.init_scale);
  const auto noise = noise::sample_gaussian(rng, cfg.num_candidates - 1,
                                            cfg.horizon, box.dim());
  std::vector<ActionSequence> candidates;
  candidates.reserve(static_cast<std::size_t>(cfg.num_candidates));
  candidates.push_back(base);
  for (const auto& eps : noise) candidates.push_back(perturb(base, scale, eps, box));

  SolverResult result;
  const std::vector<double> costs = evaluate_batch(model, s0, candidates, result, kName);
  const int best = argmin_index(costs);
  result.best_sequence = candidates[static_cast<std::size_t>(best)];
  result.best_cost = costs[static_cast<std::size_t>(best)];
  result.cost_trace.push_back(result.best_cost);
  result.iterations_run = 1;
  result.wall_time = clock.seconds();
  return result;
}

SolverResult cem_solve(const CostModel& model, const StateVec& s0,
                       const SamplingSolverConfig& cfg, RandomStream& rng,
                       const InitSequence& init) {
  constexpr const char* kName = "cem";
  internal::Stopwatch clock;
  cfg.validate();
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  ActionSequence mean = internal::initial_sequence(init, cfg.horizon, box.dim(), kName);
  clip_to_bounds_inplace(mean, box);
  ActionSequence sigma = ActionSequence::Constant(cfg.horizon, box.dim(), cfg.init_scale);
  const double floor = sigma_floor(cfg.init_scale);

  SolverResult result;
  std::vector<ActionSequence> candidates;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const auto noise = noise::sample_gaussian(rng, cfg.num_candidates - 1,
                                              cfg.horizon, box.dim());
    candidates.clear();
    candidates.push_back(mean);
    for (const auto& eps : noise) candidates.push_back(perturb(mean, sigma, eps, box));

    const std::vector<double> costs = evaluate_batch(model, s0, candidates, result, kName);
    result.cost_trace.push_back(lowest(costs));

    std::vector<ActionSequence> elites;
    for (int i : select_elites(costs, cfg.num_elites)) {
      elites.push_back(candidates[static_cast<std::size_t>(i)]);
    }
    auto [elite_mean, elite_std] = refit_gaussian(elites);
    mean = std::move(elite_mean);
    sigma = elite_std.cwiseMax(floor);
    ++result.iterations_run;
  }
  finish(result, model, s0, mean, kName);
  result.wall_time = clock.seconds();
  return result;
}

SolverResult mppi_solve(const CostModel& model, const StateVec& s0,
                        const SamplingSolverConfig& cfg, RandomStream& rng,
                        const InitSequence& init) {
  constexpr const char* kName = "mppi";
  internal::Stopwatch clock;
  cfg.validate();
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  ActionSequence mean = internal::initial_sequence(init, cfg.horizon, box.dim(), kName);
  clip_to_bounds_inplace(mean, box);
  const ActionSequence sigma =
      ActionSequence::Constant(cfg.horizon, box.dim(), cfg.init_scale);

  SolverResult result;
  std::vector<ActionSequence> candidates;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const auto noise = noise::sample_gaussian(rng, cfg.num_candidates - 1,
                                              cfg.horizon, box.dim());
    candidates.clear();
    candidates.push_back(mean);
    for (const auto& eps : noise) candidates.push_back(perturb(mean, sigma, eps, box));

    const std::vector<double> costs = evaluate_batch(model, s0, candidates, result, kName);
    result.cost_trace.push_back(lowest(costs));

    std::vector<int> top = select_elites(costs, cfg.num_elites);
    // Non-finite costs carry no weight.
    std::erase_if(top, [&](int i) { return std::isnan(costs[static_cast<std::size_t>(i)]); });
    std::vector<double> top_costs;
    for (int i : top) top_costs.push_back(costs[static_cast<std::size_t>(i)]);
    const std::vector<double> weights = softmin_weights(top_costs, cfg.temperature);

    // Weighted average written as a correction to the mean, so identical
    // candidates leave it bit-exact.
    ActionSequence step = ActionSequence::Zero(cfg.horizon, box.dim());
    for (std::size_t k = 0; k < top.size(); ++k) {
      step += weights[k] * (candidates[static_cast<std::size_t>(top[k])] - mean);
    }
    mean += step;
    ++result.iterations_run;
  }
  finish(result, model, s0, mean, kName);
  result.wall_time = clock.seconds();
  return result;
}

SolverResult icem_solve(const CostModel& model, const StateVec& s0,
                        const SamplingSolverConfig& cfg, RandomStream& rng,
                        const InitSequence& init) {
  constexpr const char* kName = "icem";
  internal::Stopwatch clock;
  cfg.validate();
  const ContinuousActionSpace box = internal::require_box(model.action_space(), kName);
  ActionSequence mean = internal::initial_sequence(init, cfg.horizon, box.dim(), kName);
  clip_to_bounds_inplace(mean, box);
  ActionSequence sigma = ActionSequence::Constant(cfg.horizon, box.dim(), cfg.init_scale);
  const double floor = sigma_floor(cfg.init_scale);
  const double alpha = cfg.momentum;
  const noise::ColoredNoiseSpec spec{cfg.noise_beta, cfg.horizon, box.dim()};

  SolverResult result;
  std::vector<ActionSequence> retained;  // previous elites, increasing cost
  std::vector<ActionSequence> candidates;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const auto noise = noise::sample_colored(rng, spec, cfg.num_candidates - 1);
    candidates.clear();
    candidates.push_back(mean);
    for (const auto& xi : noise) candidates.push_back(mean + sigma.cwiseProduct(xi));
    if (iter > 0) {
      const std::size_t r = std::min({static_cast<std::size_t>(cfg.elites_keep),
                                      retained.size(), candidates.size() - 1});
      for (std::size_t k = 0; k < r; ++k) candidates[1 + k] = retained[k];
    }
    for (auto& candidate : candidates) clip_to_bounds_inplace(candidate, box);

    const std::vector<double> costs = evaluate_batch(model, s0, candidates, result, kName);
    result.cost_trace.push_back(lowest(costs));

    retained.clear();
    for (int i : select_elites(costs, cfg.num_elites)) {
      retained.push_back(candidates[static_cast<std::size_t>(i)]);
    }
    const auto [elite_mean, elite_std] = refit_gaussian(retained);
    mean = alpha * mean + (1.0 - alpha) * elite_mean;
    sigma = (alpha * sigma + (1.0 - alpha) * elite_std).cwiseMax(floor);
    ++result.iterations_run;
  }
  finish(result, model, s0, mean, kName);
  result.wall_time = clock.seconds();
  return result;
}

}  // namespace wplan::solvers
