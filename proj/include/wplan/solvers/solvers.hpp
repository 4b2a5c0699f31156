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

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wplan/core/cost_model.hpp"
#include "wplan/core/rng.hpp"
#include "wplan/core/step_model.hpp"
#include "wplan/core/types.hpp"

namespace wplan::solvers {

struct SolverResult {
  ActionSequence best_sequence;
  double best_cost = 0.0;
  int iterations_run = 0;
  long cost_evaluations = 0;
  double wall_time = 0.0;  // seconds

  // Lowest candidate cost seen in each iteration.
  std::vector<double> cost_trace;
  // Discrete solvers: final per-step distribution (categorical CEM) or the
  // relaxed matrix of the selected candidate (PGD). Empty otherwise.
  Eigen::MatrixXd distribution;
  // Lagrangian solver: multipliers after each outer iteration.
  std::vector<Eigen::VectorXd> multipliers;
};

// Shared by predictive sampling, CEM, MPPI, iCEM and categorical CEM; each
// reads the fields it needs.
struct SamplingSolverConfig {
  int horizon = 10;
  int num_candidates = 300;
  int iterations = 5;
  int num_elites = 30;
  double init_scale = 1.0;
  double temperature = 1.0;   // MPPI
  double noise_beta = 2.0;    // iCEM
  double momentum = 0.1;      // iCEM, categorical CEM
  int elites_keep = 0;        // iCEM
  double smoothing = 0.0;     // categorical CEM

  void validate() const;
};

struct GradientSolverConfig {
  int horizon = 10;
  int num_candidates = 1;
  int iterations = 100;
  double step_size = 0.1;
  double init_scale = 0.0;
  double action_noise = 0.0;
  double gradient_clip = 0.0;  // global-norm threshold, 0 disables

  void validate() const;
};

struct LagrangianConfig {
  GradientSolverConfig base;  // base.iterations is the inner step count
  int outer_iterations = 10;
  double penalty_init = 1.0;
  double penalty_max = 100.0;
  double penalty_scale = 2.0;

  void validate() const;
};

struct GraspConfig {
  int horizon = 10;
  int iterations = 100;
  double action_step = 0.1;
  double state_step = 0.1;
  std::vector<double> goal_weights;  // one per iteration
  std::vector<double> state_noise;   // one per iteration
  int sync_interval = 10;            // 0 disables synchronization
  // Default synchronization: a short CEM run warm-started at the current plan.
  SamplingSolverConfig sync_cem{.horizon = 10,
                                .num_candidates = 100,
                                .iterations = 3,
                                .num_elites = 10,
                                .init_scale = 0.3};

  // Constant goal weight, state noise decaying linearly to zero.
  static GraspConfig with_schedules(int horizon, int iterations,
                                    double goal_weight, double initial_noise);
  void validate() const;
};

// Per-iteration view of GRASP's optimization variables.
struct GraspState {
  std::vector<StateVec> virtual_states;  // z_0 .. z_H
  ActionSequence actions;
};

using InitSequence = std::optional<ActionSequence>;

SolverResult predictive_sampling_solve(const CostModel& model, const StateVec& s0,
                                       const SamplingSolverConfig& cfg,
                                       RandomStream& rng,
                                       const InitSequence& nominal = std::nullopt);

SolverResult cem_solve(const CostModel& model, const StateVec& s0,
                       const SamplingSolverConfig& cfg, RandomStream& rng,
                       const InitSequence& init = std::nullopt);

SolverResult mppi_solve(const CostModel& model, const StateVec& s0,
                        const SamplingSolverConfig& cfg, RandomStream& rng,
                        const InitSequence& init = std::nullopt);

SolverResult icem_solve(const CostModel& model, const StateVec& s0,
                        const SamplingSolverConfig& cfg, RandomStream& rng,
                        const InitSequence& init = std::nullopt);

// Returns a one-hot best_sequence; `distribution` holds the final per-step
// categorical probabilities.
SolverResult categorical_cem_solve(const CostModel& model, const StateVec& s0,
                                   const SamplingSolverConfig& cfg,
                                   RandomStream& rng);

SolverResult gd_solve(const CostModel& model, const StateVec& s0,
                      const GradientSolverConfig& cfg, RandomStream& rng,
                      const InitSequence& init = std::nullopt);

// Relaxed discrete planning over rows of the probability simplex. Returns
// the argmax-decoded one-hot sequence; `distribution` holds the relaxed
// matrix of the winning candidate.
SolverResult pgd_solve(const CostModel& model, const StateVec& s0,
                       const GradientSolverConfig& cfg, RandomStream& rng,
                       const InitSequence& init = std::nullopt);

SolverResult lagrangian_solve(const CostModel& model, const StateVec& s0,
                              const LagrangianConfig& cfg, RandomStream& rng,
                              const InitSequence& init = std::nullopt);

using SyncOperator = std::function<ActionSequence(const ActionSequence& warm_start)>;
using GraspObserver = std::function<void(int iteration, const GraspState& state)>;

// `rollout_cost` is the full rollout objective used for synchronization and
// for reporting best_cost. When `sync` is empty and cfg.sync_interval > 0, a
// CEM run configured by cfg.sync_cem is used.
SolverResult grasp_solve(const StepModel& dynamics, const CostModel& rollout_cost,
                         const StateVec& s0, const StateVec& goal,
                         const GraspConfig& cfg, RandomStream& rng,
                         const InitSequence& init = std::nullopt,
                         SyncOperator sync = {}, GraspObserver observer = {});

// --- building blocks, exposed for testing ---

// Indices of the `count` lowest costs, ordered by increasing cost; ties go
// to the lower index and NaN sorts last.
std::vector<int> select_elites(const std::vector<double>& costs, int count);

// Elementwise mean and population standard deviation of the elites.
std::pair<ActionSequence, ActionSequence> refit_gaussian(
    std::span<const ActionSequence> elites);

// exp(-(c_i - c_min) / temperature), normalized.
std::vector<double> softmin_weights(const std::vector<double>& costs,
                                    double temperature);

// Euclidean projection onto {x >= 0, sum x = 1}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);
void project_rows_to_simplex(Eigen::MatrixXd& matrix);

}  // namespace wplan::solvers
