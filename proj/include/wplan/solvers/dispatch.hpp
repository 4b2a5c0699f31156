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

#include <string>
#include <string_view>
#include <vector>

#include "wplan/solvers/solvers.hpp"

namespace wplan::solvers {

enum class SolverKind {
  kPredictiveSampling,
  kCem,
  kMppi,
  kIcem,
  kCategoricalCem,
  kGd,
  kPgd,
  kLagrangian,
  kGrasp,
};

enum class SolverFamily { kSampling, kGradient };

// Capabilities a solver needs from its problem.
struct SolverTraits {
  SolverFamily family;
  bool discrete;         // plans over a discrete action space
  bool needs_gradient;   // requires cost_and_grad
  bool uses_constraints;
  bool needs_dynamics;   // requires a one-step predictor (GRASP)
};

std::string_view solver_name(SolverKind kind);
// Throws ConfigError naming the valid choices.
SolverKind parse_solver(std::string_view name);
std::vector<SolverKind> all_solvers();
SolverTraits solver_traits(SolverKind kind);

/// One solver choice with the config for every family; only the fields of
/// the chosen kind are read.
struct SolverSpec {
  SolverKind kind = SolverKind::kCem;
  SamplingSolverConfig sampling;
  GradientSolverConfig gradient;
  LagrangianConfig lagrangian;
  GraspConfig grasp;
  // Lagrangian: bound of the per-step action-norm constraint; <= 0 means
  // "use the box's largest norm".
  double action_norm_limit = 0.0;

  int horizon() const;
  void set_horizon(int horizon);

  // Defaults tuned for closed-loop planning at the given horizon.
  static SolverSpec defaults(SolverKind kind, int horizon);
};

struct PlanningProblem {
  CostModelPtr cost;      // rollout objective
  StepModelPtr dynamics;  // GRASP only
  StateVec start;
  StateVec goal;          // GRASP only
};

SolverResult solve(const SolverSpec& spec, const PlanningProblem& problem,
                   RandomStream& rng, const InitSequence& init = std::nullopt);

}  // namespace wplan::solvers
