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

#include "wplan/solvers/dispatch.hpp"

#include <array>
#include <memory>
#include <string>

#include "wplan/core/finite_difference.hpp"

namespace wplan::solvers {
namespace {

struct Entry {
  SolverKind kind;
  std::string_view name;
  SolverTraits traits;
};

constexpr std::array<Entry, 9> kSolvers = {{
    {SolverKind::kPredictiveSampling, "predictive",
     {SolverFamily::kSampling, false, false, false, false}},
    {SolverKind::kCem, "cem", {SolverFamily::kSampling, false, false, false, false}},
    {SolverKind::kMppi, "mppi", {SolverFamily::kSampling, false, false, false, false}},
    {SolverKind::kIcem, "icem", {SolverFamily::kSampling, false, false, false, false}},
    {SolverKind::kCategoricalCem, "categorical_cem",
     {SolverFamily::kSampling, true, false, false, false}},
    {SolverKind::kGd, "gd", {SolverFamily::kGradient, false, true, false, false}},
    {SolverKind::kPgd, "pgd", {SolverFamily::kGradient, true, true, false, false}},
    {SolverKind::kLagrangian, "lagrangian",
     {SolverFamily::kGradient, false, true, true, false}},
    {SolverKind::kGrasp, "grasp", {SolverFamily::kGradient, false, true, false, true}},
}};

const Entry& entry(SolverKind kind) {
  for (const auto& e : kSolvers) {
    if (e.kind == kind) return e;
  }
  throw ContractError("unknown solver kind");
}

}  // namespace

std::string_view solver_name(SolverKind kind) { return entry(kind).name; }

SolverKind parse_solver(std::string_view name) {
  std::string valid;
  for (const auto& e : kSolvers) {
    if (e.name == name) return e.kind;
    if (!valid.empty()) valid += ", ";
    valid += e.name;
  }
  throw ConfigError("unknown solver '" + std::string(name) + "' (expected one of: " +
                    valid + ")");
}

std::vector<SolverKind> all_solvers() {
  std::vector<SolverKind> out;
  for (const auto& e : kSolvers) out.push_back(e.kind);
  return out;
}

SolverTraits solver_traits(SolverKind kind) { return entry(kind).traits; }

int SolverSpec::horizon() const {
  switch (solver_traits(kind).family) {
    case SolverFamily::kSampling:
      return sampling.horizon;
    case SolverFamily::kGradient:
      break;
  }
  if (kind == SolverKind::kLagrangian) return lagrangian.base.horizon;
  if (kind == SolverKind::kGrasp) return grasp.horizon;
  return gradient.horizon;
}

void SolverSpec::set_horizon(int horizon) {
  sampling.horizon = horizon;
  gradient.horizon = horizon;
  lagrangian.base.horizon = horizon;
  grasp.horizon = horizon;
  grasp.sync_cem.horizon = horizon;
}

SolverSpec SolverSpec::defaults(SolverKind kind, int horizon) {
  SolverSpec spec;
  spec.kind = kind;
  spec.sampling = SamplingSolverConfig{.horizon = horizon,
                                       .num_candidates = 300,
                                       .iterations = 5,
                                       .num_elites = 30,
                                       .init_scale = 1.0};
  switch (kind) {
    case SolverKind::kPredictiveSampling:
      spec.sampling.num_candidates = 1000;
      spec.sampling.init_scale = 0.5;
      break;
    case SolverKind::kMppi:
      spec.sampling.num_elites = spec.sampling.num_candidates;
      spec.sampling.temperature = 0.1;
      spec.sampling.init_scale = 0.5;
      break;
    case SolverKind::kIcem:
      spec.sampling.elites_keep = 10;
      break;
    case SolverKind::kCategoricalCem:
      spec.sampling.num_candidates = 200;
      spec.sampling.num_elites = 20;
      spec.sampling.smoothing = 0.01;
      break;
    default:
      break;
  }
  spec.gradient = GradientSolverConfig{.horizon = horizon,
                                       .num_candidates = 4,
                                       .iterations = 50,
                                       .step_size = 0.5,
                                       .init_scale = 0.5};
  if (kind == SolverKind::kPgd) spec.gradient.step_size = 0.01;
  spec.lagrangian.base = spec.gradient;
  spec.lagrangian.base.iterations = 20;
  spec.lagrangian.outer_iterations = 5;
  spec.grasp = GraspConfig::with_schedules(horizon, 50, 1.0, 0.01);
  spec.grasp.sync_cem.horizon = horizon;
  return spec;
}

SolverResult solve(const SolverSpec& spec, const PlanningProblem& problem,
                   RandomStream& rng, const InitSequence& init) {
  if (!problem.cost) throw ContractError("solve: problem has no cost model");
  const SolverTraits traits = solver_traits(spec.kind);
  CostModelPtr cost = problem.cost;
  if (traits.needs_gradient) cost = ensure_differentiable(cost);

  switch (spec.kind) {
    case SolverKind::kPredictiveSampling:
      return predictive_sampling_solve(*cost, problem.start, spec.sampling, rng, init);
    case SolverKind::kCem:
      return cem_solve(*cost, problem.start, spec.sampling, rng, init);
    case SolverKind::kMppi:
      return mppi_solve(*cost, problem.start, spec.sampling, rng, init);
    case SolverKind::kIcem:
      return icem_solve(*cost, problem.start, spec.sampling, rng, init);
    case SolverKind::kCategoricalCem:
      return categorical_cem_solve(*cost, problem.start, spec.sampling, rng);
    case SolverKind::kGd:
      return gd_solve(*cost, problem.start, spec.gradient, rng, init);
    case SolverKind::kPgd:
      return pgd_solve(*cost, problem.start, spec.gradient, rng, init);
    case SolverKind::kLagrangian: {
      double limit = spec.action_norm_limit;
      if (limit <= 0.0) {
        const ActionSpace space = cost->action_space();
        const auto* box = std::get_if<ContinuousActionSpace>(&space);
        if (box == nullptr) throw ConfigError("lagrangian requires a continuous action space");
        limit = box->high().cwiseAbs().cwiseMax(box->low().cwiseAbs()).norm();
      }
      const ActionNormConstrainedModel constrained(cost, limit);
      return lagrangian_solve(constrained, problem.start, spec.lagrangian, rng, init);
    }
    case SolverKind::kGrasp:
      if (!problem.dynamics) {
        throw ConfigError("grasp requires a one-step dynamics model");
      }
      if (problem.goal.size() == 0) throw ConfigError("grasp requires a goal state");
      return grasp_solve(*problem.dynamics, *cost, problem.start, problem.goal, spec.grasp,
                         rng, init);
  }
  throw ContractError("unknown solver kind");
}

}  // namespace wplan::solvers
