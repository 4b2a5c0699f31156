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

#include "wplan/policy/mpc_policy.hpp"

#include <memory>
#include <string>

#include "wplan/core/finite_difference.hpp"

namespace wplan::policy {

void MPCPolicyConfig::validate() const {
  const int horizon = solver.horizon();
  if (replan_every < 1 || replan_every > horizon) {
    throw ConfigError("replan_every must be in [1, horizon] (got " +
                      std::to_string(replan_every) + ", horizon " + std::to_string(horizon) +
                      ")");
  }
  if (cost_workers < 1) throw ConfigError("cost_workers must be >= 1");
  if (action_weight < 0.0) throw ConfigError("action_weight must be >= 0");
}

ActionSequence shift_plan(const ActionSequence& plan, int k, bool discrete) {
  if (k < 0) throw ContractError("shift_plan: negative shift");
  const Eigen::Index rows = plan.rows();
  const Eigen::Index keep = std::max<Eigen::Index>(0, rows - k);
  const double pad = discrete ? 1.0 / static_cast<double>(plan.cols()) : 0.0;
  ActionSequence out = ActionSequence::Constant(rows, plan.cols(), pad);
  if (keep > 0) out.topRows(keep) = plan.bottomRows(keep);
  return out;
}

MPCPolicy::MPCPolicy(MPCPolicyConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  configure(1);
}

std::string MPCPolicy::name() const {
  return "mpc-" + std::string(solvers::solver_name(cfg_.solver.kind));
}

void MPCPolicy::configure(int num_slots) {
  Policy::configure(num_slots);
  slots_.assign(static_cast<std::size_t>(num_slots), Slot{});
}

void MPCPolicy::on_reset(int slot, const worlds::World&, const RandomStream& episode_rng) {
  check_slot(slot);
  Slot& s = slots_[static_cast<std::size_t>(slot)];
  s = Slot{};
  s.rng = episode_rng.split(0x4D5043);  // "MPC"
}

int MPCPolicy::solves(int slot) const {
  check_slot(slot);
  return slots_[static_cast<std::size_t>(slot)].solves;
}

const std::optional<solvers::SolverResult>& MPCPolicy::last_result(int slot) const {
  check_slot(slot);
  return slots_[static_cast<std::size_t>(slot)].last;
}

solvers::PlanningProblem MPCPolicy::problem_for(const PolicyInput& input) const {
  const worlds::World& world = *input.world;
  const solvers::SolverTraits traits = solvers::solver_traits(cfg_.solver.kind);
  solvers::PlanningProblem problem;
  if (traits.needs_gradient && cfg_.gradient_source == GradientSource::kSurrogate) {
    problem.cost = world.differentiable_cost_model(input.goal, cfg_.action_weight);
  } else {
    problem.cost = world.cost_model(input.goal, cfg_.action_weight);
    if (traits.needs_gradient) problem.cost = ensure_differentiable(problem.cost);
  }
  if (cfg_.cost_workers > 1) {
    problem.cost = std::make_shared<ParallelCostModel>(problem.cost, cfg_.cost_workers);
  }
  if (traits.needs_dynamics) problem.dynamics = world.differentiable_dynamics();
  problem.start = input.state;
  problem.goal = input.goal;
  return problem;
}

Action MPCPolicy::get_action(int slot, const PolicyInput& input) {
  check_slot(slot);
  if (input.world == nullptr) throw ContractError("mpc policy: input has no world");
  Slot& s = slots_[static_cast<std::size_t>(slot)];
  const bool discrete = is_discrete(input.world->action_space());
  if (s.plan.rows() == 0 || s.cursor >= cfg_.replan_every || s.cursor >= s.plan.rows()) {
    solvers::InitSequence init;
    if (cfg_.warm_start && s.plan.rows() > 0) init = shift_plan(s.plan, s.cursor, discrete);
    try {
      s.last = solvers::solve(cfg_.solver, problem_for(input), s.rng, init);
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(input.step) + ": " + e.what());
    }
    s.plan = s.last->best_sequence;
    s.cursor = 0;
    ++s.solves;
  }
  Action a = s.plan.row(s.cursor).transpose();
  ++s.cursor;
  return a;
}

}  // namespace wplan::policy
