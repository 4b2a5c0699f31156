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

#include "wplan/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wplan/data/collect.hpp"
#include "wplan/data/trajectory_file.hpp"
#include "wplan/eval/evaluate.hpp"
#include "wplan/eval/report.hpp"
#include "wplan/policy/expert_policy.hpp"
#include "wplan/policy/mpc_policy.hpp"
#include "wplan/solvers/dispatch.hpp"
#include "wplan/worlds/registry.hpp"

namespace wplan::cli {
namespace {

constexpr int kDefaultReplan = 5;

// Flags shared by evaluate, sweep and compare-solvers.
struct EvalFlags {
  std::string env;
  std::string solver = "cem";
  std::string policy = "mpc";
  int horizon = 10;
  int budget = 50;
  std::uint64_t episodes = 100;
  std::uint64_t seed = 0;
  int replan_every = 0;
  int candidates = 0;
  int iterations = 0;
  int elites = 0;
  bool no_warm_start = false;
  std::string gradient = "surrogate";
  std::string dataset;
  int goal_offset = 25;
  int num_envs = 1;
  std::vector<std::string> variation;
  std::vector<std::string> sets;
  bool timing = false;
  std::string out;
  std::string csv;
};

worlds::ResetOptions make_options(const std::vector<std::string>& variation,
                                  const std::vector<std::string>& sets) {
  worlds::ResetOptions options;
  options.variation = variation;
  for (const auto& item : sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + item + "'");
    }
    worlds::FactorValue value;
    std::stringstream in(item.substr(eq + 1));
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        std::size_t used = 0;
        value.push_back(std::stod(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ConfigError("--set " + item + ": '" + part + "' is not a number");
      }
    }
    if (value.empty()) throw ConfigError("--set " + item + ": empty value");
    options.variation_values[item.substr(0, eq)] = value;
  }
  return options;
}

void add_common(CLI::App* cmd, std::string& env, std::uint64_t& seed, int& num_envs,
                std::vector<std::string>& variation, std::vector<std::string>& sets) {
  cmd->add_option("--env", env, "World id (see `envs`)")->required();
  cmd->add_option("--seed", seed, "Root seed; every random draw derives from it")->required();
  cmd->add_option("--num-envs", num_envs, "Parallel world instances; never changes results")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--variation", variation,
                  "Factor selectors sampled at every reset (comma separated, or `all`)")
      ->delimiter(',');
  cmd->add_option("--set", sets, "Pin a factor, key=v1[,v2...]; repeatable");
}

void add_eval_flags(CLI::App* cmd, EvalFlags& f) {
  add_common(cmd, f.env, f.seed, f.num_envs, f.variation, f.sets);
  cmd->add_option("--horizon", f.horizon, "Planning horizon H")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", f.budget, "Max environment steps per episode")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--episodes", f.episodes, "Episodes (or dataset pairs) to evaluate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--policy", f.policy, "Policy: mpc, expert, random or replay (dataset only)")
      ->check(CLI::IsMember({"mpc", "expert", "random", "replay"}));
  cmd->add_option("--replan-every", f.replan_every,
                  "Actions executed per solve, 1..H (default min(5, H))")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--candidates", f.candidates, "Override the solver's candidate count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", f.iterations, "Override the solver's iteration count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--elites", f.elites, "Override the sampling solvers' elite count")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-warm-start", f.no_warm_start, "Start every solve from scratch");
  cmd->add_option("--gradient", f.gradient,
                  "Gradient solvers: surrogate (analytic, wall-free model) or fd "
                  "(finite differences of the planning model)")
      ->check(CLI::IsMember({"surrogate", "fd"}));
  cmd->add_option("--dataset", f.dataset, "Evaluate from stored start/goal pairs of this file");
  cmd->add_option("--goal-offset", f.goal_offset, "Steps between stored start and goal")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", f.timing, "Include wall-clock planning latency in reports");
  cmd->add_option("--out", f.out, "Write the JSON-lines report to this file");
  cmd->add_option("--csv", f.csv, "Write the summary table to this file");
}

policy::PolicyPtr make_policy(const EvalFlags& f, solvers::SolverKind kind) {
  if (f.policy == "expert") return policy::make_expert_policy(f.env);
  if (f.policy == "random") return std::make_unique<policy::RandomPolicy>(f.seed);
  if (f.policy == "replay") {
    if (f.dataset.empty()) throw ConfigError("the replay policy needs --dataset");
    return std::make_unique<policy::ReplayPolicy>();
  }
  const worlds::WorldPtr world = worlds::make_world(f.env);
  const bool discrete = is_discrete(world->action_space());
  if (solvers::solver_traits(kind).discrete != discrete) {
    throw ConfigError("solver " + std::string(solvers::solver_name(kind)) + " plans over " +
                      (discrete ? "continuous" : "discrete") + " actions but " + f.env +
                      " has " + (discrete ? "discrete" : "continuous") + " actions");
  }
  policy::MPCPolicyConfig cfg;
  cfg.solver = solvers::SolverSpec::defaults(kind, f.horizon);
  if (f.candidates > 0) {
    cfg.solver.sampling.num_candidates = f.candidates;
    cfg.solver.gradient.num_candidates = f.candidates;
    cfg.solver.lagrangian.base.num_candidates = f.candidates;
    if (kind == solvers::SolverKind::kMppi) cfg.solver.sampling.num_elites = f.candidates;
  }
  if (f.iterations > 0) {
    cfg.solver.sampling.iterations = f.iterations;
    cfg.solver.gradient.iterations = f.iterations;
    cfg.solver.lagrangian.base.iterations = f.iterations;
    cfg.solver.grasp =
        solvers::GraspConfig::with_schedules(f.horizon, f.iterations, 1.0, 0.01);
  }
  if (f.elites > 0) cfg.solver.sampling.num_elites = f.elites;
  cfg.solver.sampling.num_elites =
      std::min(cfg.solver.sampling.num_elites, cfg.solver.sampling.num_candidates);
  cfg.solver.sampling.elites_keep =
      std::min(cfg.solver.sampling.elites_keep, cfg.solver.sampling.num_elites);
  cfg.replan_every = f.replan_every > 0 ? f.replan_every : std::min(kDefaultReplan, f.horizon);
  cfg.warm_start = !f.no_warm_start;
  cfg.gradient_source = f.gradient == "fd" ? policy::GradientSource::kFiniteDifference
                                           : policy::GradientSource::kSurrogate;
  return std::make_unique<policy::MPCPolicy>(cfg);
}

eval::EvalConfig make_eval_config(const EvalFlags& f) {
  eval::EvalConfig cfg;
  cfg.world_id = f.env;
  cfg.episodes = f.episodes;
  cfg.seed = f.seed;
  cfg.budget = f.budget;
  cfg.options = make_options(f.variation, f.sets);
  cfg.num_envs = f.num_envs;
  cfg.timing = f.timing;
  cfg.dataset = f.dataset;
  cfg.goal_offset = f.goal_offset;
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path);
}

void emit(const EvalFlags& f, const std::vector<eval::EvalReport>& reports,
          const std::string& label, bool table_on_stdout, std::ostream& out) {
  const std::string jsonl = eval::to_jsonl(reports);
  const std::string csv = eval::to_csv(reports, label);
  if (!f.out.empty()) write_file(f.out, jsonl);
  if (!f.csv.empty()) write_file(f.csv, csv);
  out << (table_on_stdout ? csv : jsonl);
}

int cmd_envs(std::ostream& out) {
  for (const auto& id : worlds::world_ids()) out << id << "\n";
  return kExitOk;
}

int cmd_fovs(const std::string& env, std::ostream& out) {
  const worlds::WorldPtr world = worlds::make_world(env);
  for (const auto& f : world->variation_space().factors()) {
    out << f.key << " " << worlds::factor_kind_name(f.kind) << " low="
        << worlds::format_factor_value(f.low) << " high=" << worlds::format_factor_value(f.high)
        << " default=" << worlds::format_factor_value(f.default_value)
        << (f.task_factor ? " task" : "") << "  # " << f.description << "\n";
  }
  return kExitOk;
}

struct CollectFlags {
  std::string env;
  std::string policy = "random";
  std::uint64_t episodes = 1;
  std::uint64_t seed = 0;
  std::string out;
  int num_envs = 1;
  int max_steps = 0;
  std::vector<std::string> variation;
  std::vector<std::string> sets;
};

int cmd_collect(const CollectFlags& f, std::ostream& out) {
  data::CollectConfig cfg;
  cfg.world_id = f.env;
  cfg.episodes = f.episodes;
  cfg.seed = f.seed;
  cfg.options = make_options(f.variation, f.sets);
  cfg.num_envs = f.num_envs;
  cfg.max_steps = f.max_steps;
  policy::PolicyPtr p;
  if (f.policy == "expert") {
    p = policy::make_expert_policy(f.env);
  } else {
    p = std::make_unique<policy::RandomPolicy>(f.seed);
  }
  const data::CollectSummary s = data::collect(cfg, *p, f.out);
  out << "wrote " << s.episodes << " episodes (" << s.total_steps << " steps, " << s.terminated
      << " terminated) to " << f.out << "\n";
  return kExitOk;
}

int cmd_evaluate(const EvalFlags& f, std::ostream& out) {
  const solvers::SolverKind kind = solvers::parse_solver(f.solver);
  const policy::PolicyPtr p = make_policy(f, kind);
  const eval::EvalConfig cfg = make_eval_config(f);
  const eval::EvalReport report = f.dataset.empty() ? eval::evaluate_episodic(*p, cfg)
                                                    : eval::evaluate_from_dataset(*p, cfg);
  emit(f, {report}, "factor", false, out);
  return kExitOk;
}

int cmd_sweep(const EvalFlags& f, const std::vector<std::string>& factors, std::ostream& out) {
  if (!f.dataset.empty()) throw ConfigError("sweep runs the episodic protocol; drop --dataset");
  const policy::PolicyPtr p = make_policy(f, solvers::parse_solver(f.solver));
  emit(f, eval::fov_sweep(*p, make_eval_config(f), factors), "factor", true, out);
  return kExitOk;
}

int cmd_compare(EvalFlags f, const std::vector<std::string>& names, bool no_timing,
                std::ostream& out) {
  f.timing = !no_timing;
  f.policy = "mpc";
  std::vector<solvers::SolverKind> kinds;
  for (const auto& name : names) kinds.push_back(solvers::parse_solver(name));
  std::vector<eval::EvalReport> rows;
  for (const auto kind : kinds) {
    const policy::PolicyPtr p = make_policy(f, kind);
    const eval::EvalConfig cfg = make_eval_config(f);
    eval::EvalReport r = f.dataset.empty() ? eval::evaluate_episodic(*p, cfg)
                                           : eval::evaluate_from_dataset(*p, cfg);
    r.factor = std::string(solvers::solver_name(kind));
    rows.push_back(std::move(r));
  }
  emit(f, rows, "solver", true, out);
  return kExitOk;
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  out << data::format_summary(data::inspect(path));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planning, data collection and evaluation for analytic worlds", "wplan"};
  app.require_subcommand(1);

  CLI::App* envs = app.add_subcommand("envs", "List world ids");

  std::string fovs_env;
  CLI::App* fovs = app.add_subcommand("fovs", "List the factors of variation of a world");
  fovs->add_option("env", fovs_env, "World id")->required();

  CollectFlags collect_flags;
  CLI::App* collect = app.add_subcommand("collect", "Record episodes to a trajectory file");
  add_common(collect, collect_flags.env, collect_flags.seed, collect_flags.num_envs,
             collect_flags.variation, collect_flags.sets);
  collect->add_option("--policy", collect_flags.policy, "random or expert")
      ->check(CLI::IsMember({"random", "expert"}));
  collect->add_option("--episodes", collect_flags.episodes, "Episodes to record")
      ->check(CLI::PositiveNumber);
  collect->add_option("--out", collect_flags.out, "Output file")->required();
  collect->add_option("--max-steps", collect_flags.max_steps,
                      "Truncate episodes here (default: the world's limit)")
      ->check(CLI::PositiveNumber);

  EvalFlags eval_flags;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate a policy, print a report");
  add_eval_flags(evaluate, eval_flags);
  evaluate->add_option("--solver", eval_flags.solver, "Solver for the mpc policy");

  EvalFlags sweep_flags;
  std::vector<std::string> sweep_factors;
  CLI::App* sweep = app.add_subcommand("sweep", "Per-factor robustness table");
  add_eval_flags(sweep, sweep_flags);
  sweep->add_option("--solver", sweep_flags.solver, "Solver for the mpc policy");
  sweep->add_option("--factors", sweep_factors, "Factors to vary, one row each (comma separated)")
      ->delimiter(',');

  EvalFlags compare_flags;
  std::vector<std::string> compare_solvers;
  bool no_timing = false;
  CLI::App* compare = app.add_subcommand(
      "compare-solvers", "Evaluate several solvers on the same episode seeds");
  add_eval_flags(compare, compare_flags);
  compare->add_option("--solvers", compare_solvers, "Solvers to compare (comma separated)")
      ->delimiter(',')
      ->required();
  compare->add_flag("--no-timing", no_timing, "Leave latency out of the table");

  std::string inspect_path;
  CLI::App* inspect = app.add_subcommand("inspect", "Summarize a trajectory file");
  inspect->add_option("file", inspect_path, "Trajectory file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string stage = "wplan";
  try {
    if (envs->parsed()) {
      stage = "envs";
      return cmd_envs(out);
    }
    if (fovs->parsed()) {
      stage = "fovs";
      return cmd_fovs(fovs_env, out);
    }
    if (collect->parsed()) {
      stage = "collect";
      return cmd_collect(collect_flags, out);
    }
    if (evaluate->parsed()) {
      stage = "evaluate";
      return cmd_evaluate(eval_flags, out);
    }
    if (sweep->parsed()) {
      stage = "sweep";
      return cmd_sweep(sweep_flags, sweep_factors, out);
    }
    if (compare->parsed()) {
      stage = "compare-solvers";
      return cmd_compare(compare_flags, compare_solvers, no_timing, out);
    }
    if (inspect->parsed()) {
      stage = "inspect";
      return cmd_inspect(inspect_path, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << stage << ": " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace wplan::cli
