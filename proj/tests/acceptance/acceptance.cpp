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


// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance <path-to-wplan-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/stats.hpp"
#include "support/test_models.hpp"
#include "wplan/core/finite_difference.hpp"
#include "wplan/data/collect.hpp"
#include "wplan/data/trajectory_file.hpp"
#include "wplan/eval/evaluate.hpp"
#include "wplan/eval/report.hpp"
#include "wplan/noise/noise.hpp"
#include "wplan/policy/expert_policy.hpp"
#include "wplan/policy/mpc_policy.hpp"
#include "wplan/solvers/dispatch.hpp"
#include "wplan/worlds/gridworld.hpp"
#include "wplan/worlds/pendulum.hpp"
#include "wplan/worlds/two_room.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wplan;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a sub-check; the first failing one is named in the detail.
  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "wplan_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double max_error_to(const ActionSequence& a, double target) {
  return (a.array() - target).abs().maxCoeff();
}

// 1. Every solver reaches the optimum of sum_t ||a_t - 0.3||^2 (H=4, d=2).
Outcome solver_convergence() {
  Outcome o;
  const testing::QuadraticCost model(2, 0.3);
  const StateVec s0;
  const auto start = std::chrono::steady_clock::now();

  solvers::SamplingSolverConfig cem;
  cem.horizon = 4;
  cem.num_candidates = 100;
  cem.iterations = 10;
  cem.num_elites = 10;
  cem.init_scale = 1.0;
  RandomStream rng(1);
  const double e_cem = max_error_to(solvers::cem_solve(model, s0, cem, rng).best_sequence, 0.3);

  solvers::SamplingSolverConfig icem = cem;
  icem.noise_beta = 0.0;
  icem.momentum = 0.0;
  icem.elites_keep = 0;
  const double e_icem = max_error_to(solvers::icem_solve(model, s0, icem, rng).best_sequence, 0.3);
  solvers::SamplingSolverConfig icem_colored = cem;
  icem_colored.elites_keep = 5;
  const double e_icem_colored =
      max_error_to(solvers::icem_solve(model, s0, icem_colored, rng).best_sequence, 0.3);

  solvers::SamplingSolverConfig mppi = cem;
  mppi.num_candidates = 1000;
  mppi.num_elites = mppi.num_candidates;
  mppi.init_scale = 0.2;
  mppi.temperature = 0.1;
  const double e_mppi = max_error_to(solvers::mppi_solve(model, s0, mppi, rng).best_sequence, 0.3);

  solvers::GradientSolverConfig gd;
  gd.horizon = 4;
  gd.iterations = 200;
  gd.step_size = 0.1;
  gd.num_candidates = 1;
  const double e_gd = max_error_to(solvers::gd_solve(model, s0, gd, rng).best_sequence, 0.3);

  // Predictive sampling is single-shot; it optimizes through replanning,
  // each call perturbing the previous call's plan.
  solvers::SamplingSolverConfig ps;
  ps.horizon = 4;
  ps.num_candidates = 10000;
  ps.init_scale = 0.1;
  ActionSequence nominal = ActionSequence::Zero(4, 2);
  for (int call = 0; call < 10; ++call) {
    nominal = solvers::predictive_sampling_solve(model, s0, ps, rng, nominal).best_sequence;
  }
  const double e_ps = max_error_to(nominal, 0.3);

  const testing::QuadraticCost inactive(2, 0.3, 1.0, testing::ConstraintMode::kInactive);
  solvers::LagrangianConfig lag;
  lag.base = gd;
  lag.base.iterations = 40;
  lag.outer_iterations = 5;
  const double e_lag =
      max_error_to(solvers::lagrangian_solve(inactive, s0, lag, rng).best_sequence, 0.3);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(e_cem <= 0.05, "cem");
  o.check(e_icem <= 0.05, "icem");
  o.check(e_icem_colored <= 0.05, "icem colored");
  o.check(e_mppi <= 0.05, "mppi");
  o.check(e_gd <= 0.05, "gd");
  o.check(e_ps <= 0.05, "predictive sampling");
  o.check(e_lag <= 0.05, "lagrangian");
  o.check(seconds < 10.0, "time budget");
  o.detail << "max |a-0.3|: cem " << fmt(e_cem) << ", icem " << fmt(e_icem) << " (colored "
           << fmt(e_icem_colored) << "), mppi " << fmt(e_mppi) << ", gd " << fmt(e_gd)
           << ", predictive " << fmt(e_ps) << ", lagrangian " << fmt(e_lag) << "; "
           << fmt(std::round(seconds * 100) / 100) << " s";
  return o;
}

// 2. Constrained 1-D quadratic: optimum 0.9, a^2 <= 0.25.
Outcome constrained_optimum() {
  Outcome o;
  const testing::QuadraticCost model(1, 0.9, 1.0, testing::ConstraintMode::kNormSquared, 0.5);
  solvers::LagrangianConfig cfg;
  cfg.base.horizon = 1;
  cfg.base.iterations = 50;
  cfg.base.step_size = 0.05;
  cfg.outer_iterations = 30;
  cfg.penalty_init = 1.0;
  cfg.penalty_scale = 1.5;
  cfg.penalty_max = 10.0;
  RandomStream rng(2);
  const auto r = solvers::lagrangian_solve(model, StateVec(), cfg, rng);
  const double a = r.best_sequence(0, 0);
  double min_lambda = 0.0;
  for (const auto& l : r.multipliers) min_lambda = std::min(min_lambda, l.minCoeff());
  o.check(std::abs(a - 0.5) <= 0.05, "result within 0.05 of 0.5");
  o.check(r.multipliers.size() == 30, "one multiplier vector per outer iteration");
  o.check(min_lambda >= 0.0, "multipliers nonnegative");
  o.detail << "a = " << fmt(a) << ", final lambda = " << fmt(r.multipliers.back()[0])
           << ", min lambda = " << fmt(min_lambda);
  return o;
}

// 3. Analytic gradients against central differences.
Outcome gradient_correctness() {
  Outcome o;
  RandomStream rng(3);
  const auto box2 = ContinuousActionSpace::symmetric(2, 1.0);
  double worst_free = 0.0;
  double worst_pendulum = 0.0;
  const auto rel_error = [](const ActionSequence& g, const ActionSequence& fd) {
    return (g - fd).cwiseAbs().maxCoeff() / std::max(1.0, fd.cwiseAbs().maxCoeff());
  };
  for (int i = 0; i < 100; ++i) {
    auto dyn = std::make_shared<worlds::FreePointMassDynamics>(rng.uniform(0.05, 0.15),
                                                               rng.uniform(0.0, 0.2));
    StateVec goal(4);
    goal << rng.uniform(), rng.uniform(), 0.0, 0.0;
    const worlds::RolloutCostModel model(dyn, goal, box2);
    StateVec s0(4);
    s0 << rng.uniform(), rng.uniform(), rng.uniform(-1, 1), rng.uniform(-1, 1);
    ActionSequence a(10, 2);
    for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = rng.uniform(-1, 1);
    ActionSequence g;
    model.cost_and_grad(s0, a, g);
    worst_free = std::max(worst_free, rel_error(g, finite_difference_gradient(model, s0, a, 1e-4)));
  }
  for (int i = 0; i < 100; ++i) {
    worlds::PendulumParams params;
    params.gravity = rng.uniform(8, 12);
    params.length = rng.uniform(0.5, 1.5);
    params.mass = rng.uniform(0.5, 2.0);
    params.damping = rng.uniform(0.0, 0.3);
    auto dyn = std::make_shared<worlds::PendulumDynamics>(params);
    StateVec goal(2);
    goal << rng.uniform(-3.1, 3.1), 0.0;
    const auto box = ContinuousActionSpace::symmetric(1, params.u_max);
    const worlds::RolloutCostModel model(dyn, goal, box);
    StateVec s0(2);
    s0 << rng.uniform(-3.1, 3.1), rng.uniform(-2, 2);
    ActionSequence a(10, 1);
    // Stay off the torque limits, where the clip has a kink.
    for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = rng.uniform(-2.4, 2.4);
    ActionSequence g;
    model.cost_and_grad(s0, a, g);
    worst_pendulum =
        std::max(worst_pendulum, rel_error(g, finite_difference_gradient(model, s0, a, 1e-4)));
  }
  o.check(worst_free <= 1e-5, "free point mass");
  o.check(worst_pendulum <= 1e-5, "pendulum");
  o.detail << "max relative error: free point mass " << fmt(worst_free) << ", pendulum "
           << fmt(worst_pendulum) << " (100 instances each)";
  return o;
}

// Brute-force minimizer of ||x - v||^2 over the simplex on a 1e-3 grid.
Eigen::VectorXd grid_projection(const Eigen::VectorXd& v) {
  const int steps = 1000;
  Eigen::VectorXd best;
  double best_d = 1e300;
  if (v.size() == 2) {
    for (int i = 0; i <= steps; ++i) {
      const Eigen::Vector2d x(i / 1000.0, 1.0 - i / 1000.0);
      const double d = (x - v).squaredNorm();
      if (d < best_d) best_d = d, best = x;
    }
  } else {
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; i + j <= steps; ++j) {
        const Eigen::Vector3d x(i / 1000.0, j / 1000.0, (steps - i - j) / 1000.0);
        const double d = (x - v).squaredNorm();
        if (d < best_d) best_d = d, best = x;
      }
    }
  }
  return best;
}

// 4. Simplex projection.
Outcome simplex_projection() {
  Outcome o;
  RandomStream rng(4);
  double worst_grid = 0.0;
  double worst_idem = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = i < 50 ? 2 : 3;
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) v[k] = rng.uniform(-1.5, 1.5);
    const Eigen::VectorXd p = solvers::project_simplex(v);
    worst_grid = std::max(worst_grid, (p - grid_projection(v)).cwiseAbs().maxCoeff());

    Eigen::VectorXd feasible(n);
    for (int k = 0; k < n; ++k) feasible[k] = rng.uniform();
    feasible /= feasible.sum();
    worst_idem = std::max(worst_idem,
                          (solvers::project_simplex(feasible) - feasible).cwiseAbs().maxCoeff());
  }
  const Eigen::VectorXd a = solvers::project_simplex(Eigen::Vector2d(2.0, 0.0));
  const Eigen::VectorXd b = solvers::project_simplex(Eigen::Vector2d(0.4, 0.4));
  o.check(worst_grid <= 1e-3, "grid QP agreement");
  o.check(worst_idem <= 1e-12, "idempotence");
  o.check(a[0] == 1.0 && a[1] == 0.0, "[2,0] -> [1,0]");
  o.check(b[0] == 0.5 && b[1] == 0.5, "[0.4,0.4] -> [0.5,0.5]");
  o.detail << "max |proj - grid| " << fmt(worst_grid) << ", max idempotence drift "
           << fmt(worst_idem) << ", exact examples ok";
  return o;
}

// 5. Colored noise spectrum and white-noise distribution.
Outcome colored_noise() {
  Outcome o;
  RandomStream rng(5);
  const auto red = noise::sample_colored(rng, {.beta = 2.0, .horizon = 1024, .dims = 1}, 10000);
  const double slope = testing::psd_log_log_slope(red);

  RandomStream white_rng(6);
  RandomStream gauss_rng(7);
  std::vector<double> white;
  std::vector<double> gauss;
  for (const auto& m : noise::sample_colored(white_rng, {.beta = 0.0, .horizon = 50, .dims = 1}, 400)) {
    white.insert(white.end(), m.data(), m.data() + m.size());
  }
  for (const auto& m : noise::sample_gaussian(gauss_rng, 400, 50, 1)) {
    gauss.insert(gauss.end(), m.data(), m.data() + m.size());
  }
  const double d = testing::ks_statistic(white, gauss);
  const double crit = testing::ks_critical_1pct(white.size(), gauss.size());
  o.check(std::abs(slope + 2.0) <= 0.3, "PSD slope");
  o.check(d < crit, "KS test");
  o.detail << "beta=2 slope " << fmt(slope) << "; beta=0 KS D " << fmt(d) << " < "
           << fmt(crit) << " (n=m=20000)";
  return o;
}

// 6. Gumbel-max categorical sampling.
Outcome gumbel_max() {
  Outcome o;
  RandomStream prob_rng(8);
  double worst_ratio = 0.0;
  for (int k = 2; k <= 8; ++k) {
    std::vector<double> probs(static_cast<std::size_t>(k));
    for (auto& p : probs) p = prob_rng.uniform(0.05, 1.0);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& p : probs) p /= total;
    RandomStream rng(100 + k);
    std::vector<long> counts(static_cast<std::size_t>(k), 0);
    for (int s : noise::gumbel_max_sample(rng, probs, 100000)) ++counts[static_cast<std::size_t>(s)];
    const double stat = testing::chi2_statistic(counts, probs);
    const double crit = testing::chi2_critical_1pct(k - 1);
    worst_ratio = std::max(worst_ratio, stat / crit);
    o.check(stat < crit, "chi-square for |A|=" + std::to_string(k));
  }
  const std::vector<double> p{0.1, 0.25, 0.05, 0.6};
  const std::vector<double> p3{0.3, 0.75, 0.15, 1.8};
  RandomStream a(9);
  RandomStream b(9);
  const bool same = noise::gumbel_max_sample(a, p, 10000) == noise::gumbel_max_sample(b, p3, 10000);
  o.check(same, "p and 3p identical");
  o.detail << "|A| = 2..8, 1e5 draws: max chi2/critical " << fmt(worst_ratio)
           << "; p vs 3p identical: " << (same ? "yes" : "no");
  return o;
}

// 7. Single-step gridworld: both discrete solvers pick the optimal move.
Outcome discrete_planning() {
  Outcome o;
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::ostringstream picks;
  for (const auto& dir : dirs) {
    worlds::GridWorld world;
    worlds::ResetOptions options;
    options.variation_values["agent.start"] = {3.5 / 8, 4.5 / 8};
    options.variation_values["goal.position"] = {(3.5 + dir[0]) / 8, (4.5 + dir[1]) / 8};
    const auto reset = world.reset(0, options);
    const auto cost = world.cost_model(reset.goal);

    int brute = 0;
    double best = 1e300;
    for (int a = 0; a < worlds::kNumGridActions; ++a) {
      const double c = cost->cost(reset.state, one_hot({a}, worlds::kNumGridActions));
      if (c < best) best = c, brute = a;
    }

    solvers::SamplingSolverConfig cat;
    cat.horizon = 1;
    cat.num_candidates = 64;
    cat.iterations = 5;
    cat.num_elites = 8;
    RandomStream rng(10);
    const int cat_pick = argmax_rows(solvers::categorical_cem_solve(*cost, reset.state, cat, rng)
                                         .best_sequence)[0];
    solvers::GradientSolverConfig pgd;
    pgd.horizon = 1;
    pgd.iterations = 50;
    pgd.step_size = 0.5;
    const auto relaxed = solvers::pgd_solve(*cost, reset.state, pgd, rng);
    const int pgd_pick = argmax_rows(relaxed.best_sequence)[0];
    const std::string label = "(" + std::to_string(dir[0]) + "," + std::to_string(dir[1]) + ")";
    o.check(cat_pick == brute, "categorical cem " + label);
    o.check(pgd_pick == brute, "pgd " + label);
    picks << label << " optimal " << brute << " cem " << cat_pick << " pgd " << pgd_pick
          << " (mass " << fmt(std::round(relaxed.distribution(0, pgd_pick) * 1000) / 1000)
          << "); ";
  }
  o.detail << picks.str();
  return o;
}

policy::MPCPolicyConfig cem_mpc() {
  policy::MPCPolicyConfig cfg;
  cfg.solver = solvers::SolverSpec::defaults(solvers::SolverKind::kCem, 10);
  cfg.replan_every = 5;
  return cfg;
}

// 8. Closed-loop CEM MPC against a random baseline.
Outcome control_analog() {
  Outcome o;
  eval::EvalConfig cfg;
  cfg.world_id = "tworoom";
  cfg.episodes = 100;
  cfg.seed = 11;
  cfg.budget = 50;
  policy::MPCPolicy mpc(cem_mpc());
  policy::RandomPolicy random(11);
  const auto planned = eval::evaluate_episodic(mpc, cfg);
  const auto baseline = eval::evaluate_episodic(random, cfg);
  o.check(planned.success_rate >= 0.9, "cem mpc >= 0.9");
  o.check(baseline.success_rate <= 0.2, "random <= 0.2");
  o.check(planned.episode_seeds == baseline.episode_seeds, "shared episode seeds");
  o.detail << "cem mpc " << fmt(planned.success_rate) << " (mean steps "
           << fmt(planned.mean_time_to_goal.value_or(0.0)) << "), random "
           << fmt(baseline.success_rate) << " over 100 episodes";
  return o;
}

// 9. Dataset-driven evaluation from stored start/goal pairs.
Outcome dataset_protocol() {
  Outcome o;
  const fs::path file = scratch_dir() / "expert_tworoom.swm";
  auto expert = policy::make_expert_policy("tworoom");
  data::CollectConfig collect_cfg{.world_id = "tworoom", .episodes = 300, .seed = 12, .options = {}};
  const auto summary = data::collect(collect_cfg, *expert, file.string());

  eval::EvalConfig cfg;
  cfg.world_id = "tworoom";
  cfg.episodes = 100;
  cfg.seed = 13;
  cfg.budget = 50;
  cfg.dataset = file.string();
  cfg.goal_offset = 25;
  policy::ReplayPolicy replay;
  policy::MPCPolicy mpc(cem_mpc());
  const auto replayed = eval::evaluate_from_dataset(replay, cfg);
  const auto planned = eval::evaluate_from_dataset(mpc, cfg);
  o.check(replayed.success_rate == 1.0, "replay = 1.0");
  o.check(planned.success_rate >= 0.9, "cem mpc >= 0.9");
  o.check(replayed.pairs == planned.pairs && replayed.n() == 100, "100 shared pairs");
  o.detail << "replay " << fmt(replayed.success_rate) << ", cem mpc " << fmt(planned.success_rate)
           << " over 100 pairs (delta 25, budget 50, " << summary.episodes
           << " expert episodes)";
  fs::remove(file);
  return o;
}

// 10. Factor-of-variation sweep.
Outcome fov_sweep() {
  Outcome o;
  eval::EvalConfig cfg;
  cfg.world_id = "tworoom";
  cfg.episodes = 100;
  cfg.seed = 14;
  cfg.budget = 50;
  policy::MPCPolicy mpc(cem_mpc());
  const std::vector<std::string> factors{"physics.drag", "physics.dt", "physics.v_max",
                                         "door.center", "door.width"};
  const auto rows = eval::fov_sweep(mpc, cfg, factors);
  const auto episodic = eval::evaluate_episodic(mpc, cfg);
  o.check(rows.size() == factors.size() + 1, "one row per factor plus baseline");
  o.check(rows.front() == episodic &&
              eval::to_json_line(rows.front()) == eval::to_json_line(episodic),
          "baseline bit-identical to evaluate_episodic");
  double drag_gap = 1.0;
  for (const auto& row : rows) {
    if (row.factor == "physics.drag") drag_gap = std::abs(row.success_rate - rows[0].success_rate);
  }
  o.check(drag_gap <= 0.15, "drag row within 0.15 of baseline");
  o.detail << "rows: ";
  for (const auto& row : rows) o.detail << row.factor << "=" << fmt(row.success_rate) << " ";
  o.detail << "; baseline identical";
  return o;
}

// 11. Data layer round trip, random access, latency and corruption.
Outcome data_layer() {
  Outcome o;
  const fs::path dir = scratch_dir();
  const std::string path = (dir / "layer.swm").string();
  const data::TrajectorySchema schema{{{"obs", data::DType::kF64, false, {4}},
                                       {"act", data::DType::kF32, false, {2}},
                                       {"idx", data::DType::kI32, false, {}},
                                       {"done", data::DType::kU8, false, {}},
                                       {"goal", data::DType::kF64, true, {4}}}};
  RandomStream rng(15);
  std::vector<data::Episode> episodes;
  for (int e = 0; e < 1000; ++e) {
    data::Episode ep;
    ep.steps = 50 + rng.uniform_int(250);
    for (std::uint64_t t = 0; t < ep.steps; ++t) {
      for (int k = 0; k < 4; ++k) ep.columns["obs"].push_back(rng.normal());
      for (int k = 0; k < 2; ++k) {
        ep.columns["act"].push_back(static_cast<float>(rng.uniform(-1, 1)));
      }
      ep.columns["idx"].push_back(static_cast<double>(t));
      ep.columns["done"].push_back(t + 1 == ep.steps ? 1.0 : 0.0);
    }
    for (int k = 0; k < 4; ++k) ep.columns["goal"].push_back(rng.uniform());
    episodes.push_back(std::move(ep));
  }
  {
    data::TrajectoryWriter writer(path, schema, {{"source", "acceptance"}});
    for (const auto& ep : episodes) writer.add_episode(ep);
    writer.finish();
  }

  const data::TrajectoryReader reader(path);
  bool round_trip = reader.num_episodes() == episodes.size();
  for (std::uint64_t e = 0; e < reader.num_episodes() && round_trip; ++e) {
    const auto back = reader.read_episode(e);
    round_trip = back.steps == episodes[e].steps && back.columns == episodes[e].columns;
  }
  o.check(round_trip, "bit-exact round trip");

  long errors = 0;
  long mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t e = rng.uniform_int(episodes.size());
    const std::uint64_t len = episodes[e].steps;
    const std::uint64_t w = 1 + rng.uniform_int(std::min<std::uint64_t>(len, 32));
    const std::uint64_t t = rng.uniform_int(len - w + 1);
    try {
      const auto window = reader.read_window({e, t, w});
      const auto& obs = episodes[e].columns.at("obs");
      const std::vector<double> expected(obs.begin() + static_cast<long>(4 * t),
                                         obs.begin() + static_cast<long>(4 * (t + w)));
      if (window.at("obs") != expected || window.at("goal") != episodes[e].columns.at("goal")) {
        ++mismatches;
      }
    } catch (const std::exception&) {
      ++errors;
    }
  }
  o.check(errors == 0 && mismatches == 0, "10^4 random windows");

  // Median latency of 16-step windows near the start versus near the end
  // of long episodes, measured interleaved.
  std::vector<std::uint64_t> long_eps;
  for (std::uint64_t e = 0; e < episodes.size(); ++e) {
    if (episodes[e].steps >= 250) long_eps.push_back(e);
  }
  std::vector<double> early;
  std::vector<double> late;
  for (int i = 0; i < 4000; ++i) {
    const std::uint64_t e = long_eps[rng.uniform_int(long_eps.size())];
    const bool at_end = i % 2 == 1;
    const std::uint64_t t = at_end ? episodes[e].steps - 16 - rng.uniform_int(8) : rng.uniform_int(8);
    const auto begin = std::chrono::steady_clock::now();
    (void)reader.read_window({e, t, 16});
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    (at_end ? late : early).push_back(dt);
  }
  const auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
  };
  const double ratio = median(late) / median(early);
  o.check(ratio <= 2.0 && ratio >= 0.5, "latency independent of offset");

  // Corruption: flip single bytes across a small file.
  const std::string small = (dir / "small.swm").string();
  {
    data::TrajectoryWriter writer(small, schema, {{"source", "acceptance"}});
    for (int e = 0; e < 3; ++e) writer.add_episode(episodes[static_cast<std::size_t>(e)]);
    writer.finish();
  }
  const std::string original = read_bytes(small);
  int undetected = 0;
  int flips = 0;
  for (std::size_t pos = 0; pos < original.size(); pos += 1 + original.size() / 400) {
    std::string bytes = original;
    bytes[pos] = static_cast<char>(bytes[pos] ^ 0x01);
    const std::string bad = (dir / "flipped.swm").string();
    std::ofstream(bad, std::ios::binary) << bytes;
    ++flips;
    try {
      data::TrajectoryReader corrupt(bad);
      ++undetected;
    } catch (const std::exception&) {
    }
  }
  o.check(undetected == 0, "byte flips detected");
  o.detail << "round trip " << (round_trip ? "exact" : "MISMATCH") << "; 10^4 windows: "
           << errors << " errors, " << mismatches << " mismatches; median latency ratio end/start "
           << fmt(std::round(ratio * 100) / 100) << "; " << flips - undetected << "/" << flips
           << " byte flips detected";
  fs::remove(path);
  fs::remove(small);
  fs::remove(dir / "flipped.swm");
  return o;
}

int run_command(const std::string& cmd) { return std::system(cmd.c_str()); }

// 12. CLI collect/evaluate are byte-identical across repeats and pool widths.
Outcome cli_determinism(const std::string& cli) {
  Outcome o;
  const fs::path dir = scratch_dir();
  std::vector<std::string> collected;
  std::vector<std::string> reports;
  bool commands_ok = true;
  int run = 0;
  for (const char* envs : {"1", "8"}) {
    for (int repeat = 0; repeat < 2; ++repeat, ++run) {
      const fs::path data = dir / ("cli_" + std::to_string(run) + ".swm");
      const fs::path report = dir / ("cli_" + std::to_string(run) + ".jsonl");
      const fs::path stdout_copy = dir / ("cli_" + std::to_string(run) + ".out");
      const std::string collect = "\"" + cli + "\" collect --env tworoom --policy random " +
                                  "--episodes 16 --seed 21 --variation physics --num-envs " +
                                  envs + " --out \"" + data.string() + "\" > /dev/null";
      const std::string evaluate = "\"" + cli + "\" evaluate --env tworoom --solver cem " +
                                   "--horizon 10 --budget 50 --episodes 16 --seed 22 " +
                                   "--num-envs " + envs + " --out \"" + report.string() +
                                   "\" > \"" + stdout_copy.string() + "\"";
      commands_ok = commands_ok && run_command(collect) == 0 && run_command(evaluate) == 0;
      collected.push_back(read_bytes(data));
      reports.push_back(read_bytes(report));
      o.check(read_bytes(stdout_copy) == reports.back(), "stdout matches --out report");
      fs::remove(data);
      fs::remove(report);
      fs::remove(stdout_copy);
    }
  }
  o.check(commands_ok, "cli exit codes");
  o.check(!collected[0].empty() && !reports[0].empty(), "outputs written");
  bool identical = true;
  for (std::size_t i = 1; i < collected.size(); ++i) {
    identical = identical && collected[i] == collected[0] && reports[i] == reports[0];
  }
  o.check(identical, "byte-identical outputs");
  o.detail << "collect (" << collected[0].size() << " bytes) and evaluate (" << reports[0].size()
           << " bytes) identical across 2 repeats x num-envs {1, 8}";
  return o;
}

// 13. GRASP: pinned endpoints and reach on certified free point-mass tasks.
Outcome grasp() {
  Outcome o;
  auto dyn = std::make_shared<worlds::FreePointMassDynamics>();
  const auto box = ContinuousActionSpace::symmetric(2, 1.0);
  RandomStream rng(13);
  int certified = 0;
  int reached = 0;
  long pin_violations = 0;
  long iterations_seen = 0;
  double worst = 0.0;
  const auto final_distance = [&](StateVec s, const ActionSequence& a, const StateVec& goal) {
    for (Eigen::Index t = 0; t < a.rows(); ++t) s = dyn->predict(s, a.row(t).transpose());
    return (s.head(2) - goal.head(2)).norm();
  };
  for (int i = 0; i < 30; ++i) {
    StateVec s0(4);
    s0 << rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8), 0.0, 0.0;
    const double angle = rng.uniform(0.0, 2.0 * M_PI);
    const double radius = rng.uniform(0.05, 0.3);
    StateVec goal(4);
    goal << s0[0] + radius * std::cos(angle), s0[1] + radius * std::sin(angle), 0.0, 0.0;
    const worlds::RolloutCostModel cost(dyn, goal, box);

    solvers::SamplingSolverConfig reference;
    reference.horizon = 10;
    reference.num_candidates = 500;
    reference.iterations = 10;
    reference.num_elites = 50;
    reference.init_scale = 0.5;
    RandomStream ref_rng = rng.split(static_cast<std::uint64_t>(i));
    const auto ref = solvers::cem_solve(cost, s0, reference, ref_rng);
    if (final_distance(s0, ref.best_sequence, goal) > 0.05) continue;
    ++certified;

    solvers::GraspConfig cfg = solvers::GraspConfig::with_schedules(10, 50, 1.0, 0.01);
    cfg.sync_interval = 10;
    RandomStream grasp_rng = rng.split(1000 + static_cast<std::uint64_t>(i));
    const auto result = solvers::grasp_solve(
        *dyn, cost, s0, goal, cfg, grasp_rng, std::nullopt, {},
        [&](int, const solvers::GraspState& state) {
          ++iterations_seen;
          if (state.virtual_states.front() != s0 || state.virtual_states.back() != goal) {
            ++pin_violations;
          }
        });
    const double d = final_distance(s0, result.best_sequence, goal);
    worst = std::max(worst, d);
    reached += d <= 0.05;
  }
  o.check(pin_violations == 0 && iterations_seen == 50L * certified, "pinning every iteration");
  o.check(certified >= 10, "enough certified instances");
  o.check(reached == certified, "final distance <= 0.05");
  o.detail << reached << "/" << certified << " certified instances reached (worst "
           << fmt(std::round(worst * 10000) / 10000) << "); pins held over " << iterations_seen
           << " iterations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-wplan-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"solver convergence", solver_convergence},
      {"constrained optimum", constrained_optimum},
      {"gradient correctness", gradient_correctness},
      {"simplex projection", simplex_projection},
      {"colored noise", colored_noise},
      {"gumbel-max sampling", gumbel_max},
      {"discrete planning", discrete_planning},
      {"closed-loop control", control_analog},
      {"dataset protocol", dataset_protocol},
      {"factor sweep", fov_sweep},
      {"data layer", data_layer},
      {"cli determinism", [&] { return cli_determinism(cli); }},
      {"grasp", grasp},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %-22s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
