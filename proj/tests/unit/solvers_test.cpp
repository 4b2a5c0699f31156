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


#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "support/test_models.hpp"
#include "wplan/core/finite_difference.hpp"
#include "wplan/solvers/dispatch.hpp"
#include "wplan/solvers/solvers.hpp"
#include "wplan/worlds/gridworld.hpp"
#include "wplan/worlds/two_room.hpp"

namespace wplan::solvers {
namespace {

using testing::ConstraintMode;
using testing::FunctionCost;
using testing::QuadraticCost;

const StateVec kNoState;

SamplingSolverConfig quad_sampling(int n, int iters, int elites, double sigma) {
  SamplingSolverConfig cfg;
  cfg.horizon = 4;
  cfg.num_candidates = n;
  cfg.iterations = iters;
  cfg.num_elites = elites;
  cfg.init_scale = sigma;
  return cfg;
}

void expect_all_near(const ActionSequence& a, double value, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) EXPECT_NEAR(a.data()[i], value, tol);
}

// --- building blocks ---

TEST(SelectElites, OrdersByCostWithLowIndexTiesAndNaNLast) {
  const std::vector<double> costs{3.0, std::nan(""), 1.0, 1.0, 0.5};
  EXPECT_EQ(select_elites(costs, 4), (std::vector<int>{4, 2, 3, 0}));
  EXPECT_EQ(select_elites(costs, 5).back(), 1);
}

TEST(RefitGaussian, HandBuiltElites) {
  std::vector<ActionSequence> elites{ActionSequence::Constant(1, 1, 0.2),
                                     ActionSequence::Constant(1, 1, 0.4)};
  const auto [mu, sigma] = refit_gaussian(elites);
  EXPECT_NEAR(mu(0, 0), 0.3, 1e-12);
  EXPECT_NEAR(sigma(0, 0), 0.1, 1e-12);
}

TEST(SoftminWeights, TwoElitesClosedForm) {
  const auto w = softmin_weights({0.0, 1.0}, 1.0);
  EXPECT_NEAR(w[0], 0.73106, 1e-5);
  EXPECT_NEAR(w[1], 0.26894, 1e-5);
}

TEST(ProjectSimplex, HandExamples) {
  EXPECT_EQ(project_simplex(Eigen::Vector2d(0.4, 0.4)), Eigen::VectorXd(Eigen::Vector2d(0.5, 0.5)));
  EXPECT_EQ(project_simplex(Eigen::Vector2d(2.0, 0.0)), Eigen::VectorXd(Eigen::Vector2d(1.0, 0.0)));
  const Eigen::Vector3d feasible(0.2, 0.3, 0.5);
  EXPECT_LT((project_simplex(feasible) - feasible).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ProjectSimplex, RowsLandOnSimplex) {
  Eigen::MatrixXd m(3, 4);
  m << -1, 2, 0.5, 3, 0, 0, 0, 0, 10, -10, 0.1, 0.2;
  project_rows_to_simplex(m);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    EXPECT_NEAR(m.row(r).sum(), 1.0, 1e-12);
    EXPECT_GE(m.row(r).minCoeff(), 0.0);
  }
}

// --- predictive sampling ---

TEST(PredictiveSampling, ZeroSigmaReturnsNominal) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  const ActionSequence nominal = ActionSequence::Constant(4, 2, -0.2);
  const auto r = predictive_sampling_solve(model, kNoState, quad_sampling(50, 1, 1, 0.0), rng,
                                           nominal);
  EXPECT_EQ(r.best_sequence, nominal);
}

TEST(PredictiveSampling, NominalAtOptimumIsKept) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(1);
  const ActionSequence nominal = ActionSequence::Constant(4, 2, 0.3);
  const auto r = predictive_sampling_solve(model, kNoState, quad_sampling(200, 1, 1, 1.0), rng,
                                           nominal);
  EXPECT_EQ(r.best_sequence, nominal);
  EXPECT_EQ(r.best_cost, 0.0);
}

TEST(PredictiveSampling, OneDimensionalQuadratic) {
  const QuadraticCost model(1, 0.5);
  RandomStream rng(2);
  SamplingSolverConfig cfg = quad_sampling(10000, 1, 1, 1.0);
  cfg.horizon = 1;
  const auto r = predictive_sampling_solve(model, kNoState, cfg, rng);
  EXPECT_LE(std::abs(r.best_sequence(0, 0) - 0.5), 0.1);
}

// --- CEM ---

TEST(Cem, ReachesQuadraticOptimum) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  const auto r = cem_solve(model, kNoState, quad_sampling(100, 10, 10, 1.0), rng);
  expect_all_near(r.best_sequence, 0.3, 0.05);
  EXPECT_EQ(r.iterations_run, 10);
  EXPECT_EQ(r.cost_trace.size(), 10u);
}

TEST(Cem, ZeroSigmaReturnsInitExactly) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  const ActionSequence init = ActionSequence::Constant(4, 2, 0.77);
  const auto r = cem_solve(model, kNoState, quad_sampling(20, 3, 5, 0.0), rng, init);
  EXPECT_EQ(r.best_sequence, init);
}

TEST(Cem, CandidatesInBoundsAndMeanCandidateFirst) {
  std::vector<ActionSequence> seen;
  const FunctionCost model(ContinuousActionSpace::symmetric(2, 0.5),
                           [&seen](const ActionSequence& a) {
                             seen.push_back(a);
                             return (a.array() - 0.3).square().sum();
                           });
  RandomStream rng(3);
  const ActionSequence init = ActionSequence::Constant(4, 2, 0.1);
  SamplingSolverConfig cfg = quad_sampling(30, 2, 5, 2.0);
  (void)cem_solve(model, kNoState, cfg, rng, init);
  ASSERT_GE(seen.size(), 30u);
  EXPECT_EQ(seen.front(), init);
  for (const auto& a : seen) EXPECT_LE(a.cwiseAbs().maxCoeff(), 0.5);
}

TEST(Cem, DeterministicPerSeed) {
  const QuadraticCost model(2, 0.3);
  RandomStream a(9);
  RandomStream b(9);
  const auto x = cem_solve(model, kNoState, quad_sampling(50, 3, 5, 1.0), a);
  const auto y = cem_solve(model, kNoState, quad_sampling(50, 3, 5, 1.0), b);
  EXPECT_EQ(x.best_sequence, y.best_sequence);
  EXPECT_EQ(x.cost_trace, y.cost_trace);
}

TEST(Cem, AllNonFiniteCostsRaiseSolverError) {
  const FunctionCost model(ContinuousActionSpace::symmetric(1, 1.0),
                           [](const ActionSequence&) { return std::nan(""); });
  RandomStream rng(0);
  SamplingSolverConfig cfg = quad_sampling(10, 1, 2, 1.0);
  cfg.horizon = 1;
  EXPECT_THROW(cem_solve(model, kNoState, cfg, rng), SolverError);
}

// --- MPPI ---

TEST(Mppi, ReachesQuadraticOptimum) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  // The sampling scale stays fixed, so it has to be small enough for the
  // weighted average to settle within tolerance.
  SamplingSolverConfig cfg = quad_sampling(1000, 10, 1000, 0.2);
  cfg.temperature = 0.1;
  const auto r = mppi_solve(model, kNoState, cfg, rng);
  expect_all_near(r.best_sequence, 0.3, 0.05);
}

TEST(Mppi, ZeroSigmaKeepsMean) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  const ActionSequence init = ActionSequence::Constant(4, 2, -0.4);
  SamplingSolverConfig cfg = quad_sampling(20, 5, 20, 0.0);
  const auto r = mppi_solve(model, kNoState, cfg, rng, init);
  EXPECT_EQ(r.best_sequence, init);
}

// --- iCEM ---

TEST(Icem, FullMomentumFreezesMean) {
  const QuadraticCost model(2, 0.3);
  RandomStream rng(0);
  SamplingSolverConfig cfg = quad_sampling(50, 5, 5, 1.0);
  cfg.momentum = 1.0;
  const ActionSequence init = ActionSequence::Constant(4, 2, -0.6);
  const auto r = icem_solve(model, kNoState, cfg, rng, init);
  EXPECT_EQ(r.best_sequence, init);
}

TEST(Icem, WhiteNoiseNoMomentumMatchesCem) {
  const QuadraticCost model(2, 0.3);
  SamplingSolverConfig cfg = quad_sampling(100, 10, 10, 1.0);
  cfg.noise_beta = 0.0;
  cfg.momentum = 0.0;
  cfg.elites_keep = 0;
  RandomStream a(4);
  RandomStream b(4);
  expect_all_near(icem_solve(model, kNoState, cfg, a).best_sequence, 0.3, 0.05);
  expect_all_near(cem_solve(model, kNoState, cfg, b).best_sequence, 0.3, 0.05);
}

TEST(Icem, ColoredNoiseReachesOptimum) {
  const QuadraticCost model(2, 0.3);
  SamplingSolverConfig cfg = quad_sampling(100, 10, 10, 1.0);
  cfg.elites_keep = 5;
  RandomStream rng(5);
  expect_all_near(icem_solve(model, kNoState, cfg, rng).best_sequence, 0.3, 0.05);
}

// --- categorical CEM ---

TEST(CategoricalCem, FrequencyRefitToUnanimousElites) {
  const FunctionCost model(DiscreteActionSpace(4), [](const ActionSequence& a) {
    return a(0, 2) == 1.0 ? 0.0 : 1.0;
  });
  SamplingSolverConfig cfg;
  cfg.horizon = 1;
  cfg.num_candidates = 64;
  cfg.iterations = 1;
  cfg.num_elites = 8;
  cfg.momentum = 0.0;
  cfg.smoothing = 0.0;
  RandomStream rng(0);
  const auto r = categorical_cem_solve(model, kNoState, cfg, rng);
  EXPECT_EQ(r.distribution, one_hot({2}, 4));
  EXPECT_EQ(r.best_sequence, one_hot({2}, 4));
}

TEST(CategoricalCem, FullMomentumKeepsUniformAndDecodesLowestIndex) {
  const FunctionCost model(DiscreteActionSpace(5), [](const ActionSequence& a) {
    return a(0, 3) + a(1, 4);
  });
  SamplingSolverConfig cfg;
  cfg.horizon = 3;
  cfg.num_candidates = 20;
  cfg.iterations = 4;
  cfg.num_elites = 4;
  cfg.momentum = 1.0;
  RandomStream rng(1);
  const auto r = categorical_cem_solve(model, kNoState, cfg, rng);
  EXPECT_LT(testing::max_abs_diff(r.distribution, Eigen::MatrixXd::Constant(3, 5, 0.2)), 1e-15);
  EXPECT_EQ(r.best_sequence, one_hot({0, 0, 0}, 5));
}

// Gridworld with the agent at cell (3, 4) and the goal one cell away.
struct OneStepGrid {
  worlds::GridWorld world;
  CostModelPtr cost;
  StateVec start;
};

std::unique_ptr<OneStepGrid> one_step_grid(int dx, int dy) {
  auto g = std::make_unique<OneStepGrid>();
  worlds::ResetOptions options;
  options.variation_values["agent.start"] = {3.5 / 8, 4.5 / 8};
  options.variation_values["goal.position"] = {(3.5 + dx) / 8, (4.5 + dy) / 8};
  const auto reset = g->world.reset(0, options);
  g->cost = g->world.cost_model(reset.goal);
  g->start = reset.state;
  return g;
}

TEST(CategoricalCem, GridworldOneStepRight) {
  const auto g = one_step_grid(1, 0);
  SamplingSolverConfig cfg;
  cfg.horizon = 1;
  cfg.num_candidates = 64;
  cfg.iterations = 5;
  cfg.num_elites = 8;
  RandomStream rng(0);
  const auto r = categorical_cem_solve(*g->cost, g->start, cfg, rng);
  EXPECT_EQ(argmax_rows(r.best_sequence), std::vector<int>{worlds::kRight});
}

// --- GD / PGD ---

TEST(Gd, StationaryAtOptimum) {
  const QuadraticCost model(2, 0.3);
  GradientSolverConfig cfg;
  cfg.horizon = 4;
  cfg.iterations = 20;
  RandomStream rng(0);
  const ActionSequence init = ActionSequence::Constant(4, 2, 0.3);
  EXPECT_EQ(gd_solve(model, kNoState, cfg, rng, init).best_sequence, init);
}

TEST(Gd, OneDimensionalQuadraticConverges) {
  const QuadraticCost model(1, 0.9);
  GradientSolverConfig cfg;
  cfg.horizon = 1;
  cfg.iterations = 200;
  cfg.step_size = 0.1;
  cfg.num_candidates = 1;
  RandomStream rng(0);
  EXPECT_LE(std::abs(gd_solve(model, kNoState, cfg, rng).best_sequence(0, 0) - 0.9), 1e-3);
}

TEST(Gd, ReturnsArgminCandidate) {
  // Candidate 1 is the unperturbed init (cost 5), candidate 2 is perturbed (cost 3).
  auto inner = std::make_shared<FunctionCost>(
      ContinuousActionSpace::symmetric(1, 1.0),
      [](const ActionSequence& a) { return a(0, 0) == 0.0 ? 5.0 : 3.0; });
  const auto model = ensure_differentiable(inner);
  GradientSolverConfig cfg;
  cfg.horizon = 1;
  cfg.iterations = 0;
  cfg.num_candidates = 2;
  cfg.init_scale = 0.5;
  RandomStream rng(0);
  const auto r = gd_solve(*model, kNoState, cfg, rng);
  EXPECT_EQ(r.best_cost, 3.0);
  EXPECT_NE(r.best_sequence(0, 0), 0.0);
}

TEST(Gd, RequiresGradient) {
  const FunctionCost model(ContinuousActionSpace::symmetric(1, 1.0),
                           [](const ActionSequence&) { return 0.0; });
  RandomStream rng(0);
  EXPECT_THROW(gd_solve(model, kNoState, GradientSolverConfig{}, rng), ConfigError);
}

TEST(Pgd, ZeroIterationsReturnsOneHotInit) {
  const auto g = one_step_grid(1, 0);
  GradientSolverConfig cfg;
  cfg.horizon = 2;
  cfg.iterations = 0;
  RandomStream rng(0);
  const ActionSequence init = one_hot({1, 2}, 5);
  EXPECT_EQ(pgd_solve(*g->cost, g->start, cfg, rng, init).best_sequence, init);
}

TEST(Pgd, GridworldOneStepRight) {
  const auto g = one_step_grid(1, 0);
  GradientSolverConfig cfg;
  cfg.horizon = 1;
  cfg.iterations = 50;
  cfg.step_size = 0.5;
  RandomStream rng(0);
  const auto r = pgd_solve(*g->cost, g->start, cfg, rng);
  EXPECT_EQ(argmax_rows(r.best_sequence), std::vector<int>{worlds::kRight});
  EXPECT_GE(r.distribution(0, worlds::kRight), 0.9);
}

// --- Lagrangian ---

TEST(Lagrangian, InactiveConstraintMatchesGd) {
  const QuadraticCost model(1, 0.9, 1.0, ConstraintMode::kInactive);
  LagrangianConfig cfg;
  cfg.base.horizon = 1;
  cfg.base.iterations = 20;
  cfg.base.step_size = 0.1;
  cfg.outer_iterations = 10;
  GradientSolverConfig gd_cfg = cfg.base;
  gd_cfg.iterations = cfg.base.iterations * cfg.outer_iterations;
  RandomStream a(0);
  RandomStream b(0);
  const auto lag = lagrangian_solve(model, kNoState, cfg, a);
  const auto gd = gd_solve(model, kNoState, gd_cfg, b);
  EXPECT_NEAR(lag.best_sequence(0, 0), gd.best_sequence(0, 0), 1e-3);
}

TEST(Lagrangian, ConstrainedOptimumOnBoundary) {
  const QuadraticCost model(1, 0.9, 1.0, ConstraintMode::kNormSquared, 0.5);
  LagrangianConfig cfg;
  cfg.base.horizon = 1;
  cfg.base.iterations = 50;
  cfg.base.step_size = 0.05;
  cfg.outer_iterations = 30;
  cfg.penalty_init = 1.0;
  cfg.penalty_scale = 1.5;
  cfg.penalty_max = 10.0;
  RandomStream rng(0);
  const auto r = lagrangian_solve(model, kNoState, cfg, rng);
  EXPECT_NEAR(r.best_sequence(0, 0), 0.5, 0.05);
  ASSERT_EQ(r.multipliers.size(), 30u);
  for (const auto& lambda : r.multipliers) EXPECT_GE(lambda.minCoeff(), 0.0);
}

// --- GRASP ---

struct FreeProblem {
  std::shared_ptr<worlds::FreePointMassDynamics> dynamics =
      std::make_shared<worlds::FreePointMassDynamics>();
  StateVec start = (StateVec(4) << 0.2, 0.3, 0.0, 0.0).finished();
  StateVec goal = (StateVec(4) << 0.4, 0.2, 0.0, 0.0).finished();
  worlds::RolloutCostModel cost{dynamics, goal, ContinuousActionSpace::symmetric(2, 1.0)};
};

TEST(Grasp, ZeroIterationsReturnsZeroSequence) {
  FreeProblem p;
  GraspConfig cfg = GraspConfig::with_schedules(10, 0, 1.0, 0.0);
  RandomStream rng(0);
  const auto r = grasp_solve(*p.dynamics, p.cost, p.start, p.goal, cfg, rng);
  EXPECT_EQ(r.best_sequence, ActionSequence::Zero(10, 2));
}

TEST(Grasp, EndpointsPinnedEveryIteration) {
  FreeProblem p;
  GraspConfig cfg = GraspConfig::with_schedules(10, 30, 1.0, 0.05);
  RandomStream rng(0);
  int calls = 0;
  (void)grasp_solve(*p.dynamics, p.cost, p.start, p.goal, cfg, rng, std::nullopt, {},
                    [&](int, const GraspState& s) {
                      ++calls;
                      ASSERT_EQ(s.virtual_states.size(), 11u);
                      EXPECT_EQ(s.virtual_states.front(), p.start);
                      EXPECT_EQ(s.virtual_states.back(), p.goal);
                      EXPECT_LE(s.actions.cwiseAbs().maxCoeff(), 1.0);
                    });
  EXPECT_EQ(calls, 30);
}

TEST(Grasp, MissingJacobiansIsConfigError) {
  auto walled = std::make_shared<worlds::WalledPointMassDynamics>(worlds::TwoRoomParams{});
  FreeProblem p;
  GraspConfig cfg = GraspConfig::with_schedules(10, 5, 1.0, 0.0);
  RandomStream rng(0);
  EXPECT_THROW(grasp_solve(*walled, p.cost, p.start, p.goal, cfg, rng), ConfigError);
}

// --- dispatch ---

TEST(Dispatch, NamesRoundTrip) {
  for (SolverKind kind : all_solvers()) EXPECT_EQ(parse_solver(solver_name(kind)), kind);
  EXPECT_THROW(parse_solver("nope"), ConfigError);
  EXPECT_EQ(all_solvers().size(), 9u);
}

TEST(Dispatch, BestCostIsReevaluatedCost) {
  auto model = std::make_shared<QuadraticCost>(2, 0.3);
  for (SolverKind kind : all_solvers()) {
    const SolverTraits traits = solver_traits(kind);
    if (traits.discrete || traits.needs_dynamics) continue;
    SolverSpec spec = SolverSpec::defaults(kind, 4);
    PlanningProblem problem{model, nullptr, StateVec(), StateVec()};
    RandomStream rng(1);
    const auto r = solve(spec, problem, rng);
    const double again = model->batched_cost(StateVec(), std::vector{r.best_sequence})[0];
    EXPECT_NEAR(r.best_cost, again, 1e-9 * std::max(1.0, std::abs(again)))
        << solver_name(kind);
  }
}

TEST(Dispatch, ResultsIndependentOfEvaluationParallelism) {
  auto inner = std::make_shared<QuadraticCost>(2, 0.3);
  auto parallel = std::make_shared<ParallelCostModel>(inner, 3);
  for (SolverKind kind : {SolverKind::kCem, SolverKind::kMppi, SolverKind::kIcem,
                          SolverKind::kPredictiveSampling}) {
    const SolverSpec spec = SolverSpec::defaults(kind, 4);
    RandomStream a(2);
    RandomStream b(2);
    const auto x = solve(spec, {inner, nullptr, StateVec(), StateVec()}, a);
    const auto y = solve(spec, {parallel, nullptr, StateVec(), StateVec()}, b);
    EXPECT_EQ(x.best_sequence, y.best_sequence) << solver_name(kind);
    EXPECT_EQ(x.best_cost, y.best_cost);
  }
}

TEST(Dispatch, GraspNeedsDynamics) {
  auto model = std::make_shared<QuadraticCost>(2, 0.3);
  RandomStream rng(0);
  EXPECT_THROW(solve(SolverSpec::defaults(SolverKind::kGrasp, 4),
                     {model, nullptr, StateVec::Zero(4), StateVec::Zero(4)}, rng),
               ConfigError);
}

TEST(Dispatch, DiscreteSolverOnContinuousModelIsRejected) {
  auto model = std::make_shared<QuadraticCost>(2, 0.3);
  RandomStream rng(0);
  EXPECT_ANY_THROW(solve(SolverSpec::defaults(SolverKind::kCategoricalCem, 4),
                         {model, nullptr, StateVec(), StateVec()}, rng));
}

}  // namespace
}  // namespace wplan::solvers
