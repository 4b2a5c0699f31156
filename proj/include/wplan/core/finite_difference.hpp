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

#include "wplan/core/cost_model.hpp"

namespace wplan {

inline constexpr double kDefaultFiniteDifferenceStep = 1e-4;

// Central differences (J(A + h e) - J(A - h e)) / 2h for every entry of A.
// Throws NumericError if any probe cost is non-finite.
ActionSequence finite_difference_gradient(
    const CostModel& model, const StateVec& s0, const ActionSequence& actions,
    double step = kDefaultFiniteDifferenceStep);

// Same recipe applied to each constraint value.
std::vector<ActionSequence> finite_difference_constraint_gradients(
    const CostModel& model, const StateVec& s0, const ActionSequence& actions,
    double step = kDefaultFiniteDifferenceStep);

/// Gives any cost model the gradient capability through central
/// differences, for solvers that need a differentiable model.
class FiniteDifferenceCostModel : public CostModel {
 public:
  explicit FiniteDifferenceCostModel(CostModelPtr inner,
                                     double step = kDefaultFiniteDifferenceStep);

  ActionSpace action_space() const override { return inner_->action_space(); }
  double cost(const StateVec& s0, const ActionSequence& actions) const override {
    return inner_->cost(s0, actions);
  }
  std::vector<double> batched_cost(
      const StateVec& s0,
      std::span<const ActionSequence> candidates) const override {
    return inner_->batched_cost(s0, candidates);
  }
  bool has_gradient() const override { return true; }
  double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                       ActionSequence& grad) const override;
  int num_constraints(int horizon) const override {
    return inner_->num_constraints(horizon);
  }
  Eigen::VectorXd constraints(const StateVec& s0,
                              const ActionSequence& actions) const override {
    return inner_->constraints(s0, actions);
  }
  bool has_constraint_gradient() const override { return true; }
  Eigen::VectorXd constraints_and_grad(
      const StateVec& s0, const ActionSequence& actions,
      std::vector<ActionSequence>& grads) const override;

 private:
  CostModelPtr inner_;
  double step_;
};

// Returns `model` if it already has a gradient, otherwise wraps it.
CostModelPtr ensure_differentiable(CostModelPtr model);

}  // namespace wplan
