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

#include <memory>
#include <span>
#include <vector>

#include "wplan/core/types.hpp"

namespace wplan {

/// Trajectory cost J(s0, A) of a world model.
///
/// Implementations roll the action sequence out through their one-step
/// predictor and sum a stage cost. `cost` must be a pure function of its
/// arguments: concurrent calls on one instance are allowed.
///
/// Optional capabilities:
///  - gradient of J with respect to A (`has_gradient`, `cost_and_grad`);
///  - inequality constraints g_j(s0, A) <= 0 and their gradients.
class CostModel {
 public:
  virtual ~CostModel() = default;

  virtual ActionSpace action_space() const = 0;
  virtual double cost(const StateVec& s0, const ActionSequence& actions) const = 0;

  // Costs for every candidate, positionally. The default evaluates serially.
  virtual std::vector<double> batched_cost(
      const StateVec& s0, std::span<const ActionSequence> candidates) const;

  virtual bool has_gradient() const { return false; }
  // Returns J and writes dJ/dA into `grad` (resized to match `actions`).
  virtual double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                               ActionSequence& grad) const;

  virtual int num_constraints(int horizon) const;
  virtual Eigen::VectorXd constraints(const StateVec& s0,
                                      const ActionSequence& actions) const;
  virtual bool has_constraint_gradient() const { return false; }
  // Constraint values; `grads[j]` receives dg_j/dA.
  virtual Eigen::VectorXd constraints_and_grad(
      const StateVec& s0, const ActionSequence& actions,
      std::vector<ActionSequence>& grads) const;
};

using CostModelPtr = std::shared_ptr<const CostModel>;

/// Fans `batched_cost` out over worker threads. Results are gathered by
/// candidate index, so output does not depend on the worker count.
class ParallelCostModel : public CostModel {
 public:
  ParallelCostModel(CostModelPtr inner, int workers);

  ActionSpace action_space() const override { return inner_->action_space(); }
  double cost(const StateVec& s0, const ActionSequence& actions) const override {
    return inner_->cost(s0, actions);
  }
  std::vector<double> batched_cost(
      const StateVec& s0, std::span<const ActionSequence> candidates) const override;
  bool has_gradient() const override { return inner_->has_gradient(); }
  double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                       ActionSequence& grad) const override {
    return inner_->cost_and_grad(s0, actions, grad);
  }
  int num_constraints(int horizon) const override {
    return inner_->num_constraints(horizon);
  }
  Eigen::VectorXd constraints(const StateVec& s0,
                              const ActionSequence& actions) const override {
    return inner_->constraints(s0, actions);
  }
  bool has_constraint_gradient() const override {
    return inner_->has_constraint_gradient();
  }
  Eigen::VectorXd constraints_and_grad(
      const StateVec& s0, const ActionSequence& actions,
      std::vector<ActionSequence>& grads) const override {
    return inner_->constraints_and_grad(s0, actions, grads);
  }

 private:
  CostModelPtr inner_;
  int workers_;
};

/// Adds one constraint per time step, ||a_t||^2 - max_norm^2 <= 0, with its
/// analytic gradient 2 a_t. Cost and cost gradient pass through.
class ActionNormConstrainedModel : public CostModel {
 public:
  ActionNormConstrainedModel(CostModelPtr inner, double max_norm);

  ActionSpace action_space() const override { return inner_->action_space(); }
  double cost(const StateVec& s0, const ActionSequence& actions) const override {
    return inner_->cost(s0, actions);
  }
  std::vector<double> batched_cost(
      const StateVec& s0,
      std::span<const ActionSequence> candidates) const override {
    return inner_->batched_cost(s0, candidates);
  }
  bool has_gradient() const override { return inner_->has_gradient(); }
  double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                       ActionSequence& grad) const override {
    return inner_->cost_and_grad(s0, actions, grad);
  }
  int num_constraints(int horizon) const override { return horizon; }
  Eigen::VectorXd constraints(const StateVec& s0,
                              const ActionSequence& actions) const override;
  bool has_constraint_gradient() const override { return true; }
  Eigen::VectorXd constraints_and_grad(
      const StateVec& s0, const ActionSequence& actions,
      std::vector<ActionSequence>& grads) const override;

  double max_norm() const { return max_norm_; }

 private:
  CostModelPtr inner_;
  double max_norm_;
};

}  // namespace wplan
