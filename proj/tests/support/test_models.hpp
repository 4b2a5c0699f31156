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
#include <memory>

#include "wplan/core/cost_model.hpp"

namespace wplan::testing {

enum class ConstraintMode {
  kNone,
  kInactive,    // g_t = -1 for every step
  kNormSquared  // g_t = ||a_t||^2 - radius^2
};

/// J(A) = sum_t ||a_t - target||^2 over a symmetric box, with an analytic
/// gradient and optional per-step constraints.
class QuadraticCost : public CostModel {
 public:
  QuadraticCost(int dims, double target, double bound = 1.0,
                ConstraintMode mode = ConstraintMode::kNone, double radius = 0.5);

  ActionSpace action_space() const override;
  double cost(const StateVec& s0, const ActionSequence& actions) const override;
  bool has_gradient() const override { return true; }
  double cost_and_grad(const StateVec& s0, const ActionSequence& actions,
                       ActionSequence& grad) const override;
  int num_constraints(int horizon) const override;
  Eigen::VectorXd constraints(const StateVec& s0,
                              const ActionSequence& actions) const override;
  bool has_constraint_gradient() const override { return mode_ != ConstraintMode::kNone; }
  Eigen::VectorXd constraints_and_grad(const StateVec& s0, const ActionSequence& actions,
                                       std::vector<ActionSequence>& grads) const override;

 private:
  int dims_;
  double target_;
  double bound_;
  ConstraintMode mode_;
  double radius_;
};

/// Cost given by an arbitrary function; no gradient.
class FunctionCost : public CostModel {
 public:
  using Fn = std::function<double(const ActionSequence&)>;

  FunctionCost(ActionSpace space, Fn fn) : space_(std::move(space)), fn_(std::move(fn)) {}

  ActionSpace action_space() const override { return space_; }
  double cost(const StateVec&, const ActionSequence& actions) const override {
    return fn_(actions);
  }

 private:
  ActionSpace space_;
  Fn fn_;
};

inline std::shared_ptr<const QuadraticCost> quadratic(int dims, double target) {
  return std::make_shared<QuadraticCost>(dims, target);
}

// Largest |a - b| over all entries.
double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace wplan::testing
