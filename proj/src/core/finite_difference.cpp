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

#include "wplan/core/finite_difference.hpp"

#include <cmath>
#include <string>

namespace wplan {
namespace {

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ContractError("finite difference step must be positive and finite");
  }
}

double checked_cost(const CostModel& model, const StateVec& s0,
                    const ActionSequence& actions) {
  const double value = model.cost(s0, actions);
  if (!std::isfinite(value)) {
    throw NumericError("finite_difference_gradient: non-finite cost " +
                       std::to_string(value));
  }
  return value;
}

}  // namespace

ActionSequence finite_difference_gradient(const CostModel& model,
                                          const StateVec& s0,
                                          const ActionSequence& actions,
                                          double step) {
  check_step(step);
  ActionSequence grad(actions.rows(), actions.cols());
  ActionSequence probe = actions;
  for (Eigen::Index t = 0; t < actions.rows(); ++t) {
    for (Eigen::Index j = 0; j < actions.cols(); ++j) {
      const double original = probe(t, j);
      probe(t, j) = original + step;
      const double plus = checked_cost(model, s0, probe);
      probe(t, j) = original - step;
      const double minus = checked_cost(model, s0, probe);
      probe(t, j) = original;
      grad(t, j) = (plus - minus) / (2.0 * step);
    }
  }
  return grad;
}

std::vector<ActionSequence> finite_difference_constraint_gradients(
    const CostModel& model, const StateVec& s0, const ActionSequence& actions,
    double step) {
  check_step(step);
  const Eigen::Index m = model.constraints(s0, actions).size();
  std::vector<ActionSequence> grads(static_cast<std::size_t>(m),
                                    ActionSequence(actions.rows(), actions.cols()));
  ActionSequence probe = actions;
  for (Eigen::Index t = 0; t < actions.rows(); ++t) {
    for (Eigen::Index j = 0; j < actions.cols(); ++j) {
      const double original = probe(t, j);
      probe(t, j) = original + step;
      const Eigen::VectorXd plus = model.constraints(s0, probe);
      probe(t, j) = original - step;
      const Eigen::VectorXd minus = model.constraints(s0, probe);
      probe(t, j) = original;
      if (!plus.allFinite() || !minus.allFinite()) {
        throw NumericError("finite difference: non-finite constraint value");
      }
      for (Eigen::Index c = 0; c < m; ++c) {
        grads[static_cast<std::size_t>(c)](t, j) = (plus[c] - minus[c]) / (2.0 * step);
      }
    }
  }
  return grads;
}

FiniteDifferenceCostModel::FiniteDifferenceCostModel(CostModelPtr inner,
                                                     double step)
    : inner_(std::move(inner)), step_(step) {
  if (!inner_) throw ContractError("FiniteDifferenceCostModel: null inner model");
  check_step(step_);
}

double FiniteDifferenceCostModel::cost_and_grad(const StateVec& s0,
                                                const ActionSequence& actions,
                                                ActionSequence& grad) const {
  grad = finite_difference_gradient(*inner_, s0, actions, step_);
  return inner_->cost(s0, actions);
}

Eigen::VectorXd FiniteDifferenceCostModel::constraints_and_grad(
    const StateVec& s0, const ActionSequence& actions,
    std::vector<ActionSequence>& grads) const {
  if (inner_->has_constraint_gradient()) {
    return inner_->constraints_and_grad(s0, actions, grads);
  }
  grads = finite_difference_constraint_gradients(*inner_, s0, actions, step_);
  return inner_->constraints(s0, actions);
}

CostModelPtr ensure_differentiable(CostModelPtr model) {
  if (model->has_gradient()) return model;
  return std::make_shared<FiniteDifferenceCostModel>(std::move(model));
}

}  // namespace wplan
