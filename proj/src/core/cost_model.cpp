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

#include "wplan/core/cost_model.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace wplan {

std::vector<double> CostModel::batched_cost(
    const StateVec& s0, std::span<const ActionSequence> candidates) const {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const ActionSequence& candidate : candidates) {
    out.push_back(cost(s0, candidate));
  }
  return out;
}

double CostModel::cost_and_grad(const StateVec&, const ActionSequence&,
                                ActionSequence&) const {
  throw ConfigError(
      "cost model has no gradient; wrap it in FiniteDifferenceCostModel");
}

int CostModel::num_constraints(int) const { return 0; }

Eigen::VectorXd CostModel::constraints(const StateVec&,
                                       const ActionSequence&) const {
  return Eigen::VectorXd();
}

Eigen::VectorXd CostModel::constraints_and_grad(
    const StateVec&, const ActionSequence&, std::vector<ActionSequence>&) const {
  throw ConfigError("cost model has no constraint gradients");
}

ParallelCostModel::ParallelCostModel(CostModelPtr inner, int workers)
    : inner_(std::move(inner)), workers_(std::max(1, workers)) {
  if (!inner_) throw ContractError("ParallelCostModel: null inner model");
}

std::vector<double> ParallelCostModel::batched_cost(
    const StateVec& s0, std::span<const ActionSequence> candidates) const {
  const std::size_t n = candidates.size();
  std::vector<double> out(n, 0.0);
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(workers_), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = inner_->cost(s0, candidates[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          const std::size_t begin = w * chunk;
          const std::size_t end = std::min(n, begin + chunk);
          for (std::size_t i = begin; i < end; ++i) {
            out[i] = inner_->cost(s0, candidates[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return out;
}

ActionNormConstrainedModel::ActionNormConstrainedModel(CostModelPtr inner,
                                                       double max_norm)
    : inner_(std::move(inner)), max_norm_(max_norm) {
  if (!inner_) throw ContractError("ActionNormConstrainedModel: null inner model");
}

Eigen::VectorXd ActionNormConstrainedModel::constraints(
    const StateVec&, const ActionSequence& actions) const {
  Eigen::VectorXd g(actions.rows());
  for (Eigen::Index t = 0; t < actions.rows(); ++t) {
    g[t] = actions.row(t).squaredNorm() - max_norm_ * max_norm_;
  }
  return g;
}

Eigen::VectorXd ActionNormConstrainedModel::constraints_and_grad(
    const StateVec& s0, const ActionSequence& actions,
    std::vector<ActionSequence>& grads) const {
  grads.assign(static_cast<std::size_t>(actions.rows()),
               ActionSequence::Zero(actions.rows(), actions.cols()));
  for (Eigen::Index t = 0; t < actions.rows(); ++t) {
    grads[static_cast<std::size_t>(t)].row(t) = 2.0 * actions.row(t);
  }
  return constraints(s0, actions);
}

}  // namespace wplan
