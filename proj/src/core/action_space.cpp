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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wplan/core/types.hpp"

namespace wplan {

ContinuousActionSpace::ContinuousActionSpace(Eigen::VectorXd low,
                                             Eigen::VectorXd high)
    : low_(std::move(low)), high_(std::move(high)) {
  if (low_.size() == 0 || low_.size() != high_.size()) {
    throw ContractError("action space bounds must be non-empty and equal length");
  }
  for (Eigen::Index i = 0; i < low_.size(); ++i) {
    if (!std::isfinite(low_[i]) || !std::isfinite(high_[i]) ||
        !(low_[i] < high_[i])) {
      throw ContractError("action space requires finite low < high in every dimension");
    }
  }
}

ContinuousActionSpace ContinuousActionSpace::symmetric(int dim, double bound) {
  return ContinuousActionSpace(Eigen::VectorXd::Constant(dim, -bound),
                               Eigen::VectorXd::Constant(dim, bound));
}

bool ContinuousActionSpace::contains(const Eigen::VectorXd& action) const {
  if (action.size() != low_.size()) return false;
  for (Eigen::Index i = 0; i < action.size(); ++i) {
    if (!(action[i] >= low_[i] && action[i] <= high_[i])) return false;
  }
  return true;
}

DiscreteActionSpace::DiscreteActionSpace(int cardinality)
    : cardinality_(cardinality) {
  if (cardinality < 2) {
    throw ContractError("discrete action space needs at least 2 actions");
  }
}

int sequence_width(const ActionSpace& space) {
  if (const auto* box = std::get_if<ContinuousActionSpace>(&space)) {
    return box->dim();
  }
  return std::get<DiscreteActionSpace>(space).cardinality();
}

void clip_to_bounds_inplace(ActionSequence& sequence,
                            const ContinuousActionSpace& space) {
  if (sequence.cols() != space.dim()) {
    throw ContractError("clip_to_bounds: sequence has " +
                        std::to_string(sequence.cols()) +
                        " columns, action space has " +
                        std::to_string(space.dim()));
  }
  for (Eigen::Index t = 0; t < sequence.rows(); ++t) {
    for (Eigen::Index j = 0; j < sequence.cols(); ++j) {
      sequence(t, j) =
          std::min(space.high()[j], std::max(space.low()[j], sequence(t, j)));
    }
  }
}

ActionSequence clip_to_bounds(const ActionSequence& sequence,
                              const ContinuousActionSpace& space) {
  ActionSequence out = sequence;
  clip_to_bounds_inplace(out, space);
  return out;
}

ActionSequence one_hot(const std::vector<int>& indices, int cardinality) {
  ActionSequence out =
      ActionSequence::Zero(static_cast<Eigen::Index>(indices.size()), cardinality);
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= cardinality) {
      throw ContractError("one_hot: index out of range");
    }
    out(static_cast<Eigen::Index>(t), indices[t]) = 1.0;
  }
  return out;
}

std::vector<int> argmax_rows(const Eigen::MatrixXd& matrix) {
  std::vector<int> out(static_cast<std::size_t>(matrix.rows()), 0);
  for (Eigen::Index t = 0; t < matrix.rows(); ++t) {
    int best = 0;
    for (Eigen::Index a = 1; a < matrix.cols(); ++a) {
      if (matrix(t, a) > matrix(t, best)) best = static_cast<int>(a);
    }
    out[static_cast<std::size_t>(t)] = best;
  }
  return out;
}

int argmin_index(const std::vector<double>& values) {
  int best = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (best < 0 || values[i] < values[static_cast<std::size_t>(best)]) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace wplan
