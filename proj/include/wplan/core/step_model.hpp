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

#include "wplan/core/types.hpp"

namespace wplan {

// One-step predictor s' = P(s, a) with its action Jacobian dP/da.
class StepModel {
 public:
  virtual ~StepModel() = default;

  virtual int state_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual StateVec predict(const StateVec& state, const Action& action) const = 0;
  virtual bool has_action_jacobian() const { return true; }
  // state_dim x action_dim.
  virtual Eigen::MatrixXd action_jacobian(const StateVec& state,
                                          const Action& action) const = 0;
};

using StepModelPtr = std::shared_ptr<const StepModel>;

}  // namespace wplan
