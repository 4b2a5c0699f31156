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

#include <chrono>
#include <string>
#include <vector>

#include "wplan/solvers/solvers.hpp"

namespace wplan::solvers::internal {

ContinuousActionSpace require_box(const ActionSpace& space,
                                         const char* solver);
int require_discrete(const ActionSpace& space, const char* solver);

// Caller-supplied initial sequence checked against (horizon, width), or the
// zero sequence.
ActionSequence initial_sequence(const InitSequence& init, int horizon, int width,
                                const char* solver);

// One batched cost call. Throws SolverError if no candidate has a finite cost.
std::vector<double> evaluate_batch(const CostModel& model, const StateVec& s0,
                                   const std::vector<ActionSequence>& candidates,
                                   SolverResult& result, const char* solver);

double lowest(const std::vector<double>& costs);

// Global-norm clipping; threshold <= 0 is a no-op.
void clip_gradient_norm(ActionSequence& grad, double threshold);

void check_finite_gradient(const ActionSequence& grad, int iteration,
                           const char* solver);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace wplan::solvers::internal
