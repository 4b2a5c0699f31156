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

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace wplan {

// Rows are time steps, columns are action dimensions (or action categories
// for relaxed discrete sequences).
using ActionSequence = Eigen::MatrixXd;
using StateVec = Eigen::VectorXd;
using Action = Eigen::VectorXd;

// Precondition or dimension violation by the caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid or unsupported configuration (e.g. a solver paired with a model
// that lacks a capability it needs).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite value produced during a computation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index or window outside the valid range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Corrupt or unreadable file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rethrows the in-flight exception with `context` prepended to its message,
// keeping the library error type. Call only from a catch block.
[[noreturn]] void rethrow_with_context(const std::string& context);

/// Axis-aligned box of continuous actions.
class ContinuousActionSpace {
 public:
  ContinuousActionSpace(Eigen::VectorXd low, Eigen::VectorXd high);

  // Symmetric box [-bound, bound]^dim.
  static ContinuousActionSpace symmetric(int dim, double bound);

  int dim() const { return static_cast<int>(low_.size()); }
  const Eigen::VectorXd& low() const { return low_; }
  const Eigen::VectorXd& high() const { return high_; }
  bool contains(const Eigen::VectorXd& action) const;

 private:
  Eigen::VectorXd low_;
  Eigen::VectorXd high_;
};

class DiscreteActionSpace {
 public:
  explicit DiscreteActionSpace(int cardinality);

  int cardinality() const { return cardinality_; }

 private:
  int cardinality_;
};

using ActionSpace = std::variant<ContinuousActionSpace, DiscreteActionSpace>;

inline bool is_discrete(const ActionSpace& space) {
  return std::holds_alternative<DiscreteActionSpace>(space);
}

// Width of one row of an ActionSequence over this space.
int sequence_width(const ActionSpace& space);

/// Elementwise clamp of every row into the box. Idempotent.
ActionSequence clip_to_bounds(const ActionSequence& sequence,
                              const ContinuousActionSpace& space);
void clip_to_bounds_inplace(ActionSequence& sequence,
                            const ContinuousActionSpace& space);

// One-hot matrix for a list of category indices.
ActionSequence one_hot(const std::vector<int>& indices, int cardinality);

// Per-row argmax, ties to the lowest index.
std::vector<int> argmax_rows(const Eigen::MatrixXd& matrix);

// Index of the minimum entry, ties to the lowest index. NaN entries are
// skipped; returns -1 when no entry is finite-comparable.
int argmin_index(const std::vector<double>& values);

}  // namespace wplan
