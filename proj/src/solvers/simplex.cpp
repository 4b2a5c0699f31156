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
#include <functional>
#include <vector>

#include "wplan/solvers/solvers.hpp"

namespace wplan::solvers {

// Sort descending, find the largest j with u_j - (s_j - 1)/j > 0, shift by
// theta = (s_rho - 1)/rho and clamp at zero.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw ContractError("project_simplex: empty vector");
  if (!v.allFinite()) throw ContractError("project_simplex: non-finite entry");
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    prefix += sorted[static_cast<std::size_t>(j)];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

void project_rows_to_simplex(Eigen::MatrixXd& matrix) {
  for (Eigen::Index t = 0; t < matrix.rows(); ++t) {
    matrix.row(t) = project_simplex(matrix.row(t).transpose()).transpose();
  }
}

}  // namespace wplan::solvers
