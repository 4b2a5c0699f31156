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

#include <span>
#include <vector>

#include "wplan/core/rng.hpp"
#include "wplan/core/types.hpp"

namespace wplan::noise {

/// Power-law ("colored") noise over a planning horizon. The power spectral
/// density of each generated series scales as f^-beta.
struct ColoredNoiseSpec {
  double beta = 0.0;
  int horizon = 1;
  int dims = 1;
};

// n matrices of shape horizon x dims with i.i.d. standard normal entries,
// filled row by row.
std::vector<Eigen::MatrixXd> sample_gaussian(RandomStream& rng, int n,
                                             int horizon, int dims);

// n matrices of shape horizon x dims. Each column is an independent series
// shaped in the frequency domain by f^(-beta/2) and rescaled to unit
// empirical variance (population convention, about its own mean). The DC
// bin takes the scale of the lowest nonzero frequency. beta == 0 draws white
// noise directly. With horizon == 1 the single value is a raw standard
// normal, since a one-point series has no variance to normalize.
std::vector<Eigen::MatrixXd> sample_colored(RandomStream& rng,
                                            const ColoredNoiseSpec& spec, int n);

// n category indices drawn by argmax(log p_a + Gumbel(0, 1)). `probs` need
// not be normalized but must be nonnegative with a positive sum.
std::vector<int> gumbel_max_sample(RandomStream& rng, std::span<const double> probs,
                                   int n);

}  // namespace wplan::noise
