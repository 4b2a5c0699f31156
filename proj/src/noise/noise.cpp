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

#include "wplan/noise/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wplan::noise {
namespace {

constexpr Eigen::Index kSeriesPerBlock = 512;

void normalize_unit_variance(Eigen::Ref<Eigen::VectorXd> series) {
  const double mean = series.mean();
  const double variance =
      (series.array() - mean).square().sum() / static_cast<double>(series.size());
  if (variance > 0.0) series /= std::sqrt(variance);
}

// Rows 2k and 2k+1 hold the weighted cosine and negated sine of bin k, so
// that coefficients (re_0, im_0, re_1, im_1, ...) times this basis is the
// inverse real DFT.
Eigen::MatrixXd inverse_real_dft_basis(int horizon) {
  const int bins = horizon / 2 + 1;
  Eigen::MatrixXd basis(2 * bins, horizon);
  for (int k = 0; k < bins; ++k) {
    const bool self_conjugate = k == 0 || (horizon % 2 == 0 && k == horizon / 2);
    const double weight = self_conjugate ? 1.0 : 2.0;
    for (int t = 0; t < horizon; ++t) {
      const long reduced = (static_cast<long>(k) * t) % horizon;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduced) /
                           static_cast<double>(horizon);
      basis(2 * k, t) = weight * std::cos(angle);
      basis(2 * k + 1, t) = -weight * std::sin(angle);
    }
  }
  return basis;
}

}  // namespace

std::vector<Eigen::MatrixXd> sample_gaussian(RandomStream& rng, int n,
                                             int horizon, int dims) {
  if (n < 0 || horizon < 1 || dims < 1) {
    throw ContractError("sample_gaussian: need n >= 0, horizon >= 1, dims >= 1");
  }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd sample(horizon, dims);
    for (int t = 0; t < horizon; ++t) {
      for (int j = 0; j < dims; ++j) sample(t, j) = rng.normal();
    }
    out.push_back(std::move(sample));
  }
  return out;
}

std::vector<Eigen::MatrixXd> sample_colored(RandomStream& rng,
                                            const ColoredNoiseSpec& spec, int n) {
  if (spec.horizon < 1) throw ContractError("sample_colored: horizon must be >= 1");
  if (spec.dims < 1) throw ContractError("sample_colored: dims must be >= 1");
  if (!std::isfinite(spec.beta) || spec.beta < 0.0) {
    throw ContractError("sample_colored: beta must be finite and >= 0");
  }
  if (n < 0) throw ContractError("sample_colored: n must be >= 0");

  const int horizon = spec.horizon;
  const int dims = spec.dims;
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(n),
                                   Eigen::MatrixXd(horizon, dims));
  if (horizon == 1) {
    for (auto& sample : out) {
      for (int j = 0; j < dims; ++j) sample(0, j) = rng.normal();
    }
    return out;
  }

  if (spec.beta == 0.0) {
    for (auto& sample : out) {
      for (int j = 0; j < dims; ++j) {
        for (int t = 0; t < horizon; ++t) sample(t, j) = rng.normal();
        normalize_unit_variance(sample.col(j));
      }
    }
    return out;
  }

  const int bins = horizon / 2 + 1;
  Eigen::VectorXd scale(bins);
  for (int k = 1; k < bins; ++k) {
    const double frequency = static_cast<double>(k) / horizon;
    scale[k] = std::pow(frequency, -spec.beta / 2.0);
  }
  scale[0] = scale[1];

  const Eigen::MatrixXd basis = inverse_real_dft_basis(horizon);
  const Eigen::Index total = static_cast<Eigen::Index>(n) * dims;
  for (Eigen::Index first = 0; first < total; first += kSeriesPerBlock) {
    const Eigen::Index count = std::min(kSeriesPerBlock, total - first);
    Eigen::MatrixXd coefficients(count, 2 * bins);
    for (Eigen::Index s = 0; s < count; ++s) {
      for (int k = 0; k < bins; ++k) {
        const bool real_only = k == 0 || (horizon % 2 == 0 && k == horizon / 2);
        coefficients(s, 2 * k) = scale[k] * rng.normal();
        coefficients(s, 2 * k + 1) = real_only ? 0.0 : scale[k] * rng.normal();
      }
    }
    const Eigen::MatrixXd series = coefficients * basis;
    for (Eigen::Index s = 0; s < count; ++s) {
      const Eigen::Index global = first + s;
      Eigen::MatrixXd& sample = out[static_cast<std::size_t>(global / dims)];
      const Eigen::Index j = global % dims;
      sample.col(j) = series.row(s).transpose();
      normalize_unit_variance(sample.col(j));
    }
  }
  return out;
}

std::vector<int> gumbel_max_sample(RandomStream& rng, std::span<const double> probs,
                                   int n) {
  if (probs.empty()) throw ContractError("gumbel_max_sample: empty probability vector");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ContractError("gumbel_max_sample: probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (!(total > 0.0)) {
    throw ContractError("gumbel_max_sample: probabilities sum to zero");
  }
  std::vector<double> log_probs(probs.size());
  for (std::size_t a = 0; a < probs.size(); ++a) {
    log_probs[a] = probs[a] > 0.0 ? std::log(probs[a] / total)
                                  : -std::numeric_limits<double>::infinity();
  }
  std::vector<int> out(static_cast<std::size_t>(std::max(n, 0)));
  for (int& draw : out) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < probs.size(); ++a) {
      const double gumbel = -std::log(-std::log(rng.uniform_open()));
      const double score = log_probs[a] + gumbel;
      if (probs[a] > 0.0 && (best < 0 || score > best_score)) {
        best = static_cast<int>(a);
        best_score = score;
      }
    }
    draw = best;
  }
  return out;
}

}  // namespace wplan::noise
