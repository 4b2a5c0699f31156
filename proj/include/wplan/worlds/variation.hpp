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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wplan/core/rng.hpp"

namespace wplan::worlds {

enum class FactorKind { kBox, kDiscrete, kFixed };

std::string_view factor_kind_name(FactorKind kind);

using FactorValue = std::vector<double>;
using FactorValues = std::map<std::string, FactorValue>;

/// One controllable factor of variation, addressed by a dot-path key such as
/// "physics.drag". Box factors sample uniformly per component, discrete
/// factors sample integers uniformly in [low, high], fixed factors only ever
/// take their default.
struct FactorSpec {
  std::string key;
  FactorKind kind = FactorKind::kBox;
  FactorValue low;
  FactorValue high;
  FactorValue default_value;
  // Task factors (start, goal) are drawn at every reset by the world's own
  // randomizer unless pinned; all other factors keep their default unless
  // requested.
  bool task_factor = false;
  std::string description;

  std::size_t size() const { return default_value.size(); }
  bool contains(const FactorValue& value) const;
  FactorValue sample(RandomStream& rng) const;
};

struct VariationConstraint {
  std::string name;
  // Only evaluated when at least one of these keys was randomly sampled.
  std::vector<std::string> keys;
  std::function<bool(const FactorValues&)> holds;
};

class VariationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VariationSpace {
 public:
  static constexpr int kDefaultMaxRetries = 100;

  VariationSpace() = default;
  VariationSpace(std::vector<FactorSpec> factors,
                 std::vector<VariationConstraint> constraints = {},
                 int max_retries = kDefaultMaxRetries);

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const std::vector<VariationConstraint>& constraints() const { return constraints_; }
  int max_retries() const { return max_retries_; }

  bool has(std::string_view key) const;
  const FactorSpec& factor(std::string_view key) const;
  FactorValues defaults() const;

  // Expands a selector into factor keys: an exact key, a dot-prefix naming
  // a subtree ("physics" -> physics.*), or "all" (every non-fixed factor).
  // Throws ContractError for selectors matching nothing.
  std::vector<std::string> resolve(std::string_view selector) const;

 private:
  std::vector<FactorSpec> factors_;
  std::vector<VariationConstraint> constraints_;
  int max_retries_ = kDefaultMaxRetries;
};

struct ResetOptions {
  static constexpr std::string_view kAll = "all";

  // Selectors for factors to sample at reset.
  std::vector<std::string> variation;
  // Pinned values; these take precedence over sampling.
  std::map<std::string, FactorValue> variation_values;
};

// Pinned values first, requested keys sampled, everything else at its
// default. Constraints touching sampled keys are enforced by resampling
// those keys, up to the space's retry budget.
FactorValues sample_variation(const VariationSpace& space, RandomStream& rng,
                              const ResetOptions& options);

std::string format_factor_value(const FactorValue& value);

}  // namespace wplan::worlds
