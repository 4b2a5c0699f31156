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

#include "wplan/worlds/variation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "wplan/core/types.hpp"

namespace wplan::worlds {

std::string_view factor_kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::kBox:
      return "box";
    case FactorKind::kDiscrete:
      return "discrete";
    case FactorKind::kFixed:
      return "fixed";
  }
  return "unknown";
}

bool FactorSpec::contains(const FactorValue& value) const {
  if (value.size() != default_value.size()) return false;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const double v = value[i];
    if (!std::isfinite(v)) return false;
    switch (kind) {
      case FactorKind::kFixed:
        if (v != default_value[i]) return false;
        break;
      case FactorKind::kDiscrete:
        if (v != std::round(v)) return false;
        [[fallthrough]];
      case FactorKind::kBox:
        if (v < low[i] || v > high[i]) return false;
        break;
    }
  }
  return true;
}

FactorValue FactorSpec::sample(RandomStream& rng) const {
  FactorValue out(default_value.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (kind) {
      case FactorKind::kFixed:
        out[i] = default_value[i];
        break;
      case FactorKind::kBox:
        out[i] = rng.uniform(low[i], high[i]);
        break;
      case FactorKind::kDiscrete: {
        const auto lo = static_cast<long long>(low[i]);
        const auto span = static_cast<std::uint64_t>(static_cast<long long>(high[i]) - lo + 1);
        out[i] = static_cast<double>(lo + static_cast<long long>(rng.uniform_int(span)));
        break;
      }
    }
  }
  return out;
}

VariationSpace::VariationSpace(std::vector<FactorSpec> factors,
                               std::vector<VariationConstraint> constraints,
                               int max_retries)
    : factors_(std::move(factors)),
      constraints_(std::move(constraints)),
      max_retries_(max_retries) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (!seen.insert(f.key).second) {
      throw ContractError("duplicate factor key " + f.key);
    }
    if (f.kind != FactorKind::kFixed &&
        (f.low.size() != f.size() || f.high.size() != f.size())) {
      throw ContractError("factor " + f.key + " bounds do not match its size");
    }
    if (!f.contains(f.default_value)) {
      throw ContractError("factor " + f.key + " default lies outside its bounds");
    }
  }
  for (const auto& c : constraints_) {
    for (const auto& key : c.keys) {
      if (!seen.contains(key)) {
        throw ContractError("constraint " + c.name + " names unknown factor " + key);
      }
    }
  }
  if (max_retries_ < 1) throw ContractError("max_retries must be >= 1");
}

bool VariationSpace::has(std::string_view key) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const FactorSpec& f) { return f.key == key; });
}

const FactorSpec& VariationSpace::factor(std::string_view key) const {
  for (const auto& f : factors_) {
    if (f.key == key) return f;
  }
  throw ContractError("unknown factor key " + std::string(key));
}

FactorValues VariationSpace::defaults() const {
  FactorValues out;
  for (const auto& f : factors_) out[f.key] = f.default_value;
  return out;
}

std::vector<std::string> VariationSpace::resolve(std::string_view selector) const {
  std::vector<std::string> out;
  if (selector == ResetOptions::kAll) {
    for (const auto& f : factors_) {
      if (f.kind != FactorKind::kFixed) out.push_back(f.key);
    }
    return out;
  }
  for (const auto& f : factors_) {
    const bool exact = f.key == selector;
    const bool prefix = f.key.size() > selector.size() &&
                        f.key.compare(0, selector.size(), selector) == 0 &&
                        f.key[selector.size()] == '.';
    if (exact || prefix) {
      if (f.kind == FactorKind::kFixed) {
        if (exact) throw ContractError("factor " + f.key + " is fixed and cannot vary");
        continue;
      }
      out.push_back(f.key);
    }
  }
  if (out.empty()) {
    throw ContractError("unknown factor key " + std::string(selector));
  }
  return out;
}

FactorValues sample_variation(const VariationSpace& space, RandomStream& rng,
                              const ResetOptions& options) {
  for (const auto& [key, value] : options.variation_values) {
    const FactorSpec& spec = space.factor(key);
    if (!spec.contains(value)) {
      throw ContractError("value " + format_factor_value(value) + " for factor " + key +
                          " is outside its bounds");
    }
  }
  std::set<std::string> requested;
  for (const auto& selector : options.variation) {
    for (auto& key : space.resolve(selector)) requested.insert(std::move(key));
  }

  FactorValues values = space.defaults();
  for (const auto& [key, value] : options.variation_values) values[key] = value;

  // Sampled keys in declaration order, so the draw order is stable.
  std::vector<const FactorSpec*> sampled;
  for (const auto& f : space.factors()) {
    if (requested.contains(f.key) && !options.variation_values.contains(f.key)) {
      sampled.push_back(&f);
    }
  }
  std::set<std::string> sampled_keys;
  for (const auto* f : sampled) sampled_keys.insert(f->key);

  std::vector<const VariationConstraint*> active;
  for (const auto& c : space.constraints()) {
    if (std::any_of(c.keys.begin(), c.keys.end(),
                    [&](const std::string& k) { return sampled_keys.contains(k); })) {
      active.push_back(&c);
    }
  }

  for (int attempt = 0; attempt < space.max_retries(); ++attempt) {
    for (const auto* f : sampled) values[f->key] = f->sample(rng);
    const VariationConstraint* failed = nullptr;
    for (const auto* c : active) {
      if (!c->holds(values)) {
        failed = c;
        break;
      }
    }
    if (failed == nullptr) return values;
    if (attempt + 1 == space.max_retries()) {
      throw VariationError("rejection sampling exhausted " +
                           std::to_string(space.max_retries()) +
                           " retries for constraint '" + failed->name + "'");
    }
  }
  return values;
}

std::string format_factor_value(const FactorValue& value) {
  // Shortest text that reads back to the same double.
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (i > 0) out += ',';
    const auto res = std::to_chars(buf, buf + sizeof(buf), value[i]);
    out.append(buf, res.ptr);
  }
  return out;
}

}  // namespace wplan::worlds
