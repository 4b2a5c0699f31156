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

#include "wplan/worlds/registry.hpp"

namespace wplan::worlds {

std::vector<std::string> world_ids() {
  return {TwoRoomWorld::kId, PendulumWorld::kId, GridWorld::kId};
}

WorldPtr make_world(std::string_view id) {
  if (id == TwoRoomWorld::kId) return std::make_unique<TwoRoomWorld>();
  if (id == PendulumWorld::kId) return std::make_unique<PendulumWorld>();
  if (id == GridWorld::kId) return std::make_unique<GridWorld>();
  std::string valid;
  for (const auto& w : world_ids()) valid += (valid.empty() ? "" : ", ") + w;
  throw ConfigError("unknown world '" + std::string(id) + "' (expected one of: " + valid +
                    ")");
}

}  // namespace wplan::worlds
