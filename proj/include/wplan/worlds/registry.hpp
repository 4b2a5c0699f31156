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

#include <string>
#include <string_view>
#include <vector>

#include "wplan/worlds/gridworld.hpp"
#include "wplan/worlds/pendulum.hpp"
#include "wplan/worlds/two_room.hpp"
#include "wplan/worlds/world.hpp"

namespace wplan::worlds {

// Registered world ids, in a fixed order.
std::vector<std::string> world_ids();
// Throws ConfigError for unknown ids.
WorldPtr make_world(std::string_view id);

}  // namespace wplan::worlds
