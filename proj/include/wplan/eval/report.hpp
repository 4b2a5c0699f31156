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
#include <vector>

#include "wplan/eval/evaluate.hpp"

namespace wplan::eval {

// One JSON object per line, fixed key order.
std::string to_json_line(const EvalReport& report);
EvalReport parse_json_line(const std::string& line);
std::string to_jsonl(const std::vector<EvalReport>& reports);
std::vector<EvalReport> parse_jsonl(const std::string& text);

// Columns: factor,n,success_rate,mean_time_to_goal,mean_latency_s. Missing
// values are empty cells. `label_column` renames the first column.
std::string to_csv(const std::vector<EvalReport>& reports,
                   const std::string& label_column = "factor");

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace wplan::eval
