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

#include "wplan/eval/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

namespace wplan::eval {
namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> read_optional(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string to_json_line(const EvalReport& r) {
  Json j;
  j["protocol"] = r.protocol;
  j["world"] = r.world;
  j["policy"] = r.policy;
  j["factor"] = r.factor;
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["variation"] = r.variation;
  j["dataset"] = r.dataset;
  j["goal_offset"] = r.goal_offset;
  j["n"] = r.n();
  j["success_rate"] = r.success_rate;
  j["mean_time_to_goal"] = optional_number(r.mean_time_to_goal);
  j["mean_latency_s"] = optional_number(r.mean_latency_s);
  j["p95_latency_s"] = optional_number(r.p95_latency_s);
  Json flags = Json::array();
  for (const bool s : r.successes) flags.push_back(s ? 1 : 0);
  j["successes"] = std::move(flags);
  j["time_to_goal"] = r.time_to_goal;
  j["episode_seeds"] = r.episode_seeds;
  Json pairs = Json::array();
  for (const auto& [ep, start] : r.pairs) pairs.push_back({ep, start});
  j["pairs"] = std::move(pairs);
  return j.dump();
}

EvalReport parse_json_line(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report line is not valid JSON: ") + e.what());
  }
  try {
    EvalReport r;
    r.protocol = j.at("protocol").get<std::string>();
    r.world = j.at("world").get<std::string>();
    r.policy = j.at("policy").get<std::string>();
    r.factor = j.at("factor").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = j.at("budget").get<int>();
    r.variation = j.at("variation").get<std::vector<std::string>>();
    r.dataset = j.at("dataset").get<std::string>();
    r.goal_offset = j.at("goal_offset").get<int>();
    r.success_rate = j.at("success_rate").get<double>();
    r.mean_time_to_goal = read_optional(j, "mean_time_to_goal");
    r.mean_latency_s = read_optional(j, "mean_latency_s");
    r.p95_latency_s = read_optional(j, "p95_latency_s");
    for (const auto& f : j.at("successes")) r.successes.push_back(f.get<int>() != 0);
    r.time_to_goal = j.at("time_to_goal").get<std::vector<int>>();
    r.episode_seeds = j.at("episode_seeds").get<std::vector<std::uint64_t>>();
    for (const auto& p : j.at("pairs")) {
      r.pairs.emplace_back(p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>());
    }
    if (j.at("n").get<std::uint64_t>() != r.successes.size()) {
      throw FormatError("report n does not match its success flags");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

std::string to_jsonl(const std::vector<EvalReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += to_json_line(r) + "\n";
  return out;
}

std::vector<EvalReport> parse_jsonl(const std::string& text) {
  std::vector<EvalReport> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_json_line(line));
  }
  return out;
}

std::string to_csv(const std::vector<EvalReport>& reports, const std::string& label_column) {
  std::string out = label_column + ",n,success_rate,mean_time_to_goal,mean_latency_s\n";
  for (const auto& r : reports) {
    out += r.factor + "," + std::to_string(r.n()) + "," + format_double(r.success_rate) + ",";
    if (r.mean_time_to_goal) out += format_double(*r.mean_time_to_goal);
    out += ",";
    if (r.mean_latency_s) out += format_double(*r.mean_latency_s);
    out += "\n";
  }
  return out;
}

}  // namespace wplan::eval
