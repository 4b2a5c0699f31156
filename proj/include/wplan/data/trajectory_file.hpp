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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wplan/core/types.hpp"

namespace wplan::data {

// File layout, all integers little-endian:
//
//   "SWMT"                      4 bytes magic
//   u16 version (= 1), u16 reserved (= 0)
//   u32 attribute count, then per attribute:
//     u32 key length, key bytes, u32 value length, value bytes
//   u32 column count, then per column:
//     u32 name length, name bytes, u8 dtype, u8 per_episode, u8 rank,
//     u8 reserved, u32 dims[rank]
//   u64 episode count
//   index, per episode: u64 steps, u64 offset[column count]
//   payload: per episode, per column, one contiguous block of
//            rows * row_bytes (rows = steps, or 1 for per-episode columns)
//   u32 CRC-32 of every preceding byte (header, index and payload)
//
// Offsets are absolute file positions.

enum class DType : std::uint8_t { kF32 = 0, kI32 = 1, kU8 = 2, kF64 = 3 };

std::size_t dtype_size(DType dtype);
std::string_view dtype_name(DType dtype);

struct ColumnSpec {
  std::string name;
  DType dtype = DType::kF64;
  // One row per episode instead of one per step.
  bool per_episode = false;
  std::vector<std::uint32_t> shape;  // per-row shape; empty for scalars

  std::size_t row_elements() const;
  std::size_t row_bytes() const { return row_elements() * dtype_size(dtype); }
};

struct TrajectorySchema {
  std::vector<ColumnSpec> columns;

  // Names unique and non-empty, rank < 256.
  void validate() const;
  // Throws ContractError for unknown names.
  std::size_t index_of(std::string_view name) const;
  bool has(std::string_view name) const;
};

// Column values of one episode, row-major within each column. Values are
// converted to the column's dtype on write.
struct Episode {
  std::uint64_t steps = 0;
  std::map<std::string, std::vector<double>> columns;
};

using Attributes = std::map<std::string, std::string>;

/// Buffers episodes in memory and writes the file in one go on finish().
class TrajectoryWriter {
 public:
  TrajectoryWriter(std::string path, TrajectorySchema schema, Attributes attributes = {});

  void add_episode(const Episode& episode);
  // Writes the file. Throws std::runtime_error on I/O failure.
  void finish();

  std::size_t num_episodes() const { return steps_.size(); }

 private:
  std::string path_;
  TrajectorySchema schema_;
  Attributes attributes_;
  std::vector<std::uint64_t> steps_;
  // blocks_[episode][column]
  std::vector<std::vector<std::vector<std::uint8_t>>> blocks_;
  bool finished_ = false;
};

struct WindowRequest {
  std::uint64_t episode = 0;
  std::uint64_t start = 0;
  std::uint64_t length = 1;
};

/// Random-access reader. The checksum is verified on open. Window reads
/// are one positioned read per column, so they cost the same wherever the
/// window starts, and a reader may serve concurrent requests.
class TrajectoryReader {
 public:
  explicit TrajectoryReader(const std::string& path);
  ~TrajectoryReader();
  TrajectoryReader(const TrajectoryReader&) = delete;
  TrajectoryReader& operator=(const TrajectoryReader&) = delete;

  const TrajectorySchema& schema() const { return schema_; }
  const Attributes& attributes() const { return attributes_; }
  std::string attribute(std::string_view key) const;
  std::uint64_t num_episodes() const { return steps_.size(); }
  std::uint64_t episode_length(std::uint64_t episode) const;
  std::uint64_t file_size() const { return file_size_; }
  std::uint16_t version() const { return version_; }

  // Raw little-endian bytes of `length` rows of one column.
  std::vector<std::uint8_t> read_raw(const WindowRequest& req, std::string_view column) const;
  // Values converted to double. Per-episode columns ignore start/length and
  // return their single row.
  std::vector<double> read_column(const WindowRequest& req, std::string_view column) const;
  // Every requested column (all when `columns` is empty).
  std::map<std::string, std::vector<double>> read_window(
      const WindowRequest& req, const std::vector<std::string>& columns = {}) const;
  Episode read_episode(std::uint64_t episode) const;

 private:
  void check_window(const WindowRequest& req) const;

  int fd_ = -1;
  std::string path_;
  std::uint16_t version_ = 0;
  std::uint64_t file_size_ = 0;
  TrajectorySchema schema_;
  Attributes attributes_;
  std::vector<std::uint64_t> steps_;
  std::vector<std::vector<std::uint64_t>> offsets_;
};

struct FileSummary {
  std::uint64_t episodes = 0;
  std::uint64_t min_length = 0;
  double mean_length = 0.0;
  std::uint64_t max_length = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t total_bytes = 0;
  std::vector<ColumnSpec> columns;
  Attributes attributes;
};

FileSummary inspect(const std::string& path);
std::string format_summary(const FileSummary& summary);

}  // namespace wplan::data
