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

#include "wplan/data/trajectory_file.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wplan::data {

static_assert(std::endian::native == std::endian::little,
              "the trajectory format is written with native little-endian stores");

namespace {

constexpr char kMagic[4] = {'S', 'W', 'M', 'T'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kCrcChunk = 1 << 20;

std::uint32_t crc_update(std::uint32_t crc, const std::uint8_t* data, std::size_t size) {
  while (size > 0) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = static_cast<std::uint32_t>(crc32(crc, data, n));
    data += n;
    size -= n;
  }
  return crc;
}

class ByteSink {
 public:
  template <typename T>
  void put(T value) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  void put_string(const std::string& s) {
    put(static_cast<std::uint32_t>(s.size()));
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Sequential reads of the header through pread.
class HeaderCursor {
 public:
  HeaderCursor(int fd, std::uint64_t file_size, const std::string& path)
      : fd_(fd), size_(file_size), path_(path) {}

  void read(void* out, std::size_t n) {
    if (pos_ + n > size_) fail("truncated header");
    const ssize_t got = ::pread(fd_, out, n, static_cast<off_t>(pos_));
    if (got != static_cast<ssize_t>(n)) fail("short read in header");
    pos_ += n;
  }
  template <typename T>
  T get() {
    T value;
    read(&value, sizeof(T));
    return value;
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    if (n > size_ - pos_) fail("string length beyond end of file");
    std::string s(n, '\0');
    read(s.data(), n);
    return s;
  }
  std::uint64_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(path_ + ": " + what);
  }

 private:
  int fd_;
  std::uint64_t size_;
  std::uint64_t pos_ = 0;
  const std::string& path_;
};

void encode_values(const std::vector<double>& values, DType dtype, std::uint8_t* out,
                   const std::string& column) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    switch (dtype) {
      case DType::kF64:
        std::memcpy(out + i * 8, &v, 8);
        break;
      case DType::kF32: {
        const auto f = static_cast<float>(v);
        std::memcpy(out + i * 4, &f, 4);
        break;
      }
      case DType::kI32: {
        if (!(v >= std::numeric_limits<std::int32_t>::min() &&
              v <= std::numeric_limits<std::int32_t>::max()) ||
            v != std::floor(v)) {
          throw ContractError("column " + column + ": value is not an int32");
        }
        const auto k = static_cast<std::int32_t>(v);
        std::memcpy(out + i * 4, &k, 4);
        break;
      }
      case DType::kU8:
        if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v)) {
          throw ContractError("column " + column + ": value is not a u8");
        }
        out[i] = static_cast<std::uint8_t>(v);
        break;
    }
  }
}

std::vector<double> decode_values(const std::vector<std::uint8_t>& bytes, DType dtype) {
  const std::size_t n = bytes.size() / dtype_size(dtype);
  std::vector<double> out(n);
  const std::uint8_t* p = bytes.data();
  for (std::size_t i = 0; i < n; ++i) {
    switch (dtype) {
      case DType::kF64:
        std::memcpy(&out[i], p + i * 8, 8);
        break;
      case DType::kF32: {
        float f;
        std::memcpy(&f, p + i * 4, 4);
        out[i] = f;
        break;
      }
      case DType::kI32: {
        std::int32_t k;
        std::memcpy(&k, p + i * 4, 4);
        out[i] = k;
        break;
      }
      case DType::kU8:
        out[i] = p[i];
        break;
    }
  }
  return out;
}

}  // namespace

std::size_t dtype_size(DType dtype) {
  switch (dtype) {
    case DType::kF32:
    case DType::kI32:
      return 4;
    case DType::kU8:
      return 1;
    case DType::kF64:
      return 8;
  }
  throw ContractError("unknown dtype");
}

std::string_view dtype_name(DType dtype) {
  switch (dtype) {
    case DType::kF32:
      return "f32";
    case DType::kI32:
      return "i32";
    case DType::kU8:
      return "u8";
    case DType::kF64:
      return "f64";
  }
  return "?";
}

std::size_t ColumnSpec::row_elements() const {
  std::size_t n = 1;
  for (const auto d : shape) n *= d;
  return n;
}

void TrajectorySchema::validate() const {
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw ContractError("schema: empty column name");
    if (!seen.insert(c.name).second) {
      throw ContractError("schema: duplicate column '" + c.name + "'");
    }
    if (c.shape.size() > 255) throw ContractError("schema: rank too large for " + c.name);
    if (c.row_elements() == 0) throw ContractError("schema: zero-sized column " + c.name);
    dtype_size(c.dtype);
  }
}

std::size_t TrajectorySchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw ContractError("no column named '" + std::string(name) + "'");
}

bool TrajectorySchema::has(std::string_view name) const {
  return std::any_of(columns.begin(), columns.end(),
                     [&](const ColumnSpec& c) { return c.name == name; });
}

TrajectoryWriter::TrajectoryWriter(std::string path, TrajectorySchema schema,
                                   Attributes attributes)
    : path_(std::move(path)), schema_(std::move(schema)), attributes_(std::move(attributes)) {
  schema_.validate();
}

void TrajectoryWriter::add_episode(const Episode& episode) {
  if (finished_) throw ContractError("writer already finished");
  if (episode.steps < 1) throw ContractError("episodes need at least one step");
  std::vector<std::vector<std::uint8_t>> blocks;
  for (const auto& col : schema_.columns) {
    const auto it = episode.columns.find(col.name);
    if (it == episode.columns.end()) {
      throw ContractError("episode is missing column '" + col.name + "'");
    }
    const std::uint64_t rows = col.per_episode ? 1 : episode.steps;
    if (it->second.size() != rows * col.row_elements()) {
      throw ContractError("column '" + col.name + "' has " +
                          std::to_string(it->second.size()) + " values, expected " +
                          std::to_string(rows * col.row_elements()));
    }
    std::vector<std::uint8_t> block(it->second.size() * dtype_size(col.dtype));
    encode_values(it->second, col.dtype, block.data(), col.name);
    blocks.push_back(std::move(block));
  }
  for (const auto& [name, values] : episode.columns) {
    if (!schema_.has(name)) throw ContractError("episode has unknown column '" + name + "'");
  }
  steps_.push_back(episode.steps);
  blocks_.push_back(std::move(blocks));
}

void TrajectoryWriter::finish() {
  if (finished_) return;
  ByteSink header;
  for (const char c : kMagic) header.put(c);
  header.put(kVersion);
  header.put(std::uint16_t{0});
  header.put(static_cast<std::uint32_t>(attributes_.size()));
  for (const auto& [key, value] : attributes_) {
    header.put_string(key);
    header.put_string(value);
  }
  header.put(static_cast<std::uint32_t>(schema_.columns.size()));
  for (const auto& c : schema_.columns) {
    header.put_string(c.name);
    header.put(static_cast<std::uint8_t>(c.dtype));
    header.put(static_cast<std::uint8_t>(c.per_episode ? 1 : 0));
    header.put(static_cast<std::uint8_t>(c.shape.size()));
    header.put(std::uint8_t{0});
    for (const auto d : c.shape) header.put(d);
  }
  header.put(static_cast<std::uint64_t>(steps_.size()));

  const std::size_t index_bytes = steps_.size() * 8 * (1 + schema_.columns.size());
  std::uint64_t offset = header.bytes().size() + index_bytes;
  for (std::size_t e = 0; e < steps_.size(); ++e) {
    header.put(steps_[e]);
    for (const auto& block : blocks_[e]) {
      header.put(offset);
      offset += block.size();
    }
  }

  std::ofstream out(path_, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path_ + " for writing");
  out.write(reinterpret_cast<const char*>(header.bytes().data()),
            static_cast<std::streamsize>(header.bytes().size()));
  std::uint32_t crc = crc_update(static_cast<std::uint32_t>(crc32(0L, Z_NULL, 0)),
                                 header.bytes().data(), header.bytes().size());
  for (const auto& episode : blocks_) {
    for (const auto& block : episode) {
      crc = crc_update(crc, block.data(), block.size());
      out.write(reinterpret_cast<const char*>(block.data()),
                static_cast<std::streamsize>(block.size()));
    }
  }
  out.write(reinterpret_cast<const char*>(&crc), sizeof(crc));
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path_);
  finished_ = true;
  blocks_.clear();
}

TrajectoryReader::TrajectoryReader(const std::string& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0) {
    throw std::runtime_error("cannot open " + path + ": " + std::strerror(errno));
  }
  try {
    struct stat st {};
    if (::fstat(fd_, &st) != 0) throw std::runtime_error("cannot stat " + path);
    file_size_ = static_cast<std::uint64_t>(st.st_size);

    HeaderCursor in(fd_, file_size_, path_);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) in.fail("bad magic, not a trajectory file");
    version_ = in.get<std::uint16_t>();
    if (version_ != kVersion) in.fail("unsupported version " + std::to_string(version_));
    in.get<std::uint16_t>();
    const auto num_attributes = in.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < num_attributes; ++i) {
      std::string key = in.get_string();
      attributes_[key] = in.get_string();
    }
    const auto num_columns = in.get<std::uint32_t>();
    for (std::uint32_t i = 0; i < num_columns; ++i) {
      ColumnSpec c;
      c.name = in.get_string();
      const auto dtype = in.get<std::uint8_t>();
      if (dtype > static_cast<std::uint8_t>(DType::kF64)) in.fail("unknown dtype");
      c.dtype = static_cast<DType>(dtype);
      c.per_episode = in.get<std::uint8_t>() != 0;
      const auto rank = in.get<std::uint8_t>();
      in.get<std::uint8_t>();
      for (std::uint8_t r = 0; r < rank; ++r) c.shape.push_back(in.get<std::uint32_t>());
      schema_.columns.push_back(std::move(c));
    }
    try {
      schema_.validate();
    } catch (const ContractError& e) {
      in.fail(e.what());
    }
    const auto num_episodes = in.get<std::uint64_t>();
    if (num_episodes > file_size_ / 8) in.fail("episode count exceeds file size");
    steps_.resize(num_episodes);
    offsets_.assign(num_episodes, std::vector<std::uint64_t>(num_columns));
    for (std::uint64_t e = 0; e < num_episodes; ++e) {
      steps_[e] = in.get<std::uint64_t>();
      for (auto& o : offsets_[e]) o = in.get<std::uint64_t>();
    }

    const std::uint64_t payload_begin = in.pos();
    if (file_size_ < payload_begin + 4) in.fail("missing checksum footer");
    const std::uint64_t payload_end = file_size_ - 4;
    for (std::uint64_t e = 0; e < num_episodes; ++e) {
      if (steps_[e] < 1) in.fail("episode " + std::to_string(e) + " has zero steps");
      for (std::size_t c = 0; c < num_columns; ++c) {
        const ColumnSpec& col = schema_.columns[c];
        const std::uint64_t rows = col.per_episode ? 1 : steps_[e];
        const std::uint64_t begin = offsets_[e][c];
        if (begin < payload_begin || begin > payload_end ||
            rows > (payload_end - begin) / col.row_bytes()) {
          in.fail("episode " + std::to_string(e) + " column " + col.name +
                  " lies outside the payload");
        }
      }
    }

    std::uint32_t crc = static_cast<std::uint32_t>(crc32(0L, Z_NULL, 0));
    std::vector<std::uint8_t> chunk(kCrcChunk);
    for (std::uint64_t pos = 0; pos < payload_end;) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kCrcChunk, payload_end - pos));
      if (::pread(fd_, chunk.data(), n, static_cast<off_t>(pos)) != static_cast<ssize_t>(n)) {
        in.fail("short read while verifying the checksum");
      }
      crc = crc_update(crc, chunk.data(), n);
      pos += n;
    }
    std::uint32_t stored = 0;
    if (::pread(fd_, &stored, 4, static_cast<off_t>(payload_end)) != 4) {
      in.fail("cannot read checksum");
    }
    if (stored != crc) in.fail("checksum mismatch, file is corrupt");
  } catch (...) {
    ::close(fd_);
    fd_ = -1;
    throw;
  }
}

TrajectoryReader::~TrajectoryReader() {
  if (fd_ >= 0) ::close(fd_);
}

std::string TrajectoryReader::attribute(std::string_view key) const {
  const auto it = attributes_.find(std::string(key));
  if (it == attributes_.end()) {
    throw FormatError(path_ + ": missing attribute '" + std::string(key) + "'");
  }
  return it->second;
}

std::uint64_t TrajectoryReader::episode_length(std::uint64_t episode) const {
  if (episode >= steps_.size()) {
    throw RangeError("episode " + std::to_string(episode) + " out of range (file has " +
                     std::to_string(steps_.size()) + ")");
  }
  return steps_[episode];
}

void TrajectoryReader::check_window(const WindowRequest& req) const {
  const std::uint64_t len = episode_length(req.episode);
  if (req.length < 1 || req.start >= len || req.length > len - req.start) {
    throw RangeError("window [" + std::to_string(req.start) + ", " +
                     std::to_string(req.start + req.length) + ") out of range for episode " +
                     std::to_string(req.episode) + " of length " + std::to_string(len));
  }
}

std::vector<std::uint8_t> TrajectoryReader::read_raw(const WindowRequest& req,
                                                     std::string_view column) const {
  const std::size_t c = schema_.index_of(column);
  const ColumnSpec& col = schema_.columns[c];
  std::uint64_t first = 0;
  std::uint64_t rows = 1;
  if (col.per_episode) {
    episode_length(req.episode);
  } else {
    check_window(req);
    first = req.start;
    rows = req.length;
  }
  std::vector<std::uint8_t> out(rows * col.row_bytes());
  const std::uint64_t pos = offsets_[req.episode][c] + first * col.row_bytes();
  std::size_t done = 0;
  while (done < out.size()) {
    const ssize_t got = ::pread(fd_, out.data() + done, out.size() - done,
                                static_cast<off_t>(pos + done));
    if (got <= 0) throw FormatError(path_ + ": short read in column " + col.name);
    done += static_cast<std::size_t>(got);
  }
  return out;
}

std::vector<double> TrajectoryReader::read_column(const WindowRequest& req,
                                                  std::string_view column) const {
  const ColumnSpec& col = schema_.columns[schema_.index_of(column)];
  return decode_values(read_raw(req, column), col.dtype);
}

std::map<std::string, std::vector<double>> TrajectoryReader::read_window(
    const WindowRequest& req, const std::vector<std::string>& columns) const {
  std::map<std::string, std::vector<double>> out;
  if (columns.empty()) {
    for (const auto& c : schema_.columns) out[c.name] = read_column(req, c.name);
  } else {
    for (const auto& name : columns) out[name] = read_column(req, name);
  }
  return out;
}

Episode TrajectoryReader::read_episode(std::uint64_t episode) const {
  Episode ep;
  ep.steps = episode_length(episode);
  ep.columns = read_window({episode, 0, ep.steps});
  return ep;
}

FileSummary inspect(const std::string& path) {
  const TrajectoryReader reader(path);
  FileSummary s;
  s.episodes = reader.num_episodes();
  s.total_bytes = reader.file_size();
  s.columns = reader.schema().columns;
  s.attributes = reader.attributes();
  if (s.episodes > 0) {
    s.min_length = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t e = 0; e < s.episodes; ++e) {
      const std::uint64_t len = reader.episode_length(e);
      s.min_length = std::min(s.min_length, len);
      s.max_length = std::max(s.max_length, len);
      s.total_steps += len;
    }
    s.mean_length = static_cast<double>(s.total_steps) / static_cast<double>(s.episodes);
  }
  return s;
}

std::string format_summary(const FileSummary& s) {
  std::ostringstream out;
  out.precision(6);
  out << "episodes: " << s.episodes << "\n";
  out << "length: min " << s.min_length << ", mean " << s.mean_length << ", max "
      << s.max_length << "\n";
  out << "total steps: " << s.total_steps << "\n";
  out << "total bytes: " << s.total_bytes << "\n";
  for (const auto& [key, value] : s.attributes) out << "attribute " << key << ": " << value << "\n";
  out << "columns:\n";
  for (const auto& c : s.columns) {
    out << "  " << c.name << " " << dtype_name(c.dtype) << " [";
    for (std::size_t i = 0; i < c.shape.size(); ++i) out << (i ? "," : "") << c.shape[i];
    out << "]" << (c.per_episode ? " per-episode" : "") << "\n";
  }
  return out.str();
}

}  // namespace wplan::data
