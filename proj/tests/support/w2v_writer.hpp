// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

// Test-only word2vec writer. Independent of the library's write path so
// loader round-trips are checked against a second implementation.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace testsupport {

struct Record {
  std::string token;
  std::vector<float> components;
};

inline void append_float_le(std::string& out, float value) {
  unsigned char bytes[4];
  std::memcpy(bytes, &value, 4);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + 4);
  out.append(reinterpret_cast<const char*>(bytes), 4);
}

/// Header "count dim\n", then per record: token, ' ', dim LE float32, '\n'.
inline std::string w2v_binary_bytes(const std::vector<Record>& records, std::size_t dim,
                                    std::optional<std::size_t> declared = std::nullopt,
                                    bool trailing_newline = true) {
  std::string out = std::to_string(declared.value_or(records.size())) + " " + std::to_string(dim) + "\n";
  for (const auto& r : records) {
    out += r.token;
    out += ' ';
    for (float v : r.components) append_float_le(out, v);
    if (trailing_newline) out += '\n';
  }
  return out;
}

inline std::string w2v_text_bytes(const std::vector<Record>& records, std::size_t dim,
                                  bool header = true) {
  std::ostringstream out;
  out.precision(9);
  if (header) out << records.size() << ' ' << dim << '\n';
  for (const auto& r : records) {
    out << r.token;
    for (float v : r.components) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// `count` records with unique lowercase tokens and non-zero gaussian vectors.
inline std::vector<Record> random_records(std::size_t count, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> normal(0.0f, 1.0f);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<int> length(2, 10);
  std::set<std::string> used;
  std::vector<Record> records;
  while (records.size() < count) {
    std::string token;
    for (int i = length(rng); i > 0; --i) token.push_back(static_cast<char>(letter(rng)));
    if (!used.insert(token).second) continue;
    Record r{token, std::vector<float>(dim)};
    for (auto& v : r.components) v = normal(rng);
    records.push_back(std::move(r));
  }
  return records;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tweetsense-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace testsupport
