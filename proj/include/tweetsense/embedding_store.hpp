// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetsense {

enum class EmbeddingFormat { Word2VecBinary, Word2VecText };

std::string_view to_string(EmbeddingFormat format) noexcept;

struct LoadOptions {
  /// Stop after this many records; the rest of the file is not read.
  std::optional<std::size_t> max_vocab;
  /// Text format only: the file has no "vocab_size dim" line and the
  /// dimension is taken from the first record.
  bool no_header = false;
  /// Retain the on-disk components next to the normalized copy. Needed for
  /// write-back; doubles the memory footprint.
  bool keep_raw = true;
};

/// Immutable token -> unit vector table. Vectors are normalized once at
/// construction so cosine similarity reduces to a dot product.
class EmbeddingTable {
 public:
  /// Builds a table from row-major `components` (tokens.size() * dim floats).
  /// Applies the same validation as the file loaders: zero or non-finite
  /// vectors throw, duplicate tokens keep the first row and add a warning.
  static EmbeddingTable from_rows(std::vector<std::string> tokens,
                                  std::span<const float> components, std::size_t dim,
                                  EmbeddingFormat format = EmbeddingFormat::Word2VecBinary,
                                  bool keep_raw = true);

  std::size_t size() const noexcept { return vocab_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  EmbeddingFormat source_format() const noexcept { return format_; }
  const std::vector<std::string>& vocab() const noexcept { return vocab_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Unit vector for `token`, or nullopt when out of vocabulary.
  std::optional<std::span<const float>> lookup(std::string_view token) const;
  std::optional<std::size_t> index_of(std::string_view token) const;

  std::span<const float> unit_vector(std::size_t row) const;
  /// Euclidean norm of the vector as read from the source.
  double magnitude(std::size_t row) const { return magnitudes_.at(row); }
  bool has_raw() const noexcept { return !raw_.empty() || vocab_.empty(); }
  /// Source components, bit-identical to the file. Requires keep_raw.
  std::span<const float> raw_vector(std::size_t row) const;

 private:
  friend class EmbeddingTableBuilder;

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::size_t dim_ = 0;
  EmbeddingFormat format_ = EmbeddingFormat::Word2VecBinary;
  std::vector<std::string> vocab_;
  std::vector<float> unit_;
  std::vector<float> raw_;
  std::vector<double> magnitudes_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
  std::vector<std::string> warnings_;
};

EmbeddingTable load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                               const LoadOptions& options = {});

/// Writes the table's source components (or magnitude * unit vector when raw
/// components were not kept) in the given word2vec layout.
void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                      EmbeddingFormat format);

/// Dot product of two unit vectors accumulated in double, clamped to [-1, 1].
double cosine(std::span<const float> u, std::span<const float> v);

}  // namespace tweetsense
