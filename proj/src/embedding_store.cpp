// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/embedding_store.hpp"

#include <unicode/ustring.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "tweetsense/error.hpp"

namespace tweetsense {

namespace {

constexpr double kZeroNormLimit = 1e-12;
constexpr std::size_t kMaxDim = std::size_t{1} << 20;
constexpr std::size_t kMaxReservedFloats = std::size_t{1} << 26;

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_blank(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

// Invalid UTF-8 sequences become U+FFFD; valid input passes through untouched.
std::string sanitize_utf8(std::string bytes) {
  if (std::all_of(bytes.begin(), bytes.end(),
                  [](char c) { return static_cast<unsigned char>(c) < 0x80; })) {
    return bytes;
  }
  UErrorCode status = U_ZERO_ERROR;
  int32_t utf16_len = 0;
  int32_t substitutions = 0;
  u_strFromUTF8WithSub(nullptr, 0, &utf16_len, bytes.data(), static_cast<int32_t>(bytes.size()),
                       0xFFFD, &substitutions, &status);
  if (substitutions == 0) return bytes;
  status = U_ZERO_ERROR;
  std::vector<UChar> utf16(static_cast<std::size_t>(utf16_len) + 1);
  u_strFromUTF8WithSub(utf16.data(), static_cast<int32_t>(utf16.size()), &utf16_len, bytes.data(),
                       static_cast<int32_t>(bytes.size()), 0xFFFD, nullptr, &status);
  if (U_FAILURE(status)) return bytes;
  int32_t utf8_len = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(nullptr, 0, &utf8_len, utf16.data(), utf16_len, &status);
  std::string out(static_cast<std::size_t>(utf8_len), '\0');
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), utf8_len, nullptr, utf16.data(), utf16_len, &status);
  return out;
}

std::uint64_t parse_count(std::string_view field, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::MalformedHeader,
                std::string("non-numeric ") + what + " field '" + std::string(field) + "'");
  }
  return value;
}

struct Header {
  std::uint64_t vocab_size = 0;
  std::size_t dim = 0;
};

Header parse_header(std::string_view line) {
  auto fields = split_fields(line);
  if (fields.size() != 2) {
    throw Error(ErrorCode::MalformedHeader,
                "expected 'vocab_size dim', got " + std::to_string(fields.size()) + " field(s)");
  }
  Header header;
  header.vocab_size = parse_count(fields[0], "vocab_size");
  header.dim = static_cast<std::size_t>(parse_count(fields[1], "dim"));
  if (header.dim == 0) throw Error(ErrorCode::MalformedHeader, "dim must be positive");
  if (header.dim > kMaxDim) {
    throw Error(ErrorCode::MalformedHeader, "dim " + std::to_string(header.dim) + " is implausibly large");
  }
  return header;
}

float decode_le_float(const unsigned char* bytes) {
  std::uint32_t bits = static_cast<std::uint32_t>(bytes[0]) |
                       (static_cast<std::uint32_t>(bytes[1]) << 8) |
                       (static_cast<std::uint32_t>(bytes[2]) << 16) |
                       (static_cast<std::uint32_t>(bytes[3]) << 24);
  return std::bit_cast<float>(bits);
}

void encode_le_float(float value, char* out) {
  auto bits = std::bit_cast<std::uint32_t>(value);
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
}

std::size_t record_limit(std::uint64_t declared, const LoadOptions& options) {
  auto limit = static_cast<std::size_t>(declared);
  if (options.max_vocab) limit = std::min(limit, *options.max_vocab);
  return limit;
}

}  // namespace

std::string_view to_string(EmbeddingFormat format) noexcept {
  return format == EmbeddingFormat::Word2VecBinary ? "binary" : "text";
}

/// Accumulates records, normalizing each one as it arrives.
class EmbeddingTableBuilder {
 public:
  EmbeddingTableBuilder(std::size_t dim, EmbeddingFormat format, bool keep_raw)
      : keep_raw_(keep_raw) {
    table_.dim_ = dim;
    table_.format_ = format;
  }

  void reserve(std::size_t rows) {
    rows = std::min(rows, kMaxReservedFloats / table_.dim_);
    table_.vocab_.reserve(rows);
    table_.unit_.reserve(rows * table_.dim_);
    if (keep_raw_) table_.raw_.reserve(rows * table_.dim_);
    table_.magnitudes_.reserve(rows);
  }

  void add(std::string token, std::span<const float> components, std::size_t record_no) {
    if (components.size() != table_.dim_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "record " + std::to_string(record_no) + " has " +
                      std::to_string(components.size()) + " components, expected " +
                      std::to_string(table_.dim_));
    }
    double sum_sq = 0.0;
    for (float c : components) sum_sq += static_cast<double>(c) * static_cast<double>(c);
    const double norm = std::sqrt(sum_sq);
    if (!std::isfinite(norm)) {
      throw Error(ErrorCode::MalformedRecord,
                  "record " + std::to_string(record_no) + " has non-finite components");
    }
    if (norm < kZeroNormLimit) {
      throw Error(ErrorCode::ZeroVector,
                  "record " + std::to_string(record_no) + " ('" + token + "') has zero norm");
    }
    token = sanitize_utf8(std::move(token));
    if (table_.index_.find(token) != table_.index_.end()) {
      table_.warnings_.push_back("duplicate token '" + token + "' at record " +
                                 std::to_string(record_no) + " ignored");
      return;
    }
    const std::size_t row = table_.vocab_.size();
    table_.index_.emplace(token, row);
    table_.vocab_.push_back(std::move(token));
    for (float c : components) {
      table_.unit_.push_back(static_cast<float>(static_cast<double>(c) / norm));
    }
    if (keep_raw_) table_.raw_.insert(table_.raw_.end(), components.begin(), components.end());
    table_.magnitudes_.push_back(norm);
  }

  void warn(std::string message) { table_.warnings_.push_back(std::move(message)); }

  EmbeddingTable finish() && { return std::move(table_); }

 private:
  EmbeddingTable table_;
  bool keep_raw_;
};

EmbeddingTable EmbeddingTable::from_rows(std::vector<std::string> tokens,
                                         std::span<const float> components, std::size_t dim,
                                         EmbeddingFormat format, bool keep_raw) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "dim must be positive");
  if (components.size() != tokens.size() * dim) {
    throw Error(ErrorCode::DimensionMismatch, "component count is not tokens * dim");
  }
  EmbeddingTableBuilder builder(dim, format, keep_raw);
  builder.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    builder.add(std::move(tokens[i]), components.subspan(i * dim, dim), i + 1);
  }
  return std::move(builder).finish();
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const float>> EmbeddingTable::lookup(std::string_view token) const {
  auto row = index_of(token);
  if (!row) return std::nullopt;
  return unit_vector(*row);
}

std::span<const float> EmbeddingTable::unit_vector(std::size_t row) const {
  return std::span<const float>(unit_).subspan(row * dim_, dim_);
}

std::span<const float> EmbeddingTable::raw_vector(std::size_t row) const {
  if (raw_.empty()) throw std::logic_error("embedding table was loaded without keep_raw");
  return std::span<const float>(raw_).subspan(row * dim_, dim_);
}

namespace {

EmbeddingTable load_binary(std::istream& in, const LoadOptions& options) {
  std::string header_line;
  if (!std::getline(in, header_line)) throw Error(ErrorCode::MalformedHeader, "empty file");
  const Header header = parse_header(header_line);
  const std::size_t limit = record_limit(header.vocab_size, options);

  EmbeddingTableBuilder builder(header.dim, EmbeddingFormat::Word2VecBinary, options.keep_raw);
  builder.reserve(limit);
  std::vector<unsigned char> bytes(header.dim * 4);
  std::vector<float> components(header.dim);
  std::string token;
  for (std::size_t record = 1; record <= limit; ++record) {
    token.clear();
    int c = in.get();
    while (c == '\n') c = in.get();
    while (c != std::char_traits<char>::eof() && c != ' ') {
      token.push_back(static_cast<char>(c));
      c = in.get();
    }
    if (c == std::char_traits<char>::eof()) {
      throw Error(ErrorCode::TruncatedRecord,
                  "end of file in record " + std::to_string(record) + " of " +
                      std::to_string(header.vocab_size));
    }
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
      throw Error(ErrorCode::TruncatedRecord,
                  "end of file inside vector of record " + std::to_string(record) + " ('" +
                      token + "')");
    }
    for (std::size_t i = 0; i < header.dim; ++i) components[i] = decode_le_float(&bytes[i * 4]);
    builder.add(token, components, record);
  }
  return std::move(builder).finish();
}

EmbeddingTable load_text(std::istream& in, const LoadOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!split_fields(line).empty()) return true;
    }
    return false;
  };

  std::optional<Header> header;
  bool pending = false;
  if (options.no_header) {
    if (!next_line()) throw Error(ErrorCode::MalformedHeader, "empty file");
    const auto fields = split_fields(line);
    if (fields.size() < 2) {
      throw Error(ErrorCode::MalformedHeader, "first record needs a token and components");
    }
    header = Header{0, fields.size() - 1};
    pending = true;
  } else {
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "empty file");
    ++line_no;
    header = parse_header(line);
  }
  const std::size_t limit =
      options.no_header ? options.max_vocab.value_or(static_cast<std::size_t>(-1))
                        : record_limit(header->vocab_size, options);

  EmbeddingTableBuilder builder(header->dim, EmbeddingFormat::Word2VecText, options.keep_raw);
  if (!options.no_header) builder.reserve(limit);
  std::vector<float> components;
  for (std::size_t record = 1; record <= limit; ++record) {
    if (pending) {
      pending = false;
    } else if (!next_line()) {
      if (options.no_header) break;
      throw Error(ErrorCode::TruncatedRecord,
                  "file ends after " + std::to_string(record - 1) + " of " +
                      std::to_string(header->vocab_size) + " records");
    }
    const auto fields = split_fields(line);
    if (fields.size() != header->dim + 1) {
      throw Error(ErrorCode::DimensionMismatch,
                  "line " + std::to_string(line_no) + " has " + std::to_string(fields.size() - 1) +
                      " components, expected " + std::to_string(header->dim));
    }
    components.resize(header->dim);
    for (std::size_t i = 0; i < header->dim; ++i) {
      std::string_view field = fields[i + 1];
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), components[i]);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line_no) +
                                                    ": cannot parse component '" +
                                                    std::string(field) + "'");
      }
    }
    builder.add(std::string(fields[0]), components, record);
  }
  return std::move(builder).finish();
}

}  // namespace

EmbeddingTable load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                               const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open embeddings '" + path.string() + "'");
  if (format == EmbeddingFormat::Word2VecBinary) {
    if (options.no_header) {
      throw Error(ErrorCode::MalformedHeader, "the binary format always carries a header");
    }
    return load_binary(in, options);
  }
  return load_text(in, options);
}

void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                      EmbeddingFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write embeddings '" + path.string() + "'");
  out << table.size() << ' ' << table.dim() << '\n';

  std::vector<float> row(table.dim());
  std::vector<char> packed(table.dim() * 4);
  std::array<char, 64> number{};
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table.has_raw()) {
      auto raw = table.raw_vector(r);
      std::copy(raw.begin(), raw.end(), row.begin());
    } else {
      auto unit = table.unit_vector(r);
      for (std::size_t i = 0; i < row.size(); ++i) {
        row[i] = static_cast<float>(static_cast<double>(unit[i]) * table.magnitude(r));
      }
    }
    out << table.vocab()[r];
    if (format == EmbeddingFormat::Word2VecBinary) {
      out << ' ';
      for (std::size_t i = 0; i < row.size(); ++i) encode_le_float(row[i], &packed[i * 4]);
      out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
    } else {
      for (float v : row) {
        auto [ptr, ec] = std::to_chars(number.data(), number.data() + number.size(), v);
        out << ' ';
        out.write(number.data(), ptr - number.data());
      }
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine of vectors with dims " +
                                                  std::to_string(u.size()) + " and " +
                                                  std::to_string(v.size()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * static_cast<double>(v[i]);
  }
  return std::clamp(dot, -1.0, 1.0);
}

}  // namespace tweetsense
