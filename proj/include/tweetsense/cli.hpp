// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tweetsense/corpus.hpp"
#include "tweetsense/embedding_store.hpp"

namespace tweetsense {

enum class SeedLabels { All, High, Low };

/// Settings for one CLI run. Every field is optional so that flag values,
/// config-file values and defaults can be layered.
struct PartialConfig {
  std::optional<std::filesystem::path> corpus;
  std::optional<CorpusFormat> corpus_format;
  std::optional<std::filesystem::path> embeddings;
  std::optional<EmbeddingFormat> embedding_format;
  std::optional<bool> no_header;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::size_t> k;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> threshold;
  std::optional<std::filesystem::path> results;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> parallelism;
  std::optional<std::size_t> max_vocab;
  std::optional<std::set<std::string>> event_keywords;
  std::optional<std::set<std::string>> condition_keywords;
  std::optional<SeedLabels> seed_labels;
};

struct RunConfig {
  std::optional<std::filesystem::path> corpus;
  std::optional<CorpusFormat> corpus_format;
  std::optional<std::filesystem::path> embeddings;
  EmbeddingFormat embedding_format = EmbeddingFormat::Word2VecBinary;
  bool no_header = false;
  std::optional<std::filesystem::path> lexicon;
  std::size_t k = kDefaultLexiconSize;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> threshold;
  std::optional<std::filesystem::path> results;
  std::optional<std::filesystem::path> out;
  std::size_t parallelism = 1;
  std::optional<std::size_t> max_vocab;
  std::set<std::string> event_keywords;
  std::set<std::string> condition_keywords;
  SeedLabels seed_labels = SeedLabels::All;
};

/// Thrown for missing or contradictory settings; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a JSON config file. Relative paths resolve against the file's directory.
PartialConfig load_config_file(const std::filesystem::path& path);

/// Flags win over the config file, which wins over built-in defaults.
RunConfig resolve_config(const PartialConfig& flags, const PartialConfig& file);

/// Entry point behind the `tweetsense` binary. `args` excludes the program
/// name. Returns 0 on success, 1 on usage errors and 2 on data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tweetsense
