// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetsense/classifier.hpp"
#include "tweetsense/text_pipeline.hpp"

namespace tweetsense {

enum class CorpusFormat { TweetJsonl, LabeledCsv };

/// ".csv" maps to LabeledCsv, everything else to TweetJsonl.
CorpusFormat corpus_format_for(const std::filesystem::path& path);

struct RejectedRecord {
  std::size_t line = 0;  // 1-based physical line where the record starts
  std::string reason;
};

struct IngestResult {
  std::vector<Tweet> tweets;  // valid records, file order
  std::vector<RejectedRecord> rejects;
};

/// JSONL: one object per line with "id" and "text" required, "timestamp",
/// "geo" ({"lat","lon"}) and "label" optional. Blank lines are skipped.
IngestResult parse_jsonl(std::istream& in);
/// CSV with header `id,text,label`, RFC 4180 quoting. An empty label cell
/// means unlabeled.
IngestResult parse_csv(std::istream& in);

/// Throws FileNotFound, or AllRecordsMalformed when nothing could be parsed
/// but rejects exist.
IngestResult ingest(const std::filesystem::path& path, CorpusFormat format);

std::string tweet_to_json_line(const Tweet& tweet);
void write_jsonl_corpus(std::span<const Tweet> tweets, const std::filesystem::path& path);

/// {"id","label","subtype","score","best_token","best_keyword"}, plus
/// "error" on error-marked results.
std::string result_to_json_line(const ClassificationResult& result);
ClassificationResult result_from_json_line(const std::string& line);

void write_results(std::span<const ClassificationResult> results,
                   const std::filesystem::path& path);
std::vector<ClassificationResult> read_results(const std::filesystem::path& path);

}  // namespace tweetsense
