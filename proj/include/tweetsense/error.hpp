// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tweetsense {

enum class ErrorCode {
  // embedding_store
  MalformedHeader,
  TruncatedRecord,
  ZeroVector,
  DimensionMismatch,
  MalformedRecord,
  // lexicon
  EmptySeed,
  InvalidK,
  OverlappingSubtypeLists,
  MalformedLexiconFile,
  MalformedStopwordFile,
  // classifier
  EmptyLexicon,
  DegenerateCalibrationSet,
  MissingSubtypePartition,
  MalformedThresholdFile,
  InvalidTweet,
  // evaluation
  LengthMismatch,
  EmptyInput,
  // ingestion and I/O
  FileNotFound,
  IoError,
  AllRecordsMalformed,
  MalformedResultsFile,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one ErrorCode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tweetsense
