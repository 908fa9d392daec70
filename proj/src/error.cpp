// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/error.hpp"

namespace tweetsense {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::TruncatedRecord: return "TruncatedRecord";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EmptySeed: return "EmptySeed";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::OverlappingSubtypeLists: return "OverlappingSubtypeLists";
    case ErrorCode::MalformedLexiconFile: return "MalformedLexiconFile";
    case ErrorCode::MalformedStopwordFile: return "MalformedStopwordFile";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::DegenerateCalibrationSet: return "DegenerateCalibrationSet";
    case ErrorCode::MissingSubtypePartition: return "MissingSubtypePartition";
    case ErrorCode::MalformedThresholdFile: return "MalformedThresholdFile";
    case ErrorCode::InvalidTweet: return "InvalidTweet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::AllRecordsMalformed: return "AllRecordsMalformed";
    case ErrorCode::MalformedResultsFile: return "MalformedResultsFile";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace tweetsense
