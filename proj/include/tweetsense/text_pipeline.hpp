// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsense {

/// Corpus annotation: one traffic-unrelated class and two traffic priorities.
enum class CorpusLabel { Unrelated, TrafficHigh, TrafficLow };

std::string_view to_string(CorpusLabel label) noexcept;
std::optional<CorpusLabel> parse_corpus_label(std::string_view text) noexcept;
inline bool is_traffic(CorpusLabel label) noexcept { return label != CorpusLabel::Unrelated; }

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees

  bool operator==(const GeoPoint&) const = default;
};

struct Tweet {
  std::string id;
  std::string text;
  std::optional<std::string> timestamp;
  std::optional<GeoPoint> geo;
  std::optional<CorpusLabel> label;

  bool operator==(const Tweet&) const = default;
};

/// Empty when the tweet is valid, otherwise the first violated invariant.
std::optional<std::string> validate(const Tweet& tweet);

struct TokenizedTweet {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const TokenizedTweet&) const = default;
};

/// Normalizes raw tweet text into lowercase word tokens.
///
/// Steps, applied in order: NFC normalization, lowercasing, URL removal
/// (`scheme://...` or `www....` up to the next whitespace), @mention removal,
/// then splitting on every run of characters that are not letters, digits or
/// combining marks. Apostrophes and hyphens survive only between two word
/// characters, so "one-way" and "don't" stay whole. Hashtags keep their word
/// because '#' is a separator.
std::vector<std::string> tokenize(std::string_view text);

TokenizedTweet tokenize_tweet(const Tweet& tweet);

std::vector<TokenizedTweet> tokenize_all(std::span<const Tweet> tweets);

}  // namespace tweetsense
