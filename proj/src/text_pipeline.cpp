// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/text_pipeline.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cmath>

namespace tweetsense {

std::string_view to_string(CorpusLabel label) noexcept {
  switch (label) {
    case CorpusLabel::Unrelated: return "unrelated";
    case CorpusLabel::TrafficHigh: return "traffic_high";
    case CorpusLabel::TrafficLow: return "traffic_low";
  }
  return "unrelated";
}

std::optional<CorpusLabel> parse_corpus_label(std::string_view text) noexcept {
  if (text == "unrelated") return CorpusLabel::Unrelated;
  if (text == "traffic_high") return CorpusLabel::TrafficHigh;
  if (text == "traffic_low") return CorpusLabel::TrafficLow;
  return std::nullopt;
}

std::optional<std::string> validate(const Tweet& tweet) {
  if (tweet.id.empty()) return "tweet id is empty";
  if (tweet.geo) {
    const auto& g = *tweet.geo;
    if (!(g.lat >= -90.0 && g.lat <= 90.0)) return "latitude outside [-90, 90]";
    if (!(g.lon >= -180.0 && g.lon <= 180.0)) return "longitude outside [-180, 180]";
  }
  return std::nullopt;
}

namespace {

constexpr UChar32 kApostrophe = U'\'';
constexpr UChar32 kRightQuote = 0x2019;

bool is_word_char(UChar32 c) {
  if (u_isalnum(c)) return true;
  const auto mask = U_GET_GC_MASK(c);
  return (mask & U_GC_M_MASK) != 0;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

bool is_scheme_char(UChar32 c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

std::u32string to_code_points(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString unicode = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (U_SUCCESS(status)) {
    icu::UnicodeString normalized = nfc->normalize(unicode, status);
    if (U_SUCCESS(status)) unicode = std::move(normalized);
  }
  unicode.toLower(icu::Locale::getRoot());

  std::u32string out;
  out.reserve(static_cast<std::size_t>(unicode.length()));
  for (int32_t i = 0; i < unicode.length();) {
    UChar32 c = unicode.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

// Replaces URLs and mentions with a single space so they also act as separators.
std::u32string strip_urls_and_mentions(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  const std::size_t n = s.size();
  auto skip_to_space = [&](std::size_t i) {
    while (i < n && !is_space(static_cast<UChar32>(s[i]))) ++i;
    return i;
  };
  std::size_t i = 0;
  while (i < n) {
    const bool at_boundary = i == 0 || !is_word_char(static_cast<UChar32>(s[i - 1]));
    if (at_boundary && s.compare(i, 4, U"www.") == 0) {
      i = skip_to_space(i);
      out.push_back(U' ');
      continue;
    }
    if (at_boundary && s[i] >= U'a' && s[i] <= U'z') {
      std::size_t j = i;
      while (j < n && is_scheme_char(static_cast<UChar32>(s[j]))) ++j;
      if (s.compare(j, 3, U"://") == 0) {
        i = skip_to_space(j);
        out.push_back(U' ');
        continue;
      }
    }
    if (s[i] == U'@' && at_boundary && i + 1 < n &&
        (is_word_char(static_cast<UChar32>(s[i + 1])) || s[i + 1] == U'_')) {
      std::size_t j = i + 1;
      while (j < n && (is_word_char(static_cast<UChar32>(s[j])) || s[j] == U'_')) ++j;
      i = j;
      out.push_back(U' ');
      continue;
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string cleaned = strip_urls_and_mentions(to_code_points(text));
  std::vector<std::string> tokens;
  std::string current;
  const std::size_t n = cleaned.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<UChar32>(cleaned[i]);
    if (is_word_char(c)) {
      append_utf8(current, cleaned[i]);
      continue;
    }
    const bool joiner = c == kApostrophe || c == kRightQuote || c == U'-';
    if (joiner && !current.empty() && i + 1 < n &&
        is_word_char(static_cast<UChar32>(cleaned[i + 1]))) {
      current.push_back(c == U'-' ? '-' : '\'');
      continue;
    }
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenizedTweet tokenize_tweet(const Tweet& tweet) { return {tweet.id, tokenize(tweet.text)}; }

std::vector<TokenizedTweet> tokenize_all(std::span<const Tweet> tweets) {
  std::vector<TokenizedTweet> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) out.push_back(tokenize_tweet(t));
  return out;
}

}  // namespace tweetsense
