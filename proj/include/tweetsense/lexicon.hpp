// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tweetsense/text_pipeline.hpp"

namespace tweetsense {

struct StopwordList {
  std::string version;
  std::unordered_set<std::string> words;

  bool contains(const std::string& token) const { return words.count(token) != 0; }
};

/// Built-in minimal English list, versioned so lexicons stay reproducible.
const StopwordList& default_stopwords();

/// One word per line; blank lines and lines starting with '#' are skipped.
/// Words are lowercased through the tokenizer's normalization.
StopwordList load_stopwords(const std::filesystem::path& path);

inline constexpr std::size_t kDefaultLexiconSize = 50;

struct LexiconEntry {
  std::string keyword;
  std::uint64_t frequency = 0;

  bool operator==(const LexiconEntry&) const = default;
};

/// Ranked traffic keywords. Entries are ordered by frequency descending, then
/// keyword ascending. The two subtype lists are disjoint subsets of the
/// entries, kept in rank order.
struct KeywordLexicon {
  std::string version;
  std::string stopwords_version;
  std::vector<LexiconEntry> entries;
  std::vector<std::string> event_keywords;
  std::vector<std::string> condition_keywords;

  bool empty() const noexcept { return entries.empty(); }
  bool contains(const std::string& keyword) const;

  bool operator==(const KeywordLexicon&) const = default;
};

/// Counts every token occurrence across `seed`, drops stopwords and tokens
/// shorter than two code points, and keeps the top `k`.
KeywordLexicon build_lexicon(std::span<const TokenizedTweet> seed, std::size_t k,
                             const StopwordList& stopwords = default_stopwords());

/// Marks lexicon keywords found in exactly one list. Keywords in neither list
/// keep their current assignment.
KeywordLexicon assign_subtypes(KeywordLexicon lexicon, const std::set<std::string>& event_list,
                               const std::set<std::string>& condition_list);

/// Starting subtype lists drawn from typical incident and congestion vocabulary.
const std::set<std::string>& default_event_keywords();
const std::set<std::string>& default_condition_keywords();

/// Deterministic content identifier derived from the ranked entries.
std::string lexicon_fingerprint(std::span<const LexiconEntry> entries);

void save_lexicon(const KeywordLexicon& lexicon, const std::filesystem::path& path);
KeywordLexicon load_lexicon(const std::filesystem::path& path);

std::string lexicon_to_json(const KeywordLexicon& lexicon);
KeywordLexicon lexicon_from_json(const std::string& text);

}  // namespace tweetsense
