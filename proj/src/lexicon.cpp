// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/lexicon.hpp"

#include <unicode/utf8.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "tweetsense/error.hpp"

namespace tweetsense {

namespace {

std::size_t code_point_length(const std::string& s) {
  std::size_t count = 0;
  for (int32_t i = 0; i < static_cast<int32_t>(s.size());) {
    UChar32 c;
    U8_NEXT(s.data(), i, static_cast<int32_t>(s.size()), c);
    ++count;
  }
  return count;
}

bool ranks_before(const LexiconEntry& a, const LexiconEntry& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.keyword < b.keyword;
}

// Reorders `subset` to follow the lexicon ranking.
std::vector<std::string> in_rank_order(const std::vector<LexiconEntry>& entries,
                                       const std::set<std::string>& subset) {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (subset.count(e.keyword)) out.push_back(e.keyword);
  }
  return out;
}

}  // namespace

bool KeywordLexicon::contains(const std::string& keyword) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const LexiconEntry& e) { return e.keyword == keyword; });
}

std::string lexicon_fingerprint(std::span<const LexiconEntry> entries) {
  std::uint64_t hash = 14695981039346656037ull;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  };
  for (const auto& e : entries) {
    mix(e.keyword);
    mix("\t");
    mix(std::to_string(e.frequency));
    mix("\n");
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("lex-") + buf;
}

KeywordLexicon build_lexicon(std::span<const TokenizedTweet> seed, std::size_t k,
                             const StopwordList& stopwords) {
  if (seed.empty()) throw Error(ErrorCode::EmptySeed, "seed corpus has no tweets");
  if (k == 0) throw Error(ErrorCode::InvalidK, "k must be at least 1");

  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& tweet : seed) {
    for (const auto& token : tweet.tokens) ++counts[token];
  }

  std::vector<LexiconEntry> ranked;
  ranked.reserve(counts.size());
  for (auto& [token, count] : counts) {
    if (stopwords.contains(token) || code_point_length(token) < 2) continue;
    ranked.push_back({token, count});
  }
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), ranks_before);
  ranked.resize(keep);

  KeywordLexicon lexicon;
  lexicon.entries = std::move(ranked);
  lexicon.stopwords_version = stopwords.version;
  lexicon.version = lexicon_fingerprint(lexicon.entries);
  return lexicon;
}

KeywordLexicon assign_subtypes(KeywordLexicon lexicon, const std::set<std::string>& event_list,
                               const std::set<std::string>& condition_list) {
  for (const auto& word : event_list) {
    if (condition_list.count(word)) {
      throw Error(ErrorCode::OverlappingSubtypeLists,
                  "'" + word + "' is listed as both event and condition");
    }
  }
  std::set<std::string> events(lexicon.event_keywords.begin(), lexicon.event_keywords.end());
  std::set<std::string> conditions(lexicon.condition_keywords.begin(),
                                   lexicon.condition_keywords.end());
  for (const auto& e : lexicon.entries) {
    if (event_list.count(e.keyword)) {
      events.insert(e.keyword);
      conditions.erase(e.keyword);
    } else if (condition_list.count(e.keyword)) {
      conditions.insert(e.keyword);
      events.erase(e.keyword);
    }
  }
  lexicon.event_keywords = in_rank_order(lexicon.entries, events);
  lexicon.condition_keywords = in_rank_order(lexicon.entries, conditions);
  return lexicon;
}

const std::set<std::string>& default_event_keywords() {
  static const std::set<std::string> words = {
      "accident", "breakdown", "collision", "crash",    "incident",
      "non-fatal", "overturned", "roadwork", "roadworks", "fire"};
  return words;
}

const std::set<std::string>& default_condition_keywords() {
  static const std::set<std::string> words = {
      "caves",  "congestion", "delays", "delay", "heavy",        "jam",
      "one-way", "rain",      "slow",   "waterlogging", "diversion", "traffic"};
  return words;
}

std::string lexicon_to_json(const KeywordLexicon& lexicon) {
  nlohmann::ordered_json j;
  j["version"] = lexicon.version;
  j["stopwords_version"] = lexicon.stopwords_version;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : lexicon.entries) {
    nlohmann::ordered_json item;
    item["keyword"] = e.keyword;
    item["frequency"] = e.frequency;
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
  j["event_keywords"] = lexicon.event_keywords;
  j["condition_keywords"] = lexicon.condition_keywords;
  return j.dump(2) + "\n";
}

KeywordLexicon lexicon_from_json(const std::string& text) {
  auto fail = [](const std::string& why) -> KeywordLexicon {
    throw Error(ErrorCode::MalformedLexiconFile, why);
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    return fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) return fail("top level is not an object");
  if (!j.contains("entries") || !j["entries"].is_array()) return fail("missing 'entries' array");

  KeywordLexicon lexicon;
  auto read_string = [&](const char* key, std::string& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) fail(std::string("'") + key + "' is not a string");
    out = j[key].get<std::string>();
  };
  read_string("version", lexicon.version);
  read_string("stopwords_version", lexicon.stopwords_version);

  std::set<std::string> seen;
  for (const auto& item : j["entries"]) {
    if (!item.is_object() || !item.contains("keyword") || !item["keyword"].is_string() ||
        !item.contains("frequency") || !item["frequency"].is_number_unsigned()) {
      return fail("entry needs a string 'keyword' and a non-negative integer 'frequency'");
    }
    LexiconEntry entry{item["keyword"].get<std::string>(), item["frequency"].get<std::uint64_t>()};
    if (tokenize(entry.keyword) != std::vector<std::string>{entry.keyword}) {
      return fail("keyword '" + entry.keyword + "' is not a normalized token");
    }
    if (!seen.insert(entry.keyword).second) return fail("duplicate keyword '" + entry.keyword + "'");
    if (!lexicon.entries.empty() && !ranks_before(lexicon.entries.back(), entry)) {
      return fail("entries are not in rank order at '" + entry.keyword + "'");
    }
    lexicon.entries.push_back(std::move(entry));
  }
  if (lexicon.version.empty()) lexicon.version = lexicon_fingerprint(lexicon.entries);

  auto read_subset = [&](const char* key) {
    std::set<std::string> subset;
    if (!j.contains(key)) return subset;
    if (!j[key].is_array()) fail(std::string("'") + key + "' is not an array");
    for (const auto& w : j[key]) {
      if (!w.is_string()) fail(std::string("'") + key + "' holds a non-string");
      auto word = w.get<std::string>();
      if (!seen.count(word)) fail(std::string("'") + key + "' names unknown keyword '" + word + "'");
      subset.insert(std::move(word));
    }
    return subset;
  };
  const auto events = read_subset("event_keywords");
  const auto conditions = read_subset("condition_keywords");
  for (const auto& w : events) {
    if (conditions.count(w)) return fail("'" + w + "' is both event and condition");
  }
  lexicon.event_keywords = in_rank_order(lexicon.entries, events);
  lexicon.condition_keywords = in_rank_order(lexicon.entries, conditions);
  return lexicon;
}

void save_lexicon(const KeywordLexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write lexicon '" + path.string() + "'");
  out << lexicon_to_json(lexicon);
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

KeywordLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open lexicon '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return lexicon_from_json(buffer.str());
}

}  // namespace tweetsense
