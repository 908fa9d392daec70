// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include <fstream>

#include "tweetsense/error.hpp"
#include "tweetsense/lexicon.hpp"

namespace tweetsense {

namespace {

// Bump the version whenever the list changes.
constexpr const char* kDefaultVersion = "en-minimal-1";

constexpr const char* kDefaultWords[] = {
    "a",       "about",   "above",  "after",   "again",   "against", "all",     "am",
    "an",      "and",     "any",    "are",     "as",      "at",      "be",      "because",
    "been",    "before",  "being",  "below",   "between", "both",    "but",     "by",
    "can",     "could",   "did",    "do",      "does",    "doing",   "down",    "during",
    "each",    "few",     "for",    "from",    "further", "had",     "has",     "have",
    "having",  "he",      "her",    "here",    "hers",    "herself", "him",     "himself",
    "his",     "how",     "i",      "if",      "in",      "into",    "is",      "it",
    "it's",    "its",     "itself", "just",    "me",      "more",    "most",    "my",
    "myself",  "no",      "nor",    "not",     "now",     "of",      "off",     "on",
    "once",    "only",    "or",     "other",   "our",     "ours",    "ourselves", "out",
    "over",    "own",     "same",   "she",     "should",  "so",      "some",    "such",
    "than",    "that",    "the",    "their",   "theirs",  "them",    "themselves", "then",
    "there",   "these",   "they",   "this",    "those",   "through", "to",      "too",
    "under",   "until",   "up",     "very",    "was",     "we",      "were",    "what",
    "when",    "where",   "which",  "while",   "who",     "whom",    "why",     "will",
    "with",    "would",   "you",    "your",    "yours",   "yourself", "rt",     "amp",
};

}  // namespace

const StopwordList& default_stopwords() {
  static const StopwordList list = [] {
    StopwordList l;
    l.version = kDefaultVersion;
    for (const char* w : kDefaultWords) l.words.insert(w);
    return l;
  }();
  return list;
}

StopwordList load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open stopword file '" + path.string() + "'");
  StopwordList list;
  list.version = "file:" + path.filename().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t\r")] == '#') continue;
    if (tokens.size() != 1) {
      throw Error(ErrorCode::MalformedStopwordFile,
                  "line " + std::to_string(line_no) + " holds more than one word");
    }
    list.words.insert(std::move(tokens.front()));
  }
  return list;
}

}  // namespace tweetsense
