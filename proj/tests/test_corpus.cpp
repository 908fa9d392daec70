// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include <sstream>

#include "doctest.h"
#include "support/w2v_writer.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/error.hpp"

using namespace tweetsense;
using testsupport::TempDir;

namespace {

ErrorCode ingest_error(const std::filesystem::path& path, CorpusFormat format) {
  try {
    ingest(path, format);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("JSONL: valid lines in file order") {
  std::istringstream in(
      R"({"id": "1", "text": "accident on road", "label": "traffic_high"})" "\n"
      R"({"id": 2, "text": "nice weather", "timestamp": "2020-01-05T10:00:00Z", "geo": {"lat": 12.97, "lon": 77.59}})" "\n"
      "\n"
      R"({"id": "3", "text": "jam at silk board", "label": "traffic_low", "geo": null})" "\n");
  const auto result = parse_jsonl(in);
  REQUIRE(result.tweets.size() == 3);
  CHECK(result.rejects.empty());
  CHECK(result.tweets[0] == Tweet{"1", "accident on road", {}, {}, CorpusLabel::TrafficHigh});
  CHECK(result.tweets[1] ==
        Tweet{"2", "nice weather", "2020-01-05T10:00:00Z", GeoPoint{12.97, 77.59}, {}});
  CHECK(result.tweets[2].label == CorpusLabel::TrafficLow);
}

TEST_CASE("JSONL: malformed line 2 is rejected with its line number") {
  std::istringstream in(
      R"({"id": "1", "text": "a"})" "\n"
      R"({"id": "2", "text": )" "\n"
      R"({"id": "3", "text": "c"})" "\n");
  const auto result = parse_jsonl(in);
  REQUIRE(result.tweets.size() == 2);
  CHECK(result.tweets[0].id == "1");
  CHECK(result.tweets[1].id == "3");
  REQUIRE(result.rejects.size() == 1);
  CHECK(result.rejects[0].line == 2);
}

TEST_CASE("JSONL: invariant violations are rejects") {
  std::istringstream in(
      R"({"text": "no id"})" "\n"
      R"({"id": "", "text": "empty id"})" "\n"
      R"({"id": "a", "text": 5})" "\n"
      R"({"id": "b", "text": "x", "geo": {"lat": 95, "lon": 0}})" "\n"
      R"({"id": "c", "text": "x", "label": "traffic"})" "\n"
      R"(["id", "text"])" "\n"
      R"({"id": "d", "text": "ok"})" "\n"
      R"({"id": "d", "text": "duplicate"})" "\n");
  const auto result = parse_jsonl(in);
  REQUIRE(result.tweets.size() == 1);
  CHECK(result.tweets[0].id == "d");
  REQUIRE(result.rejects.size() == 7);
  std::vector<std::size_t> lines;
  for (const auto& r : result.rejects) lines.push_back(r.line);
  CHECK(lines == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 8});
}

TEST_CASE("CSV: RFC 4180 quoting matches a hand-parsed fixture") {
  std::istringstream in(
      "id,text,label\r\n"
      "1,\"Accident, near Hebbal flyover\",traffic_high\r\n"
      "2,plain text,unrelated\n"
      "3,\"He said \"\"jam\"\"\",traffic_low\n"
      "4,\"two\nlines\",\n"
      "5,,unrelated\n");
  const auto result = parse_csv(in);
  CHECK(result.rejects.empty());
  const std::vector<Tweet> expected = {
      {"1", "Accident, near Hebbal flyover", {}, {}, CorpusLabel::TrafficHigh},
      {"2", "plain text", {}, {}, CorpusLabel::Unrelated},
      {"3", "He said \"jam\"", {}, {}, CorpusLabel::TrafficLow},
      {"4", "two\nlines", {}, {}, {}},
      {"5", "", {}, {}, CorpusLabel::Unrelated}};
  CHECK(result.tweets == expected);
}

TEST_CASE("CSV: malformed records are rejected by starting line") {
  std::istringstream in(
      "id,text,label\n"
      "1,ok,unrelated\n"
      "2,too,many,fields\n"
      "3,\"multi\nline\" junk,unrelated\n"
      "4,bad\"quote,unrelated\n"
      "5,x,mystery\n"
      "6,\"never closed,unrelated\n");
  const auto result = parse_csv(in);
  REQUIRE(result.tweets.size() == 1);
  std::vector<std::size_t> lines;
  for (const auto& r : result.rejects) lines.push_back(r.line);
  CHECK(lines == std::vector<std::size_t>{3, 4, 6, 7, 8});
}

TEST_CASE("CSV: header is required") {
  std::istringstream in("1,text,unrelated\n");
  CHECK_THROWS_WITH_AS(parse_csv(in), doctest::Contains("AllRecordsMalformed"), Error);
}

TEST_CASE("ingest: file errors") {
  TempDir dir("ingest");
  CHECK(ingest_error(dir / "missing.jsonl", CorpusFormat::TweetJsonl) == ErrorCode::FileNotFound);
  testsupport::write_file(dir / "bad.jsonl", "{\n}\n[1]\n");
  CHECK(ingest_error(dir / "bad.jsonl", CorpusFormat::TweetJsonl) == ErrorCode::AllRecordsMalformed);
  testsupport::write_file(dir / "empty.jsonl", "");
  CHECK(ingest(dir / "empty.jsonl", CorpusFormat::TweetJsonl).tweets.empty());
  CHECK(corpus_format_for("x/y.csv") == CorpusFormat::LabeledCsv);
  CHECK(corpus_format_for("x/y.jsonl") == CorpusFormat::TweetJsonl);
}

TEST_CASE("JSONL corpus writer round-trips through ingest") {
  TempDir dir("ingest");
  const std::vector<Tweet> tweets = {
      {"1", "jam \"quoted\" \xE2\x9C\x93", "2021-02-03T04:05:06Z", GeoPoint{-12.5, 100.25}, CorpusLabel::TrafficLow},
      {"2", "line\nbreak", {}, {}, {}}};
  write_jsonl_corpus(tweets, dir / "c.jsonl");
  CHECK(ingest(dir / "c.jsonl", CorpusFormat::TweetJsonl).tweets == tweets);
}

TEST_CASE("results JSONL lines") {
  ClassificationResult r;
  r.tweet_id = "42";
  r.label = Label::TrafficRelated;
  r.subtype = Subtype::Condition;
  r.score.value = 0.8125;
  r.score.best_pair = BestPair{"jam", "congestion"};
  CHECK(result_to_json_line(r) ==
        R"({"id":"42","label":"traffic_related","subtype":"condition","score":0.8125,"best_token":"jam","best_keyword":"congestion"})");

  ClassificationResult absent;
  absent.tweet_id = "7";
  CHECK(result_to_json_line(absent) ==
        R"({"id":"7","label":"unrelated","subtype":null,"score":null,"best_token":null,"best_keyword":null})");
  absent.error = "InvalidTweet: bad";
  CHECK(result_to_json_line(absent).find(R"("error":"InvalidTweet: bad")") != std::string::npos);

  TempDir dir("results");
  std::vector<ClassificationResult> results = {r, absent};
  write_results(results, dir / "r.jsonl");
  const auto back = read_results(dir / "r.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(back[0].label == r.label);
  CHECK(back[0].subtype == r.subtype);
  CHECK(back[0].score.value == r.score.value);
  CHECK(back[0].score.best_pair == r.score.best_pair);
  CHECK(back[1].error == absent.error);
  CHECK_THROWS_WITH_AS(result_from_json_line(R"({"id":"1","label":"maybe"})"),
                       doctest::Contains("MalformedResultsFile"), Error);
}
