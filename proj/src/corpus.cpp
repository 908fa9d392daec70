// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/corpus.hpp"

#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"
#include "tweetsense/error.hpp"

namespace tweetsense {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Tweets may carry invalid UTF-8 through the CSV path.
std::string dump_line(const OrderedJson& j) {
  return j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
}

bool is_blank_line(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Throws std::invalid_argument with the rejection reason.
Tweet tweet_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  Tweet t;
  if (!j.contains("id")) throw std::invalid_argument("missing 'id'");
  const auto& id = j["id"];
  if (id.is_string()) t.id = id.get<std::string>();
  else if (id.is_number_integer()) t.id = id.dump();
  else throw std::invalid_argument("'id' must be a string or integer");
  if (!j.contains("text") || !j["text"].is_string()) throw std::invalid_argument("missing string 'text'");
  t.text = j["text"].get<std::string>();
  if (j.contains("timestamp") && !j["timestamp"].is_null()) {
    if (!j["timestamp"].is_string()) throw std::invalid_argument("'timestamp' must be a string");
    t.timestamp = j["timestamp"].get<std::string>();
  }
  if (j.contains("geo") && !j["geo"].is_null()) {
    const auto& g = j["geo"];
    if (!g.is_object() || !g.contains("lat") || !g.contains("lon") || !g["lat"].is_number() ||
        !g["lon"].is_number()) {
      throw std::invalid_argument("'geo' must be {\"lat\": number, \"lon\": number}");
    }
    t.geo = GeoPoint{g["lat"].get<double>(), g["lon"].get<double>()};
  }
  if (j.contains("label") && !j["label"].is_null()) {
    if (!j["label"].is_string()) throw std::invalid_argument("'label' must be a string");
    auto label = parse_corpus_label(j["label"].get<std::string>());
    if (!label) throw std::invalid_argument("unknown label '" + j["label"].get<std::string>() + "'");
    t.label = label;
  }
  return t;
}

class Collector {
 public:
  void accept(Tweet tweet, std::size_t line) {
    if (auto problem = validate(tweet)) {
      reject(line, *problem);
      return;
    }
    if (!ids_.insert(tweet.id).second) {
      reject(line, "duplicate id '" + tweet.id + "'");
      return;
    }
    result_.tweets.push_back(std::move(tweet));
  }
  void reject(std::size_t line, std::string reason) {
    result_.rejects.push_back({line, std::move(reason)});
  }
  IngestResult finish() && { return std::move(result_); }

 private:
  IngestResult result_;
  std::unordered_set<std::string> ids_;
};

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
  std::optional<std::string> error;
};

// Reads one RFC 4180 record. Returns false at end of input.
bool read_csv_record(std::istream& in, std::size_t& line_no, CsvRecord& record) {
  record.fields.assign(1, std::string{});
  record.error.reset();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  record.line = ++line_no;

  enum class State { FieldStart, Unquoted, Quoted, QuoteInQuoted, Junk } state = State::FieldStart;
  for (;;) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      if (state == State::Quoted) record.error = "unterminated quoted field";
      return true;
    }
    const char ch = static_cast<char>(c);
    switch (state) {
      case State::FieldStart:
      case State::Unquoted:
        if (ch == ',') {
          record.fields.emplace_back();
          state = State::FieldStart;
        } else if (ch == '\n') {
          return true;
        } else if (ch == '\r' && in.peek() == '\n') {
          in.get();
          return true;
        } else if (ch == '"' && state == State::FieldStart) {
          state = State::Quoted;
        } else if (ch == '"') {
          record.error = "quote inside unquoted field";
          state = State::Junk;
        } else {
          record.fields.back().push_back(ch);
          state = State::Unquoted;
        }
        break;
      case State::Quoted:
        if (ch == '"') {
          state = State::QuoteInQuoted;
        } else {
          if (ch == '\n') ++line_no;
          record.fields.back().push_back(ch);
        }
        break;
      case State::QuoteInQuoted:
        if (ch == '"') {
          record.fields.back().push_back('"');
          state = State::Quoted;
        } else if (ch == ',') {
          record.fields.emplace_back();
          state = State::FieldStart;
        } else if (ch == '\n') {
          return true;
        } else if (ch == '\r' && in.peek() == '\n') {
          in.get();
          return true;
        } else {
          record.error = "characters after closing quote";
          state = State::Junk;
        }
        break;
      case State::Junk:
        if (ch == '\n') return true;
        break;
    }
  }
}

}  // namespace

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? CorpusFormat::LabeledCsv : CorpusFormat::TweetJsonl;
}

IngestResult parse_jsonl(std::istream& in) {
  Collector collector;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_line(line)) continue;
    try {
      collector.accept(tweet_from_json(Json::parse(line)), line_no);
    } catch (const Json::exception& e) {
      collector.reject(line_no, std::string("invalid JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
      collector.reject(line_no, e.what());
    }
  }
  return std::move(collector).finish();
}

IngestResult parse_csv(std::istream& in) {
  Collector collector;
  std::size_t line_no = 0;
  CsvRecord record;
  if (in.peek() == 0xEF) {
    char bom[3];
    in.read(bom, 3);
  }
  if (!read_csv_record(in, line_no, record) || record.error ||
      record.fields != std::vector<std::string>{"id", "text", "label"}) {
    throw Error(ErrorCode::AllRecordsMalformed, "CSV corpus must start with header 'id,text,label'");
  }
  while (read_csv_record(in, line_no, record)) {
    if (record.error) {
      collector.reject(record.line, *record.error);
      continue;
    }
    if (record.fields.size() == 1 && record.fields[0].empty()) continue;
    if (record.fields.size() != 3) {
      collector.reject(record.line, "expected 3 fields, found " + std::to_string(record.fields.size()));
      continue;
    }
    Tweet t;
    t.id = record.fields[0];
    t.text = record.fields[1];
    if (!record.fields[2].empty()) {
      t.label = parse_corpus_label(record.fields[2]);
      if (!t.label) {
        collector.reject(record.line, "unknown label '" + record.fields[2] + "'");
        continue;
      }
    }
    collector.accept(std::move(t), record.line);
  }
  return std::move(collector).finish();
}

IngestResult ingest(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open corpus '" + path.string() + "'");
  IngestResult result = format == CorpusFormat::LabeledCsv ? parse_csv(in) : parse_jsonl(in);
  if (result.tweets.empty() && !result.rejects.empty()) {
    throw Error(ErrorCode::AllRecordsMalformed,
                "all " + std::to_string(result.rejects.size()) + " records in '" + path.string() +
                    "' are malformed; first at line " + std::to_string(result.rejects[0].line) +
                    ": " + result.rejects[0].reason);
  }
  return result;
}

std::string tweet_to_json_line(const Tweet& tweet) {
  OrderedJson j;
  j["id"] = tweet.id;
  j["text"] = tweet.text;
  if (tweet.timestamp) j["timestamp"] = *tweet.timestamp;
  if (tweet.geo) j["geo"] = OrderedJson{{"lat", tweet.geo->lat}, {"lon", tweet.geo->lon}};
  if (tweet.label) j["label"] = std::string(to_string(*tweet.label));
  return dump_line(j);
}

void write_jsonl_corpus(std::span<const Tweet> tweets, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write corpus '" + path.string() + "'");
  for (const auto& t : tweets) out << tweet_to_json_line(t) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::string result_to_json_line(const ClassificationResult& r) {
  OrderedJson j;
  j["id"] = r.tweet_id;
  j["label"] = std::string(to_string(r.label));
  j["subtype"] = r.subtype ? OrderedJson(std::string(to_string(*r.subtype))) : OrderedJson(nullptr);
  j["score"] = r.score.value ? OrderedJson(*r.score.value) : OrderedJson(nullptr);
  j["best_token"] = r.score.best_pair ? OrderedJson(r.score.best_pair->tweet_token) : OrderedJson(nullptr);
  j["best_keyword"] = r.score.best_pair ? OrderedJson(r.score.best_pair->keyword) : OrderedJson(nullptr);
  if (r.error) j["error"] = *r.error;
  return dump_line(j);
}

ClassificationResult result_from_json_line(const std::string& line) {
  try {
    const auto j = Json::parse(line);
    ClassificationResult r;
    r.tweet_id = j.at("id").get<std::string>();
    auto label = parse_label(j.at("label").get<std::string>());
    if (!label) throw Error(ErrorCode::MalformedResultsFile, "unknown label in '" + line + "'");
    r.label = *label;
    if (!j.at("subtype").is_null()) {
      const auto s = j["subtype"].get<std::string>();
      if (s == "event") r.subtype = Subtype::Event;
      else if (s == "condition") r.subtype = Subtype::Condition;
      else throw Error(ErrorCode::MalformedResultsFile, "unknown subtype '" + s + "'");
    }
    if (!j.at("score").is_null()) r.score.value = j["score"].get<double>();
    if (!j.at("best_token").is_null() && !j.at("best_keyword").is_null()) {
      r.score.best_pair = BestPair{j["best_token"].get<std::string>(), j["best_keyword"].get<std::string>()};
    }
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedResultsFile, std::string("bad result line: ") + e.what());
  }
}

void write_results(std::span<const ClassificationResult> results,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write results '" + path.string() + "'");
  for (const auto& r : results) out << result_to_json_line(r) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::vector<ClassificationResult> read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open results '" + path.string() + "'");
  std::vector<ClassificationResult> out;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank_line(line)) continue;
    out.push_back(result_from_json_line(line));
  }
  return out;
}

}  // namespace tweetsense
