// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#include "tweetsense/evaluation.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "tweetsense/error.hpp"

namespace tweetsense {

namespace {

std::string four_decimals(const std::optional<double>& value) {
  if (!value) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *value);
  return buf;
}

nlohmann::ordered_json metric_json(const std::optional<double>& value) {
  nlohmann::ordered_json j;
  j["value"] = value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
  j["defined"] = value.has_value();
  j["display"] = four_decimals(value);
  return j;
}

}  // namespace

std::optional<double> precision_of(std::uint64_t tp, std::uint64_t fp) {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> recall_of(std::uint64_t tp, std::uint64_t fn) {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> f1_of(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  const auto p = precision_of(tp, fp);
  const auto r = recall_of(tp, fn);
  if (!p || !r || *p + *r == 0.0) return std::nullopt;
  return 2.0 * *p * *r / (*p + *r);
}

EvaluationReport report_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                                    std::uint64_t tn, double threshold_used) {
  EvaluationReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.tn = tn;
  r.n = tp + fp + fn + tn;
  if (r.n > 0) r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(r.n);
  r.precision = precision_of(tp, fp);
  r.recall = recall_of(tp, fn);
  r.f1 = f1_of(tp, fp, fn);
  r.threshold_used = threshold_used;
  return r;
}

EvaluationReport evaluate(std::span<const Label> predictions, std::span<const Label> truths,
                          double threshold_used) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predictions.size()) +
                                               " predictions for " +
                                               std::to_string(truths.size()) + " truths");
  }
  if (predictions.empty()) throw Error(ErrorCode::EmptyInput, "nothing to evaluate");
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool predicted = predictions[i] == Label::TrafficRelated;
    const bool actual = truths[i] == Label::TrafficRelated;
    if (predicted && actual) ++tp;
    else if (predicted) ++fp;
    else if (actual) ++fn;
    else ++tn;
  }
  return report_from_counts(tp, fp, fn, tn, threshold_used);
}

double compare_reports(const EvaluationReport& a, const EvaluationReport& b) {
  return std::fabs(a.accuracy.value_or(0.0) - b.accuracy.value_or(0.0));
}

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["tp"] = report.tp;
  j["fp"] = report.fp;
  j["fn"] = report.fn;
  j["tn"] = report.tn;
  j["accuracy"] = metric_json(report.accuracy);
  j["precision"] = metric_json(report.precision);
  j["recall"] = metric_json(report.recall);
  j["f1"] = metric_json(report.f1);
  j["threshold_used"] = report.threshold_used;
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    auto metric = [&](const char* key) -> std::optional<double> {
      const auto& m = j.at(key);
      if (!m.at("defined").get<bool>()) return std::nullopt;
      return m.at("value").get<double>();
    };
    EvaluationReport r;
    r.n = j.at("n").get<std::uint64_t>();
    r.tp = j.at("tp").get<std::uint64_t>();
    r.fp = j.at("fp").get<std::uint64_t>();
    r.fn = j.at("fn").get<std::uint64_t>();
    r.tn = j.at("tn").get<std::uint64_t>();
    r.accuracy = metric("accuracy");
    r.precision = metric("precision");
    r.recall = metric("recall");
    r.f1 = metric("f1");
    r.threshold_used = j.at("threshold_used").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResultsFile, std::string("bad report: ") + e.what());
  }
}

std::string format_summary(const EvaluationReport& r) {
  return "n=" + std::to_string(r.n) + " tp=" + std::to_string(r.tp) +
         " fp=" + std::to_string(r.fp) + " fn=" + std::to_string(r.fn) +
         " tn=" + std::to_string(r.tn) + " accuracy=" + four_decimals(r.accuracy) +
         " precision=" + four_decimals(r.precision) + " recall=" + four_decimals(r.recall) +
         " f1=" + four_decimals(r.f1);
}

}  // namespace tweetsense
