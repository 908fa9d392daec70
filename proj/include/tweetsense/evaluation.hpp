// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "tweetsense/label.hpp"

namespace tweetsense {

/// Confusion counts and the metrics derived from them. A metric is nullopt
/// when its denominator is zero; it is never silently reported as 0.
struct EvaluationReport {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
  std::uint64_t n = 0;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  double threshold_used = 0.0;

  bool operator==(const EvaluationReport&) const = default;
};

std::optional<double> precision_of(std::uint64_t tp, std::uint64_t fp);
std::optional<double> recall_of(std::uint64_t tp, std::uint64_t fn);
/// Harmonic mean of precision and recall; undefined when either is, or when both are 0.
std::optional<double> f1_of(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);

EvaluationReport report_from_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn,
                                    std::uint64_t tn, double threshold_used);

EvaluationReport evaluate(std::span<const Label> predictions, std::span<const Label> truths,
                          double threshold_used);

/// Absolute accuracy difference, as a fraction.
double compare_reports(const EvaluationReport& a, const EvaluationReport& b);

/// Byte-deterministic JSON. Each metric is an object with "value" (null when
/// undefined), "defined" and a 4-decimal "display" string.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const std::string& text);

/// One-line human summary, metrics rounded to 4 decimals.
std::string format_summary(const EvaluationReport& report);

}  // namespace tweetsense
