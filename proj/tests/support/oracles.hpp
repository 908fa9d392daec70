// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

// Brute-force reference computations. None of these call into the code
// paths they are used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

/// Plain left-to-right double accumulation.
inline double naive_dot(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += double(a[i]) * double(b[i]);
  return sum;
}

inline std::size_t utf8_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

/// Full count, then k rounds of "pick the best remaining" selection.
inline std::vector<std::pair<std::string, std::uint64_t>> brute_force_top_k(
    const std::vector<std::vector<std::string>>& tweets, std::size_t k,
    const std::set<std::string>& stopwords) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& tokens : tweets) {
    for (const auto& t : tokens) counts[t] += 1;
  }
  std::vector<std::pair<std::string, std::uint64_t>> pool;
  for (const auto& [token, count] : counts) {
    if (stopwords.count(token) == 0 && utf8_length(token) >= 2) pool.emplace_back(token, count);
  }
  std::vector<std::pair<std::string, std::uint64_t>> top;
  std::vector<bool> taken(pool.size(), false);
  while (top.size() < k) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      if (!best || pool[i].second > pool[*best].second ||
          (pool[i].second == pool[*best].second && pool[i].first < pool[*best].first)) {
        best = i;
      }
    }
    if (!best) break;
    taken[*best] = true;
    top.push_back(pool[*best]);
  }
  return top;
}

struct OracleScore {
  std::optional<double> value;
  std::size_t token_pos = 0;
  std::size_t keyword_rank = 0;
  std::size_t covered = 0;
};

/// Enumerates every (token, keyword) pair. `vectors_of` maps a word to its
/// unit vector (or nullopt when out of vocabulary).
template <typename VectorOf>
OracleScore pairwise_max_score(const std::vector<std::string>& tokens,
                               const std::vector<std::string>& keywords, VectorOf vectors_of) {
  struct Pair {
    double value;
    std::size_t t, k;
  };
  std::vector<Pair> pairs;
  OracleScore out;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    auto tv = vectors_of(tokens[t]);
    if (!tv) continue;
    ++out.covered;
    for (std::size_t k = 0; k < keywords.size(); ++k) {
      auto kv = vectors_of(keywords[k]);
      if (!kv) continue;
      double v = naive_dot(*tv, *kv);
      v = v > 1.0 ? 1.0 : (v < -1.0 ? -1.0 : v);
      pairs.push_back({v, t, k});
    }
  }
  for (const auto& p : pairs) {
    if (!out.value || p.value > *out.value ||
        (p.value == *out.value && (p.t < out.token_pos || (p.t == out.token_pos && p.k < out.keyword_rank)))) {
      out.value = p.value;
      out.token_pos = p.t;
      out.keyword_rank = p.k;
    }
  }
  return out;
}

struct OracleExample {
  std::optional<double> score;
  bool positive;
};

inline double f1_by_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp == 0) return 0.0;
  return 2.0 * double(tp) / double(2 * tp + fp + fn);
}

inline double f1_at(const std::vector<OracleExample>& examples, double theta) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& e : examples) {
    const bool predicted = e.score.has_value() && *e.score >= theta;
    if (predicted && e.positive) ++tp;
    else if (predicted) ++fp;
    else if (e.positive) ++fn;
  }
  return f1_by_counts(tp, fp, fn);
}

/// Every candidate the calibrator may consider: midpoints between adjacent
/// distinct scores plus one point below the minimum and one above the maximum.
inline std::vector<double> candidate_thresholds(const std::vector<OracleExample>& examples) {
  std::set<double> distinct;
  for (const auto& e : examples) {
    if (e.score) distinct.insert(*e.score);
  }
  std::vector<double> sorted(distinct.begin(), distinct.end());
  std::vector<double> out;
  if (sorted.empty()) return out;
  out.push_back(sorted.front() > -1.0 ? (sorted.front() + -1.0) / 2.0 : -1.0);
  for (std::size_t i = 1; i < sorted.size(); ++i) out.push_back((sorted[i - 1] + sorted[i]) / 2.0);
  out.push_back(sorted.back() < 1.0 ? (sorted.back() + 1.0) / 2.0 : 1.0);
  return out;
}

struct ScanResult {
  double best_f1 = 0.0;
  std::vector<double> best_thetas;
};

inline ScanResult exhaustive_threshold_scan(const std::vector<OracleExample>& examples) {
  ScanResult result;
  std::vector<std::pair<double, double>> scored;
  for (double theta : candidate_thresholds(examples)) scored.emplace_back(theta, f1_at(examples, theta));
  for (const auto& [_, f1] : scored) result.best_f1 = std::max(result.best_f1, f1);
  for (const auto& [theta, f1] : scored) {
    if (std::abs(f1 - result.best_f1) <= 1e-12) result.best_thetas.push_back(theta);
  }
  return result;
}

}  // namespace testsupport
