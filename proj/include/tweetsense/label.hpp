// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweetsense Authors

#pragma once

#include <optional>
#include <string_view>

namespace tweetsense {

/// Binary decision. TrafficRelated is the positive class.
enum class Label { Unrelated, TrafficRelated };

inline std::string_view to_string(Label label) noexcept {
  return label == Label::TrafficRelated ? "traffic_related" : "unrelated";
}

inline std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "traffic_related") return Label::TrafficRelated;
  if (text == "unrelated") return Label::Unrelated;
  return std::nullopt;
}

}  // namespace tweetsense
