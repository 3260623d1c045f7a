// Copyright 2026 The farhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "investigator.hpp"

#include <cstdio>

#include "errors.hpp"

namespace farhash {
namespace {

std::string join_indices(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string format_distance(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kIdentical:
      return "IDENTICAL";
    case Verdict::kDynamicChange:
      return "DYNAMIC_CHANGE";
    case Verdict::kStaticChange:
      return "STATIC_CHANGE";
    case Verdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Span attribute_span(std::size_t index, std::size_t attribute_count) {
  const std::size_t start = index * kSegmentLength;
  const std::size_t length =
      attribute_count * kSegmentLength - (kWindowLength - 1);
  Span span;
  span.begin = start < (kWindowLength - 1) ? 0 : start - (kWindowLength - 1);
  span.end = std::min(length, start + kSegmentLength);
  return span;
}

double hamming(const Identifier& a, const Identifier& b) {
  if (a.text.size() != b.text.size()) {
    fail(Errc::kInvalidArgument,
         "identifiers of different length are incomparable");
  }
  if (a.text.empty()) return 0.0;
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.text.size(); ++i) {
    if (a.text[i] != b.text[i]) ++differing;
  }
  return static_cast<double>(differing) / static_cast<double>(a.text.size());
}

ChangeReport localize(const Identifier& old_id, const Identifier& new_id,
                      const IdentitySchema& schema) {
  if (old_id.text.size() != new_id.text.size()) {
    fail(Errc::kInvalidArgument,
         "identifiers of different length are incomparable");
  }
  if (old_id.text.size() != schema.identifier_length()) {
    fail(Errc::kInvalidArgument,
         "identifier length does not match the schema");
  }

  ChangeReport report;
  for (std::size_t i = 0; i < old_id.text.size(); ++i) {
    if (old_id.text[i] != new_id.text[i]) report.changed_positions.push_back(i);
  }
  report.normalized_distance =
      static_cast<double>(report.changed_positions.size()) /
      static_cast<double>(old_id.text.size());

  if (report.changed_positions.empty()) {
    report.verdict = Verdict::kIdentical;
    return report;
  }
  if (!is_alnum_ascii(old_id.text) || !is_alnum_ascii(new_id.text)) {
    report.verdict = Verdict::kInconclusive;
    return report;
  }

  // Minimum span cover, greedy left to right. For each leftmost uncovered
  // changed position the containing span reaching furthest right belongs to
  // attribute (pos + 3) / 10.
  const std::size_t count = schema.attribute_count();
  std::vector<std::size_t> cover;
  std::size_t covered_until = 0;  // positions below this are handled
  for (const std::size_t pos : report.changed_positions) {
    if (!cover.empty() && pos < covered_until) continue;
    const std::size_t attr = (pos + kWindowLength - 1) / kSegmentLength;
    cover.push_back(attr);
    covered_until = attribute_span(attr, count).end;
  }

  if (2 * cover.size() <= count) {
    report.verdict = Verdict::kDynamicChange;
    report.changed_attribute_indices = std::move(cover);
  } else {
    report.verdict = Verdict::kStaticChange;
  }
  return report;
}

std::string render_kv(const ChangeReport& report) {
  std::string out;
  out += "verdict=";
  out += to_string(report.verdict);
  out += "\nattrs=";
  out += join_indices(report.changed_attribute_indices);
  out += "\ndistance=";
  out += format_distance(report.normalized_distance);
  out += "\npositions=";
  out += join_indices(report.changed_positions);
  out += '\n';
  return out;
}

}  // namespace farhash
