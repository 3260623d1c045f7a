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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pipeline.hpp"

namespace farhash {

enum class Verdict {
  kIdentical,
  kDynamicChange,
  kStaticChange,
  kInconclusive,
};

std::string_view to_string(Verdict verdict);

/// What changed between two identifier versions, and which attributes
/// explain it.
struct ChangeReport {
  Verdict verdict = Verdict::kIdentical;
  std::vector<std::size_t> changed_attribute_indices;  // 0-based, dynamic only
  std::vector<std::size_t> changed_positions;
  double normalized_distance = 0.0;
};

/// Identifier region attribute i can move: [max(0, 10i-3), min(10K-3, 10i+10)).
/// The 3-char left widening is the fold window bleeding into the previous
/// segment's output.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(std::size_t pos) const { return pos >= begin && pos < end; }
};

Span attribute_span(std::size_t index, std::size_t attribute_count);

/// Normalized character-level Hamming distance. Identifiers of different
/// lengths come from different schemas and are incomparable (error).
double hamming(const Identifier& a, const Identifier& b);

/// Classifies the difference between two identifier versions.
///
/// Changed positions are covered with the fewest attribute spans that
/// explain them. A cover of at most half the schema reads as dynamic drift
/// (those attributes are reported); anything wider means the init vector
/// moved, i.e. a static change. Identifiers that are not alphanumeric do not
/// come out of this pipeline, so a differing pair of those is inconclusive.
ChangeReport localize(const Identifier& old_id, const Identifier& new_id,
                      const IdentitySchema& schema);

/// Machine-readable rendering: verdict=, attrs=, distance=, positions= lines.
std::string render_kv(const ChangeReport& report);

}  // namespace farhash
