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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sha256.hpp"

namespace farhash {

// Quasi-identifier classes. A static attribute defines the identity: changing
// it must change the whole identifier. A dynamic attribute may drift within
// the same identity and must only move its own identifier region. Volatile
// attributes matter only as a set and are folded into one aggregate value.
enum class AttributeClass { kStatic, kDynamic, kVolatile };

std::string_view to_string(AttributeClass cls);

struct Attribute {
  std::string name;   // unique per manifest; no '=' or newline
  std::string value;  // verbatim UTF-8; no newline
  AttributeClass cls = AttributeClass::kDynamic;
};

/// An ordered, classified list of quasi-identifiers for one object. Order is
/// significant: it fixes the concatenation order of every hashing step, which
/// is what makes identifiers reproducible by third parties.
struct AttributeManifest {
  std::string object_label;
  std::vector<Attribute> attributes;

  std::vector<std::string> values_of(AttributeClass cls) const;
};

/// Parses the line-based manifest format:
///
///   object: <label>
///   <class>|<name>=<value>
///
/// where <class> is static, dynamic or volatile. Lines starting with '#' and
/// blank lines are ignored. Everything after the first '=' is the value,
/// verbatim. Errors carry 1-based line numbers.
AttributeManifest parse_manifest(std::string_view text);

/// Rejects manifests that cannot survive a serialize/parse round trip:
/// empty or duplicate names, '=' or newlines in names, newlines in values
/// or the label. parse_manifest output always passes.
void validate(const AttributeManifest& manifest);

/// Canonical re-rendering: object line plus one line per attribute in
/// declared order, LF endings, comments dropped. parse(serialize(m)) == m;
/// validates first.
std::string serialize(const AttributeManifest& manifest);

/// The byte sequence that gets hashed for a value: the exact UTF-8 bytes,
/// with no trimming, case folding or normalization ("28.60" != "28.6").
std::string canonicalize(std::string_view value);

/// The folded stand-in for the volatile attribute set, plus the per-value
/// digest snapshot it was accepted against. The aggregate only moves when
/// more than `change_fraction_threshold` of the values changed since the
/// snapshot, so sub-threshold churn never shows up in the identifier.
struct VolatileAggregate {
  std::string value;  // 8 lowercase hex chars, step-1-prefix shaped
  double change_fraction_threshold = 0.5;
  std::vector<Digest> snapshot;  // digests of the values behind `value`

  friend bool operator==(const VolatileAggregate&,
                         const VolatileAggregate&) = default;
};

inline constexpr double kDefaultVolatileThreshold = 0.5;

/// Computes the aggregate for `volatile_values` (in declared order). With no
/// previous aggregate the fresh candidate is returned. Otherwise the
/// candidate replaces `previous` only when the fraction of values whose
/// individual digest changed since the snapshot exceeds tau; values are
/// compared positionally and count mismatches count as changes.
VolatileAggregate aggregate_volatile(
    const std::vector<std::string>& volatile_values,
    const std::optional<VolatileAggregate>& previous,
    double tau = kDefaultVolatileThreshold);

}  // namespace farhash
