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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attributes.hpp"
#include "sha256.hpp"

namespace farhash {

// The identifier construction, stage by stage:
//
//   1   every attribute value is hashed with standard SHA-256; the first
//       eight hex chars (32 bits) travel on as that attribute's prefix
//   1+  once per object, a lifetime seed is folded out of all full digests
//   2   the static prefixes plus the seed are hashed, and the digest's eight
//       words replace the SHA-256 init vector
//   3   each prefix is re-hashed under the per-object init vector and the
//       digest is rendered as a 10-char base-62 segment
//   4   the concatenated segments pass through a width-4, stride-1 sliding
//       window fold that melts each segment boundary into its neighbors
//
// Dynamic value changes only move their own segment (plus up to three
// leading fold characters); static changes move the init vector and with it
// every segment.

inline constexpr std::size_t kPrefixLength = 8;    // hex chars, 32 bits
inline constexpr std::size_t kSeedLength = 8;
inline constexpr std::size_t kSegmentLength = 10;
inline constexpr std::size_t kWindowLength = 4;
inline constexpr std::size_t kBase62DigestLength = 43;  // ceil(256 / log2 62)

inline constexpr std::string_view kBase62Alphabet =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Name given to the folded volatile set when it joins the schema.
inline constexpr std::string_view kVolatileAttributeName = "~volatile";

struct Prefix32 {
  std::string text;  // 8 lowercase hex chars
  friend bool operator==(const Prefix32&, const Prefix32&) = default;
};

struct Seed {
  std::string text;  // 8 alphanumeric chars, fixed for the object's lifetime
  friend bool operator==(const Seed&, const Seed&) = default;
};

struct Segment {
  std::string text;  // 10 base-62 chars
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Identifier {
  std::string text;  // 10*K - 3 alphanumeric chars for K schema attributes
  friend bool operator==(const Identifier&, const Identifier&) = default;
};

/// Ordered attribute names and classes after volatile folding. Fixes K and
/// with it the identifier layout; a verifier needs it to map identifier
/// regions back to attributes.
struct IdentitySchema {
  struct Entry {
    std::string name;
    AttributeClass cls = AttributeClass::kDynamic;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::vector<Entry> entries;

  std::size_t attribute_count() const { return entries.size(); }
  std::size_t identifier_length() const {
    return kSegmentLength * entries.size() - (kWindowLength - 1);
  }

  /// Canonical form: one `<class>|<name>` line per entry, LF endings.
  std::string serialize() const;
  Digest digest() const;

  /// Accepts the canonical form as well as full manifest text (values and
  /// the object line are ignored); volatile entries fold as in a manifest.
  static IdentitySchema parse(std::string_view text);
  static IdentitySchema from_manifest(const AttributeManifest& manifest);

  friend bool operator==(const IdentitySchema&, const IdentitySchema&) = default;
};

bool is_alnum_ascii(char c);
bool is_alnum_ascii(std::string_view text);

/// Stage 1: first 32 bits of the value's SHA-256, as 8 lowercase hex chars.
Prefix32 step1_prefix(std::string_view canonical_value);

/// Stage 1+: seed = first 8 chars of the sliding-window fold of the hex
/// digest of the concatenated full digest renderings. Happens once per
/// object; every later regeneration reuses the stored seed.
Seed step1plus_seed(const std::vector<Digest>& full_digests);

/// Stage 2: hash the static prefixes (schema order) with the seed appended
/// and split the digest into the eight init-vector words.
InitVector step2_iv(const std::vector<Prefix32>& static_prefixes,
                    const Seed& seed);

/// Stage 3: hash the prefix under the per-object init vector, render the
/// digest as a 43-char base-62 number (big-endian, left '0'-padded) and keep
/// the first 10 chars.
Segment step3_segment(const Prefix32& prefix, const InitVector& iv);

/// Stage 4 primitive: sum of the four code points, mod 123, then shifted
/// into the alphanumeric bands (+48 below '0', +7 across ':'..'@', +8 across
/// '['..'`'). Total is 379 -> 10 -> 58 -> 65 ('A') for "s6Zx".
char fuzzify_window(std::string_view window);

/// Stage 4: width-4 stride-1 window over the whole string; output length is
/// input length minus 3. Input must be alphanumeric and at least 4 chars.
std::string step4_fuzzify(std::string_view concatenated);

/// Full 43-char base-62 rendering of a digest taken as a 256-bit big-endian
/// integer. Shared by stage 3 and the whole-manifest baseline hasher.
std::string base62_digest(const Digest& digest);

struct GenerateResult {
  Seed seed;
  Identifier identifier;
  IdentitySchema schema;
  std::vector<Segment> segments;  // one per schema attribute, pre-fold
  // Aggregate state actually used, when the manifest has volatile
  // attributes; feed it back as `previous_volatile` on the next version.
  std::optional<VolatileAggregate> volatile_state;
};

/// Runs stages 1 through 4, deriving a fresh seed (stage 1+).
GenerateResult generate(
    const AttributeManifest& manifest,
    double tau = kDefaultVolatileThreshold,
    const std::optional<VolatileAggregate>& previous_volatile = std::nullopt);

/// Stages 2 through 4 under a previously issued seed. generate(m) and
/// regenerate(m, generate(m).seed) agree on the identifier.
GenerateResult regenerate(
    const AttributeManifest& manifest, const Seed& seed,
    double tau = kDefaultVolatileThreshold,
    const std::optional<VolatileAggregate>& previous_volatile = std::nullopt);

}  // namespace farhash
