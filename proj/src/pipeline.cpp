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

#include "pipeline.hpp"

#include <algorithm>
#include <unordered_set>

#include "errors.hpp"

namespace farhash {
namespace {

struct PipelineAttribute {
  std::string name;
  std::string value;
  AttributeClass cls;  // static or dynamic only, post folding
};

// Declared order with volatile attributes folded into one trailing dynamic
// pseudo-attribute whose value is the aggregate.
std::vector<PipelineAttribute> resolve_attributes(
    const AttributeManifest& manifest, double tau,
    const std::optional<VolatileAggregate>& previous_volatile,
    std::optional<VolatileAggregate>& volatile_state_out) {
  validate(manifest);
  std::vector<PipelineAttribute> out;
  std::vector<std::string> volatile_values;
  for (const Attribute& attr : manifest.attributes) {
    if (attr.cls == AttributeClass::kVolatile) {
      volatile_values.push_back(attr.value);
    } else {
      out.push_back({attr.name, attr.value, attr.cls});
    }
  }
  volatile_state_out.reset();
  if (!volatile_values.empty()) {
    VolatileAggregate state =
        aggregate_volatile(volatile_values, previous_volatile, tau);
    out.push_back({std::string(kVolatileAttributeName), state.value,
                   AttributeClass::kDynamic});
    volatile_state_out = std::move(state);
  }

  if (out.size() < 2) {
    fail(Errc::kInvalidArgument,
         "identifier needs at least 2 attributes after volatile folding");
  }
  if (std::none_of(out.begin(), out.end(), [](const PipelineAttribute& a) {
        return a.cls == AttributeClass::kStatic;
      })) {
    fail(Errc::kInvalidArgument, "identifier needs at least 1 static attribute");
  }
  return out;
}

void check_seed(const Seed& seed) {
  if (seed.text.size() != kSeedLength || !is_alnum_ascii(seed.text)) {
    fail(Errc::kInvalidArgument, "malformed seed '" + seed.text + "'");
  }
}

GenerateResult run_pipeline(const AttributeManifest& manifest,
                            const std::optional<Seed>& issued_seed, double tau,
                            const std::optional<VolatileAggregate>& previous) {
  GenerateResult result;
  const std::vector<PipelineAttribute> attrs =
      resolve_attributes(manifest, tau, previous, result.volatile_state);

  std::vector<Digest> digests;
  digests.reserve(attrs.size());
  for (const PipelineAttribute& attr : attrs) {
    digests.push_back(sha256(canonicalize(attr.value)));
  }

  result.seed = issued_seed ? *issued_seed : step1plus_seed(digests);

  std::vector<Prefix32> static_prefixes;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i].cls == AttributeClass::kStatic) {
      static_prefixes.push_back({digests[i].hex_prefix()});
    }
  }
  const InitVector iv = step2_iv(static_prefixes, result.seed);

  std::string concatenated;
  concatenated.reserve(attrs.size() * kSegmentLength);
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    Segment segment = step3_segment({digests[i].hex_prefix()}, iv);
    concatenated += segment.text;
    result.segments.push_back(std::move(segment));
    result.schema.entries.push_back({attrs[i].name, attrs[i].cls});
  }
  result.identifier.text = step4_fuzzify(concatenated);
  return result;
}

}  // namespace

bool is_alnum_ascii(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') ||
         (c >= 'a' && c <= 'z');
}

bool is_alnum_ascii(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return is_alnum_ascii(c); });
}

std::string IdentitySchema::serialize() const {
  std::string out;
  for (const Entry& entry : entries) {
    out += std::string(to_string(entry.cls));
    out += '|';
    out += entry.name;
    out += '\n';
  }
  return out;
}

Digest IdentitySchema::digest() const { return sha256(serialize()); }

IdentitySchema IdentitySchema::parse(std::string_view text) {
  IdentitySchema schema;
  std::unordered_set<std::string> seen;
  bool saw_volatile = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? text : text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (line.empty() || line.front() == '#' || line.starts_with("object:")) {
      continue;
    }
    const std::size_t bar = line.find('|');
    if (bar == std::string_view::npos) {
      fail(Errc::kParse, "schema line " + std::to_string(line_no) +
                             ": expected '<class>|<name>'");
    }
    const std::string_view token = line.substr(0, bar);
    AttributeClass cls;
    if (token == "static") {
      cls = AttributeClass::kStatic;
    } else if (token == "dynamic") {
      cls = AttributeClass::kDynamic;
    } else if (token == "volatile") {
      saw_volatile = true;
      continue;  // folds into the trailing pseudo-attribute
    } else {
      fail(Errc::kParse, "schema line " + std::to_string(line_no) +
                             ": unknown class '" + std::string(token) + "'");
    }
    std::string_view name = line.substr(bar + 1);
    if (const std::size_t eq = name.find('='); eq != std::string_view::npos) {
      name = name.substr(0, eq);  // manifest line; drop the value
    }
    if (name.empty()) {
      fail(Errc::kParse,
           "schema line " + std::to_string(line_no) + ": empty name");
    }
    if (!seen.insert(std::string(name)).second) {
      fail(Errc::kParse, "schema line " + std::to_string(line_no) +
                             ": duplicate name '" + std::string(name) + "'");
    }
    schema.entries.push_back({std::string(name), cls});
  }
  if (saw_volatile) {
    schema.entries.push_back(
        {std::string(kVolatileAttributeName), AttributeClass::kDynamic});
  }

  if (schema.entries.size() < 2) {
    fail(Errc::kParse, "schema: need at least 2 attributes");
  }
  if (std::none_of(
          schema.entries.begin(), schema.entries.end(),
          [](const Entry& e) { return e.cls == AttributeClass::kStatic; })) {
    fail(Errc::kParse, "schema: need at least 1 static attribute");
  }
  return schema;
}

IdentitySchema IdentitySchema::from_manifest(const AttributeManifest& manifest) {
  IdentitySchema schema;
  bool saw_volatile = false;
  for (const Attribute& attr : manifest.attributes) {
    if (attr.cls == AttributeClass::kVolatile) {
      saw_volatile = true;
    } else {
      schema.entries.push_back({attr.name, attr.cls});
    }
  }
  if (saw_volatile) {
    schema.entries.push_back(
        {std::string(kVolatileAttributeName), AttributeClass::kDynamic});
  }
  if (schema.entries.size() < 2) {
    fail(Errc::kInvalidArgument, "schema: need at least 2 attributes");
  }
  return schema;
}

Prefix32 step1_prefix(std::string_view canonical_value) {
  return {sha256(canonical_value).hex_prefix()};
}

Seed step1plus_seed(const std::vector<Digest>& full_digests) {
  if (full_digests.empty()) {
    fail(Errc::kInvalidArgument, "seed derivation needs at least one digest");
  }
  std::string master;
  master.reserve(full_digests.size() * 64);
  for (const Digest& digest : full_digests) master += digest.hex();
  return {step4_fuzzify(sha256(master).hex()).substr(0, kSeedLength)};
}

InitVector step2_iv(const std::vector<Prefix32>& static_prefixes,
                    const Seed& seed) {
  if (static_prefixes.empty()) {
    fail(Errc::kInvalidArgument, "init vector needs at least 1 static prefix");
  }
  check_seed(seed);
  std::string material;
  material.reserve(static_prefixes.size() * kPrefixLength + kSeedLength);
  for (const Prefix32& prefix : static_prefixes) material += prefix.text;
  material += seed.text;
  return derive_iv(sha256(material));
}

std::string base62_digest(const Digest& digest) {
  // Repeated long division of the 32-byte big-endian integer by 62.
  // 62^43 > 2^256, so 43 digits always suffice.
  std::array<std::uint8_t, 32> work = digest.bytes;
  std::string out(kBase62DigestLength, '0');
  for (std::size_t pos = kBase62DigestLength; pos-- > 0;) {
    std::uint32_t rem = 0;
    for (std::uint8_t& byte : work) {
      const std::uint32_t acc = (rem << 8) | byte;
      byte = static_cast<std::uint8_t>(acc / 62);
      rem = acc % 62;
    }
    out[pos] = kBase62Alphabet[rem];
  }
  return out;
}

Segment step3_segment(const Prefix32& prefix, const InitVector& iv) {
  const Digest digest = sha256_with_iv(prefix.text, iv);
  return {base62_digest(digest).substr(0, kSegmentLength)};
}

char fuzzify_window(std::string_view window) {
  if (window.size() != kWindowLength) {
    fail(Errc::kInvalidArgument, "fuzzify window must be 4 chars");
  }
  int sum = 0;
  for (const char c : window) {
    if (!is_alnum_ascii(c)) {
      fail(Errc::kInvalidArgument,
           "fuzzify input must be alphanumeric ASCII");
    }
    sum += static_cast<unsigned char>(c);
  }
  sum %= 123;                        // ASCII 'z' is 122
  if (sum < 48) sum += 48;           // below '0'
  if (sum >= 58 && sum <= 64) sum += 7;  // ':' .. '@'
  if (sum >= 91 && sum <= 96) sum += 8;  // '[' .. '`'
  const char out = static_cast<char>(sum);
  if (!is_alnum_ascii(out)) {
    fail(Errc::kInternal, "fuzzify left the alphanumeric alphabet");
  }
  return out;
}

std::string step4_fuzzify(std::string_view concatenated) {
  if (concatenated.size() < kWindowLength) {
    fail(Errc::kInvalidArgument, "fuzzify input shorter than one window");
  }
  std::string out(concatenated.size() - (kWindowLength - 1), '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fuzzify_window(concatenated.substr(i, kWindowLength));
  }
  return out;
}

GenerateResult generate(const AttributeManifest& manifest, double tau,
                        const std::optional<VolatileAggregate>& previous_volatile) {
  return run_pipeline(manifest, std::nullopt, tau, previous_volatile);
}

GenerateResult regenerate(const AttributeManifest& manifest, const Seed& seed,
                          double tau,
                          const std::optional<VolatileAggregate>& previous_volatile) {
  check_seed(seed);
  return run_pipeline(manifest, seed, tau, previous_volatile);
}

}  // namespace farhash
