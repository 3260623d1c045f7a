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

#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "errors.hpp"
#include "investigator.hpp"

using namespace farhash;

// Golden values in this file were frozen from tests/oracle/
// reference_pipeline.py, an independent Python implementation of the same
// construction.

namespace {

const std::string kSensorManifestText =
    "object: 3d-vision-sensor\n"
    "dynamic|Operating Temperature=28.60\n"
    "dynamic|Working sensors=4\n"
    "dynamic|IP address=0.0.0.0:00\n"
    "static|Mac address=e5:84:e6:2f:33:61\n"
    "static|Type of sensors=infrared\n";

AttributeManifest sensor_manifest() {
  return parse_manifest(kSensorManifestText);
}

AttributeManifest with_value(AttributeManifest manifest,
                             const std::string& name,
                             const std::string& value) {
  for (Attribute& attr : manifest.attributes) {
    if (attr.name == name) attr.value = value;
  }
  return manifest;
}

std::string random_alnum(std::mt19937_64& rng, std::size_t max_len) {
  std::string out(1 + rng() % max_len, '0');
  for (char& c : out) c = kBase62Alphabet[rng() % 62];
  return out;
}

}  // namespace

TEST_CASE("step 1 prefixes") {
  CHECK(step1_prefix("4").text == "4b227777");
  CHECK(step1_prefix("3").text == "4e074085");
  CHECK(step1_prefix("").text == "e3b0c442");
}

TEST_CASE("fuzzify window arithmetic") {
  CHECK(fuzzify_window("s6Zx") == 'A');  // 379 -> 10 -> 58 -> 65
  CHECK(fuzzify_window("6Zxv") == 'D');
  CHECK(fuzzify_window("0000") == 'E');  // 192 -> 69, no band shift
  CHECK(fuzzify_window("AAAA") == 'E');  // 260 -> 14 -> 62 -> 69
  CHECK_THROWS_AS(fuzzify_window("s6Z"), Error);
  CHECK_THROWS_AS(fuzzify_window("s6Z!"), Error);
}

TEST_CASE("fuzzify over a string") {
  CHECK(step4_fuzzify("s6Zxv").substr(0, 2) == "AD");
  CHECK(step4_fuzzify("AAAA") == "E");
  CHECK(step4_fuzzify("abcdef").size() == 3);
  CHECK_THROWS_AS(step4_fuzzify("abc"), Error);
  CHECK_THROWS_AS(step4_fuzzify("abc def"), Error);
}

TEST_CASE("fuzzify output stays alphanumeric for every window value") {
  // All multisets of 4 alphanumeric chars reduce to a sum in [192, 488];
  // sweep the whole sum range via repeated chars plus mixed picks.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20000; ++i) {
    std::string window(4, '0');
    for (char& c : window) c = kBase62Alphabet[rng() % 62];
    CHECK(is_alnum_ascii(fuzzify_window(window)));
  }
}

TEST_CASE("seed derivation") {
  const std::vector<Digest> single{sha256("4")};
  const Seed seed = step1plus_seed(single);
  CHECK(seed.text == "366CAEDB");  // oracle value
  CHECK(seed.text.size() == 8);
  CHECK(step1plus_seed(single) == seed);
  CHECK_THROWS_AS(step1plus_seed({}), Error);
}

TEST_CASE("init vector from static prefixes and seed") {
  const std::vector<Prefix32> prefixes{{"d99d6835"}, {"bd0f2196"}};
  const Seed seed{"b07de73m"};
  const InitVector iv = step2_iv(prefixes, seed);
  const InitVector expected{{0x130191c0u, 0xba13c669u, 0xe413765du,
                             0x846d1fe5u, 0x6204e9a6u, 0xa0ddb5b1u,
                             0x22133447u, 0x2497e532u}};
  CHECK(iv == expected);
  CHECK(step2_iv(prefixes, seed) == iv);

  // Any seed character change moves the vector and with it every segment.
  const InitVector other = step2_iv(prefixes, Seed{"b07de73n"});
  CHECK(other != iv);
  CHECK(step3_segment({"4b227777"}, iv) != step3_segment({"4b227777"}, other));

  CHECK_THROWS_AS(step2_iv({}, seed), Error);
  CHECK_THROWS_AS(step2_iv(prefixes, Seed{"short"}), Error);
  CHECK_THROWS_AS(step2_iv(prefixes, Seed{"bad-seed"}), Error);
}

TEST_CASE("base-62 digest rendering") {
  CHECK(base62_digest(sha256("abc")) ==
        "iDUK5mbjE0q8kxKur8d0acwb3mlMY7nzH5i6WpR5bav");  // oracle value
  CHECK(base62_digest(Digest{}) == std::string(43, '0'));
  Digest one{};
  one.bytes[31] = 61;
  CHECK(base62_digest(one) == std::string(42, '0') + "z");
}

TEST_CASE("segments") {
  InitVector test_iv;
  for (std::uint32_t i = 0; i < 8; ++i) test_iv.words[i] = i;
  const Segment segment = step3_segment({"4b227777"}, test_iv);
  CHECK(segment.text == "63hksuWocl");  // oracle value under words 0..7
  CHECK(step3_segment({"4b227777"}, test_iv) == segment);

  // No collisions across 1000 distinct random prefixes under one vector.
  std::mt19937_64 rng(17);
  std::set<std::string> prefixes;
  while (prefixes.size() < 1000) {
    std::string p(8, '0');
    for (char& c : p) c = "0123456789abcdef"[rng() % 16];
    prefixes.insert(p);
  }
  std::set<std::string> segments;
  for (const std::string& p : prefixes) {
    segments.insert(step3_segment({p}, test_iv).text);
  }
  CHECK(segments.size() == 1000);
}

TEST_CASE("generate reproduces the sensor example end to end") {
  const GenerateResult result = generate(sensor_manifest());
  CHECK(result.seed.text == "447BCEeU");  // oracle value
  CHECK(result.identifier.text ==
        "ZD5qiEfOBScTxR0TJYHBKJk3EFdAUXmeCO09eILhhG04IGp");  // oracle value
  CHECK(result.identifier.text.size() == 47);                // 10*5 - 3
  CHECK(result.schema.attribute_count() == 5);
  CHECK(result.segments.size() == 5);
  CHECK(!result.volatile_state.has_value());

  // Stable across runs.
  CHECK(generate(sensor_manifest()).identifier == result.identifier);
  CHECK(generate(sensor_manifest()).seed == result.seed);
}

TEST_CASE("dynamic change moves only its own region") {
  const GenerateResult before = generate(sensor_manifest());
  const AttributeManifest changed =
      with_value(sensor_manifest(), "Working sensors", "3");
  const GenerateResult after = regenerate(changed, before.seed);
  CHECK(after.identifier.text ==
        "ZD5qiEfceqhdJoCRyUSEKJk3EFdAUXmeCO09eILhhG04IGp");  // oracle value

  // Attribute index 1: changes confined to [7, 20).
  for (std::size_t pos = 0; pos < 47; ++pos) {
    if (before.identifier.text[pos] != after.identifier.text[pos]) {
      CHECK(pos >= 7);
      CHECK(pos < 20);
    }
  }
}

TEST_CASE("static change rewrites the identifier") {
  const GenerateResult before = generate(sensor_manifest());
  const AttributeManifest changed =
      with_value(sensor_manifest(), "Type of sensors", "ultrasonic");
  const GenerateResult after = regenerate(changed, before.seed);
  std::size_t differing = 0;
  for (std::size_t pos = 0; pos < 47; ++pos) {
    if (before.identifier.text[pos] != after.identifier.text[pos]) ++differing;
  }
  CHECK(differing == 45);  // oracle value; ~0.96 of all positions
}

TEST_CASE("regenerate agrees with generate and validates its seed") {
  const AttributeManifest manifest = sensor_manifest();
  const GenerateResult fresh = generate(manifest);
  const GenerateResult again = regenerate(manifest, fresh.seed);
  CHECK(again.identifier == fresh.identifier);
  CHECK(again.seed == fresh.seed);

  CHECK_THROWS_AS(regenerate(manifest, Seed{"nope"}), Error);
  CHECK_THROWS_AS(regenerate(manifest, Seed{"has space"}), Error);

  // A wrong (but well-formed) seed never reproduces the identifier.
  std::mt19937_64 rng(23);
  int accidental_matches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string wrong(8, '0');
    for (char& c : wrong) c = kBase62Alphabet[rng() % 62];
    if (wrong == fresh.seed.text) continue;
    if (regenerate(manifest, Seed{wrong}).identifier == fresh.identifier) {
      ++accidental_matches;
    }
  }
  CHECK(accidental_matches == 0);
}

TEST_CASE("length law and alphabet closure") {
  std::mt19937_64 rng(29);
  for (std::size_t k = 2; k <= 9; ++k) {
    AttributeManifest manifest;
    manifest.object_label = "obj";
    for (std::size_t i = 0; i < k; ++i) {
      manifest.attributes.push_back({"a" + std::to_string(i),
                                     random_alnum(rng, 24),
                                     i == 0 ? AttributeClass::kStatic
                                            : AttributeClass::kDynamic});
    }
    const GenerateResult result = generate(manifest);
    CHECK(result.identifier.text.size() == 10 * k - 3);
    CHECK(is_alnum_ascii(result.identifier.text));
    CHECK(is_alnum_ascii(result.seed.text));
  }
}

TEST_CASE("attribute order is significant") {
  const AttributeManifest manifest = sensor_manifest();
  AttributeManifest swapped = manifest;
  std::swap(swapped.attributes[0], swapped.attributes[1]);  // both dynamic
  CHECK(generate(swapped).identifier != generate(manifest).identifier);
}

TEST_CASE("volatile attributes fold into one trailing dynamic entry") {
  const AttributeManifest manifest = parse_manifest(
      "object: worn\n"
      "static|serial=S-100\n"
      "volatile|scratch-left=2\n"
      "dynamic|firmware=1.2\n"
      "volatile|scratch-right=0\n");
  const GenerateResult result = generate(manifest);
  REQUIRE(result.schema.attribute_count() == 3);  // serial, firmware, ~volatile
  CHECK(result.schema.entries[0].name == "serial");
  CHECK(result.schema.entries[1].name == "firmware");
  CHECK(result.schema.entries[2].name == kVolatileAttributeName);
  CHECK(result.schema.entries[2].cls == AttributeClass::kDynamic);
  CHECK(result.identifier.text.size() == 27);
  REQUIRE(result.volatile_state.has_value());
  CHECK(result.volatile_state->value.size() == 8);

  // Sub-threshold volatile churn leaves the identifier untouched when the
  // previous aggregate state is carried over.
  AttributeManifest drifted = manifest;
  drifted.attributes[1].value = "3";  // 1 of 2 volatile values, 0.5 <= tau
  const GenerateResult after =
      regenerate(drifted, result.seed, 0.5, result.volatile_state);
  CHECK(after.identifier == result.identifier);

  // Without carried state the aggregate is recomputed fresh and moves.
  const GenerateResult fresh = regenerate(drifted, result.seed);
  CHECK(fresh.identifier != result.identifier);
}

TEST_CASE("pipeline preconditions") {
  AttributeManifest one_attr;
  one_attr.object_label = "solo";
  one_attr.attributes.push_back({"only", "1", AttributeClass::kStatic});
  CHECK_THROWS_AS(generate(one_attr), Error);  // k >= 2

  AttributeManifest no_static;
  no_static.object_label = "ns";
  no_static.attributes.push_back({"a", "1", AttributeClass::kDynamic});
  no_static.attributes.push_back({"b", "2", AttributeClass::kDynamic});
  CHECK_THROWS_AS(generate(no_static), Error);
}

TEST_CASE("schema parse and serialize") {
  const IdentitySchema schema =
      IdentitySchema::from_manifest(sensor_manifest());
  CHECK(schema.serialize() ==
        "dynamic|Operating Temperature\n"
        "dynamic|Working sensors\n"
        "dynamic|IP address\n"
        "static|Mac address\n"
        "static|Type of sensors\n");
  CHECK(IdentitySchema::parse(schema.serialize()) == schema);
  // Manifest text doubles as a schema descriptor.
  CHECK(IdentitySchema::parse(kSensorManifestText) == schema);
  CHECK(schema.identifier_length() == 47);

  CHECK_THROWS_AS(IdentitySchema::parse("static|only\n"), Error);
  CHECK_THROWS_AS(IdentitySchema::parse("dynamic|a\ndynamic|b\n"), Error);
  CHECK_THROWS_AS(IdentitySchema::parse("static|a\nwhat|b\n"), Error);
}

TEST_CASE("segments of equal values differ across objects") {
  // Identical value, different seeds: the shared value's segment must not
  // leak. 1000 pairs, zero collisions expected.
  std::mt19937_64 rng(31);
  int collisions = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string shared = random_alnum(rng, 16);
    AttributeManifest a, b;
    a.object_label = "a";
    b.object_label = "b";
    a.attributes.push_back({"t", shared, AttributeClass::kStatic});
    b.attributes.push_back({"t", shared, AttributeClass::kStatic});
    const std::string au = random_alnum(rng, 16);
    std::string bu = random_alnum(rng, 16);
    while (bu == au) bu = random_alnum(rng, 16);
    a.attributes.push_back({"u", au, AttributeClass::kDynamic});
    b.attributes.push_back({"u", bu, AttributeClass::kDynamic});
    const GenerateResult ra = generate(a);
    const GenerateResult rb = generate(b);
    if (ra.seed == rb.seed || ra.segments[0] == rb.segments[0]) ++collisions;
  }
  CHECK(collisions == 0);
}
