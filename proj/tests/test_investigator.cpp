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

#include <doctest.h>

#include <random>
#include <string>

#include "errors.hpp"

using namespace farhash;

namespace {

AttributeManifest random_manifest(std::mt19937_64& rng, std::size_t k) {
  AttributeManifest manifest;
  manifest.object_label = "obj";
  for (std::size_t i = 0; i < k; ++i) {
    std::string value(1 + rng() % 24, '0');
    for (char& c : value) c = kBase62Alphabet[rng() % 62];
    manifest.attributes.push_back(
        {"a" + std::to_string(i), value,
         i < 2 ? AttributeClass::kStatic : AttributeClass::kDynamic});
  }
  return manifest;
}

void mutate(std::mt19937_64& rng, AttributeManifest& manifest,
            std::size_t index) {
  std::string fresh(1 + rng() % 24, '0');
  for (char& c : fresh) c = kBase62Alphabet[rng() % 62];
  while (fresh == manifest.attributes[index].value) fresh += 'x';
  manifest.attributes[index].value = fresh;
}

}  // namespace

TEST_CASE("attribute spans") {
  CHECK(attribute_span(0, 5).begin == 0);
  CHECK(attribute_span(0, 5).end == 10);
  CHECK(attribute_span(1, 5).begin == 7);
  CHECK(attribute_span(1, 5).end == 20);
  CHECK(attribute_span(4, 5).begin == 37);
  CHECK(attribute_span(4, 5).end == 47);  // clipped to 10K-3

  // Spans tile the identifier: every position belongs to some span.
  for (std::size_t pos = 0; pos < 47; ++pos) {
    bool covered = false;
    for (std::size_t i = 0; i < 5; ++i) {
      covered = covered || attribute_span(i, 5).contains(pos);
    }
    CHECK(covered);
  }
}

TEST_CASE("hamming distance") {
  CHECK(hamming(Identifier{"abc"}, Identifier{"abc"}) == 0.0);
  CHECK(hamming(Identifier{"abc"}, Identifier{"abd"}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(hamming(Identifier{"abc"}, Identifier{"abcd"}), Error);
}

TEST_CASE("localize verdicts on crafted inputs") {
  std::mt19937_64 rng(41);
  const AttributeManifest manifest = random_manifest(rng, 5);
  const IdentitySchema schema = IdentitySchema::from_manifest(manifest);
  const GenerateResult base = generate(manifest);

  SUBCASE("identical") {
    const ChangeReport report =
        localize(base.identifier, base.identifier, schema);
    CHECK(report.verdict == Verdict::kIdentical);
    CHECK(report.changed_positions.empty());
    CHECK(report.normalized_distance == 0.0);
  }

  SUBCASE("length mismatches are errors") {
    CHECK_THROWS_AS(
        localize(base.identifier, Identifier{"short"}, schema), Error);
    Identifier wrong_schema_length{std::string(37, 'a')};
    CHECK_THROWS_AS(
        localize(wrong_schema_length, wrong_schema_length, schema), Error);
  }

  SUBCASE("garbage identifiers are inconclusive") {
    Identifier garbled = base.identifier;
    garbled.text[11] = '!';
    const ChangeReport report = localize(base.identifier, garbled, schema);
    CHECK(report.verdict == Verdict::kInconclusive);
    CHECK(!report.changed_positions.empty());
  }
}

TEST_CASE("single dynamic changes localize to the right attribute") {
  std::mt19937_64 rng(43);
  int correct = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    AttributeManifest manifest = random_manifest(rng, 5);
    const IdentitySchema schema = IdentitySchema::from_manifest(manifest);
    const GenerateResult before = generate(manifest);
    const std::size_t index = 2 + rng() % 3;  // dynamic attributes
    mutate(rng, manifest, index);
    const GenerateResult after = regenerate(manifest, before.seed);

    const ChangeReport report =
        localize(before.identifier, after.identifier, schema);
    if (report.verdict == Verdict::kDynamicChange &&
        report.changed_attribute_indices == std::vector<std::size_t>{index}) {
      ++correct;
    }
  }
  // Residual: a change confined to the 3-char overlap between neighboring
  // spans can be attributed to the neighbor.
  CHECK(correct >= 990);
}

TEST_CASE("static changes classify as static") {
  std::mt19937_64 rng(47);
  int correct = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    AttributeManifest manifest = random_manifest(rng, 5);
    const IdentitySchema schema = IdentitySchema::from_manifest(manifest);
    const GenerateResult before = generate(manifest);
    mutate(rng, manifest, rng() % 2);  // static attributes
    const GenerateResult after = regenerate(manifest, before.seed);
    const ChangeReport report =
        localize(before.identifier, after.identifier, schema);
    if (report.verdict == Verdict::kStaticChange) ++correct;
  }
  CHECK(correct == trials);
}

TEST_CASE("two simultaneous dynamic changes report both attributes") {
  std::mt19937_64 rng(53);
  AttributeManifest manifest = random_manifest(rng, 7);
  const IdentitySchema schema = IdentitySchema::from_manifest(manifest);
  const GenerateResult before = generate(manifest);
  mutate(rng, manifest, 2);
  mutate(rng, manifest, 5);
  const GenerateResult after = regenerate(manifest, before.seed);
  const ChangeReport report =
      localize(before.identifier, after.identifier, schema);
  CHECK(report.verdict == Verdict::kDynamicChange);
  CHECK(report.changed_attribute_indices == std::vector<std::size_t>{2, 5});
}

TEST_CASE("localize is symmetric") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 200; ++t) {
    AttributeManifest manifest = random_manifest(rng, 5);
    const IdentitySchema schema = IdentitySchema::from_manifest(manifest);
    const GenerateResult before = generate(manifest);
    mutate(rng, manifest, rng() % 5);
    const GenerateResult after = regenerate(manifest, before.seed);

    const ChangeReport forward =
        localize(before.identifier, after.identifier, schema);
    const ChangeReport backward =
        localize(after.identifier, before.identifier, schema);
    CHECK(forward.verdict == backward.verdict);
    CHECK(forward.changed_positions == backward.changed_positions);
    CHECK(forward.changed_attribute_indices ==
          backward.changed_attribute_indices);
  }
}

TEST_CASE("dynamic distances sit far below static distances") {
  std::mt19937_64 rng(61);
  double dynamic_total = 0.0;
  double static_total = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    AttributeManifest manifest = random_manifest(rng, 5);
    const GenerateResult before = generate(manifest);

    AttributeManifest dyn = manifest;
    mutate(rng, dyn, 2 + rng() % 3);
    dynamic_total +=
        hamming(before.identifier, regenerate(dyn, before.seed).identifier);

    AttributeManifest sta = manifest;
    mutate(rng, sta, rng() % 2);
    static_total +=
        hamming(before.identifier, regenerate(sta, before.seed).identifier);
  }
  const double dynamic_mean = dynamic_total / trials;
  const double static_mean = static_total / trials;
  CHECK(dynamic_mean < static_mean);
  CHECK(static_mean - dynamic_mean >= 0.5);
}

TEST_CASE("report rendering") {
  ChangeReport report;
  report.verdict = Verdict::kDynamicChange;
  report.changed_attribute_indices = {1};
  report.changed_positions = {7, 8, 9};
  report.normalized_distance = 3.0 / 47.0;
  CHECK(render_kv(report) ==
        "verdict=DYNAMIC_CHANGE\nattrs=1\ndistance=0.063830\n"
        "positions=7,8,9\n");
}
