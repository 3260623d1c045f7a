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

#include "analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>

#include "errors.hpp"
#include "investigator.hpp"

namespace farhash {
namespace {

constexpr std::size_t kMaxValueLength = 32;

// mt19937_64 with plain modulo reduction: identical draws on every platform,
// which is what keeps reports byte-stable across builds. The modulo bias is
// irrelevant at these ranges.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

  std::string value() {
    const std::size_t length = 1 + below(kMaxValueLength);
    std::string out(length, '0');
    for (char& c : out) c = kBase62Alphabet[below(kBase62Alphabet.size())];
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

void check_preconditions(std::uint64_t trials, std::size_t k) {
  if (trials < kMinTrials) {
    fail(Errc::kInvalidArgument,
         "trials must be at least " + std::to_string(kMinTrials));
  }
  if (k < 2) fail(Errc::kInvalidArgument, "k must be at least 2");
}

// K attributes named a0..a{K-1}: two static (one when K == 2), the rest
// dynamic. Values are uniform alphanumeric strings of length 1..32.
AttributeManifest random_manifest(TrialRng& rng, std::size_t k) {
  AttributeManifest manifest;
  manifest.object_label = "trial";
  const std::size_t statics = k == 2 ? 1 : 2;
  for (std::size_t i = 0; i < k; ++i) {
    Attribute attr;
    attr.name = "a" + std::to_string(i);
    attr.value = rng.value();
    attr.cls = i < statics ? AttributeClass::kStatic : AttributeClass::kDynamic;
    manifest.attributes.push_back(std::move(attr));
  }
  return manifest;
}

std::string distribution_note(std::size_t k) {
  const std::size_t statics = k == 2 ? 1 : 2;
  return "k=" + std::to_string(k) + " attributes (" + std::to_string(statics) +
         " static), values uniform alphanumeric of length 1.." +
         std::to_string(kMaxValueLength);
}

// Replaces the value at `index` with a fresh draw guaranteed to differ.
void mutate_value(TrialRng& rng, AttributeManifest& manifest,
                  std::size_t index) {
  std::string fresh = rng.value();
  while (fresh == manifest.attributes[index].value) fresh = rng.value();
  manifest.attributes[index].value = std::move(fresh);
}

void finish_stats(ExperimentReport& report) {
  double sum = 0.0;
  report.min = report.distances.empty() ? 0.0 : report.distances.front();
  report.max = report.min;
  for (const double d : report.distances) {
    sum += d;
    report.min = std::min(report.min, d);
    report.max = std::max(report.max, d);
  }
  report.mean =
      report.distances.empty() ? 0.0 : sum / static_cast<double>(report.distances.size());
}

std::string format6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

}  // namespace

Identifier baseline_identifier(const AttributeManifest& manifest) {
  return {base62_digest(sha256(serialize(manifest)))};
}

ExperimentReport run_dynamic_locality(std::uint64_t trials, std::size_t k,
                                      std::uint64_t rng_seed) {
  check_preconditions(trials, k);
  TrialRng rng(rng_seed);

  ExperimentReport report;
  report.name = "dynamic-locality";
  report.trials = trials;
  report.attribute_count = k;
  report.rng_seed = rng_seed;
  report.distribution = distribution_note(k) + "; one dynamic value mutated";
  const std::size_t id_length = kSegmentLength * k - (kWindowLength - 1);
  const std::size_t max_changed = kSegmentLength + (kWindowLength - 1);
  report.bound = "per-trial distance <= " +
                 format6(static_cast<double>(max_changed) /
                         static_cast<double>(id_length));

  const std::size_t statics = k == 2 ? 1 : 2;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    AttributeManifest manifest = random_manifest(rng, k);
    const GenerateResult before = generate(manifest);
    const std::size_t index = statics + rng.below(k - statics);
    mutate_value(rng, manifest, index);
    const GenerateResult after = regenerate(manifest, before.seed);

    const Span span = attribute_span(index, k);
    std::size_t changed = 0;
    bool out_of_span = false;
    for (std::size_t pos = 0; pos < id_length; ++pos) {
      if (before.identifier.text[pos] != after.identifier.text[pos]) {
        ++changed;
        if (!span.contains(pos)) out_of_span = true;
      }
    }
    if (out_of_span || changed > max_changed) ++report.violations;
    report.distances.push_back(static_cast<double>(changed) /
                               static_cast<double>(id_length));
  }

  finish_stats(report);
  report.pass = report.violations == 0 && report.mean > 0.0;
  return report;
}

ExperimentReport run_static_avalanche(std::uint64_t trials, std::size_t k,
                                      std::uint64_t rng_seed) {
  check_preconditions(trials, k);
  TrialRng rng(rng_seed);

  ExperimentReport report;
  report.name = "static-avalanche";
  report.trials = trials;
  report.attribute_count = k;
  report.rng_seed = rng_seed;
  report.distribution = distribution_note(k) + "; one static value mutated";
  report.bound = "mean distance >= 0.900000";

  const std::size_t statics = k == 2 ? 1 : 2;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    AttributeManifest manifest = random_manifest(rng, k);
    const GenerateResult before = generate(manifest);
    mutate_value(rng, manifest, rng.below(statics));
    const GenerateResult after = regenerate(manifest, before.seed);
    report.distances.push_back(hamming(before.identifier, after.identifier));
  }

  finish_stats(report);
  report.pass = report.mean >= 0.90;
  return report;
}

BaselineComparison run_baseline_comparison(std::uint64_t trials, std::size_t k,
                                           std::uint64_t rng_seed) {
  check_preconditions(trials, k);
  TrialRng rng(rng_seed);

  BaselineComparison comparison;
  const std::size_t id_length = kSegmentLength * k - (kWindowLength - 1);
  const std::size_t max_changed = kSegmentLength + (kWindowLength - 1);
  const double locality_bound =
      static_cast<double>(max_changed) / static_cast<double>(id_length);

  comparison.locality.name = "baseline-comparison/locality";
  comparison.locality.bound = "mean distance <= " + format6(locality_bound);
  comparison.baseline.name = "baseline-comparison/baseline";
  comparison.baseline.bound = "mean distance >= 0.900000";
  for (ExperimentReport* report :
       {&comparison.locality, &comparison.baseline}) {
    report->trials = trials;
    report->attribute_count = k;
    report->rng_seed = rng_seed;
    report->distribution = distribution_note(k) + "; one dynamic value mutated";
  }

  const std::size_t statics = k == 2 ? 1 : 2;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    AttributeManifest manifest = random_manifest(rng, k);
    const GenerateResult before = generate(manifest);
    const Identifier baseline_before = baseline_identifier(manifest);
    mutate_value(rng, manifest, statics + rng.below(k - statics));
    const GenerateResult after = regenerate(manifest, before.seed);
    const Identifier baseline_after = baseline_identifier(manifest);

    const double locality_distance =
        hamming(before.identifier, after.identifier);
    const double baseline_distance = hamming(baseline_before, baseline_after);
    comparison.locality.distances.push_back(locality_distance);
    comparison.baseline.distances.push_back(baseline_distance);
    if (baseline_distance <= locality_distance) {
      ++comparison.ordering_violations;
    }
  }

  finish_stats(comparison.locality);
  finish_stats(comparison.baseline);
  comparison.locality.pass = comparison.locality.mean <= locality_bound;
  comparison.baseline.pass = comparison.baseline.mean >= 0.90;
  comparison.pass = comparison.locality.pass && comparison.baseline.pass &&
                    comparison.ordering_violations == 0;
  return comparison;
}

ExperimentReport run_unlinkability(std::uint64_t trials,
                                   std::uint64_t rng_seed) {
  constexpr std::size_t k = 5;
  check_preconditions(trials, k);
  TrialRng rng(rng_seed);

  ExperimentReport report;
  report.name = "unlinkability";
  report.trials = trials;
  report.attribute_count = k;
  report.rng_seed = rng_seed;
  report.distribution =
      distribution_note(k) + "; pair shares one value, all others redrawn";
  report.bound = "equal shared-attribute segments == 0";

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const AttributeManifest first = random_manifest(rng, k);
    AttributeManifest second = random_manifest(rng, k);
    const std::size_t shared = rng.below(k);
    second.attributes[shared].value = first.attributes[shared].value;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != shared) {
        while (second.attributes[i].value == first.attributes[i].value) {
          second.attributes[i].value = rng.value();
        }
      }
    }

    const GenerateResult a = generate(first);
    const GenerateResult b = generate(second);
    const Segment& segment_a = a.segments[shared];
    const Segment& segment_b = b.segments[shared];
    if (segment_a == segment_b) ++report.violations;

    std::size_t differing = 0;
    for (std::size_t i = 0; i < kSegmentLength; ++i) {
      if (segment_a.text[i] != segment_b.text[i]) ++differing;
    }
    report.distances.push_back(static_cast<double>(differing) /
                               static_cast<double>(kSegmentLength));
  }

  finish_stats(report);
  report.pass = report.violations == 0;
  return report;
}

std::string render_kv(const ExperimentReport& report) {
  std::string out;
  out += "experiment=" + report.name + "\n";
  out += "trials=" + std::to_string(report.trials) + "\n";
  out += "k=" + std::to_string(report.attribute_count) + "\n";
  out += "rng_seed=" + std::to_string(report.rng_seed) + "\n";
  out += "distribution=" + report.distribution + "\n";
  out += "mean=" + format6(report.mean) + "\n";
  out += "min=" + format6(report.min) + "\n";
  out += "max=" + format6(report.max) + "\n";
  out += "bound=" + report.bound + "\n";
  out += "violations=" + std::to_string(report.violations) + "\n";
  out += std::string("pass=") + (report.pass ? "true" : "false") + "\n";
  return out;
}

std::string render_kv(const BaselineComparison& comparison) {
  std::string out = render_kv(comparison.locality);
  out += render_kv(comparison.baseline);
  out += "ordering_violations=" +
         std::to_string(comparison.ordering_violations) + "\n";
  out += std::string("pass=") + (comparison.pass ? "true" : "false") + "\n";
  return out;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,distance\n";
  for (std::size_t i = 0; i < report.distances.size(); ++i) {
    out << i << ',' << format6(report.distances[i]) << '\n';
  }
}

}  // namespace farhash
