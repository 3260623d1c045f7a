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
#include <iosfwd>
#include <string>
#include <vector>

#include "pipeline.hpp"

namespace farhash {

// Statistical checks of the identifier's distance behavior, at desk scale:
// dynamic drift stays inside its locality span, static changes avalanche,
// a whole-manifest hash has no locality at all, and shared attribute values
// never produce shared segments across objects. Every experiment is
// deterministic in its rng seed.

struct ExperimentReport {
  std::string name;
  std::uint64_t trials = 0;
  std::size_t attribute_count = 0;  // K
  std::uint64_t rng_seed = 0;
  std::string distribution;  // how trial inputs were drawn
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::string bound;  // the declared pass bound, human readable
  std::uint64_t violations = 0;
  bool pass = false;
  std::vector<double> distances;  // per trial, in trial order
};

inline constexpr std::uint64_t kMinTrials = 100;

/// One random dynamic mutation per trial. Violations: any changed identifier
/// position outside the mutated attribute's span, or more than 13 changed
/// positions. Passes when there are none and the mean distance is positive.
ExperimentReport run_dynamic_locality(std::uint64_t trials, std::size_t k,
                                      std::uint64_t rng_seed);

/// One random static mutation per trial; passes when the mean normalized
/// distance is at least 0.90.
ExperimentReport run_static_avalanche(std::uint64_t trials, std::size_t k,
                                      std::uint64_t rng_seed);

/// The same dynamic mutations scored twice: against the locality-preserving
/// identifier and against a whole-manifest baseline hash. Passes when the
/// baseline mean is >= 0.90, the locality mean is within its span bound, and
/// the baseline distance exceeds the locality distance in every trial.
struct BaselineComparison {
  ExperimentReport locality;  // distances of the attribute-wise identifier
  ExperimentReport baseline;  // distances of the whole-manifest hash
  std::uint64_t ordering_violations = 0;
  bool pass = false;
};
BaselineComparison run_baseline_comparison(std::uint64_t trials, std::size_t k,
                                           std::uint64_t rng_seed);

/// Pairs of objects sharing exactly one attribute value. Per-trial distance
/// is the Hamming distance between the two segments for the shared
/// attribute; a violation is an equal segment pair. Passes at zero.
ExperimentReport run_unlinkability(std::uint64_t trials,
                                   std::uint64_t rng_seed);

/// 43-char base-62 rendering of the SHA-256 of the serialized manifest: the
/// "standard hash" identifier every distance comparison runs against.
Identifier baseline_identifier(const AttributeManifest& manifest);

/// key=value lines, byte-stable for a given report.
std::string render_kv(const ExperimentReport& report);
std::string render_kv(const BaselineComparison& comparison);

/// Per-trial distances as `trial,distance` CSV for external plotting.
void write_csv(const ExperimentReport& report, std::ostream& out);

}  // namespace farhash
