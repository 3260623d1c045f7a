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

// Acceptance suite: every release-blocking property, one line each, with
// its time budget. Exits non-zero when anything fails.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "attributes.hpp"
#include "investigator.hpp"
#include "pipeline.hpp"
#include "registry.hpp"
#include "sha256.hpp"
#include "temp_dir.hpp"

using namespace farhash;
using farhash::testing::TempDir;

namespace {

struct Criterion {
  int number;
  std::string title;
  long budget_ms;
  std::function<bool(std::string&)> run;
};

const std::string kSensorManifestText =
    "object: 3d-vision-sensor\n"
    "dynamic|Operating Temperature=28.60\n"
    "dynamic|Working sensors=4\n"
    "dynamic|IP address=0.0.0.0:00\n"
    "static|Mac address=e5:84:e6:2f:33:61\n"
    "static|Type of sensors=infrared\n";

bool step1_vectors(std::string& detail) {
  const bool ok = sha256("4").hex_prefix() == "4b227777" &&
                  sha256("3").hex_prefix() == "4e074085";
  detail = "sha256(\"4\")=" + sha256("4").hex_prefix() + " sha256(\"3\")=" +
           sha256("3").hex_prefix();
  return ok;
}

bool fuzzify_vectors(std::string& detail) {
  const char a = fuzzify_window("s6Zx");
  const char d = fuzzify_window("6Zxv");
  detail = std::string("fuzzify(s6Zx)=") + a + " fuzzify(6Zxv)=" + d;
  return a == 'A' && d == 'D';
}

bool sha_core(std::string& detail) {
  if (sha256("abc").hex() !=
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad" ||
      sha256("").hex() !=
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855" ||
      sha256("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")
              .hex() !=
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1") {
    detail = "published vector mismatch";
    return false;
  }
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    std::string message(rng() % 200, '\0');
    for (char& c : message) c = static_cast<char>(rng() % 256);
    if (sha256_with_iv(message, kStandardIv) != sha256(message)) {
      detail = "standard-iv equivalence failed at trial " + std::to_string(i);
      return false;
    }
  }
  detail = "3 published vectors, 1000 equivalence trials";
  return true;
}

bool locality(std::string& detail) {
  const ExperimentReport report = run_dynamic_locality(1000, 5, 42);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "violations=%llu max=%.6f (bound %.6f) mean=%.6f",
                static_cast<unsigned long long>(report.violations), report.max,
                13.0 / 47.0, report.mean);
  detail = buf;
  return report.pass && report.violations == 0;
}

bool avalanche(std::string& detail) {
  const ExperimentReport report = run_static_avalanche(1000, 5, 43);
  char buf[96];
  std::snprintf(buf, sizeof buf, "mean=%.6f (floor 0.90)", report.mean);
  detail = buf;
  return report.pass && report.mean >= 0.90;
}

bool ordering(std::string& detail) {
  const BaselineComparison comparison = run_baseline_comparison(1000, 5, 44);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "baseline mean=%.6f locality mean=%.6f ordering violations=%llu",
                comparison.baseline.mean, comparison.locality.mean,
                static_cast<unsigned long long>(comparison.ordering_violations));
  detail = buf;
  return comparison.pass && comparison.baseline.mean >= 0.90 &&
         comparison.locality.mean <= 13.0 / 47.0 &&
         comparison.ordering_violations == 0;
}

bool unlinkability(std::string& detail) {
  const ExperimentReport report = run_unlinkability(1000, 45);
  detail = "equal shared segments: " + std::to_string(report.violations) +
           " of 1000 pairs";
  return report.pass && report.violations == 0;
}

bool tamper_evidence(std::string& detail) {
  TempDir dir;
  Registry registry(dir.file("store"));

  // 10 objects x 10 versions = 100 records, with dynamic drift throughout.
  for (int object = 0; object < 10; ++object) {
    AttributeManifest manifest = parse_manifest(kSensorManifestText);
    manifest.object_label = "sensor-" + std::to_string(object);
    manifest.attributes[3].value = "e5:84:e6:2f:33:6" + std::to_string(object);
    registry.register_object(manifest);
    for (int version = 2; version <= 10; ++version) {
      manifest.attributes[1].value = std::to_string(version);
      registry.append_version(manifest.object_label, manifest);
    }
  }

  if (registry.check_chain().has_value()) {
    detail = "fresh chain reported broken";
    return false;
  }
  if (!registry.replay_all()) {
    detail = "historical identifier failed to replay";
    return false;
  }

  // Every single-byte flip, each run through the real chain check. The
  // checks are pure, so they fan out across threads.
  const std::string bytes = TempDir::read(dir.file("store"));
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> undetected{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::string scratch = bytes;
      for (std::size_t i = w; i < scratch.size(); i += workers) {
        scratch[i] = static_cast<char>(scratch[i] ^ 0x01);
        if (!check_chain_bytes(scratch).has_value()) {
          undetected.fetch_add(1, std::memory_order_relaxed);
        }
        scratch[i] = static_cast<char>(scratch[i] ^ 0x01);
      }
    });
  }
  for (std::thread& worker : pool) worker.join();

  detail = "store bytes=" + std::to_string(bytes.size()) +
           " undetected flips=" + std::to_string(undetected.load()) +
           ", 100 identifiers replayed";
  return undetected.load() == 0;
}

bool determinism(std::string& detail) {
  const AttributeManifest manifest = parse_manifest(kSensorManifestText);
  const GenerateResult first = generate(manifest);
  const GenerateResult second = generate(manifest);
  if (first.seed.text != second.seed.text ||
      first.identifier.text != second.identifier.text) {
    detail = "generate is not deterministic";
    return false;
  }
  const std::string reports_a =
      render_kv(run_dynamic_locality(150, 5, 7)) +
      render_kv(run_static_avalanche(150, 5, 7)) +
      render_kv(run_baseline_comparison(150, 5, 7)) +
      render_kv(run_unlinkability(150, 7));
  const std::string reports_b =
      render_kv(run_dynamic_locality(150, 5, 7)) +
      render_kv(run_static_avalanche(150, 5, 7)) +
      render_kv(run_baseline_comparison(150, 5, 7)) +
      render_kv(run_unlinkability(150, 7));
  if (reports_a != reports_b) {
    detail = "analysis reports are not byte-identical";
    return false;
  }
  detail = "seed/identifier and all four reports byte-identical";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "step-1 attribute hash prefixes", 1, step1_vectors},
      {2, "sliding-window fold arithmetic", 1, fuzzify_vectors},
      {3, "sha-256 core vectors and standard-iv equivalence", 1000, sha_core},
      {4, "dynamic locality, 1000 trials at k=5", 30000, locality},
      {5, "static avalanche, 1000 trials", 30000, avalanche},
      {6, "baseline ordering, 1000 trials", 30000, ordering},
      {7, "unlinkability, 1000 pairs", 30000, unlinkability},
      {8, "ledger tamper evidence and replay", 10000, tamper_evidence},
      {9, "determinism of generation and reports", 30000, determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const auto elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
    const bool in_budget = elapsed_ms <= criterion.budget_ms;
    if (!in_budget) {
      detail += " [over budget " + std::to_string(criterion.budget_ms) + " ms]";
    }
    const bool pass = ok && in_budget;
    std::printf("[%s] %d: %s (%lld ms) - %s\n", pass ? "PASS" : "FAIL",
                criterion.number, criterion.title.c_str(),
                static_cast<long long>(elapsed_ms), detail.c_str());
    if (!pass) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
