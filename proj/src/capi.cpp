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

#include "farhash.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "analysis.hpp"
#include "attributes.hpp"
#include "errors.hpp"
#include "investigator.hpp"
#include "pipeline.hpp"
#include "registry.hpp"
#include "sha256.hpp"

// The C surface: opaque handles over the C++ core, exceptions mapped to
// far_status codes, error text parked in a thread-local slot.

struct far_manifest {
  farhash::AttributeManifest value;
};

struct far_schema {
  farhash::IdentitySchema value;
};

struct far_registry {
  farhash::Registry value;
};

namespace {

thread_local std::string t_last_error;

far_status to_status(farhash::Errc code) {
  switch (code) {
    case farhash::Errc::kInternal:
      return FAR_ERROR;
    case farhash::Errc::kParse:
      return FAR_ERR_PARSE;
    case farhash::Errc::kDuplicateObject:
      return FAR_ERR_DUPLICATE;
    case farhash::Errc::kUnknownObject:
      return FAR_ERR_UNKNOWN_OBJECT;
    case farhash::Errc::kMismatch:
      return FAR_ERR_MISMATCH;
    case farhash::Errc::kStoreLocked:
      return FAR_ERR_LOCKED;
    case farhash::Errc::kChainCorrupt:
      return FAR_ERR_CHAIN;
    case farhash::Errc::kIo:
      return FAR_ERR_IO;
    case farhash::Errc::kInvalidArgument:
      return FAR_ERR_INVALID;
  }
  return FAR_ERROR;
}

far_status set_error(far_status status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
far_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const farhash::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(FAR_ERROR, e.what());
  } catch (...) {
    return set_error(FAR_ERROR, "unknown error");
  }
}

char* dup_string(std::string_view text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, text.data(), text.size());
    out[text.size()] = '\0';
  }
  return out;
}

far_status require(bool ok, const char* what) {
  if (ok) return FAR_OK;
  return set_error(FAR_ERR_INVALID, std::string("null argument: ") + what);
}

std::string read_text_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    farhash::fail(farhash::Errc::kIo,
                  "cannot read " + std::string(path == nullptr ? "" : path));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

far_verdict to_c_verdict(farhash::Verdict verdict) {
  switch (verdict) {
    case farhash::Verdict::kIdentical:
      return FAR_VERDICT_IDENTICAL;
    case farhash::Verdict::kDynamicChange:
      return FAR_VERDICT_DYNAMIC_CHANGE;
    case farhash::Verdict::kStaticChange:
      return FAR_VERDICT_STATIC_CHANGE;
    case farhash::Verdict::kInconclusive:
      return FAR_VERDICT_INCONCLUSIVE;
  }
  return FAR_VERDICT_INCONCLUSIVE;
}

std::string label_or_default(const far_manifest* manifest, const char* label) {
  if (label != nullptr && *label != '\0') return label;
  return manifest->value.object_label;
}

}  // namespace

extern "C" {

const char* far_version(void) { return "1.0.0"; }

const char* far_last_error(void) { return t_last_error.c_str(); }

void far_string_free(char* s) { std::free(s); }

far_status far_sha256_hex(const void* data, size_t len, char hex_out[65]) {
  if (auto st = require(hex_out != nullptr && (data != nullptr || len == 0),
                        "data/hex_out")) {
    return st;
  }
  return guarded([&] {
    const auto digest = farhash::sha256(std::span<const std::uint8_t>{
        static_cast<const std::uint8_t*>(data), len});
    const std::string hex = digest.hex();
    std::memcpy(hex_out, hex.c_str(), 65);
    return FAR_OK;
  });
}

far_status far_sha256_hex_with_iv(const void* data, size_t len,
                                  const uint32_t iv_words[8],
                                  char hex_out[65]) {
  if (auto st = require(hex_out != nullptr && iv_words != nullptr &&
                            (data != nullptr || len == 0),
                        "data/iv_words/hex_out")) {
    return st;
  }
  return guarded([&] {
    farhash::InitVector iv;
    for (int i = 0; i < 8; ++i) iv.words[i] = iv_words[i];
    const auto digest = farhash::sha256_with_iv(
        std::span<const std::uint8_t>{static_cast<const std::uint8_t*>(data),
                                      len},
        iv);
    const std::string hex = digest.hex();
    std::memcpy(hex_out, hex.c_str(), 65);
    return FAR_OK;
  });
}

far_status far_fuzzify(const char* text, char** out) {
  if (auto st = require(text != nullptr && out != nullptr, "text/out")) {
    return st;
  }
  return guarded([&] {
    *out = dup_string(farhash::step4_fuzzify(text));
    return FAR_OK;
  });
}

far_status far_manifest_parse(const char* text, far_manifest** out) {
  if (auto st = require(text != nullptr && out != nullptr, "text/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_manifest{farhash::parse_manifest(text)};
    return FAR_OK;
  });
}

far_status far_manifest_load(const char* path, far_manifest** out) {
  if (auto st = require(path != nullptr && out != nullptr, "path/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_manifest{farhash::parse_manifest(read_text_file(path))};
    return FAR_OK;
  });
}

void far_manifest_free(far_manifest* manifest) { delete manifest; }

const char* far_manifest_label(const far_manifest* manifest) {
  return manifest == nullptr ? "" : manifest->value.object_label.c_str();
}

far_status far_schema_parse(const char* text, far_schema** out) {
  if (auto st = require(text != nullptr && out != nullptr, "text/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_schema{farhash::IdentitySchema::parse(text)};
    return FAR_OK;
  });
}

far_status far_schema_load(const char* path, far_schema** out) {
  if (auto st = require(path != nullptr && out != nullptr, "path/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_schema{farhash::IdentitySchema::parse(read_text_file(path))};
    return FAR_OK;
  });
}

far_status far_schema_from_manifest(const far_manifest* manifest,
                                    far_schema** out) {
  if (auto st = require(manifest != nullptr && out != nullptr,
                        "manifest/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_schema{farhash::IdentitySchema::from_manifest(manifest->value)};
    return FAR_OK;
  });
}

void far_schema_free(far_schema* schema) { delete schema; }

size_t far_schema_attribute_count(const far_schema* schema) {
  return schema == nullptr ? 0 : schema->value.attribute_count();
}

far_status far_generate(const far_manifest* manifest, char seed_out[9],
                        char** identifier_out) {
  if (auto st = require(manifest != nullptr && seed_out != nullptr &&
                            identifier_out != nullptr,
                        "manifest/seed_out/identifier_out")) {
    return st;
  }
  return guarded([&] {
    const auto result = farhash::generate(manifest->value);
    std::memcpy(seed_out, result.seed.text.c_str(), 9);
    *identifier_out = dup_string(result.identifier.text);
    return FAR_OK;
  });
}

far_status far_regenerate(const far_manifest* manifest, const char* seed,
                          char** identifier_out) {
  if (auto st = require(manifest != nullptr && seed != nullptr &&
                            identifier_out != nullptr,
                        "manifest/seed/identifier_out")) {
    return st;
  }
  return guarded([&] {
    const auto result =
        farhash::regenerate(manifest->value, farhash::Seed{seed});
    *identifier_out = dup_string(result.identifier.text);
    return FAR_OK;
  });
}

far_status far_diff(const char* old_identifier, const char* new_identifier,
                    const far_schema* schema, far_verdict* verdict_out,
                    char** report_kv_out) {
  if (auto st = require(old_identifier != nullptr && new_identifier != nullptr &&
                            schema != nullptr,
                        "identifiers/schema")) {
    return st;
  }
  return guarded([&] {
    const auto report =
        farhash::localize(farhash::Identifier{old_identifier},
                          farhash::Identifier{new_identifier}, schema->value);
    if (verdict_out != nullptr) *verdict_out = to_c_verdict(report.verdict);
    if (report_kv_out != nullptr) {
      *report_kv_out = dup_string(farhash::render_kv(report));
    }
    return FAR_OK;
  });
}

far_status far_registry_open(const char* store_path, far_registry** out) {
  if (auto st = require(store_path != nullptr && *store_path != '\0' &&
                            out != nullptr,
                        "store_path/out")) {
    return st;
  }
  return guarded([&] {
    *out = new far_registry{farhash::Registry{store_path}};
    return FAR_OK;
  });
}

void far_registry_close(far_registry* registry) { delete registry; }

far_status far_registry_register(far_registry* registry,
                                 const far_manifest* manifest,
                                 const char* label, char seed_out[9],
                                 char** identifier_out) {
  if (auto st = require(registry != nullptr && manifest != nullptr,
                        "registry/manifest")) {
    return st;
  }
  return guarded([&] {
    const auto record = registry->value.register_object(
        manifest->value, label == nullptr || *label == '\0'
                             ? std::nullopt
                             : std::optional<std::string>(label));
    if (seed_out != nullptr) {
      std::memcpy(seed_out, record.seed->text.c_str(), 9);
    }
    if (identifier_out != nullptr) {
      *identifier_out = dup_string(record.identifier.text);
    }
    return FAR_OK;
  });
}

far_status far_registry_update(far_registry* registry,
                               const far_manifest* manifest, const char* label,
                               uint64_t* version_out, char** identifier_out,
                               far_verdict* verdict_out,
                               char** report_kv_out) {
  if (auto st = require(registry != nullptr && manifest != nullptr,
                        "registry/manifest")) {
    return st;
  }
  return guarded([&] {
    const std::string object_label = label_or_default(manifest, label);
    const auto previous = registry->value.history(object_label).back();
    const auto record =
        registry->value.append_version(object_label, manifest->value);

    if (version_out != nullptr) *version_out = record.version;
    if (identifier_out != nullptr) {
      *identifier_out = dup_string(record.identifier.text);
    }
    if (verdict_out != nullptr || report_kv_out != nullptr) {
      farhash::ChangeReport report;
      if (previous.identifier.text.size() == record.identifier.text.size()) {
        report = farhash::localize(
            previous.identifier, record.identifier,
            farhash::IdentitySchema::from_manifest(manifest->value));
      } else {
        report.verdict = farhash::Verdict::kInconclusive;
        report.normalized_distance = 1.0;
      }
      if (verdict_out != nullptr) *verdict_out = to_c_verdict(report.verdict);
      if (report_kv_out != nullptr) {
        *report_kv_out = dup_string(farhash::render_kv(report));
      }
    }
    return FAR_OK;
  });
}

far_status far_registry_verify(far_registry* registry,
                               const far_manifest* manifest, const char* label,
                               far_verdict* verdict_out,
                               char** report_kv_out) {
  if (auto st = require(registry != nullptr && manifest != nullptr,
                        "registry/manifest")) {
    return st;
  }
  return guarded([&] {
    const auto result = registry->value.verify(
        label_or_default(manifest, label), manifest->value);
    if (result.match) {
      if (verdict_out != nullptr) *verdict_out = FAR_VERDICT_IDENTICAL;
      if (report_kv_out != nullptr) *report_kv_out = nullptr;
      return FAR_OK;
    }
    farhash::ChangeReport report;
    if (result.report) {
      report = *result.report;
    } else {
      report.verdict = farhash::Verdict::kInconclusive;
      report.normalized_distance = 1.0;
    }
    if (verdict_out != nullptr) *verdict_out = to_c_verdict(report.verdict);
    if (report_kv_out != nullptr) {
      *report_kv_out = dup_string(farhash::render_kv(report));
    }
    return set_error(FAR_ERR_MISMATCH,
                     "identifier mismatch for the presented manifest");
  });
}

far_status far_registry_history(far_registry* registry, const char* label,
                                char** records_out) {
  if (auto st = require(registry != nullptr && label != nullptr &&
                            records_out != nullptr,
                        "registry/label/records_out")) {
    return st;
  }
  return guarded([&] {
    std::string out;
    for (const auto& record : registry->value.history(label)) {
      out += farhash::serialize_record(record);
      out += '\n';
    }
    *records_out = dup_string(out);
    return FAR_OK;
  });
}

far_status far_registry_check_chain(far_registry* registry,
                                    int64_t* first_bad_out) {
  if (auto st = require(registry != nullptr, "registry")) return st;
  return guarded([&] {
    const auto bad = registry->value.check_chain();
    if (first_bad_out != nullptr) {
      *first_bad_out = bad ? static_cast<int64_t>(*bad) : -1;
    }
    if (bad) {
      return set_error(FAR_ERR_CHAIN, "store chain broken at record " +
                                          std::to_string(*bad));
    }
    return FAR_OK;
  });
}

far_status far_analyze(const char* experiment, uint64_t trials, uint32_t k,
                       uint64_t rng_seed, const char* csv_path, int* pass_out,
                       char** report_kv_out) {
  if (auto st = require(experiment != nullptr, "experiment")) return st;
  return guarded([&] {
    std::string report_kv;
    bool pass = false;
    const farhash::ExperimentReport* csv_source = nullptr;
    farhash::ExperimentReport report;
    farhash::BaselineComparison comparison;

    const std::string_view name = experiment;
    if (name == "dynamic-locality") {
      report = farhash::run_dynamic_locality(trials, k, rng_seed);
    } else if (name == "static-avalanche") {
      report = farhash::run_static_avalanche(trials, k, rng_seed);
    } else if (name == "unlinkability") {
      report = farhash::run_unlinkability(trials, rng_seed);
    } else if (name == "baseline-comparison") {
      comparison = farhash::run_baseline_comparison(trials, k, rng_seed);
      report_kv = farhash::render_kv(comparison);
      pass = comparison.pass;
      csv_source = &comparison.locality;
    } else {
      farhash::fail(farhash::Errc::kParse,
                    "unknown experiment '" + std::string(name) + "'");
    }
    if (report_kv.empty()) {
      report_kv = farhash::render_kv(report);
      pass = report.pass;
      csv_source = &report;
    }

    if (csv_path != nullptr && *csv_path != '\0') {
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv) {
        farhash::fail(farhash::Errc::kIo,
                      "cannot write " + std::string(csv_path));
      }
      farhash::write_csv(*csv_source, csv);
    }

    if (pass_out != nullptr) *pass_out = pass ? 1 : 0;
    if (report_kv_out != nullptr) *report_kv_out = dup_string(report_kv);
    return FAR_OK;
  });
}

}  // extern "C"
