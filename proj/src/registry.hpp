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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "investigator.hpp"
#include "pipeline.hpp"

namespace farhash {

// A local, append-only, hash-chained ledger of seeds, schemas and identifier
// versions. It stands in for a public ledger: anyone holding the store (and
// the archived manifests alongside it) can recompute every identifier ever
// recorded, and any edit to history breaks the chain.
//
// Store layout: one record per line,
//
//   sequence_no=..;object_label=..;version=..;schema_digest=..;
//   manifest_digest=..;seed=..;identifier=..;timestamp=..;prev_hash=..;
//   record_hash=..
//
// in exactly that field order, LF endings, with `seed` present only on a
// version-1 record. record_hash is the SHA-256 of the line's bytes up to and
// excluding ";record_hash="; prev_hash chains to the predecessor line and is
// all zeros on the first record.
//
// Manifests are archived content-addressed in `<store>.manifests` so that
// history stays replayable; a record's manifest_digest is the lookup key.

struct LedgerRecord {
  std::uint64_t sequence_no = 0;
  std::string object_label;
  std::uint64_t version = 1;
  std::string schema_digest;    // 64 hex chars
  std::string manifest_digest;  // 64 hex chars
  std::optional<Seed> seed;     // version 1 only
  Identifier identifier;
  std::int64_t timestamp = 0;  // UTC seconds
  std::string prev_hash;       // 64 hex chars
  std::string record_hash;     // 64 hex chars
};

/// Renders the full record line (no trailing newline).
std::string serialize_record(const LedgerRecord& record);

/// Strict inverse of serialize_record; field order and shapes are enforced.
LedgerRecord parse_record(std::string_view line);

/// Pure chain check over a whole store image: recomputes every record hash,
/// every link and the sequence numbering. Returns the first inconsistent
/// sequence number, or nullopt when the chain is intact.
std::optional<std::uint64_t> check_chain_bytes(std::string_view store_bytes);

struct VerifyResult {
  bool match = false;
  Identifier recorded;    // latest ledger identifier
  Identifier recomputed;  // from the presented manifest + stored seed
  // Localization of the mismatch; absent when the presented manifest yields
  // an identifier of a different length (incomparable schemas).
  std::optional<ChangeReport> report;
};

class Registry {
 public:
  explicit Registry(std::filesystem::path store_path,
                    double tau = kDefaultVolatileThreshold);

  /// First-time registration: generates seed + identifier, archives the
  /// manifest and appends the version-1 record. The object label defaults to
  /// the manifest's own; `label` overrides it. Labels must not contain ';'
  /// or newlines (they live inside the record line).
  LedgerRecord register_object(const AttributeManifest& manifest,
                               std::optional<std::string> label = std::nullopt);

  /// Appends version n+1, regenerated under the stored seed. Volatile
  /// aggregate state is replayed from the archived history so sub-threshold
  /// churn keeps the previous aggregate.
  LedgerRecord append_version(std::string_view label,
                              const AttributeManifest& manifest);

  /// Recomputes the identifier from the presented manifest and the stored
  /// seed and compares it with the latest recorded one.
  VerifyResult verify(std::string_view label,
                      const AttributeManifest& manifest) const;

  /// First broken sequence number, or nullopt when intact (or empty).
  std::optional<std::uint64_t> check_chain() const;

  /// All records for one object, version-ascending.
  std::vector<LedgerRecord> history(std::string_view label) const;

  /// Recomputes every recorded identifier of the object from its archived
  /// manifests and the stored seed; true when all of them reproduce.
  bool replay(std::string_view label) const;

  /// replay() over every object in the store.
  bool replay_all() const;

  const std::filesystem::path& store_path() const { return path_; }

 private:
  std::vector<LedgerRecord> load_records() const;
  std::optional<std::string> find_manifest_text(
      std::string_view manifest_digest) const;
  std::string load_manifest_text(std::string_view manifest_digest) const;
  void archive_manifest(std::string_view digest_hex, std::string_view text);
  LedgerRecord append_record(std::vector<LedgerRecord>& records,
                             LedgerRecord record);
  // Volatile aggregate state after replaying the object's archived versions.
  std::optional<VolatileAggregate> replay_volatile_state(
      const std::vector<LedgerRecord>& object_records) const;

  std::filesystem::path path_;
  std::filesystem::path archive_path_;
  double tau_;
};

}  // namespace farhash
