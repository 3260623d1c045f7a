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

#include "registry.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace farhash {
namespace {

constexpr std::string_view kGenesisHash =
    "0000000000000000000000000000000000000000000000000000000000000000";

bool is_hex64(std::string_view text) {
  if (text.size() != 64) return false;
  for (const char c : text) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

// One writer at a time: `<store>.lock` is created exclusively for the
// duration of a write and removed afterwards. A surviving lock file from a
// crashed writer has to be removed by hand.
class StoreLock {
 public:
  explicit StoreLock(const std::filesystem::path& store_path)
      : lock_path_(store_path.string() + ".lock") {
    file_ = std::fopen(lock_path_.c_str(), "wx");
    if (file_ == nullptr) {
      fail(Errc::kStoreLocked,
           "store is locked by another writer (" + lock_path_.string() + ")");
    }
  }

  ~StoreLock() {
    if (file_ != nullptr) {
      std::fclose(file_);
      std::error_code ec;
      std::filesystem::remove(lock_path_, ec);
    }
  }

  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

 private:
  std::filesystem::path lock_path_;
  std::FILE* file_ = nullptr;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Errc::kIo, "cannot read " + path.string());
  return std::move(buf).str();
}

void append_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) fail(Errc::kIo, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) fail(Errc::kIo, "cannot write " + path.string());
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  if (text.empty()) fail(Errc::kParse, "record: empty " + std::string(what));
  std::uint64_t value = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') {
      fail(Errc::kParse, "record: bad " + std::string(what));
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

// key=value fields in canonical order, ';' separated.
class FieldReader {
 public:
  explicit FieldReader(std::string_view line) : rest_(line) {}

  std::string_view expect(std::string_view key) {
    auto field = next(key);
    if (!field) fail(Errc::kParse, "record: missing field " + std::string(key));
    return *field;
  }

  std::optional<std::string_view> next(std::string_view key) {
    if (done_) return std::nullopt;
    const std::size_t semi = rest_.find(';');
    std::string_view field =
        semi == std::string_view::npos ? rest_ : rest_.substr(0, semi);
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos || field.substr(0, eq) != key) {
      return std::nullopt;
    }
    if (semi == std::string_view::npos) {
      done_ = true;
      rest_ = {};
    } else {
      rest_ = rest_.substr(semi + 1);
    }
    return field.substr(eq + 1);
  }

  bool done() const { return done_; }

 private:
  std::string_view rest_;
  bool done_ = false;
};

bool hex_equals(const Digest& digest, std::string_view hex) {
  static constexpr char kHexDigits[] = "0123456789abcdef";
  if (hex.size() != 64) return false;
  for (std::size_t i = 0; i < digest.bytes.size(); ++i) {
    if (hex[2 * i] != kHexDigits[digest.bytes[i] >> 4] ||
        hex[2 * i + 1] != kHexDigits[digest.bytes[i] & 0x0f]) {
      return false;
    }
  }
  return true;
}

bool parse_u64_view(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  out = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

// Shape of one record line, validated without materializing a LedgerRecord.
// The chain check runs this per line, possibly tens of thousands of times
// when a store is being fuzzed byte by byte.
struct RecordShape {
  std::uint64_t sequence_no = 0;
  std::string_view prev_hash;
  std::string_view record_hash;
};

bool validate_record_line(std::string_view line, RecordShape& shape) {
  FieldReader reader(line);
  std::uint64_t version = 0;
  const auto seq = reader.next("sequence_no");
  if (!seq || !parse_u64_view(*seq, shape.sequence_no)) return false;
  if (!reader.next("object_label")) return false;
  const auto version_field = reader.next("version");
  if (!version_field || !parse_u64_view(*version_field, version)) return false;
  const auto schema = reader.next("schema_digest");
  if (!schema || !is_hex64(*schema)) return false;
  const auto manifest = reader.next("manifest_digest");
  if (!manifest || !is_hex64(*manifest)) return false;
  const bool has_seed = reader.next("seed").has_value();
  if (has_seed != (version == 1)) return false;
  if (!reader.next("identifier")) return false;
  std::uint64_t timestamp = 0;
  const auto time_field = reader.next("timestamp");
  if (!time_field || !parse_u64_view(*time_field, timestamp)) return false;
  const auto prev = reader.next("prev_hash");
  if (!prev || !is_hex64(*prev)) return false;
  const auto hash = reader.next("record_hash");
  if (!hash || !is_hex64(*hash)) return false;
  if (!reader.done()) return false;
  shape.prev_hash = *prev;
  shape.record_hash = *hash;
  return true;
}

std::string manifest_digest_hex(const AttributeManifest& manifest) {
  return sha256(serialize(manifest)).hex();
}

}  // namespace

std::string serialize_record(const LedgerRecord& record) {
  std::string line;
  line += "sequence_no=" + std::to_string(record.sequence_no);
  line += ";object_label=" + record.object_label;
  line += ";version=" + std::to_string(record.version);
  line += ";schema_digest=" + record.schema_digest;
  line += ";manifest_digest=" + record.manifest_digest;
  if (record.seed) line += ";seed=" + record.seed->text;
  line += ";identifier=" + record.identifier.text;
  line += ";timestamp=" + std::to_string(record.timestamp);
  line += ";prev_hash=" + record.prev_hash;
  line += ";record_hash=" + record.record_hash;
  return line;
}

LedgerRecord parse_record(std::string_view line) {
  LedgerRecord record;
  FieldReader reader(line);
  record.sequence_no = parse_u64(reader.expect("sequence_no"), "sequence_no");
  record.object_label = std::string(reader.expect("object_label"));
  record.version = parse_u64(reader.expect("version"), "version");
  record.schema_digest = std::string(reader.expect("schema_digest"));
  record.manifest_digest = std::string(reader.expect("manifest_digest"));
  if (const auto seed = reader.next("seed")) {
    record.seed = Seed{std::string(*seed)};
  }
  record.identifier.text = std::string(reader.expect("identifier"));
  record.timestamp =
      static_cast<std::int64_t>(parse_u64(reader.expect("timestamp"), "timestamp"));
  record.prev_hash = std::string(reader.expect("prev_hash"));
  record.record_hash = std::string(reader.expect("record_hash"));
  if (!reader.done()) fail(Errc::kParse, "record: trailing fields");
  if (!is_hex64(record.schema_digest) || !is_hex64(record.manifest_digest) ||
      !is_hex64(record.prev_hash) || !is_hex64(record.record_hash)) {
    fail(Errc::kParse, "record: malformed digest field");
  }
  if (record.seed && record.version != 1) {
    fail(Errc::kParse, "record: seed on a version > 1");
  }
  if (!record.seed && record.version == 1) {
    fail(Errc::kParse, "record: version 1 without seed");
  }
  return record;
}

std::optional<std::uint64_t> check_chain_bytes(std::string_view store_bytes) {
  std::string_view rest = store_bytes;
  std::string_view prev_hash = kGenesisHash;
  std::uint64_t index = 0;
  while (!rest.empty()) {
    const std::size_t eol = rest.find('\n');
    const std::string_view line =
        eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{}
                                         : rest.substr(eol + 1);
    if (line.empty() && rest.empty()) break;  // trailing newline

    const std::size_t hash_field = line.rfind(";record_hash=");
    if (hash_field == std::string_view::npos) return index;
    RecordShape shape;
    if (!validate_record_line(line, shape)) return index;
    if (shape.sequence_no != index) return index;
    if (shape.prev_hash != prev_hash) return index;
    if (!hex_equals(sha256(line.substr(0, hash_field)), shape.record_hash)) {
      return index;
    }
    prev_hash = shape.record_hash;
    ++index;
  }
  return std::nullopt;
}

Registry::Registry(std::filesystem::path store_path, double tau)
    : path_(std::move(store_path)),
      archive_path_(path_.string() + ".manifests"),
      tau_(tau) {}

std::vector<LedgerRecord> Registry::load_records() const {
  std::vector<LedgerRecord> records;
  if (!std::filesystem::exists(path_)) return records;
  const std::string bytes = read_file(path_);
  std::string_view rest = bytes;
  while (!rest.empty()) {
    const std::size_t eol = rest.find('\n');
    const std::string_view line =
        eol == std::string_view::npos ? rest : rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{}
                                         : rest.substr(eol + 1);
    if (line.empty()) continue;
    records.push_back(parse_record(line));
  }
  return records;
}

std::optional<std::string> Registry::find_manifest_text(
    std::string_view manifest_digest) const {
  if (!std::filesystem::exists(archive_path_)) return std::nullopt;
  const std::string bytes = read_file(archive_path_);
  std::string_view rest = bytes;
  while (!rest.empty()) {
    const std::size_t eol = rest.find('\n');
    if (eol == std::string_view::npos) {
      fail(Errc::kParse, "manifest archive: truncated header");
    }
    const std::string_view header = rest.substr(0, eol);
    rest = rest.substr(eol + 1);
    FieldReader reader(header);
    const std::string_view digest = reader.expect("manifest");
    const std::uint64_t size = parse_u64(reader.expect("bytes"), "bytes");
    if (size + 1 > rest.size()) {
      fail(Errc::kParse, "manifest archive: truncated entry");
    }
    if (digest == manifest_digest) return std::string(rest.substr(0, size));
    rest = rest.substr(size + 1);  // skip blob and its trailing newline
  }
  return std::nullopt;
}

std::string Registry::load_manifest_text(
    std::string_view manifest_digest) const {
  if (auto text = find_manifest_text(manifest_digest)) return *std::move(text);
  fail(Errc::kIo, "archived manifest " + std::string(manifest_digest) +
                      " not found in " + archive_path_.string());
}

void Registry::archive_manifest(std::string_view digest_hex,
                                std::string_view text) {
  // Content-addressed, so an existing entry never needs rewriting.
  if (find_manifest_text(digest_hex)) return;
  std::string entry = "manifest=" + std::string(digest_hex) +
                      ";bytes=" + std::to_string(text.size()) + "\n";
  entry += text;
  entry += '\n';
  append_file(archive_path_, entry);
}

LedgerRecord Registry::append_record(std::vector<LedgerRecord>& records,
                                     LedgerRecord record) {
  record.sequence_no = records.size();
  record.prev_hash =
      records.empty() ? std::string(kGenesisHash) : records.back().record_hash;
  std::string line = serialize_record(record);
  const std::size_t hash_field = line.rfind(";record_hash=");
  record.record_hash = sha256(std::string_view(line).substr(0, hash_field)).hex();
  line = serialize_record(record);
  append_file(path_, line + "\n");
  records.push_back(record);
  return record;
}

LedgerRecord Registry::register_object(const AttributeManifest& manifest,
                                       std::optional<std::string> label) {
  const std::string object_label = label.value_or(manifest.object_label);
  if (object_label.empty() ||
      object_label.find_first_of(";\n") != std::string::npos) {
    fail(Errc::kInvalidArgument,
         "object label must be non-empty and free of ';' and newlines");
  }

  StoreLock lock(path_);
  if (const auto bad = check_chain()) {
    fail(Errc::kChainCorrupt,
         "store chain broken at record " + std::to_string(*bad));
  }
  std::vector<LedgerRecord> records = load_records();
  for (const LedgerRecord& record : records) {
    if (record.object_label == object_label) {
      fail(Errc::kDuplicateObject,
           "object '" + object_label + "' is already registered");
    }
  }

  const GenerateResult result = generate(manifest, tau_);
  const std::string manifest_text = serialize(manifest);
  const std::string manifest_digest = sha256(manifest_text).hex();
  archive_manifest(manifest_digest, manifest_text);

  LedgerRecord record;
  record.object_label = object_label;
  record.version = 1;
  record.schema_digest = result.schema.digest().hex();
  record.manifest_digest = manifest_digest;
  record.seed = result.seed;
  record.identifier = result.identifier;
  record.timestamp = static_cast<std::int64_t>(std::time(nullptr));
  return append_record(records, std::move(record));
}

std::optional<VolatileAggregate> Registry::replay_volatile_state(
    const std::vector<LedgerRecord>& object_records) const {
  std::optional<VolatileAggregate> state;
  for (const LedgerRecord& record : object_records) {
    const AttributeManifest archived =
        parse_manifest(load_manifest_text(record.manifest_digest));
    const auto volatile_values = archived.values_of(AttributeClass::kVolatile);
    if (volatile_values.empty()) {
      state.reset();
    } else {
      state = aggregate_volatile(volatile_values, state, tau_);
    }
  }
  return state;
}

LedgerRecord Registry::append_version(std::string_view label,
                                      const AttributeManifest& manifest) {
  StoreLock lock(path_);
  if (const auto bad = check_chain()) {
    fail(Errc::kChainCorrupt,
         "store chain broken at record " + std::to_string(*bad));
  }
  std::vector<LedgerRecord> records = load_records();

  std::vector<LedgerRecord> object_records;
  for (const LedgerRecord& record : records) {
    if (record.object_label == label) object_records.push_back(record);
  }
  if (object_records.empty()) {
    fail(Errc::kUnknownObject,
         "object '" + std::string(label) + "' is not registered");
  }

  const Seed seed = *object_records.front().seed;
  const auto volatile_state = replay_volatile_state(object_records);
  const GenerateResult result = regenerate(manifest, seed, tau_, volatile_state);

  const std::string manifest_text = serialize(manifest);
  const std::string manifest_digest = sha256(manifest_text).hex();
  archive_manifest(manifest_digest, manifest_text);

  LedgerRecord record;
  record.object_label = std::string(label);
  record.version = object_records.back().version + 1;
  record.schema_digest = result.schema.digest().hex();
  record.manifest_digest = manifest_digest;
  record.identifier = result.identifier;
  record.timestamp = static_cast<std::int64_t>(std::time(nullptr));
  return append_record(records, std::move(record));
}

VerifyResult Registry::verify(std::string_view label,
                              const AttributeManifest& manifest) const {
  const std::vector<LedgerRecord> records = load_records();
  std::vector<LedgerRecord> object_records;
  for (const LedgerRecord& record : records) {
    if (record.object_label == label) object_records.push_back(record);
  }
  if (object_records.empty()) {
    fail(Errc::kUnknownObject,
         "object '" + std::string(label) + "' is not registered");
  }

  const Seed seed = *object_records.front().seed;
  const auto volatile_state = replay_volatile_state(object_records);
  const GenerateResult result = regenerate(manifest, seed, tau_, volatile_state);

  VerifyResult verdict;
  verdict.recorded = object_records.back().identifier;
  verdict.recomputed = result.identifier;
  verdict.match = verdict.recorded == verdict.recomputed;
  if (!verdict.match &&
      verdict.recorded.text.size() == verdict.recomputed.text.size()) {
    verdict.report = localize(verdict.recorded, verdict.recomputed, result.schema);
  }
  return verdict;
}

std::optional<std::uint64_t> Registry::check_chain() const {
  if (!std::filesystem::exists(path_)) return std::nullopt;  // empty: ok
  return check_chain_bytes(read_file(path_));
}

std::vector<LedgerRecord> Registry::history(std::string_view label) const {
  std::vector<LedgerRecord> out;
  for (const LedgerRecord& record : load_records()) {
    if (record.object_label == label) out.push_back(record);
  }
  if (out.empty()) {
    fail(Errc::kUnknownObject,
         "object '" + std::string(label) + "' is not registered");
  }
  return out;
}

bool Registry::replay(std::string_view label) const {
  const std::vector<LedgerRecord> object_records = history(label);
  const Seed seed = *object_records.front().seed;
  std::optional<VolatileAggregate> state;
  for (const LedgerRecord& record : object_records) {
    const AttributeManifest archived =
        parse_manifest(load_manifest_text(record.manifest_digest));
    const GenerateResult result = regenerate(archived, seed, tau_, state);
    if (result.identifier != record.identifier) return false;
    if (result.schema.digest().hex() != record.schema_digest) return false;
    state = result.volatile_state;
  }
  return true;
}

bool Registry::replay_all() const {
  std::vector<std::string> labels;
  for (const LedgerRecord& record : load_records()) {
    if (record.version == 1) labels.push_back(record.object_label);
  }
  for (const std::string& label : labels) {
    if (!replay(label)) return false;
  }
  return true;
}

}  // namespace farhash
