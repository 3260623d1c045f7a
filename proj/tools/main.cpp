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

// farhash command line front end. Talks to the core exclusively through the
// shared library's C API (farhash.h).
//
// Exit codes: 0 success/match, 1 internal error, 2 parse or usage error,
// 3 duplicate object, 4 unknown object, 5 verification mismatch, 6 store
// locked by another writer, 7 store chain broken.
//
// Scripting output (key=value lines) goes to stdout; prose and error=
// lines go to stderr.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "farhash.h"

namespace {

int exit_code_for(far_status status) {
  switch (status) {
    case FAR_OK:
      return 0;
    case FAR_ERR_PARSE:
    case FAR_ERR_IO:
    case FAR_ERR_INVALID:
      return 2;
    case FAR_ERR_DUPLICATE:
      return 3;
    case FAR_ERR_UNKNOWN_OBJECT:
      return 4;
    case FAR_ERR_MISMATCH:
      return 5;
    case FAR_ERR_LOCKED:
      return 6;
    case FAR_ERR_CHAIN:
      return 7;
    case FAR_ERROR:
      break;
  }
  return 1;
}

int report_failure(far_status status) {
  std::fprintf(stderr, "error=%s\n", far_last_error());
  return exit_code_for(status);
}

struct StringDeleter {
  void operator()(char* s) const { far_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ManifestDeleter {
  void operator()(far_manifest* m) const { far_manifest_free(m); }
};
using Manifest = std::unique_ptr<far_manifest, ManifestDeleter>;

struct SchemaDeleter {
  void operator()(far_schema* s) const { far_schema_free(s); }
};
using Schema = std::unique_ptr<far_schema, SchemaDeleter>;

struct RegistryDeleter {
  void operator()(far_registry* r) const { far_registry_close(r); }
};
using Registry = std::unique_ptr<far_registry, RegistryDeleter>;

struct Options {
  std::string manifest_path;
  std::string store_path;
  std::string object_label;
  std::string schema_path;
  std::string old_identifier;
  std::string new_identifier;
  std::string experiment;
  std::uint64_t trials = 1000;
  std::uint64_t rng_seed = 1;
};

int load_manifest(const Options& opt, Manifest& manifest) {
  far_manifest* raw = nullptr;
  if (const far_status st = far_manifest_load(opt.manifest_path.c_str(), &raw);
      st != FAR_OK) {
    return report_failure(st);
  }
  manifest.reset(raw);
  return 0;
}

int open_registry(const Options& opt, Registry& registry) {
  if (opt.store_path.empty()) {
    std::fprintf(stderr,
                 "error=no store path (use --store or FARHASH_STORE)\n");
    return 2;
  }
  far_registry* raw = nullptr;
  if (const far_status st = far_registry_open(opt.store_path.c_str(), &raw);
      st != FAR_OK) {
    return report_failure(st);
  }
  registry.reset(raw);
  return 0;
}

const char* label_arg(const Options& opt) {
  return opt.object_label.empty() ? nullptr : opt.object_label.c_str();
}

int run_generate(const Options& opt) {
  Manifest manifest;
  Registry registry;
  if (int rc = load_manifest(opt, manifest)) return rc;
  if (int rc = open_registry(opt, registry)) return rc;

  char seed[9] = {};
  char* identifier = nullptr;
  const far_status st = far_registry_register(registry.get(), manifest.get(),
                                              label_arg(opt), seed, &identifier);
  if (st != FAR_OK) return report_failure(st);
  const CString id(identifier);
  std::printf("seed=%s\n", seed);
  std::printf("id=%s\n", id.get());
  return 0;
}

int run_update(const Options& opt) {
  Manifest manifest;
  Registry registry;
  if (int rc = load_manifest(opt, manifest)) return rc;
  if (int rc = open_registry(opt, registry)) return rc;

  std::uint64_t version = 0;
  char* identifier = nullptr;
  char* report = nullptr;
  const far_status st =
      far_registry_update(registry.get(), manifest.get(), label_arg(opt),
                          &version, &identifier, nullptr, &report);
  if (st != FAR_OK) return report_failure(st);
  const CString id(identifier);
  const CString report_kv(report);
  std::printf("version=%" PRIu64 "\n", version);
  std::printf("id=%s\n", id.get());
  std::fputs(report_kv.get(), stdout);
  return 0;
}

int run_verify(const Options& opt) {
  Manifest manifest;
  Registry registry;
  if (int rc = load_manifest(opt, manifest)) return rc;
  if (int rc = open_registry(opt, registry)) return rc;

  char* report = nullptr;
  const far_status st = far_registry_verify(registry.get(), manifest.get(),
                                            label_arg(opt), nullptr, &report);
  const CString report_kv(report);
  if (st == FAR_OK) {
    std::printf("result=MATCH\n");
    return 0;
  }
  if (st == FAR_ERR_MISMATCH) {
    std::printf("result=MISMATCH\n");
    if (report_kv) std::fputs(report_kv.get(), stdout);
    return 5;
  }
  return report_failure(st);
}

int run_diff(const Options& opt) {
  Schema schema;
  far_schema* raw = nullptr;
  const std::string& source =
      opt.schema_path.empty() ? opt.manifest_path : opt.schema_path;
  if (const far_status st = far_schema_load(source.c_str(), &raw);
      st != FAR_OK) {
    return report_failure(st);
  }
  schema.reset(raw);

  char* report = nullptr;
  const far_status st =
      far_diff(opt.old_identifier.c_str(), opt.new_identifier.c_str(),
               schema.get(), nullptr, &report);
  if (st != FAR_OK) return report_failure(st);
  const CString report_kv(report);
  std::fputs(report_kv.get(), stdout);
  return 0;
}

int run_history(const Options& opt) {
  Registry registry;
  if (int rc = open_registry(opt, registry)) return rc;
  char* records = nullptr;
  const far_status st =
      far_registry_history(registry.get(), opt.object_label.c_str(), &records);
  if (st != FAR_OK) return report_failure(st);
  const CString text(records);
  std::fputs(text.get(), stdout);
  return 0;
}

int run_check_chain(const Options& opt) {
  Registry registry;
  if (int rc = open_registry(opt, registry)) return rc;
  std::int64_t first_bad = -1;
  const far_status st = far_registry_check_chain(registry.get(), &first_bad);
  if (st == FAR_OK) {
    std::printf("chain=ok\n");
    return 0;
  }
  if (st == FAR_ERR_CHAIN) {
    std::printf("chain=bad\n");
    std::printf("first_bad=%" PRId64 "\n", first_bad);
    return 7;
  }
  return report_failure(st);
}

int run_analyze(const Options& opt) {
  int pass = 0;
  char* report = nullptr;
  const far_status st = far_analyze(opt.experiment.c_str(), opt.trials, 5,
                                    opt.rng_seed, nullptr, &pass, &report);
  if (st != FAR_OK) return report_failure(st);
  const CString report_kv(report);
  std::fputs(report_kv.get(), stdout);
  if (pass == 0) {
    std::fprintf(stderr, "error=experiment bound not met\n");
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attribute-based object identifiers"};
  app.require_subcommand(1);
  Options opt;

  const auto add_store = [&](CLI::App* cmd) {
    cmd->add_option("--store", opt.store_path, "ledger store file")
        ->envname("FARHASH_STORE");
  };
  const auto add_manifest = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", opt.manifest_path, "attribute manifest file")
        ->required();
  };
  const auto add_object = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--object", opt.object_label, "object label");
    if (required) o->required();
  };

  CLI::App* generate = app.add_subcommand(
      "generate", "register an object and print its seed and identifier");
  add_manifest(generate);
  add_store(generate);
  add_object(generate, false);

  CLI::App* update = app.add_subcommand(
      "update", "append a new identifier version and report what changed");
  add_manifest(update);
  add_store(update);
  add_object(update, false);

  CLI::App* verify = app.add_subcommand(
      "verify", "check a manifest against the latest recorded identifier");
  add_manifest(verify);
  add_store(verify);
  add_object(verify, false);

  CLI::App* diff = app.add_subcommand(
      "diff", "classify the change between two identifiers");
  diff->add_option("old", opt.old_identifier, "previous identifier")
      ->required();
  diff->add_option("new", opt.new_identifier, "current identifier")
      ->required();
  diff->add_option("--schema", opt.schema_path, "schema descriptor file");
  diff->add_option("--manifest", opt.manifest_path,
                   "manifest file to take the schema from");

  CLI::App* history = app.add_subcommand(
      "history", "print all ledger records for an object");
  add_store(history);
  add_object(history, true);

  CLI::App* check_chain = app.add_subcommand(
      "check-chain", "recompute every record hash and chain link");
  add_store(check_chain);

  CLI::App* analyze = app.add_subcommand(
      "analyze",
      "run a statistical experiment (dynamic-locality, static-avalanche, "
      "baseline-comparison, unlinkability)");
  analyze->add_option("experiment", opt.experiment, "experiment name")
      ->required();
  analyze->add_option("--trials", opt.trials, "number of trials (>= 100)");
  analyze->add_option("--seed", opt.rng_seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error=%s\n", e.what());
    return 2;
  }

  if (generate->parsed()) return run_generate(opt);
  if (update->parsed()) return run_update(opt);
  if (verify->parsed()) return run_verify(opt);
  if (diff->parsed()) {
    if (opt.schema_path.empty() && opt.manifest_path.empty()) {
      std::fprintf(stderr, "error=diff needs --schema or --manifest\n");
      return 2;
    }
    return run_diff(opt);
  }
  if (history->parsed()) return run_history(opt);
  if (check_chain->parsed()) return run_check_chain(opt);
  if (analyze->parsed()) return run_analyze(opt);
  return 2;
}
