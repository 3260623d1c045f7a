/* Copyright 2026 The farhash Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* farhash — attribute-based object identifiers.
 *
 * An object is described by a manifest of classified attributes
 * (static / dynamic / volatile). From it the library derives a lifetime
 * seed and an identifier whose characters move locally when a dynamic
 * attribute changes and globally when a static one does. A hash-chained
 * registry stores seeds and identifier versions for third-party
 * verification, and the diff entry point classifies what changed between
 * two identifier versions.
 *
 * All functions return FAR_OK (0) on success. On failure they return the
 * status code and leave a message in far_last_error(). Strings returned
 * via char** out-parameters are heap-allocated; release them with
 * far_string_free(). Handles are opaque and must be released with their
 * matching *_free/_close function. Handles are not thread-safe; the error
 * message slot is thread-local.
 */

#ifndef FARHASH_H_
#define FARHASH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FAR_API
#else
#define FAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum far_status {
  FAR_OK = 0,
  FAR_ERROR = 1,              /* internal error */
  FAR_ERR_PARSE = 2,          /* manifest/schema/store malformed */
  FAR_ERR_DUPLICATE = 3,      /* object already registered */
  FAR_ERR_UNKNOWN_OBJECT = 4, /* object not registered */
  FAR_ERR_MISMATCH = 5,       /* verification failed */
  FAR_ERR_LOCKED = 6,         /* another writer holds the store lock */
  FAR_ERR_CHAIN = 7,          /* store hash chain broken */
  FAR_ERR_IO = 8,             /* file unreadable/unwritable */
  FAR_ERR_INVALID = 9         /* invalid argument / precondition */
} far_status;

typedef enum far_verdict {
  FAR_VERDICT_IDENTICAL = 0,
  FAR_VERDICT_DYNAMIC_CHANGE = 1,
  FAR_VERDICT_STATIC_CHANGE = 2,
  FAR_VERDICT_INCONCLUSIVE = 3
} far_verdict;

typedef struct far_manifest far_manifest;
typedef struct far_schema far_schema;
typedef struct far_registry far_registry;

/* Library version string, e.g. "1.0.0". Static storage; do not free. */
FAR_API const char* far_version(void);

/* Message of the last failure on this thread. Static storage until the next
 * failing call; do not free. */
FAR_API const char* far_last_error(void);

FAR_API void far_string_free(char* s);

/* --- hashing primitives ------------------------------------------------- */

/* Lowercase hex SHA-256 into hex_out (65 bytes incl. NUL). */
FAR_API far_status far_sha256_hex(const void* data, size_t len,
                                  char hex_out[65]);

/* Same with the eight initial hash words replaced by iv_words. */
FAR_API far_status far_sha256_hex_with_iv(const void* data, size_t len,
                                          const uint32_t iv_words[8],
                                          char hex_out[65]);

/* Width-4 stride-1 sliding-window fold of an alphanumeric string (length
 * >= 4); output has length strlen(text) - 3. */
FAR_API far_status far_fuzzify(const char* text, char** out);

/* --- manifests and schemas ---------------------------------------------- */

/* Manifest text format (UTF-8, LF endings):
 *
 *   object: <label>
 *   <class>|<name>=<value>     class in {static, dynamic, volatile}
 *
 * '#' lines and blank lines are ignored; everything after the first '=' is
 * the value, verbatim. */
FAR_API far_status far_manifest_parse(const char* text, far_manifest** out);
FAR_API far_status far_manifest_load(const char* path, far_manifest** out);
FAR_API void far_manifest_free(far_manifest* manifest);

/* Label from the manifest's object line. Owned by the handle; do not free. */
FAR_API const char* far_manifest_label(const far_manifest* manifest);

/* A schema descriptor is `<class>|<name>` lines; manifest text is accepted
 * too (values are ignored). Volatile entries fold into one trailing dynamic
 * pseudo-attribute exactly as in identifier generation. */
FAR_API far_status far_schema_parse(const char* text, far_schema** out);
FAR_API far_status far_schema_load(const char* path, far_schema** out);
FAR_API far_status far_schema_from_manifest(const far_manifest* manifest,
                                            far_schema** out);
FAR_API void far_schema_free(far_schema* schema);
FAR_API size_t far_schema_attribute_count(const far_schema* schema);

/* --- identifier pipeline ------------------------------------------------ */

/* Derives the lifetime seed (8 alphanumeric chars, written to seed_out with
 * a NUL) and the identifier (10*K - 3 chars for K schema attributes). */
FAR_API far_status far_generate(const far_manifest* manifest, char seed_out[9],
                                char** identifier_out);

/* Recomputes the identifier under a previously issued seed. */
FAR_API far_status far_regenerate(const far_manifest* manifest,
                                  const char* seed, char** identifier_out);

/* --- diffing ------------------------------------------------------------ */

/* Classifies the difference between two identifier versions of one schema.
 * report_kv_out (optional) receives verdict=/attrs=/distance=/positions=
 * lines. */
FAR_API far_status far_diff(const char* old_identifier,
                            const char* new_identifier,
                            const far_schema* schema, far_verdict* verdict_out,
                            char** report_kv_out);

/* --- registry ----------------------------------------------------------- */

/* Opens (or names, for a first write) a ledger store file. The manifest
 * archive lives next to it as <store>.manifests. */
FAR_API far_status far_registry_open(const char* store_path,
                                     far_registry** out);
FAR_API void far_registry_close(far_registry* registry);

/* Registers a new object (version 1). label may be NULL to use the
 * manifest's own. Fails with FAR_ERR_DUPLICATE if the label exists. */
FAR_API far_status far_registry_register(far_registry* registry,
                                         const far_manifest* manifest,
                                         const char* label, char seed_out[9],
                                         char** identifier_out);

/* Appends the next identifier version under the stored seed and reports how
 * it differs from the previous version. Out-parameters other than the
 * registry may be NULL when not wanted. */
FAR_API far_status far_registry_update(far_registry* registry,
                                       const far_manifest* manifest,
                                       const char* label,
                                       uint64_t* version_out,
                                       char** identifier_out,
                                       far_verdict* verdict_out,
                                       char** report_kv_out);

/* Recomputes the identifier from the presented manifest and the stored seed
 * and compares with the latest recorded version. FAR_OK on match;
 * FAR_ERR_MISMATCH (with a report) otherwise. */
FAR_API far_status far_registry_verify(far_registry* registry,
                                       const far_manifest* manifest,
                                       const char* label,
                                       far_verdict* verdict_out,
                                       char** report_kv_out);

/* All ledger record lines for one object, version-ascending. */
FAR_API far_status far_registry_history(far_registry* registry,
                                        const char* label, char** records_out);

/* Recomputes every record hash and link. first_bad_out receives the first
 * broken sequence number, or -1 when the chain is intact; the status is
 * FAR_ERR_CHAIN when it is not. */
FAR_API far_status far_registry_check_chain(far_registry* registry,
                                            int64_t* first_bad_out);

/* --- analysis ----------------------------------------------------------- */

/* Runs one of the statistical experiments: "dynamic-locality",
 * "static-avalanche", "baseline-comparison" or "unlinkability".
 * trials >= 100; k >= 2 (attribute count; unlinkability always uses 5).
 * pass_out receives 1/0; report_kv_out the key=value report, byte-stable
 * for a given rng_seed. csv_path is optional: when non-NULL the per-trial
 * distances are written there as CSV. */
FAR_API far_status far_analyze(const char* experiment, uint64_t trials,
                               uint32_t k, uint64_t rng_seed,
                               const char* csv_path, int* pass_out,
                               char** report_kv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FARHASH_H_ */
