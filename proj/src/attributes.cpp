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

#include "attributes.hpp"

#include <algorithm>
#include <unordered_map>

#include "errors.hpp"

namespace farhash {
namespace {

std::optional<AttributeClass> class_from_token(std::string_view token) {
  if (token == "static") return AttributeClass::kStatic;
  if (token == "dynamic") return AttributeClass::kDynamic;
  if (token == "volatile") return AttributeClass::kVolatile;
  return std::nullopt;
}

[[noreturn]] void parse_fail(std::size_t line_no, std::string_view what) {
  fail(Errc::kParse,
       "manifest line " + std::to_string(line_no) + ": " + std::string(what));
}

}  // namespace

std::string_view to_string(AttributeClass cls) {
  switch (cls) {
    case AttributeClass::kStatic:
      return "static";
    case AttributeClass::kDynamic:
      return "dynamic";
    case AttributeClass::kVolatile:
      return "volatile";
  }
  return "?";
}

std::vector<std::string> AttributeManifest::values_of(
    AttributeClass cls) const {
  std::vector<std::string> out;
  for (const Attribute& attr : attributes) {
    if (attr.cls == cls) out.push_back(attr.value);
  }
  return out;
}

AttributeManifest parse_manifest(std::string_view text) {
  AttributeManifest manifest;
  std::unordered_map<std::string, std::size_t> seen;  // name -> line
  bool have_label = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line =
        eol == std::string_view::npos ? text : text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);

    if (line.empty() || line.front() == '#') continue;

    if (!have_label) {
      if (!line.starts_with("object:")) {
        parse_fail(line_no, "expected 'object: <label>' as the first entry");
      }
      std::string_view label = line.substr(7);
      if (label.starts_with(' ')) label.remove_prefix(1);
      manifest.object_label = std::string(label);
      have_label = true;
      continue;
    }

    const std::size_t bar = line.find('|');
    if (bar == std::string_view::npos) {
      parse_fail(line_no, "expected '<class>|<name>=<value>'");
    }
    const auto cls = class_from_token(line.substr(0, bar));
    if (!cls) {
      parse_fail(line_no, "unknown class '" + std::string(line.substr(0, bar)) +
                              "' (want static, dynamic or volatile)");
    }
    const std::size_t eq = line.find('=', bar + 1);
    if (eq == std::string_view::npos) {
      parse_fail(line_no, "missing '=' between name and value");
    }
    Attribute attr;
    attr.name = std::string(line.substr(bar + 1, eq - bar - 1));
    attr.value = std::string(line.substr(eq + 1));
    attr.cls = *cls;
    if (attr.name.empty()) parse_fail(line_no, "empty attribute name");
    if (const auto [it, inserted] = seen.emplace(attr.name, line_no);
        !inserted) {
      parse_fail(line_no, "duplicate attribute name '" + attr.name +
                              "' (first declared on line " +
                              std::to_string(it->second) + ")");
    }
    manifest.attributes.push_back(std::move(attr));
  }

  if (!have_label || manifest.attributes.empty()) {
    fail(Errc::kParse, "manifest: no attributes");
  }
  const bool has_static =
      std::any_of(manifest.attributes.begin(), manifest.attributes.end(),
                  [](const Attribute& a) {
                    return a.cls == AttributeClass::kStatic;
                  });
  if (!has_static) {
    fail(Errc::kParse, "manifest: zero static attributes");
  }
  return manifest;
}

void validate(const AttributeManifest& manifest) {
  if (manifest.object_label.find('\n') != std::string::npos) {
    fail(Errc::kInvalidArgument, "object label must not contain newlines");
  }
  std::unordered_map<std::string, bool> seen;
  for (const Attribute& attr : manifest.attributes) {
    if (attr.name.empty() ||
        attr.name.find_first_of("=\n") != std::string::npos) {
      fail(Errc::kInvalidArgument,
           "attribute name '" + attr.name + "' must be non-empty and free of "
           "'=' and newlines");
    }
    if (attr.value.find('\n') != std::string::npos) {
      fail(Errc::kInvalidArgument,
           "value of '" + attr.name + "' must not contain newlines");
    }
    if (!seen.emplace(attr.name, true).second) {
      fail(Errc::kInvalidArgument, "duplicate attribute name '" + attr.name + "'");
    }
  }
}

std::string serialize(const AttributeManifest& manifest) {
  validate(manifest);
  std::string out = "object: " + manifest.object_label + "\n";
  for (const Attribute& attr : manifest.attributes) {
    out += std::string(to_string(attr.cls));
    out += '|';
    out += attr.name;
    out += '=';
    out += attr.value;
    out += '\n';
  }
  return out;
}

std::string canonicalize(std::string_view value) { return std::string(value); }

VolatileAggregate aggregate_volatile(
    const std::vector<std::string>& volatile_values,
    const std::optional<VolatileAggregate>& previous, double tau) {
  if (tau <= 0.0 || tau > 1.0) {
    fail(Errc::kInvalidArgument, "volatile threshold must be in (0,1]");
  }
  if (volatile_values.empty()) {
    fail(Errc::kInvalidArgument, "no volatile attributes");
  }

  std::vector<Digest> digests;
  digests.reserve(volatile_values.size());
  std::string joined_hex;
  for (const std::string& value : volatile_values) {
    digests.push_back(sha256(canonicalize(value)));
    joined_hex += digests.back().hex();
  }

  VolatileAggregate candidate;
  candidate.value = sha256(joined_hex).hex().substr(0, 8);
  candidate.change_fraction_threshold = tau;
  candidate.snapshot = std::move(digests);

  if (!previous) return candidate;

  const std::size_t total =
      std::max(previous->snapshot.size(), candidate.snapshot.size());
  std::size_t changed = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (i >= previous->snapshot.size() || i >= candidate.snapshot.size() ||
        previous->snapshot[i] != candidate.snapshot[i]) {
      ++changed;
    }
  }
  if (static_cast<double>(changed) > tau * static_cast<double>(total)) {
    return candidate;
  }
  VolatileAggregate kept = *previous;
  kept.change_fraction_threshold = tau;
  return kept;
}

}  // namespace farhash
