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

#include <stdexcept>
#include <string>
#include <utility>

namespace farhash {

// Error categories. Values are part of the shared-library ABI and mirror the
// far_status codes in farhash.h, so they must not be renumbered.
enum class Errc {
  kInternal = 1,
  kParse = 2,
  kDuplicateObject = 3,
  kUnknownObject = 4,
  kMismatch = 5,
  kStoreLocked = 6,
  kChainCorrupt = 7,
  kIo = 8,
  kInvalidArgument = 9,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace farhash
