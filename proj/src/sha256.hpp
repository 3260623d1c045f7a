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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace farhash {

/// A full 256-bit digest. Hex rendering is always 64 lowercase characters.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const;
  /// First eight hex characters ("first 32 bits") of the digest.
  std::string hex_prefix() const;

  friend bool operator==(const Digest&, const Digest&) = default;
};

/// The eight 32-bit words that initialize the compression function (H0..H7).
struct InitVector {
  std::array<std::uint32_t, 8> words{};

  friend bool operator==(const InitVector&, const InitVector&) = default;
};

/// FIPS 180-4 initial hash values: the first 32 bits of the fractional parts
/// of the square roots of the first eight primes.
inline constexpr InitVector kStandardIv{{0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u,
                                         0xa54ff53au, 0x510e527fu, 0x9b05688cu,
                                         0x1f83d9abu, 0x5be0cd19u}};

/// SHA-256 with the initial hash values replaced by `iv`. With kStandardIv
/// this is bit-identical to standard SHA-256; the round constants and the
/// 64-round schedule are never altered. Rejects messages of 2^61 bytes or
/// more (the padding length field would overflow).
Digest sha256_with_iv(std::span<const std::uint8_t> message,
                      const InitVector& iv);
Digest sha256_with_iv(std::string_view message, const InitVector& iv);

/// Standard SHA-256.
Digest sha256(std::span<const std::uint8_t> message);
Digest sha256(std::string_view message);

/// Reads a digest as eight big-endian 32-bit words: word i = bytes [4i, 4i+4).
/// Consistent with the digest's hex form, so word i equals hex chars [8i, 8i+8).
InitVector derive_iv(const Digest& material);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace farhash
