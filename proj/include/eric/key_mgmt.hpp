// Copyright 2026 The ERIC Simulator Authors
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

// Key Management Unit: SHA-256, PUF-based key derivation and the
// position-addressable keystreams used for code and signature encryption.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "eric/bytes.hpp"
#include "eric/puf_model.hpp"

namespace eric::keys {

using Digest = std::array<std::uint8_t, 32>;

// Incremental FIPS 180-2 SHA-256.
class Sha256 {
 public:
  Sha256();

  Sha256& update(ByteView data);
  Sha256& update(std::string_view data) { return update(as_bytes(data)); }
  Digest finish();

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t total_bytes_ = 0;
};

Digest sha256(ByteView data);

struct PufBasedKey {
  std::array<std::uint8_t, 32> bytes{};

  std::string to_hex() const;
  // 64 hex characters; throws Error(BadKey) otherwise.
  static PufBasedKey from_hex(std::string_view hex);

  friend bool operator==(const PufBasedKey&, const PufBasedKey&) = default;
};

enum class KeystreamDomain : std::uint8_t { code, signature };

// "COD" / "SIG".
std::array<std::uint8_t, 3> domain_tag(KeystreamDomain domain);

// sha256(packed puf key || context).
PufBasedKey derive_master_key(puf::PufKey puf_key, ByteView context);

inline constexpr std::size_t kKeystreamBlockSize = 32;
inline constexpr std::uint64_t kKeystreamLimit = std::uint64_t{1} << 32;

// Block i = sha256(key || tag || u64 LE i).
Digest keystream_block(const PufBasedKey& key, KeystreamDomain domain, std::uint64_t index);

// Bytes [offset, offset + length) of the concatenated block stream.
// Throws std::out_of_range when the range passes 2^32.
Bytes keystream_bytes(const PufBasedKey& key, KeystreamDomain domain,
                      std::uint64_t offset, std::uint64_t length);

// Sequential reader over one keystream that keeps the current block cached,
// for callers that walk a buffer front to back.
class KeystreamCursor {
 public:
  KeystreamCursor(const PufBasedKey& key, KeystreamDomain domain)
      : key_(key), domain_(domain) {}

  std::uint8_t at(std::uint64_t position);

 private:
  PufBasedKey key_;
  KeystreamDomain domain_;
  Digest block_{};
  std::uint64_t block_index_ = ~std::uint64_t{0};
};

}  // namespace eric::keys
