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

// Software-source pipeline: choose instructions, sign the plaintext, then
// encrypt code and signature under the target's PUF-based key.

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "eric/key_mgmt.hpp"
#include "eric/package_format.hpp"
#include "eric/riscv_decode.hpp"

namespace eric::seal {

struct SelectAll {
  friend bool operator==(const SelectAll&, const SelectAll&) = default;
};
struct SelectRandom {
  double fraction = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const SelectRandom&, const SelectRandom&) = default;
};
struct SelectClasses {
  std::set<riscv::InstrClass> classes;
  friend bool operator==(const SelectClasses&, const SelectClasses&) = default;
};
struct SelectExplicit {
  std::vector<std::uint32_t> indices;
  friend bool operator==(const SelectExplicit&, const SelectExplicit&) = default;
};

using Selection = std::variant<SelectAll, SelectRandom, SelectClasses, SelectExplicit>;

struct EncryptionPolicy {
  pkg::Mode mode = pkg::Mode::full;
  Selection selection = SelectAll{};
  std::vector<pkg::FieldDescriptor> descriptors;  // field_level only

  // BadPolicy for structural problems, PolicyViolation for bad descriptors.
  void validate() const;

  friend bool operator==(const EncryptionPolicy&, const EncryptionPolicy&) = default;
};

// Policy file, one directive per line ('#' starts a comment):
//   mode full|partial|fields
//   fraction <real>     seed <u64>
//   classes load,store,...
//   indices 3,17,42
//   field <all|loads|stores|branches|jumps> <lo>..<hi>   (repeatable)
EncryptionPolicy parse_policy(std::string_view text);

// Per-class XOR masks derived from a descriptor list.
class FieldPlan {
 public:
  explicit FieldPlan(std::span<const pkg::FieldDescriptor> descriptors);

  // Union of filter=all ranges.
  std::uint32_t unfiltered() const { return unfiltered_; }
  // Full mask for a 32-bit parcel of the given plaintext class.
  std::uint32_t mask_for(riscv::InstrClass cls) const;
  // Compressed parcels: every bit above the length bits, plus whichever
  // length bits the filter=all ranges cover.
  std::uint32_t compressed_mask() const { return 0xFFFCu | (unfiltered_ & 0x3u); }

 private:
  std::uint32_t unfiltered_ = 0;
  std::array<std::uint32_t, 5> by_filter_{};
};

std::vector<bool> select_instructions(std::span<const riscv::InstrParcel> stream,
                                      const EncryptionPolicy& policy);

keys::Digest sign_program(ByteView code);

struct EncryptedCode {
  Bytes ciphertext;
  pkg::EncryptionMap map;  // empty in full mode
};

EncryptedCode encrypt_code(ByteView code, std::span<const riscv::InstrParcel> stream,
                           const std::vector<bool>& selected, const EncryptionPolicy& policy,
                           const keys::PufBasedKey& key);

// Keyed digest of the package metadata (header, descriptors, map).
keys::Digest metadata_binding(const keys::PufBasedKey& key, ByteView metadata);

// What the plaintext signature is XORed with inside the package: the
// signature-domain keystream [0, 32) combined with the metadata binding.
keys::Digest signature_mask(const keys::PufBasedKey& key, ByteView metadata);

pkg::SealedPackage seal(ByteView code, const keys::PufBasedKey& key,
                        const EncryptionPolicy& policy, pkg::Isa isa, std::uint64_t device_id);

}  // namespace eric::seal
