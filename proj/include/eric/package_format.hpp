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

// The ".eric" sealed-package container and code-image ingestion.
//
// Layout (all integers little-endian):
//   0  magic "ERIC"        4
//   4  version = 1         1
//   5  mode                1   0 full, 1 per-instruction, 2 field-level
//   6  isa                 1   0 RV32, 1 RV64
//   7  flags               1   bit 0: compressed parcels present
//   8  device_id           8
//  16  code_length         4
//  20  instruction_count   4
//  24  map_length          4
//  28  field_count         1
//  29  reserved = 0        3
//  32  field descriptors   3 * field_count   (filter, bit_lo, bit_hi)
//      encryption map      map_length        (instruction k -> byte k/8, bit k%8)
//      ciphertext          code_length
//      encrypted signature 32

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "eric/bytes.hpp"
#include "eric/riscv_decode.hpp"

namespace eric::pkg {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'E', 'R', 'I', 'C'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 32;
inline constexpr std::size_t kSignatureSize = 32;
inline constexpr std::size_t kDescriptorSize = 3;
inline constexpr std::uint8_t kFlagCompressed = 0x01;

enum class Mode : std::uint8_t { full = 0, per_instruction = 1, field_level = 2 };
enum class Isa : std::uint8_t { rv32 = 0, rv64 = 1 };

std::string_view to_string(Mode mode);
std::string_view to_string(Isa isa);

struct PackageHeader {
  Mode mode = Mode::full;
  Isa isa = Isa::rv64;
  std::uint8_t flags = 0;
  std::uint64_t device_id = 0;
  std::uint32_t code_length = 0;
  std::uint32_t instruction_count = 0;
  std::uint32_t map_length = 0;
  std::uint8_t field_count = 0;

  friend bool operator==(const PackageHeader&, const PackageHeader&) = default;
};

enum class DescriptorFilter : std::uint8_t { all = 0, loads = 1, stores = 2, branches = 3, jumps = 4 };

std::string_view to_string(DescriptorFilter filter);

// Inclusive encoding-bit range [bit_lo, bit_hi], optionally restricted to
// one instruction class.
struct FieldDescriptor {
  DescriptorFilter filter = DescriptorFilter::all;
  std::uint8_t bit_lo = 0;
  std::uint8_t bit_hi = 0;

  std::uint32_t mask() const;
  bool applies_to(riscv::InstrClass cls) const;
  // Throws InvariantViolation when bit_lo > bit_hi, bit_hi > 31, or a
  // class-filtered range reaches into opcode bits 0-6.
  void validate() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

// Packed per-instruction bit vector, least significant bit first.
class EncryptionMap {
 public:
  EncryptionMap() = default;
  explicit EncryptionMap(std::size_t count) : count_(count), bytes_((count + 7) / 8, 0) {}
  static EncryptionMap from_bits(const std::vector<bool>& bits);
  // Throws InvariantViolation on length mismatch or nonzero pad bits.
  static EncryptionMap from_packed(ByteView packed, std::size_t count);

  std::size_t size() const { return count_; }
  std::size_t byte_length() const { return bytes_.size(); }
  bool empty() const { return count_ == 0; }
  const Bytes& bytes() const { return bytes_; }

  bool test(std::size_t k) const { return (bytes_[k / 8] >> (k % 8)) & 1U; }
  void set(std::size_t k, bool value);
  std::vector<bool> to_bits() const;

  friend bool operator==(const EncryptionMap&, const EncryptionMap&) = default;

 private:
  std::size_t count_ = 0;
  Bytes bytes_;
};

struct SealedPackage {
  PackageHeader header;
  std::vector<FieldDescriptor> descriptors;
  EncryptionMap map;  // empty in full mode
  Bytes ciphertext;
  std::array<std::uint8_t, kSignatureSize> encrypted_signature{};

  std::size_t serialized_size() const {
    return kHeaderSize + kDescriptorSize * descriptors.size() + map.byte_length() +
           ciphertext.size() + kSignatureSize;
  }

  friend bool operator==(const SealedPackage&, const SealedPackage&) = default;
};

// Checks every header and content invariant; throws InvariantViolation
// naming the first one that fails.
void validate(const SealedPackage& pkg);

Bytes serialize(const SealedPackage& pkg);
SealedPackage parse(ByteView bytes);

// Header, descriptors and map in wire form (everything the signature does not cover).
Bytes serialize_metadata(const SealedPackage& pkg);

enum class InputKind { flat, elf };

struct CodeImage {
  Bytes code;
  Isa isa = Isa::rv64;
};

// flat: identity, ISA supplied by the caller. elf: the ".text" section of a
// little-endian ELF, ISA from the ELF class.
CodeImage extract_code(ByteView input, InputKind kind, Isa flat_isa = Isa::rv64);

}  // namespace eric::pkg
