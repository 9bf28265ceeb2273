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

// Parcel-level view of a RISC-V code image: instruction boundaries, coarse
// classes and per-format field masks. No semantic decode.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "eric/bytes.hpp"

namespace eric::riscv {

struct InstrParcel {
  std::uint32_t offset = 0;
  std::uint8_t length = 0;  // 2 or 4
  std::array<std::uint8_t, 4> raw{};  // memory order; only `length` bytes used

  // Little-endian instruction word (16 or 32 bits).
  std::uint32_t word() const {
    std::uint32_t w = raw[0] | (std::uint32_t{raw[1]} << 8);
    if (length == 4) w |= (std::uint32_t{raw[2]} << 16) | (std::uint32_t{raw[3]} << 24);
    return w;
  }
  bool compressed() const { return length == 2; }
};

enum class InstrClass : std::uint8_t { load, store, branch, jump, alu, system, other, compressed };

std::string_view to_string(InstrClass c);
// Throws Error(BadPolicy) for unknown names.
InstrClass class_from_string(std::string_view name);

enum class Field : std::uint8_t { opcode, rd, rs1, rs2, immediate };

struct FieldMask {
  std::uint32_t bits = 0;
  std::uint8_t width = 32;

  friend bool operator==(const FieldMask&, const FieldMask&) = default;
};

// Parcel length from the low two bits of its first byte. Encodings longer
// than 32 bits (low five bits all ones) throw UnsupportedEncoding.
std::uint8_t parcel_length(std::uint8_t first_byte);

std::vector<InstrParcel> iterate_instructions(ByteView code);

InstrClass classify(const InstrParcel& parcel);
InstrClass classify_word(std::uint32_t word, bool compressed);

FieldMask field_bits(const InstrParcel& parcel, Field field);

}  // namespace eric::riscv
