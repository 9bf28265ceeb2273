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

#include "eric/riscv_decode.hpp"

#include <algorithm>
#include <string>

#include "eric/error.hpp"

namespace eric::riscv {

namespace {

enum class Format { R, I, S, B, U, J, Unknown };

Format format_of(std::uint32_t opcode) {
  switch (opcode) {
    case 0b0110011:  // OP
    case 0b0111011:  // OP-32
    case 0b0101111:  // AMO
    case 0b1010011:  // OP-FP
    case 0b1000011:  // FMADD..FNMADD
    case 0b1000111:
    case 0b1001011:
    case 0b1001111:
      return Format::R;
    case 0b0000011:  // LOAD
    case 0b0000111:  // LOAD-FP
    case 0b0010011:  // OP-IMM
    case 0b0011011:  // OP-IMM-32
    case 0b1100111:  // JALR
    case 0b1110011:  // SYSTEM
    case 0b0001111:  // MISC-MEM
      return Format::I;
    case 0b0100011:  // STORE
    case 0b0100111:  // STORE-FP
      return Format::S;
    case 0b1100011:
      return Format::B;
    case 0b0110111:  // LUI
    case 0b0010111:  // AUIPC
      return Format::U;
    case 0b1101111:
      return Format::J;
    default:
      return Format::Unknown;
  }
}

constexpr std::uint32_t kOpcodeMask = 0x0000007F;
constexpr std::uint32_t kRdMask = 0x00000F80;
constexpr std::uint32_t kRs1Mask = 0x000F8000;
constexpr std::uint32_t kRs2Mask = 0x01F00000;
constexpr std::uint32_t kImmIMask = 0xFFF00000;
constexpr std::uint32_t kImmSBMask = 0xFE000F80;  // bits 25-31 and 7-11
constexpr std::uint32_t kImmUJMask = 0xFFFFF000;

}  // namespace

std::string_view to_string(InstrClass c) {
  switch (c) {
    case InstrClass::load: return "load";
    case InstrClass::store: return "store";
    case InstrClass::branch: return "branch";
    case InstrClass::jump: return "jump";
    case InstrClass::alu: return "alu";
    case InstrClass::system: return "system";
    case InstrClass::other: return "other";
    case InstrClass::compressed: return "compressed";
  }
  return "other";
}

InstrClass class_from_string(std::string_view name) {
  for (auto c : {InstrClass::load, InstrClass::store, InstrClass::branch, InstrClass::jump,
                 InstrClass::alu, InstrClass::system, InstrClass::other, InstrClass::compressed}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::BadPolicy, "unknown instruction class '" + std::string(name) + "'");
}

std::uint8_t parcel_length(std::uint8_t first_byte) {
  if ((first_byte & 0b11) != 0b11) return 2;
  if ((first_byte & 0b11100) == 0b11100) {
    throw Error(ErrorCode::UnsupportedEncoding, "instruction encodings wider than 32 bits");
  }
  return 4;
}

std::vector<InstrParcel> iterate_instructions(ByteView code) {
  std::vector<InstrParcel> parcels;
  parcels.reserve(code.size() / 4 + 1);
  std::size_t offset = 0;
  while (offset < code.size()) {
    if (code.size() - offset < 2) {
      throw Error(ErrorCode::TruncatedParcel, "image ends inside a parcel at offset " + std::to_string(offset));
    }
    std::uint8_t length = 0;
    try {
      length = parcel_length(code[offset]);
    } catch (const Error& e) {
      throw Error(e.code(), "at offset " + std::to_string(offset));
    }
    if (code.size() - offset < length) {
      throw Error(ErrorCode::TruncatedParcel, "image ends inside a parcel at offset " + std::to_string(offset));
    }
    InstrParcel p;
    p.offset = static_cast<std::uint32_t>(offset);
    p.length = length;
    std::copy_n(code.begin() + static_cast<std::ptrdiff_t>(offset), length, p.raw.begin());
    parcels.push_back(p);
    offset += length;
  }
  return parcels;
}

InstrClass classify_word(std::uint32_t word, bool compressed) {
  if (compressed) return InstrClass::compressed;
  switch (word & kOpcodeMask) {
    case 0b0000011: return InstrClass::load;
    case 0b0100011: return InstrClass::store;
    case 0b1100011: return InstrClass::branch;
    case 0b1101111:
    case 0b1100111: return InstrClass::jump;
    case 0b0010011:
    case 0b0110011:
    case 0b0110111:
    case 0b0010111: return InstrClass::alu;
    case 0b1110011: return InstrClass::system;
    default: return InstrClass::other;
  }
}

InstrClass classify(const InstrParcel& parcel) {
  return classify_word(parcel.word(), parcel.compressed());
}

FieldMask field_bits(const InstrParcel& parcel, Field field) {
  if (parcel.compressed()) {
    throw Error(ErrorCode::UnsupportedParcel, "field masks are defined only for 32-bit parcels");
  }
  const Format fmt = format_of(parcel.word() & kOpcodeMask);
  auto absent = [&]() -> FieldMask {
    throw Error(ErrorCode::FieldAbsent, "instruction format lacks the requested field");
  };

  switch (field) {
    case Field::opcode:
      return {kOpcodeMask, 32};
    case Field::rd:
      if (fmt == Format::R || fmt == Format::I || fmt == Format::U || fmt == Format::J) return {kRdMask, 32};
      return absent();
    case Field::rs1:
      if (fmt == Format::R || fmt == Format::I || fmt == Format::S || fmt == Format::B) return {kRs1Mask, 32};
      return absent();
    case Field::rs2:
      if (fmt == Format::R || fmt == Format::S || fmt == Format::B) return {kRs2Mask, 32};
      return absent();
    case Field::immediate:
      switch (fmt) {
        case Format::I: return {kImmIMask, 32};
        case Format::S:
        case Format::B: return {kImmSBMask, 32};
        case Format::U:
        case Format::J: return {kImmUJMask, 32};
        default: return absent();
      }
  }
  return absent();
}

}  // namespace eric::riscv
