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

#include "eric/package_format.hpp"

#include <algorithm>
#include <string>

#include "eric/error.hpp"

namespace eric::pkg {

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, what);
}

std::uint32_t ceil_div8(std::uint64_t n) { return static_cast<std::uint32_t>((n + 7) / 8); }

void validate_header(const PackageHeader& h) {
  if (static_cast<std::uint8_t>(h.mode) > 2) violation("mode must be 0, 1 or 2");
  if (static_cast<std::uint8_t>(h.isa) > 1) violation("isa must be 0 or 1");
  if ((h.flags & ~kFlagCompressed) != 0) violation("undefined flag bits set");
  switch (h.mode) {
    case Mode::full:
      if (h.map_length != 0) violation("full mode requires map_length = 0");
      if (h.field_count != 0) violation("full mode requires field_count = 0");
      break;
    case Mode::per_instruction:
      if (h.field_count != 0) violation("per-instruction mode requires field_count = 0");
      break;
    case Mode::field_level:
      if (h.field_count == 0) violation("field-level mode requires field_count >= 1");
      break;
  }
  if (h.mode != Mode::full && h.map_length != ceil_div8(h.instruction_count)) {
    violation("map_length must equal ceil(instruction_count / 8)");
  }
  if ((h.flags & kFlagCompressed) == 0 &&
      std::uint64_t{h.code_length} != 4 * std::uint64_t{h.instruction_count}) {
    violation("without compressed parcels code_length must equal 4 * instruction_count");
  }
}

void write_header(Bytes& out, const PackageHeader& h) {
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(h.mode));
  out.push_back(static_cast<std::uint8_t>(h.isa));
  out.push_back(h.flags);
  put_le(out, h.device_id, 8);
  put_le(out, h.code_length, 4);
  put_le(out, h.instruction_count, 4);
  put_le(out, h.map_length, 4);
  out.push_back(h.field_count);
  out.insert(out.end(), 3, 0);
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::full: return "full";
    case Mode::per_instruction: return "per_instruction";
    case Mode::field_level: return "field_level";
  }
  return "unknown";
}

std::string_view to_string(Isa isa) { return isa == Isa::rv32 ? "rv32" : "rv64"; }

std::string_view to_string(DescriptorFilter filter) {
  switch (filter) {
    case DescriptorFilter::all: return "all";
    case DescriptorFilter::loads: return "loads";
    case DescriptorFilter::stores: return "stores";
    case DescriptorFilter::branches: return "branches";
    case DescriptorFilter::jumps: return "jumps";
  }
  return "unknown";
}

std::uint32_t FieldDescriptor::mask() const {
  const std::uint32_t upper = bit_hi >= 31 ? 0xFFFFFFFFu : ((1u << (bit_hi + 1)) - 1);
  return upper & ~((1u << bit_lo) - 1);
}

bool FieldDescriptor::applies_to(riscv::InstrClass cls) const {
  using riscv::InstrClass;
  switch (filter) {
    case DescriptorFilter::all: return true;
    case DescriptorFilter::loads: return cls == InstrClass::load;
    case DescriptorFilter::stores: return cls == InstrClass::store;
    case DescriptorFilter::branches: return cls == InstrClass::branch;
    case DescriptorFilter::jumps: return cls == InstrClass::jump;
  }
  return false;
}

void FieldDescriptor::validate() const {
  if (static_cast<std::uint8_t>(filter) > 4) violation("descriptor filter must be 0..4");
  if (bit_lo > bit_hi) violation("descriptor bit_lo must not exceed bit_hi");
  if (bit_hi > 31) violation("descriptor bit_hi must be <= 31");
  if (filter != DescriptorFilter::all && bit_lo < 7) {
    violation("class-filtered descriptor must not cover opcode bits 0-6");
  }
}

EncryptionMap EncryptionMap::from_bits(const std::vector<bool>& bits) {
  EncryptionMap map(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) map.set(k, true);
  }
  return map;
}

EncryptionMap EncryptionMap::from_packed(ByteView packed, std::size_t count) {
  if (packed.size() != (count + 7) / 8) violation("map length does not match instruction count");
  if (count % 8 != 0 && (packed.back() >> (count % 8)) != 0) violation("map pad bits must be zero");
  EncryptionMap map;
  map.count_ = count;
  map.bytes_.assign(packed.begin(), packed.end());
  return map;
}

void EncryptionMap::set(std::size_t k, bool value) {
  const auto bit = static_cast<std::uint8_t>(1u << (k % 8));
  if (value) {
    bytes_[k / 8] |= bit;
  } else {
    bytes_[k / 8] &= static_cast<std::uint8_t>(~bit);
  }
}

std::vector<bool> EncryptionMap::to_bits() const {
  std::vector<bool> bits(count_);
  for (std::size_t k = 0; k < count_; ++k) bits[k] = test(k);
  return bits;
}

void validate(const SealedPackage& pkg) {
  const PackageHeader& h = pkg.header;
  validate_header(h);
  if (pkg.descriptors.size() != h.field_count) violation("field_count does not match descriptor list");
  for (const auto& d : pkg.descriptors) d.validate();
  if (pkg.ciphertext.size() != h.code_length) violation("code_length does not match ciphertext");
  if (pkg.map.byte_length() != h.map_length) violation("map_length does not match map");
  if (h.mode != Mode::full && pkg.map.size() != h.instruction_count) {
    violation("map bit count must equal instruction_count");
  }
  if (h.mode == Mode::full && !pkg.map.empty()) violation("full mode carries no map");
  if (!pkg.map.bytes().empty() && pkg.map.size() % 8 != 0 &&
      (pkg.map.bytes().back() >> (pkg.map.size() % 8)) != 0) {
    violation("map pad bits must be zero");
  }
}

Bytes serialize_metadata(const SealedPackage& pkg) {
  Bytes out;
  out.reserve(kHeaderSize + kDescriptorSize * pkg.descriptors.size() + pkg.map.byte_length());
  write_header(out, pkg.header);
  for (const auto& d : pkg.descriptors) {
    out.push_back(static_cast<std::uint8_t>(d.filter));
    out.push_back(d.bit_lo);
    out.push_back(d.bit_hi);
  }
  out.insert(out.end(), pkg.map.bytes().begin(), pkg.map.bytes().end());
  return out;
}

Bytes serialize(const SealedPackage& pkg) {
  validate(pkg);
  Bytes out = serialize_metadata(pkg);
  out.reserve(pkg.serialized_size());
  out.insert(out.end(), pkg.ciphertext.begin(), pkg.ciphertext.end());
  out.insert(out.end(), pkg.encrypted_signature.begin(), pkg.encrypted_signature.end());
  return out;
}

SealedPackage parse(ByteView bytes) {
  const std::size_t magic_len = std::min(bytes.size(), kMagic.size());
  if (!std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(magic_len), kMagic.begin())) {
    throw Error(ErrorCode::BadMagic, "package does not start with ERIC");
  }
  if (bytes.size() <= 4) throw Error(ErrorCode::Truncated, "package shorter than its header");
  if (bytes[4] != kVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "package version " + std::to_string(bytes[4]));
  }
  if (bytes.size() < kHeaderSize) throw Error(ErrorCode::Truncated, "package shorter than its header");

  SealedPackage pkg;
  PackageHeader& h = pkg.header;
  h.mode = static_cast<Mode>(bytes[5]);
  h.isa = static_cast<Isa>(bytes[6]);
  h.flags = bytes[7];
  h.device_id = get_le(bytes, 8, 8);
  h.code_length = static_cast<std::uint32_t>(get_le(bytes, 16, 4));
  h.instruction_count = static_cast<std::uint32_t>(get_le(bytes, 20, 4));
  h.map_length = static_cast<std::uint32_t>(get_le(bytes, 24, 4));
  h.field_count = bytes[28];
  if (bytes[29] != 0 || bytes[30] != 0 || bytes[31] != 0) violation("reserved header bytes must be zero");
  validate_header(h);

  const std::uint64_t expected = kHeaderSize + kDescriptorSize * std::uint64_t{h.field_count} +
                                 std::uint64_t{h.map_length} + std::uint64_t{h.code_length} +
                                 kSignatureSize;
  if (bytes.size() < expected) throw Error(ErrorCode::Truncated, "package body shorter than header declares");
  if (bytes.size() > expected) violation("trailing bytes after encrypted signature");

  std::size_t pos = kHeaderSize;
  for (std::size_t i = 0; i < h.field_count; ++i, pos += kDescriptorSize) {
    FieldDescriptor d{static_cast<DescriptorFilter>(bytes[pos]), bytes[pos + 1], bytes[pos + 2]};
    d.validate();
    pkg.descriptors.push_back(d);
  }
  if (h.mode != Mode::full) {
    pkg.map = EncryptionMap::from_packed(bytes.subspan(pos, h.map_length), h.instruction_count);
  }
  pos += h.map_length;
  pkg.ciphertext.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                        bytes.begin() + static_cast<std::ptrdiff_t>(pos + h.code_length));
  pos += h.code_length;
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), kSignatureSize, pkg.encrypted_signature.begin());
  return pkg;
}

}  // namespace eric::pkg
