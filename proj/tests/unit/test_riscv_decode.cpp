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

#include <gtest/gtest.h>

#include <random>

#include "eric/error.hpp"
#include "eric/riscv_decode.hpp"
#include "generators.hpp"

namespace eric::riscv {
namespace {

InstrParcel word_parcel(std::uint32_t w) {
  InstrParcel p;
  p.length = 4;
  p.raw = {static_cast<std::uint8_t>(w), static_cast<std::uint8_t>(w >> 8), static_cast<std::uint8_t>(w >> 16),
           static_cast<std::uint8_t>(w >> 24)};
  return p;
}

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code);
  }
}

TEST(Decode, SingleWordParcel) {
  const Bytes code = {0x13, 0x00, 0x00, 0x00};
  const auto s = iterate_instructions(code);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].offset, 0u);
  EXPECT_EQ(s[0].length, 4);
  EXPECT_EQ(s[0].word(), 0x13u);
}

TEST(Decode, SingleCompressedParcel) {
  const Bytes code = {0x01, 0x00};
  const auto s = iterate_instructions(code);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].length, 2);
  EXPECT_TRUE(s[0].compressed());
}

TEST(Decode, EmptyInput) { EXPECT_TRUE(iterate_instructions({}).empty()); }

TEST(Decode, Truncated) {
  const Bytes code = {0x13, 0x00};
  expect_error(ErrorCode::TruncatedParcel, [&] { iterate_instructions(code); });
  const Bytes odd = {0x01, 0x00, 0x01};
  expect_error(ErrorCode::TruncatedParcel, [&] { iterate_instructions(odd); });
}

TEST(Decode, LongEncodingsRejected) {
  const Bytes code = {0x1F, 0x00, 0x00, 0x00, 0x00, 0x00};  // 48-bit prefix
  expect_error(ErrorCode::UnsupportedEncoding, [&] { iterate_instructions(code); });
}

TEST(Decode, ParcelLengthRule) {
  for (unsigned b = 0; b < 256; ++b) {
    if ((b & 0x1F) == 0x1F) continue;
    EXPECT_EQ(parcel_length(static_cast<std::uint8_t>(b)), (b & 3) == 3 ? 4 : 2);
  }
}

// Words assembled by clang from tests/fixtures/src/encoding.s.
TEST(Decode, AssemblerFixture) {
  const Bytes code = testing::fixture("encoding_rv32.text.bin");
  const auto s = iterate_instructions(code);
  ASSERT_EQ(s.size(), 14u);
  const std::uint32_t words[] = {0x00002083, 0x00000013, 0x0021a423, 0x00208863, 0x020000ef, 0x00008067, 0x007302b3,
                                 0x12345537, 0x00001597, 0x00000073, 0x0ff0000f, 0x0001, 0x0085, 0x4080};
  const InstrClass classes[] = {InstrClass::load, InstrClass::alu,    InstrClass::store,      InstrClass::branch,
                                InstrClass::jump, InstrClass::jump,   InstrClass::alu,        InstrClass::alu,
                                InstrClass::alu,  InstrClass::system, InstrClass::other,      InstrClass::compressed,
                                InstrClass::compressed, InstrClass::compressed};
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s[i].word(), words[i]) << i;
    EXPECT_EQ(classify(s[i]), classes[i]) << i;
    EXPECT_EQ(s[i].length, i < 11 ? 4 : 2);
  }
}

TEST(Decode, TilingProperty) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const Bytes code = testing::random_code(rng, 1 + rng() % 2000, 0.4);
    const auto s = iterate_instructions(code);
    Bytes rebuilt;
    std::uint32_t expect_offset = 0;
    for (const auto& p : s) {
      ASSERT_EQ(p.offset, expect_offset);
      ASSERT_EQ(p.length == 4, (p.raw[0] & 3) == 3);
      rebuilt.insert(rebuilt.end(), p.raw.begin(), p.raw.begin() + p.length);
      expect_offset += p.length;
    }
    ASSERT_EQ(rebuilt, code);
  }
}

TEST(Classify, MajorOpcodes) {
  EXPECT_EQ(classify_word(0x00002083, false), InstrClass::load);
  EXPECT_EQ(classify_word(0x00000013, false), InstrClass::alu);
  EXPECT_EQ(classify_word(0x00000033, false), InstrClass::alu);
  EXPECT_EQ(classify_word(0x00000037, false), InstrClass::alu);
  EXPECT_EQ(classify_word(0x00000017, false), InstrClass::alu);
  EXPECT_EQ(classify_word(0x00000023, false), InstrClass::store);
  EXPECT_EQ(classify_word(0x00000063, false), InstrClass::branch);
  EXPECT_EQ(classify_word(0x0000006F, false), InstrClass::jump);
  EXPECT_EQ(classify_word(0x00000067, false), InstrClass::jump);
  EXPECT_EQ(classify_word(0x00000073, false), InstrClass::system);
  EXPECT_EQ(classify_word(0x0000000F, false), InstrClass::other);
  EXPECT_EQ(classify_word(0x0000003B, false), InstrClass::other);  // OP-32 is not in the table
  EXPECT_EQ(classify_word(0x4080, true), InstrClass::compressed);
}

TEST(Classify, NamesRoundTrip) {
  for (auto c : {InstrClass::load, InstrClass::store, InstrClass::branch, InstrClass::jump, InstrClass::alu,
                 InstrClass::system, InstrClass::other, InstrClass::compressed}) {
    EXPECT_EQ(class_from_string(to_string(c)), c);
  }
  expect_error(ErrorCode::BadPolicy, [] { class_from_string("loads"); });
}

TEST(FieldBits, Masks) {
  const auto load = word_parcel(0x00002083);
  const auto store = word_parcel(0x0021a423);
  EXPECT_EQ(field_bits(load, Field::immediate).bits, 0xFFF00000u);
  EXPECT_EQ(field_bits(load, Field::opcode).bits, 0x7Fu);
  EXPECT_EQ(field_bits(store, Field::opcode).bits, 0x7Fu);
  EXPECT_EQ(field_bits(store, Field::immediate).bits, 0xFE000F80u);
  EXPECT_EQ(field_bits(load, Field::rd).bits, 0xF80u);
  EXPECT_EQ(field_bits(load, Field::rs1).bits, 0xF8000u);
  EXPECT_EQ(field_bits(word_parcel(0x007302b3), Field::rs2).bits, 0x1F00000u);
  EXPECT_EQ(field_bits(word_parcel(0x12345537), Field::immediate).bits, 0xFFFFF000u);
  EXPECT_EQ(field_bits(word_parcel(0x00208863), Field::immediate).bits, 0xFE000F80u);
  EXPECT_EQ(field_bits(load, Field::immediate).width, 32);
}

TEST(FieldBits, Errors) {
  expect_error(ErrorCode::FieldAbsent, [] { field_bits(word_parcel(0x00002083), Field::rs2); });
  expect_error(ErrorCode::FieldAbsent, [] { field_bits(word_parcel(0x007302b3), Field::immediate); });
  expect_error(ErrorCode::FieldAbsent, [] { field_bits(word_parcel(0x0021a423), Field::rd); });
  InstrParcel c;
  c.length = 2;
  c.raw = {0x01, 0x00};
  expect_error(ErrorCode::UnsupportedParcel, [&] { field_bits(c, Field::opcode); });
}

}  // namespace
}  // namespace eric::riscv
