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

#include "generators.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace eric::testing {

namespace {

// Registers the way a compiler hands them out: a few hot ones dominate.
std::uint32_t reg(std::mt19937_64& rng) {
  static constexpr std::array<std::uint32_t, 12> kHot = {10, 11, 15, 14, 8, 9, 2, 1, 12, 13, 5, 6};
  std::uniform_int_distribution<int> pick(0, 15);
  const int r = pick(rng);
  return r < 12 ? kHot[static_cast<std::size_t>(r)] : static_cast<std::uint32_t>(r + 4);
}

std::uint32_t small_imm(std::mt19937_64& rng) {
  std::geometric_distribution<int> g(0.15);
  const std::uint32_t v = static_cast<std::uint32_t>(std::min(g(rng), 255)) * 4;
  return std::bernoulli_distribution(0.2)(rng) ? (0u - v) & 0xFFF : v;
}

}  // namespace

std::uint32_t random_word32(std::mt19937_64& rng) {
  const std::uint32_t rd = reg(rng), rs1 = reg(rng), rs2 = reg(rng), imm = small_imm(rng);
  std::uniform_int_distribution<int> kind(0, 9);
  switch (kind(rng)) {
    case 0:
    case 1: return (imm << 20) | (rs1 << 15) | (0b010u << 12) | (rd << 7) | 0x03;   // lw
    case 2: return ((imm >> 5) << 25) | (rs2 << 20) | (rs1 << 15) | (0b010u << 12) | ((imm & 0x1F) << 7) | 0x23;  // sw
    case 3:
    case 4: return (imm << 20) | (rs1 << 15) | (rd << 7) | 0x13;                       // addi
    case 5: return (rs2 << 20) | (rs1 << 15) | (rd << 7) | 0x33;                       // add
    case 6: return ((imm >> 5) << 25) | (rs2 << 20) | (rs1 << 15) | (0b001u << 12) | ((imm & 0x1E) << 7) | 0x63;  // bne
    case 7: return ((imm & 0x7FE) << 20) | (rd << 7) | 0x6F;                           // jal
    case 8: return ((imm & 0xFF) << 12) | (rd << 7) | 0x37;                            // lui
    default: return (rs1 << 15) | (rd << 7) | 0x67;                                    // jalr
  }
}

std::uint16_t random_half16(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 4);
  const std::uint32_t r = reg(rng) & 0x1F, rp = reg(rng) & 0x7;
  const std::uint32_t imm = small_imm(rng) & 0x1F;
  std::uint32_t h = 0;
  switch (kind(rng)) {
    case 0: h = (r << 7) | (imm << 2) | 0b01; break;                       // c.addi
    case 1: h = (0b010u << 13) | (r << 7) | (imm << 2) | 0b01; break;      // c.li
    case 2: h = (0b100u << 13) | (r << 7) | ((reg(rng) & 0x1F) << 2) | 0b10; break;  // c.mv
    case 3: h = (0b010u << 13) | (rp << 7) | (rp << 2) | 0b00; break;     // c.lw
    default: h = (0b110u << 13) | (rp << 7) | (rp << 2) | 0b00; break;    // c.sw
  }
  return static_cast<std::uint16_t>(h);
}

Bytes random_code(std::mt19937_64& rng, std::size_t target_bytes, double compressed_fraction) {
  Bytes out;
  out.reserve(target_bytes + 4);
  std::bernoulli_distribution compressed(compressed_fraction);
  while (out.size() < target_bytes) {
    if (compressed(rng)) {
      put_le(out, random_half16(rng), 2);
    } else {
      put_le(out, random_word32(rng), 4);
    }
  }
  return out;
}

std::vector<pkg::FieldDescriptor> immediate_descriptors() {
  return {{pkg::DescriptorFilter::loads, 20, 31},
          {pkg::DescriptorFilter::stores, 7, 11},
          {pkg::DescriptorFilter::stores, 25, 31}};
}

std::vector<NamedPolicy> sweep_policies() {
  using pkg::Mode;
  std::vector<NamedPolicy> out;
  out.push_back({"full", {Mode::full, seal::SelectAll{}, {}}});
  out.push_back({"partial-0.0", {Mode::per_instruction, seal::SelectRandom{0.0, 11}, {}}});
  out.push_back({"partial-0.3", {Mode::per_instruction, seal::SelectRandom{0.3, 12}, {}}});
  out.push_back({"partial-1.0", {Mode::per_instruction, seal::SelectRandom{1.0, 13}, {}}});
  out.push_back({"fields-imm", {Mode::field_level, seal::SelectAll{}, immediate_descriptors()}});
  return out;
}

Device make_device(std::uint64_t seed, std::uint64_t challenge_seed, std::string_view context) {
  Device d;
  d.model = puf::synthesize_device(seed);
  std::mt19937_64 rng(challenge_seed);
  d.challenges = puf::random_challenge_set(rng);
  d.context.assign(context.begin(), context.end());
  d.key = keys::derive_master_key(puf::generate_puf_key(d.model, d.challenges), d.context);
  return d;
}

Bytes fixture(const char* name) { return read_file(std::string(ERIC_FIXTURE_DIR) + "/" + name); }

}  // namespace eric::testing
