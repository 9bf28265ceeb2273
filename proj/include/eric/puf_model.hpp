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

// Software arbiter-PUF key generator. Each device is a bank of 32 arbiter
// chains under the linear additive delay model; chain i answers its own 8-bit
// challenge and contributes bit i of the 32-bit PUF key.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "eric/bytes.hpp"

namespace eric::puf {

inline constexpr std::size_t kChainCount = 32;
inline constexpr std::size_t kStageCount = 8;
// Stage delay differences followed by the arbiter bias term.
inline constexpr std::size_t kWeightCount = kStageCount + 1;

using ChainWeights = std::array<double, kWeightCount>;

struct DeviceModel {
  std::uint64_t device_seed = 0;
  std::array<ChainWeights, kChainCount> chains{};

  friend bool operator==(const DeviceModel&, const DeviceModel&) = default;
};

// Eight challenge bits; bit j of value() is stage j's bit c_j.
class Challenge {
 public:
  constexpr Challenge() = default;
  constexpr explicit Challenge(std::uint8_t value) : value_(value) {}

  constexpr std::uint8_t value() const { return value_; }
  constexpr bool bit(std::size_t stage) const { return (value_ >> stage) & 1U; }

  friend constexpr bool operator==(Challenge, Challenge) = default;

 private:
  std::uint8_t value_ = 0;
};

using ChallengeSet = std::array<Challenge, kChainCount>;

// Raw device fingerprint. Bit i is chain i's response.
class PufKey {
 public:
  constexpr PufKey() = default;
  constexpr explicit PufKey(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool bit(std::size_t i) const { return (bits_ >> i) & 1U; }

  // Bit 0 lands in the least significant bit of byte 0.
  constexpr std::array<std::uint8_t, 4> packed() const {
    return {static_cast<std::uint8_t>(bits_), static_cast<std::uint8_t>(bits_ >> 8),
            static_cast<std::uint8_t>(bits_ >> 16),
            static_cast<std::uint8_t>(bits_ >> 24)};
  }

  friend constexpr bool operator==(PufKey, PufKey) = default;

 private:
  std::uint32_t bits_ = 0;
};

DeviceModel synthesize_device(std::uint64_t device_seed);

// Parity feature vector: phi_k = prod_{j=k..7} (1 - 2 c_j), phi_8 = 1.
std::array<double, kWeightCount> feature_vector(Challenge challenge);

// Returns 1 iff dot(weights, phi) > 0; a zero delay difference answers 0.
bool respond(const DeviceModel& model, std::size_t chain_index, Challenge challenge);

// Noisy variant: the ideal response is flipped with the given probability.
bool respond_noisy(const DeviceModel& model, std::size_t chain_index,
                   Challenge challenge, double flip_probability,
                   std::mt19937_64& rng);

PufKey generate_puf_key(const DeviceModel& model, std::span<const Challenge> challenge_set);

// Device file: "ERDV", version 1, u64 LE seed. Loading re-synthesizes.
Bytes serialize_device(const DeviceModel& model);
DeviceModel parse_device(ByteView bytes);

// Challenge-set file: 32 lines of 8 '0'/'1' characters, most significant stage first.
ChallengeSet parse_challenge_set(std::string_view text);
std::string format_challenge_set(const ChallengeSet& set);

ChallengeSet random_challenge_set(std::mt19937_64& rng);

}  // namespace eric::puf
