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

#include <cstddef>
#include <cstdint>
#include <random>

#include "eric/bytes.hpp"
#include "eric/puf_model.hpp"
#include "eric/seal.hpp"

namespace eric::testing {

// Code image of roughly `target_bytes` (rounded up to whole parcels).
// A `compressed_fraction` share of parcels are 16-bit. Register and
// immediate choices are skewed the way compiled code is, so the
// plaintext is far from uniformly random.
Bytes random_code(std::mt19937_64& rng, std::size_t target_bytes, double compressed_fraction);

// One plausible 32-bit instruction word or 16-bit compressed halfword.
std::uint32_t random_word32(std::mt19937_64& rng);
std::uint16_t random_half16(std::mt19937_64& rng);

// Load/store immediate descriptors: the I-type immediate of loads and
// both halves of the S-type immediate of stores.
std::vector<pkg::FieldDescriptor> immediate_descriptors();

// Every policy the round-trip suites sweep, named for diagnostics.
struct NamedPolicy {
  const char* name;
  seal::EncryptionPolicy policy;
};
std::vector<NamedPolicy> sweep_policies();

struct Device {
  puf::DeviceModel model;
  puf::ChallengeSet challenges{};
  Bytes context;
  keys::PufBasedKey key;
};

Device make_device(std::uint64_t seed, std::uint64_t challenge_seed = 1, std::string_view context = "app");

// Reads a file under the fixture directory.
Bytes fixture(const char* name);

}  // namespace eric::testing
