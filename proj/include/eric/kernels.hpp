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

// Data-parallel keystream XOR kernels. Every kernel has a serial twin that
// is kept as the reference implementation in tests and benchmarks.

#include <cstdint>
#include <span>

#include "eric/key_mgmt.hpp"

namespace eric::kernels {

// data[i] ^= keystream[offset + i]
void xor_keystream_serial(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                          keys::KeystreamDomain domain, std::uint64_t offset);
void xor_keystream_parallel(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                            keys::KeystreamDomain domain, std::uint64_t offset);

// data[i] ^= keystream[offset + i] & mask[i]; mask.size() == data.size()
void xor_keystream_masked_serial(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                                 const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                                 std::uint64_t offset);
void xor_keystream_masked_parallel(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                                   const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                                   std::uint64_t offset);

// Picks the parallel kernel for buffers large enough to amortize thread start-up.
void xor_keystream(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                   keys::KeystreamDomain domain, std::uint64_t offset);
void xor_keystream_masked(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                          const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                          std::uint64_t offset);

int max_threads();

}  // namespace eric::kernels
