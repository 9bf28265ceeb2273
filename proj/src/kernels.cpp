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

#include "eric/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eric::kernels {

namespace {

constexpr std::size_t kBlock = keys::kKeystreamBlockSize;
constexpr std::size_t kParallelThreshold = 16 * 1024;

void check_range(std::size_t size, std::uint64_t offset) {
  if (offset > keys::kKeystreamLimit || size > keys::kKeystreamLimit - offset) {
    throw std::out_of_range("keystream range exceeds 2^32 bytes");
  }
}

// XORs the keystream block `index` into the part of data it overlaps.
inline void xor_block(std::span<std::uint8_t> data, const std::uint8_t* mask,
                      const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                      std::uint64_t offset, std::uint64_t index) {
  const keys::Digest ks = keys::keystream_block(key, domain, index);
  const std::uint64_t block_start = index * kBlock;
  const std::uint64_t lo = std::max(block_start, offset);
  const std::uint64_t hi = std::min(block_start + kBlock, offset + data.size());
  for (std::uint64_t pos = lo; pos < hi; ++pos) {
    const std::size_t i = static_cast<std::size_t>(pos - offset);
    const std::uint8_t k = ks[pos - block_start];
    data[i] ^= mask ? static_cast<std::uint8_t>(k & mask[i]) : k;
  }
}

void run_serial(std::span<std::uint8_t> data, const std::uint8_t* mask,
                const keys::PufBasedKey& key, keys::KeystreamDomain domain, std::uint64_t offset) {
  check_range(data.size(), offset);
  if (data.empty()) return;
  const std::uint64_t first = offset / kBlock;
  const std::uint64_t last = (offset + data.size() - 1) / kBlock;
  for (std::uint64_t index = first; index <= last; ++index) {
    xor_block(data, mask, key, domain, offset, index);
  }
}

void run_parallel(std::span<std::uint8_t> data, const std::uint8_t* mask,
                  const keys::PufBasedKey& key, keys::KeystreamDomain domain, std::uint64_t offset) {
  check_range(data.size(), offset);
  if (data.empty()) return;
  const auto first = static_cast<std::int64_t>(offset / kBlock);
  const auto last = static_cast<std::int64_t>((offset + data.size() - 1) / kBlock);
  // Blocks touch disjoint byte ranges, so iterations are independent.
#pragma omp parallel for schedule(static)
  for (std::int64_t index = first; index <= last; ++index) {
    xor_block(data, mask, key, domain, offset, static_cast<std::uint64_t>(index));
  }
}

}  // namespace

void xor_keystream_serial(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                          keys::KeystreamDomain domain, std::uint64_t offset) {
  run_serial(data, nullptr, key, domain, offset);
}

void xor_keystream_parallel(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                            keys::KeystreamDomain domain, std::uint64_t offset) {
  run_parallel(data, nullptr, key, domain, offset);
}

void xor_keystream_masked_serial(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                                 const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                                 std::uint64_t offset) {
  if (mask.size() != data.size()) throw std::invalid_argument("mask and data sizes differ");
  run_serial(data, mask.data(), key, domain, offset);
}

void xor_keystream_masked_parallel(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                                   const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                                   std::uint64_t offset) {
  if (mask.size() != data.size()) throw std::invalid_argument("mask and data sizes differ");
  run_parallel(data, mask.data(), key, domain, offset);
}

void xor_keystream(std::span<std::uint8_t> data, const keys::PufBasedKey& key,
                   keys::KeystreamDomain domain, std::uint64_t offset) {
  if (data.size() >= kParallelThreshold && max_threads() > 1) {
    xor_keystream_parallel(data, key, domain, offset);
  } else {
    xor_keystream_serial(data, key, domain, offset);
  }
}

void xor_keystream_masked(std::span<std::uint8_t> data, std::span<const std::uint8_t> mask,
                          const keys::PufBasedKey& key, keys::KeystreamDomain domain,
                          std::uint64_t offset) {
  if (data.size() >= kParallelThreshold && max_threads() > 1) {
    xor_keystream_masked_parallel(data, mask, key, domain, offset);
  } else {
    xor_keystream_masked_serial(data, mask, key, domain, offset);
  }
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace eric::kernels
