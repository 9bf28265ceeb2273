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

#include <cstdint>
#include <string>

#include "eric/bytes.hpp"
#include "eric/package_format.hpp"
#include "eric/puf_model.hpp"

namespace eric::analysis {

// Shannon entropy of the byte histogram, in bits per byte.
double entropy(ByteView bytes);

struct OverheadReport {
  std::uint64_t original_bytes = 0;
  std::uint64_t package_bytes = 0;
  double delta_percent = 0.0;
  pkg::Mode mode = pkg::Mode::full;
  std::uint32_t instruction_count = 0;
};

OverheadReport overhead_report(std::uint64_t original_bytes, const pkg::SealedPackage& pkg);

// Package bytes beyond the code: 64 for full mode, 64 + ceil(N/8) + 3 * field_count otherwise.
std::uint64_t expected_overhead_bytes(pkg::Mode mode, std::uint32_t instruction_count,
                                      std::uint8_t field_count);

struct TamperReport {
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  // detected / trials; 1.0 when trials == 0 (nothing went undetected).
  double rate = 1.0;
  std::uint64_t signature_mismatch = 0;
  std::uint64_t malformed_package = 0;
};

// The device that should accept the untampered package.
struct ReferenceDevice {
  puf::DeviceModel model;
  puf::ChallengeSet challenges{};
  Bytes context;
};

// Bit range [first_bit, end_bit) of the package that trials may flip.
struct FlipWindow {
  std::uint64_t first_bit = 0;
  std::uint64_t end_bit = ~std::uint64_t{0};  // clamped to the package size
};

// Each trial flips one uniformly chosen bit and runs unseal. Trial t draws
// its bit from a generator keyed by (seed, t), so the report does not
// depend on how trials are scheduled.
TamperReport tamper_sweep(ByteView package, std::uint64_t trials, std::uint64_t seed,
                          const ReferenceDevice& device, FlipWindow window = {});
TamperReport tamper_sweep_serial(ByteView package, std::uint64_t trials, std::uint64_t seed,
                                 const ReferenceDevice& device, FlipWindow window = {});

// Bit position flipped by trial `t`.
std::uint64_t tamper_bit(std::uint64_t seed, std::uint64_t trial, const FlipWindow& window,
                         std::uint64_t package_bits);

struct ThroughputReport {
  std::uint64_t bytes = 0;
  std::uint64_t iterations = 0;
  double seal_mib_per_s = 0.0;
  double unseal_mib_per_s = 0.0;
};

ThroughputReport measure_throughput(ByteView code, const ReferenceDevice& device,
                                    pkg::Mode mode, std::uint64_t iterations);

// key=value lines.
std::string to_text(const OverheadReport& r);
std::string to_text(const TamperReport& r);
std::string to_text(const ThroughputReport& r);
std::string entropy_text(double bits_per_byte, std::uint64_t size);

}  // namespace eric::analysis
