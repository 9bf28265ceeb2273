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

#include "eric/analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "eric/error.hpp"
#include "eric/hde.hpp"
#include "eric/key_mgmt.hpp"
#include "eric/seal.hpp"

namespace eric::analysis {

namespace {

// splitmix64 finalizer; decorrelates (seed, trial) pairs.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialResult {
  bool detected = false;
  bool malformed = false;
};

TrialResult run_trial(ByteView package, Bytes& scratch, std::uint64_t bit,
                      const ReferenceDevice& device) {
  scratch.assign(package.begin(), package.end());
  scratch[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  const auto outcome = hde::unseal(scratch, device.model, device.challenges, device.context);
  if (outcome.is_accepted()) return {};
  return {true, outcome.reason() == hde::RejectReason::malformed_package};
}

void finalize(TamperReport& r) {
  r.rate = r.trials == 0 ? 1.0 : static_cast<double>(r.detected) / static_cast<double>(r.trials);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

double entropy(ByteView bytes) {
  if (bytes.empty()) throw Error(ErrorCode::EmptyInput, "entropy of an empty buffer");
  std::array<std::uint64_t, 256> hist{};
  for (std::uint8_t b : bytes) ++hist[b];
  const double n = static_cast<double>(bytes.size());
  double h = 0.0;
  for (std::uint64_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

std::uint64_t expected_overhead_bytes(pkg::Mode mode, std::uint32_t instruction_count,
                                      std::uint8_t field_count) {
  const std::uint64_t fixed = pkg::kHeaderSize + pkg::kSignatureSize;
  if (mode == pkg::Mode::full) return fixed;
  return fixed + (std::uint64_t{instruction_count} + 7) / 8 + pkg::kDescriptorSize * field_count;
}

OverheadReport overhead_report(std::uint64_t original_bytes, const pkg::SealedPackage& pkg) {
  OverheadReport r;
  r.original_bytes = original_bytes;
  r.package_bytes = pkg.serialized_size();
  r.mode = pkg.header.mode;
  r.instruction_count = pkg.header.instruction_count;
  r.delta_percent = original_bytes == 0
                        ? 0.0
                        : 100.0 * (static_cast<double>(r.package_bytes) - static_cast<double>(original_bytes)) /
                              static_cast<double>(original_bytes);
  return r;
}

std::uint64_t tamper_bit(std::uint64_t seed, std::uint64_t trial, const FlipWindow& window,
                         std::uint64_t package_bits) {
  const std::uint64_t end = std::min(window.end_bit, package_bits);
  const std::uint64_t first = std::min(window.first_bit, end);
  const std::uint64_t span = end - first;
  if (span == 0) throw std::invalid_argument("empty flip window");
  return first + mix(seed ^ mix(trial)) % span;
}

TamperReport tamper_sweep_serial(ByteView package, std::uint64_t trials, std::uint64_t seed,
                                 const ReferenceDevice& device, FlipWindow window) {
  TamperReport r;
  r.trials = trials;
  Bytes scratch;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto res = run_trial(package, scratch, tamper_bit(seed, t, window, package.size() * 8), device);
    if (res.detected) {
      ++r.detected;
      ++(res.malformed ? r.malformed_package : r.signature_mismatch);
    }
  }
  finalize(r);
  return r;
}

TamperReport tamper_sweep(ByteView package, std::uint64_t trials, std::uint64_t seed,
                          const ReferenceDevice& device, FlipWindow window) {
  TamperReport r;
  r.trials = trials;
  if (trials > 0) tamper_bit(seed, 0, window, package.size() * 8);  // validate the window up front
  std::uint64_t detected = 0, malformed = 0;
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel reduction(+ : detected, malformed)
  {
    Bytes scratch;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t t = 0; t < n; ++t) {
      const auto bit = tamper_bit(seed, static_cast<std::uint64_t>(t), window, package.size() * 8);
      const auto res = run_trial(package, scratch, bit, device);
      detected += res.detected ? 1 : 0;
      malformed += res.malformed ? 1 : 0;
    }
  }
  r.detected = detected;
  r.malformed_package = malformed;
  r.signature_mismatch = detected - malformed;
  finalize(r);
  return r;
}

ThroughputReport measure_throughput(ByteView code, const ReferenceDevice& device,
                                    pkg::Mode mode, std::uint64_t iterations) {
  using clock = std::chrono::steady_clock;
  const auto key = keys::derive_master_key(puf::generate_puf_key(device.model, device.challenges), device.context);
  seal::EncryptionPolicy policy;
  policy.mode = mode;
  if (mode == pkg::Mode::per_instruction) policy.selection = seal::SelectRandom{0.5, 1};
  if (mode == pkg::Mode::field_level) {
    policy.descriptors = {{pkg::DescriptorFilter::loads, 20, 31},
                          {pkg::DescriptorFilter::stores, 7, 11},
                          {pkg::DescriptorFilter::stores, 25, 31}};
  }

  ThroughputReport r;
  r.bytes = code.size();
  r.iterations = iterations;
  if (iterations == 0 || code.empty()) return r;

  Bytes packed;
  const auto t0 = clock::now();
  for (std::uint64_t i = 0; i < iterations; ++i) {
    packed = pkg::serialize(seal::seal(code, key, policy, pkg::Isa::rv64, 0));
  }
  const auto t1 = clock::now();
  for (std::uint64_t i = 0; i < iterations; ++i) {
    auto outcome = hde::unseal(packed, device.model, device.challenges, device.context);
    if (!outcome.is_accepted()) throw std::runtime_error("throughput round trip rejected");
  }
  const auto t2 = clock::now();

  const double mib = static_cast<double>(code.size()) * static_cast<double>(iterations) / (1024.0 * 1024.0);
  const double seal_s = std::chrono::duration<double>(t1 - t0).count();
  const double unseal_s = std::chrono::duration<double>(t2 - t1).count();
  r.seal_mib_per_s = seal_s > 0 ? mib / seal_s : 0.0;
  r.unseal_mib_per_s = unseal_s > 0 ? mib / unseal_s : 0.0;
  return r;
}

std::string to_text(const OverheadReport& r) {
  std::ostringstream out;
  out << "original_bytes=" << r.original_bytes << "\n"
      << "package_bytes=" << r.package_bytes << "\n"
      << "delta_bytes=" << (static_cast<std::int64_t>(r.package_bytes) - static_cast<std::int64_t>(r.original_bytes)) << "\n"
      << "delta_percent=" << fmt_double(r.delta_percent) << "\n"
      << "mode=" << pkg::to_string(r.mode) << "\n"
      << "instruction_count=" << r.instruction_count << "\n";
  return out.str();
}

std::string to_text(const TamperReport& r) {
  std::ostringstream out;
  out << "trials=" << r.trials << "\n"
      << "detected=" << r.detected << "\n"
      << "rate=" << fmt_double(r.rate) << "\n"
      << "signature_mismatch=" << r.signature_mismatch << "\n"
      << "malformed_package=" << r.malformed_package << "\n";
  return out.str();
}

std::string to_text(const ThroughputReport& r) {
  std::ostringstream out;
  out << "bytes=" << r.bytes << "\n"
      << "iterations=" << r.iterations << "\n"
      << "seal_mib_per_s=" << fmt_double(r.seal_mib_per_s) << "\n"
      << "unseal_mib_per_s=" << fmt_double(r.unseal_mib_per_s) << "\n";
  return out.str();
}

std::string entropy_text(double bits_per_byte, std::uint64_t size) {
  return "bytes=" + std::to_string(size) + "\nentropy_bits_per_byte=" + fmt_double(bits_per_byte) + "\n";
}

}  // namespace eric::analysis
