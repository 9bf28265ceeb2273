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

// Serial reference kernels against their OpenMP twins.
#include <benchmark/benchmark.h>

#include <random>

#include "eric/analysis.hpp"
#include "eric/kernels.hpp"
#include "eric/seal.hpp"

namespace {

using namespace eric;

keys::PufBasedKey bench_key() {
  keys::PufBasedKey k;
  for (std::size_t i = 0; i < k.bytes.size(); ++i) k.bytes[i] = static_cast<std::uint8_t>(i * 13 + 5);
  return k;
}

Bytes random_bytes(std::size_t n) {
  std::mt19937_64 rng(n);
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

template <void (*Kernel)(std::span<std::uint8_t>, const keys::PufBasedKey&, keys::KeystreamDomain, std::uint64_t)>
void BM_Xor(benchmark::State& state) {
  Bytes data = random_bytes(static_cast<std::size_t>(state.range(0)));
  const auto key = bench_key();
  for (auto _ : state) {
    Kernel(data, key, keys::KeystreamDomain::code, 0);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

template <void (*Kernel)(std::span<std::uint8_t>, std::span<const std::uint8_t>, const keys::PufBasedKey&,
                         keys::KeystreamDomain, std::uint64_t)>
void BM_XorMasked(benchmark::State& state) {
  Bytes data = random_bytes(static_cast<std::size_t>(state.range(0)));
  const Bytes mask = random_bytes(data.size() + 1);
  const auto key = bench_key();
  for (auto _ : state) {
    Kernel(data, std::span(mask).first(data.size()), key, keys::KeystreamDomain::code, 0);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

BENCHMARK(BM_Xor<kernels::xor_keystream_serial>)->Name("xor/serial")->Range(4 << 10, 4 << 20);
BENCHMARK(BM_Xor<kernels::xor_keystream_parallel>)->Name("xor/parallel")->Range(4 << 10, 4 << 20);
BENCHMARK(BM_XorMasked<kernels::xor_keystream_masked_serial>)->Name("xor_masked/serial")->Range(4 << 10, 4 << 20);
BENCHMARK(BM_XorMasked<kernels::xor_keystream_masked_parallel>)->Name("xor_masked/parallel")->Range(4 << 10, 4 << 20);

struct SweepFixture {
  analysis::ReferenceDevice device;
  Bytes package;
  SweepFixture() {
    device.model = puf::synthesize_device(11);
    std::mt19937_64 rng(1);
    device.challenges = puf::random_challenge_set(rng);
    const auto key = keys::derive_master_key(puf::generate_puf_key(device.model, device.challenges), {});
    Bytes code;
    for (int i = 0; i < 1024; ++i) put_le(code, 0x00000013u | (static_cast<std::uint32_t>(i & 0x7FF) << 20), 4);
    package = pkg::serialize(seal::seal(code, key, {}, pkg::Isa::rv64, 0));
  }
};

void BM_TamperSerial(benchmark::State& state) {
  static const SweepFixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::tamper_sweep_serial(f.package, static_cast<std::uint64_t>(state.range(0)), 1, f.device));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void BM_TamperParallel(benchmark::State& state) {
  static const SweepFixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::tamper_sweep(f.package, static_cast<std::uint64_t>(state.range(0)), 1, f.device));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

BENCHMARK(BM_TamperSerial)->Name("tamper_sweep/serial")->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TamperParallel)->Name("tamper_sweep/parallel")->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
