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

#include "eric/puf_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eric/error.hpp"

namespace eric::puf {

namespace {

constexpr std::uint8_t kDeviceMagic[4] = {'E', 'R', 'D', 'V'};
constexpr std::uint8_t kDeviceVersion = 1;
constexpr std::size_t kDeviceFileSize = 4 + 1 + 8;

// Uniform in (0, 1] from the top 53 bits, so log() never sees zero.
double uniform_open0(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller over mt19937_64. Used instead of std::normal_distribution,
// whose output sequence differs between standard library implementations.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform_open0(rng_);
    double u2 = uniform_open0(rng_);
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void check_chain(std::size_t chain_index) {
  if (chain_index >= kChainCount) {
    throw Error(ErrorCode::ChainIndexOutOfRange,
                "chain index " + std::to_string(chain_index) + " >= 32");
  }
}

}  // namespace

DeviceModel synthesize_device(std::uint64_t device_seed) {
  DeviceModel model;
  model.device_seed = device_seed;
  GaussianSource gauss(device_seed);
  for (auto& chain : model.chains) {
    for (double& w : chain) {
      w = gauss.next();
    }
  }
  return model;
}

std::array<double, kWeightCount> feature_vector(Challenge challenge) {
  std::array<double, kWeightCount> phi{};
  phi[kStageCount] = 1.0;
  double running = 1.0;
  for (std::size_t k = kStageCount; k-- > 0;) {
    running *= challenge.bit(k) ? -1.0 : 1.0;
    phi[k] = running;
  }
  return phi;
}

bool respond(const DeviceModel& model, std::size_t chain_index, Challenge challenge) {
  check_chain(chain_index);
  const auto phi = feature_vector(challenge);
  const auto& w = model.chains[chain_index];
  double delta = 0.0;
  for (std::size_t k = 0; k < kWeightCount; ++k) {
    delta += w[k] * phi[k];
  }
  return delta > 0.0;
}

bool respond_noisy(const DeviceModel& model, std::size_t chain_index,
                   Challenge challenge, double flip_probability,
                   std::mt19937_64& rng) {
  bool ideal = respond(model, chain_index, challenge);
  if (flip_probability <= 0.0) {
    return ideal;
  }
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < flip_probability ? !ideal : ideal;
}

PufKey generate_puf_key(const DeviceModel& model, std::span<const Challenge> challenge_set) {
  if (challenge_set.size() != kChainCount) {
    throw Error(ErrorCode::BadChallengeSet,
                "expected 32 challenges, got " + std::to_string(challenge_set.size()));
  }
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < kChainCount; ++i) {
    if (respond(model, i, challenge_set[i])) {
      bits |= 1U << i;
    }
  }
  return PufKey(bits);
}

Bytes serialize_device(const DeviceModel& model) {
  Bytes out(std::begin(kDeviceMagic), std::end(kDeviceMagic));
  out.push_back(kDeviceVersion);
  put_le(out, model.device_seed, 8);
  return out;
}

DeviceModel parse_device(ByteView bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kDeviceMagic), std::end(kDeviceMagic), bytes.begin())) {
    throw Error(ErrorCode::BadDeviceFile, "missing ERDV magic");
  }
  if (bytes.size() < 5 || bytes[4] != kDeviceVersion) {
    throw Error(ErrorCode::BadDeviceFile, "unsupported device file version");
  }
  if (bytes.size() != kDeviceFileSize) {
    throw Error(ErrorCode::BadDeviceFile, "device file must be 13 bytes");
  }
  return synthesize_device(get_le(bytes, 5, 8));
}

ChallengeSet parse_challenge_set(std::string_view text) {
  ChallengeSet set{};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;

    if (line_no >= kChainCount) {
      throw Error(ErrorCode::BadChallengeSet, "more than 32 challenge lines");
    }
    if (line.size() != kStageCount) {
      throw Error(ErrorCode::BadChallengeSet,
                  "line " + std::to_string(line_no + 1) + " is not 8 characters");
    }
    std::uint8_t value = 0;
    for (char c : line) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::BadChallengeSet,
                    "line " + std::to_string(line_no + 1) + " has a non-binary character");
      }
      value = static_cast<std::uint8_t>((value << 1) | (c - '0'));
    }
    set[line_no++] = Challenge(value);
  }
  if (line_no != kChainCount) {
    throw Error(ErrorCode::BadChallengeSet,
                "expected 32 challenge lines, got " + std::to_string(line_no));
  }
  return set;
}

std::string format_challenge_set(const ChallengeSet& set) {
  std::string out;
  out.reserve(kChainCount * (kStageCount + 1));
  for (Challenge c : set) {
    for (std::size_t j = kStageCount; j-- > 0;) {
      out.push_back(c.bit(j) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

ChallengeSet random_challenge_set(std::mt19937_64& rng) {
  ChallengeSet set{};
  for (auto& c : set) {
    c = Challenge(static_cast<std::uint8_t>(rng()));
  }
  return set;
}

}  // namespace eric::puf
