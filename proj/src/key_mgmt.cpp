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

#include "eric/key_mgmt.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "eric/error.hpp"

namespace eric::keys {

namespace {

constexpr std::array<std::uint32_t, 64> kRoundConstants = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

constexpr std::array<std::uint32_t, 8> kInitialState = {
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

std::uint32_t load_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

}  // namespace

Sha256::Sha256() : state_(kInitialState) {}

void Sha256::compress(const std::uint8_t* block) {
  std::array<std::uint32_t, 64> w;
  for (std::size_t i = 0; i < 16; ++i) {
    w[i] = load_be32(block + 4 * i);
  }
  for (std::size_t i = 16; i < 64; ++i) {
    std::uint32_t s0 = std::rotr(w[i - 15], 7) ^ std::rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
    std::uint32_t s1 = std::rotr(w[i - 2], 17) ^ std::rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
    w[i] = w[i - 16] + s0 + w[i - 7] + s1;
  }

  auto [a, b, c, d, e, f, g, h] = state_;
  for (std::size_t i = 0; i < 64; ++i) {
    std::uint32_t s1 = std::rotr(e, 6) ^ std::rotr(e, 11) ^ std::rotr(e, 25);
    std::uint32_t ch = (e & f) ^ (~e & g);
    std::uint32_t t1 = h + s1 + ch + kRoundConstants[i] + w[i];
    std::uint32_t s0 = std::rotr(a, 2) ^ std::rotr(a, 13) ^ std::rotr(a, 22);
    std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
    std::uint32_t t2 = s0 + maj;
    h = g;
    g = f;
    f = e;
    e = d + t1;
    d = c;
    c = b;
    b = a;
    a = t1 + t2;
  }
  state_[0] += a;
  state_[1] += b;
  state_[2] += c;
  state_[3] += d;
  state_[4] += e;
  state_[5] += f;
  state_[6] += g;
  state_[7] += h;
}

Sha256& Sha256::update(ByteView data) {
  total_bytes_ += data.size();
  const std::uint8_t* p = data.data();
  std::size_t n = data.size();

  if (buffered_ > 0) {
    std::size_t take = std::min(n, buffer_.size() - buffered_);
    std::copy_n(p, take, buffer_.begin() + buffered_);
    buffered_ += take;
    p += take;
    n -= take;
    if (buffered_ < buffer_.size()) return *this;
    compress(buffer_.data());
    buffered_ = 0;
  }
  for (; n >= 64; p += 64, n -= 64) {
    compress(p);
  }
  std::copy_n(p, n, buffer_.begin());
  buffered_ = n;
  return *this;
}

Digest Sha256::finish() {
  const std::uint64_t bit_length = total_bytes_ * 8;
  buffer_[buffered_++] = 0x80;
  if (buffered_ > 56) {
    std::fill(buffer_.begin() + buffered_, buffer_.end(), 0);
    compress(buffer_.data());
    buffered_ = 0;
  }
  std::fill(buffer_.begin() + buffered_, buffer_.begin() + 56, 0);
  for (std::size_t i = 0; i < 8; ++i) {
    buffer_[56 + i] = static_cast<std::uint8_t>(bit_length >> (56 - 8 * i));
  }
  compress(buffer_.data());

  Digest out;
  for (std::size_t i = 0; i < 8; ++i) {
    out[4 * i] = static_cast<std::uint8_t>(state_[i] >> 24);
    out[4 * i + 1] = static_cast<std::uint8_t>(state_[i] >> 16);
    out[4 * i + 2] = static_cast<std::uint8_t>(state_[i] >> 8);
    out[4 * i + 3] = static_cast<std::uint8_t>(state_[i]);
  }
  // Leave the object reusable.
  state_ = kInitialState;
  buffered_ = 0;
  total_bytes_ = 0;
  return out;
}

Digest sha256(ByteView data) { return Sha256().update(data).finish(); }

std::string PufBasedKey::to_hex() const { return eric::to_hex(bytes); }

PufBasedKey PufBasedKey::from_hex(std::string_view hex) {
  if (hex.size() != 64) {
    throw Error(ErrorCode::BadKey, "key must be 64 hex characters");
  }
  Bytes raw = eric::from_hex(hex);
  PufBasedKey key;
  std::copy(raw.begin(), raw.end(), key.bytes.begin());
  return key;
}

std::array<std::uint8_t, 3> domain_tag(KeystreamDomain domain) {
  switch (domain) {
    case KeystreamDomain::code: return {'C', 'O', 'D'};
    case KeystreamDomain::signature: return {'S', 'I', 'G'};
  }
  throw std::invalid_argument("unknown keystream domain");
}

PufBasedKey derive_master_key(puf::PufKey puf_key, ByteView context) {
  const auto packed = puf_key.packed();
  PufBasedKey key;
  key.bytes = Sha256().update(packed).update(context).finish();
  return key;
}

Digest keystream_block(const PufBasedKey& key, KeystreamDomain domain, std::uint64_t index) {
  std::array<std::uint8_t, 32 + 3 + 8> input;
  std::copy(key.bytes.begin(), key.bytes.end(), input.begin());
  const auto tag = domain_tag(domain);
  std::copy(tag.begin(), tag.end(), input.begin() + 32);
  for (std::size_t i = 0; i < 8; ++i) {
    input[35 + i] = static_cast<std::uint8_t>(index >> (8 * i));
  }
  return sha256(input);
}

Bytes keystream_bytes(const PufBasedKey& key, KeystreamDomain domain,
                      std::uint64_t offset, std::uint64_t length) {
  if (offset > kKeystreamLimit || length > kKeystreamLimit - offset) {
    throw std::out_of_range("keystream range exceeds 2^32 bytes");
  }
  Bytes out;
  out.reserve(length);
  std::uint64_t pos = offset;
  const std::uint64_t end = offset + length;
  while (pos < end) {
    const std::uint64_t index = pos / kKeystreamBlockSize;
    const Digest block = keystream_block(key, domain, index);
    std::uint64_t from = pos % kKeystreamBlockSize;
    std::uint64_t upto = std::min<std::uint64_t>(kKeystreamBlockSize, end - index * kKeystreamBlockSize);
    out.insert(out.end(), block.begin() + from, block.begin() + upto);
    pos = index * kKeystreamBlockSize + upto;
  }
  return out;
}

std::uint8_t KeystreamCursor::at(std::uint64_t position) {
  const std::uint64_t index = position / kKeystreamBlockSize;
  if (index != block_index_) {
    block_ = keystream_block(key_, domain_, index);
    block_index_ = index;
  }
  return block_[position % kKeystreamBlockSize];
}

}  // namespace eric::keys
