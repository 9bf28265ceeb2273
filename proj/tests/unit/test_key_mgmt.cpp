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

#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <random>

#include "eric/error.hpp"
#include "eric/key_mgmt.hpp"

namespace eric::keys {
namespace {

std::string hex(const Digest& d) { return to_hex(d); }

Digest openssl_sha256(ByteView data) {
  Digest d{};
  SHA256(data.data(), data.size(), d.data());
  return d;
}

PufBasedKey sample_key() {
  PufBasedKey k;
  for (std::size_t i = 0; i < k.bytes.size(); ++i) k.bytes[i] = static_cast<std::uint8_t>(i * 7 + 1);
  return k;
}

TEST(Sha256, FipsVectors) {
  EXPECT_EQ(hex(sha256(as_bytes(""))), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(hex(sha256(as_bytes("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(hex(sha256(as_bytes("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(Sha256, MillionA) {
  const std::string a(1000000, 'a');
  EXPECT_EQ(hex(sha256(as_bytes(a))), "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST(Sha256, MatchesOpenSslOnEveryLengthAroundBlockBoundaries) {
  std::mt19937_64 rng(1);
  for (std::size_t len = 0; len < 300; ++len) {
    Bytes data(len);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    ASSERT_EQ(sha256(data), openssl_sha256(data)) << "len " << len;
  }
}

TEST(Sha256, IncrementalEqualsOneShot) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Bytes data(rng() % 1000);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    Sha256 h;
    std::size_t pos = 0;
    while (pos < data.size()) {
      const std::size_t n = std::min<std::size_t>(rng() % 130, data.size() - pos);
      h.update(ByteView(data).subspan(pos, n));
      pos += n;
    }
    ASSERT_EQ(h.finish(), openssl_sha256(data));
  }
}

TEST(MasterKey, AllZeroPufKeyEmptyContext) {
  const std::uint8_t zeros[4] = {0, 0, 0, 0};
  EXPECT_EQ(derive_master_key(puf::PufKey(0), {}).bytes, openssl_sha256(zeros));
}

TEST(MasterKey, PacksLsbFirstThenContext) {
  const std::uint8_t expect_input[] = {0x04, 0x03, 0x02, 0x01, 'c', 't', 'x'};
  EXPECT_EQ(derive_master_key(puf::PufKey(0x01020304), as_bytes("ctx")).bytes, openssl_sha256(expect_input));
}

TEST(MasterKey, ContextSeparates) {
  const puf::PufKey pk(0xA5A5A5A5);
  EXPECT_EQ(derive_master_key(pk, as_bytes("A")), derive_master_key(pk, as_bytes("A")));
  EXPECT_NE(derive_master_key(pk, as_bytes("A")), derive_master_key(pk, as_bytes("B")));
}

TEST(PufBasedKeyHex, RoundTripAndErrors) {
  const auto k = sample_key();
  const auto text = k.to_hex();
  EXPECT_EQ(text.size(), 64u);
  EXPECT_EQ(text.substr(0, 4), "0108");
  EXPECT_EQ(PufBasedKey::from_hex(text), k);
  for (const std::string bad : {text.substr(1), text + "0", text.substr(1) + "g"}) {
    try {
      PufBasedKey::from_hex(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadKey);
    }
  }
}

TEST(Keystream, BlockDefinition) {
  const auto k = sample_key();
  for (std::uint64_t i : {0ull, 1ull, 255ull, 0x1234567ull}) {
    Bytes input(k.bytes.begin(), k.bytes.end());
    input.insert(input.end(), {'C', 'O', 'D'});
    put_le(input, i, 8);
    EXPECT_EQ(keystream_block(k, KeystreamDomain::code, i), openssl_sha256(input));
  }
  Bytes sig(k.bytes.begin(), k.bytes.end());
  sig.insert(sig.end(), {'S', 'I', 'G'});
  put_le(sig, 0, 8);
  EXPECT_EQ(keystream_block(k, KeystreamDomain::signature, 0), openssl_sha256(sig));
}

TEST(Keystream, PositionalSlicing) {
  const auto k = sample_key();
  const auto whole = keystream_bytes(k, KeystreamDomain::code, 0, 64);
  auto a = keystream_bytes(k, KeystreamDomain::code, 0, 32);
  const auto b = keystream_bytes(k, KeystreamDomain::code, 32, 32);
  a.insert(a.end(), b.begin(), b.end());
  EXPECT_EQ(whole, a);
  const auto mid = keystream_bytes(k, KeystreamDomain::code, 5, 10);
  EXPECT_EQ(mid, Bytes(whole.begin() + 5, whole.begin() + 15));

  std::mt19937_64 rng(3);
  const auto big = keystream_bytes(k, KeystreamDomain::code, 0, 4096);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t off = rng() % 4000, len = rng() % (4096 - off);
    ASSERT_EQ(keystream_bytes(k, KeystreamDomain::code, off, len), Bytes(big.begin() + off, big.begin() + off + len));
  }
}

TEST(Keystream, DomainSeparation) {
  const auto k = sample_key();
  EXPECT_NE(keystream_bytes(k, KeystreamDomain::code, 0, 32), keystream_bytes(k, KeystreamDomain::signature, 0, 32));
  EXPECT_NE(domain_tag(KeystreamDomain::code), domain_tag(KeystreamDomain::signature));
}

TEST(Keystream, LimitIsEnforced) {
  const auto k = sample_key();
  EXPECT_NO_THROW(keystream_bytes(k, KeystreamDomain::code, kKeystreamLimit - 4, 4));
  EXPECT_THROW(keystream_bytes(k, KeystreamDomain::code, kKeystreamLimit - 4, 5), std::out_of_range);
}

TEST(Keystream, CursorMatchesSlices) {
  const auto k = sample_key();
  const auto ref = keystream_bytes(k, KeystreamDomain::signature, 0, 200);
  KeystreamCursor cur(k, KeystreamDomain::signature);
  for (std::uint64_t p : {0ull, 31ull, 32ull, 199ull, 3ull, 100ull}) EXPECT_EQ(cur.at(p), ref[p]);
}

}  // namespace
}  // namespace eric::keys
