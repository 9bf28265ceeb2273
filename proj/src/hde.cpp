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

#include "eric/hde.hpp"

#include <stdexcept>

#include "eric/riscv_decode.hpp"
#include "eric/seal.hpp"

namespace eric::hde {

namespace {

// Overwrites a buffer in a way the optimizer cannot drop.
void wipe(Bytes& buffer) {
  volatile std::uint8_t* p = buffer.data();
  for (std::size_t i = 0; i < buffer.size(); ++i) p[i] = 0;
  buffer.clear();
}

bool digests_equal(const keys::Digest& a, const keys::Digest& b) {
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff |= static_cast<std::uint8_t>(a[i] ^ b[i]);
  return diff == 0;
}

class ParcelDecryptor {
 public:
  ParcelDecryptor(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key)
      : pkg_(pkg), cursor_(key, keys::KeystreamDomain::code), plan_(pkg.descriptors) {}

  StreamStats run(const ParcelSink& sink) {
    const Bytes& ct = pkg_.ciphertext;
    const pkg::Mode mode = pkg_.header.mode;
    const bool mapped = mode != pkg::Mode::full;
    StreamStats stats;
    std::size_t offset = 0;
    std::size_t k = 0;

    while (offset < ct.size()) {
      if (mapped && k >= pkg_.map.size()) {
        throw Error(ErrorCode::MapExhausted, "parcels remain after the last map bit");
      }
      if (ct.size() - offset < 2) throw Error(ErrorCode::TruncatedParcel, "ciphertext ends inside a parcel");
      const bool selected = !mapped || pkg_.map.test(k);

      std::array<std::uint8_t, 4> buf{ct[offset], ct[offset + 1], 0, 0};
      // The length bits may be encrypted: decrypt the first half-word with
      // the mask that is common to every parcel shape before reading them.
      const std::uint32_t head_mask = !selected ? 0u : mode == pkg::Mode::field_level ? plan_.unfiltered() & 0xFFFFu : 0xFFFFu;
      apply(buf, offset, 0, 2, head_mask);

      const std::uint8_t length = riscv::parcel_length(buf[0]);
      if (ct.size() - offset < length) throw Error(ErrorCode::TruncatedParcel, "ciphertext ends inside a parcel");
      if (length == 4) {
        buf[2] = ct[offset + 2];
        buf[3] = ct[offset + 3];
      }

      if (selected) {
        if (mode != pkg::Mode::field_level) {
          apply(buf, offset, 2, length, 0xFFFFFFFFu);
        } else if (length == 2) {
          apply(buf, offset, 0, 2, plan_.compressed_mask() & ~head_mask);
        } else {
          apply(buf, offset, 2, 4, plan_.unfiltered());
          // Opcode bits are now plaintext; class-filtered ranges never cover them.
          const std::uint32_t word = buf[0] | (buf[1] << 8) | (buf[2] << 16) | (std::uint32_t{buf[3]} << 24);
          const auto cls = riscv::classify_word(word, false);
          apply(buf, offset, 0, 4, plan_.mask_for(cls) & ~plan_.unfiltered());
        }
      }

      sink(ByteView(buf.data(), length));
      stats.parcel_count++;
      stats.any_compressed = stats.any_compressed || length == 2;
      offset += length;
      ++k;
    }
    if (mapped && k != pkg_.map.size()) {
      throw Error(ErrorCode::MapExhausted, "map bits remain after the last parcel");
    }
    return stats;
  }

 private:
  // XORs keystream bits selected by `mask` into buf[from, to).
  void apply(std::array<std::uint8_t, 4>& buf, std::size_t offset, std::size_t from, std::size_t to,
             std::uint32_t mask) {
    if (mask == 0) return;
    for (std::size_t b = from; b < to; ++b) {
      const auto m = static_cast<std::uint8_t>(mask >> (8 * b));
      if (m != 0) buf[b] ^= static_cast<std::uint8_t>(cursor_.at(offset + b) & m);
    }
  }

  const pkg::SealedPackage& pkg_;
  keys::KeystreamCursor cursor_;
  seal::FieldPlan plan_;
};

}  // namespace

std::string_view to_string(RejectReason reason) {
  return reason == RejectReason::signature_mismatch ? "signature_mismatch" : "malformed_package";
}

const TrustedImage& ValidationOutcome::image() const {
  if (!image_) throw std::logic_error("rejected outcome carries no image");
  return *image_;
}

StreamStats decrypt_parcels(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key,
                            const ParcelSink& sink) {
  return ParcelDecryptor(pkg, key).run(sink);
}

Bytes decrypt_stream(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key) {
  Bytes out;
  out.reserve(pkg.ciphertext.size());
  decrypt_parcels(pkg, key, [&](ByteView parcel) { out.insert(out.end(), parcel.begin(), parcel.end()); });
  return out;
}

ValidationOutcome Engine::validate(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key) {
  // Signature Generator hashes parcels as they leave the Decryption Unit;
  // the quarantined copy is released only on a match.
  keys::Sha256 hasher;
  Bytes quarantine;
  quarantine.reserve(pkg.ciphertext.size());
  StreamStats stats;
  try {
    stats = decrypt_parcels(pkg, key, [&](ByteView parcel) {
      hasher.update(parcel);
      quarantine.insert(quarantine.end(), parcel.begin(), parcel.end());
    });
  } catch (const Error& e) {
    // The ciphertext does not decode under this key: it was not sealed for
    // this device, or it was modified in transit.
    wipe(quarantine);
    return ValidationOutcome::rejected(RejectReason::signature_mismatch, e.code());
  }

  const keys::Digest computed = hasher.finish();
  const keys::Digest mask = seal::signature_mask(key, pkg::serialize_metadata(pkg));
  keys::Digest packaged;
  for (std::size_t i = 0; i < packaged.size(); ++i) packaged[i] = pkg.encrypted_signature[i] ^ mask[i];

  const bool header_consistent =
      stats.parcel_count == pkg.header.instruction_count &&
      stats.any_compressed == ((pkg.header.flags & pkg::kFlagCompressed) != 0);
  if (!digests_equal(computed, packaged) || !header_consistent) {
    wipe(quarantine);
    return ValidationOutcome::rejected(RejectReason::signature_mismatch);
  }
  return ValidationOutcome::accepted(TrustedImage(std::move(quarantine), computed, pkg.header.device_id));
}

ValidationOutcome Engine::validate(ByteView package_bytes, const keys::PufBasedKey& key) {
  pkg::SealedPackage parsed;
  try {
    parsed = pkg::parse(package_bytes);
  } catch (const Error& e) {
    return ValidationOutcome::rejected(RejectReason::malformed_package, e.code());
  }
  return validate(parsed, key);
}

ValidationOutcome unseal(ByteView package_bytes, const puf::DeviceModel& model,
                         const puf::ChallengeSet& challenges, ByteView context) {
  pkg::SealedPackage parsed;
  try {
    parsed = pkg::parse(package_bytes);
  } catch (const Error& e) {
    return ValidationOutcome::rejected(RejectReason::malformed_package, e.code());
  }
  const keys::PufBasedKey key = keys::derive_master_key(puf::generate_puf_key(model, challenges), context);
  return Engine::validate(parsed, key);
}

}  // namespace eric::hde
