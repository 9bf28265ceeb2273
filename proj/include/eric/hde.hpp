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

// Hardware Decryption Engine model: regenerate the key from the local PUF,
// stream-decrypt the package, re-hash, and release the image only when the
// recomputed signature matches the packaged one.

#include <cstdint>
#include <functional>
#include <optional>

#include "eric/error.hpp"
#include "eric/key_mgmt.hpp"
#include "eric/package_format.hpp"
#include "eric/puf_model.hpp"

namespace eric::hde {

class ValidationOutcome;

// Validated plaintext. Only unseal can construct one.
class TrustedImage {
 public:
  const Bytes& code() const { return code_; }
  const keys::Digest& signature() const { return signature_; }
  std::uint64_t device_id() const { return device_id_; }

 private:
  friend class Engine;
  TrustedImage(Bytes code, const keys::Digest& signature, std::uint64_t device_id)
      : code_(std::move(code)), signature_(signature), device_id_(device_id) {}

  Bytes code_;
  keys::Digest signature_{};
  std::uint64_t device_id_ = 0;
};

enum class RejectReason { signature_mismatch, malformed_package };

std::string_view to_string(RejectReason reason);

class ValidationOutcome {
 public:
  static ValidationOutcome accepted(TrustedImage image) { return ValidationOutcome(std::move(image)); }
  static ValidationOutcome rejected(RejectReason reason, std::optional<ErrorCode> cause = std::nullopt) {
    return ValidationOutcome(reason, cause);
  }

  bool is_accepted() const { return image_.has_value(); }
  // Throws std::logic_error when the outcome is a rejection.
  const TrustedImage& image() const;
  // Meaningful only for rejections.
  RejectReason reason() const { return reason_; }
  // The decode or parse error behind a rejection, if any. Never carries data.
  std::optional<ErrorCode> cause() const { return cause_; }

 private:
  explicit ValidationOutcome(TrustedImage image) : image_(std::move(image)) {}
  ValidationOutcome(RejectReason reason, std::optional<ErrorCode> cause) : reason_(reason), cause_(cause) {}

  std::optional<TrustedImage> image_;
  RejectReason reason_ = RejectReason::signature_mismatch;
  std::optional<ErrorCode> cause_;
};

// Facts about the decrypted parcel stream, checked against the header.
struct StreamStats {
  std::uint32_t parcel_count = 0;
  bool any_compressed = false;
};

using ParcelSink = std::function<void(ByteView parcel)>;

// Walks the ciphertext parcel by parcel and hands each decrypted parcel to
// `sink` without materializing the image. Throws MapExhausted,
// TruncatedParcel or UnsupportedEncoding when the stream does not line up.
StreamStats decrypt_parcels(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key,
                            const ParcelSink& sink);

// Candidate plaintext (unvalidated). Test and tooling surface.
Bytes decrypt_stream(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key);

class Engine {
 public:
  // Decrypt, re-hash and compare against the packaged signature.
  static ValidationOutcome validate(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key);
  static ValidationOutcome validate(ByteView package_bytes, const keys::PufBasedKey& key);
};

// Full device-side pipeline, starting from the local PUF.
ValidationOutcome unseal(ByteView package_bytes, const puf::DeviceModel& model,
                         const puf::ChallengeSet& challenges, ByteView context);

}  // namespace eric::hde
