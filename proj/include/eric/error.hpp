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

#include <stdexcept>
#include <string>
#include <string_view>

namespace eric {

enum class ErrorCode {
  // puf_model
  ChainIndexOutOfRange,
  BadChallengeSet,
  BadDeviceFile,
  // key_mgmt
  BadKey,
  // riscv_decode
  TruncatedParcel,
  UnsupportedEncoding,
  UnsupportedParcel,
  FieldAbsent,
  // package_format
  BadMagic,
  UnsupportedVersion,
  Truncated,
  InvariantViolation,
  NotElf,
  NoTextSection,
  UnsupportedElf,
  // seal
  BadPolicy,
  PolicyViolation,
  IndexOutOfRange,
  // hde
  MapExhausted,
  // distribution
  NotFound,
  BadRequest,
  Transport,
  // analysis
  EmptyInput,
  // generic
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eric
