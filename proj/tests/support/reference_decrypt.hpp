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

#include "eric/bytes.hpp"
#include "eric/key_mgmt.hpp"
#include "eric/package_format.hpp"

namespace eric::testing {

// Non-streaming decryption used as an oracle for the engine's parcel walk.
// Materializes the whole code keystream up front and computes field masks
// straight from the descriptor list. Shares no code with the streaming path
// beyond the keystream definition and opcode classification.
Bytes reference_decrypt(const pkg::SealedPackage& pkg, const keys::PufBasedKey& key);

}  // namespace eric::testing
