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

#include <ostream>

#include "eric/error.hpp"

namespace eric::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kFormat = 2,
  kIntegrity = 3,
  kIo = 4,
  kNetwork = 5,
};

int exit_code_for(ErrorCode code);

// Entry point behind the `eric` binary. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eric::cli
