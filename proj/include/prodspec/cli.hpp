// Copyright 2026 The prodspec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRODSPEC_CLI_HPP
#define PRODSPEC_CLI_HPP

#include <ostream>

namespace prodspec {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitConditioning = 3,
  kExitThreshold = 4,
};

/// Entry point of the `prodspec` tool; returns the process exit code.
///
///   prodspec run [--preset NAME] [--config FILE] [flags...]
///   prodspec presets
///
/// Precedence: flags over config file over preset over built-in defaults.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prodspec

#endif  // PRODSPEC_CLI_HPP
