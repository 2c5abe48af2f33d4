// Copyright 2026 The abc-fuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABCFUZZ_TOOLS_CLI_HPP
#define ABCFUZZ_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace abcfuzz::cli {

/// Stable process exit statuses.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kEnvironment = 3,
  kDegenerate = 4,
};

/// Entry point of `abc-fuzz <gen-prior|run|compare> [flags]`.
///
/// `args` includes the program name. Output goes to `out`, diagnostics to
/// `err`. Never throws; every failure maps to an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abcfuzz::cli

#endif
