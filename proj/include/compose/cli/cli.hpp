// Copyright 2026 The compose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace compose {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitBadInput = 1, kExitInternal = 2 };

/// Parses arguments (argv[0] is the program name), dispatches to the
/// subcommand and maps errors to exit codes.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

} // namespace compose
