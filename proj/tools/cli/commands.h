// Copyright 2026 The autolabel-kit Authors.
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

#ifndef ALKIT_TOOLS_CLI_COMMANDS_H_
#define ALKIT_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace alkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,  // bad flags or configuration
  kExitIo = 3,
  kExitData = 4,  // input data failed validation
};

// Entry point of the autolabel-kit tool:
//   simulate | autolabel | sweep | eval | report
// Returns the process exit code; never throws.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);
// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace alkit::cli

#endif  // ALKIT_TOOLS_CLI_COMMANDS_H_
