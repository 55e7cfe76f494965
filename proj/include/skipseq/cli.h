//
// Copyright 2026 The skipseq Authors
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
//

#ifndef SKIPSEQ_CLI_H_
#define SKIPSEQ_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace skipseq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;

// Runs one command line (without the program name). Standard input for "-"
// paths comes from `in`. In JSON mode nothing is written to `out` unless the
// command succeeds.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace skipseq

#endif  // SKIPSEQ_CLI_H_
