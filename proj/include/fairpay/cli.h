// Copyright 2026 The Authors.
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

#ifndef FAIRPAY_CLI_H_
#define FAIRPAY_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "fairpay/algorithms.h"
#include "fairpay/json_io.h"

namespace fairpay {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;     // bad or incompatible input, too large
inline constexpr int kExitMismatch = 3;  // failed certificate or verification

// Runs the named algorithm (baseline, bounded, nsw, nsw-matroid, alg1, alg2).
// alpha and rho are rational strings; empty means absent.
SolveResult solve_named(const Instance& inst, const std::string& alg, const std::string& alpha,
                        const std::string& rho, int workers = 1);

// Checks a stored report (as written by solve) against the instance. Prints
// "ok: ..." / "mismatch: ..." lines and returns kExitOk or kExitMismatch.
int verify_result(const Instance& inst, const Json& report, const std::string& check, int workers,
                  std::ostream& out);

// Brute-force oracle tasks; same JSON as the oracle command.
Json oracle_json(const Instance& inst, const std::string& task, const std::string& alpha,
                 const std::string& welfare, const std::string& allocation, int workers = 1);

// args excludes the program name, e.g. {"gen", "tightness", "--n", "3"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairpay

#endif  // FAIRPAY_CLI_H_
