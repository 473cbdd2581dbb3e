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

#ifndef FAIRPAY_ERRORS_H_
#define FAIRPAY_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace fairpay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (JSON, rationals, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An instance or allocation breaks one of its invariants. The message names
// a witness (pair of subsets, agent pair, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition failed: wrong valuation class, parameter out of
// range, allocation not matching the instance.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Enumeration would exceed its configured cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// The allocation's envy graph has a positive-weight cycle.
class NotEnvyFreeableError : public Error {
 public:
  NotEnvyFreeableError(const std::string& what, std::vector<int> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

// A result contradicts a theorem the construction relies on (for example a
// Nash-optimal allocation that is not EF1). Never silenced.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fairpay

#endif  // FAIRPAY_ERRORS_H_
