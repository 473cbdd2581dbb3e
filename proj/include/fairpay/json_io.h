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

// JSON forms of instances, allocations, payments and run reports. Every
// exact quantity travels as a string ("p/q", or a surd expression such as
// "1 + 2*sqrt(3)"); bundles are decimal bitmask strings.

#ifndef FAIRPAY_JSON_IO_H_
#define FAIRPAY_JSON_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "fairpay/algorithms.h"
#include "fairpay/model.h"
#include "json.hpp"

namespace fairpay {

using Json = nlohmann::json;

Json instance_to_json(const Instance& inst);
// Shapes only; no class verification.
Instance instance_from_json(const Json& j);
// Parses and validates (class checked when m <= 16).
Instance load_instance(std::string_view text);
Instance load_instance_file(const std::string& path);
std::string dump_instance(const Instance& inst);

std::string bundle_key(Bundle s);
Bundle parse_bundle_key(std::string_view text);

Json allocation_to_json(const Allocation& a);
Allocation allocation_from_json(const Json& j);

Json numbers_to_json(const std::vector<Number>& xs);
std::vector<Number> numbers_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

// The "result" object of a report; certificates live beside it.
Json result_to_json(const SolveResult& r);
SolveResult result_from_json(const Json& result, const Json& certificates);

struct RunReport {
  int agents = 0;
  int items = 0;
  ValuationClass declared = ValuationClass::kAdditive;
  SolveResult result;
  std::int64_t timing_ms = 0;
};

RunReport make_report(const Instance& inst, SolveResult result, std::int64_t timing_ms);
Json report_to_json(const RunReport& r);
RunReport report_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace fairpay

#endif  // FAIRPAY_JSON_IO_H_
