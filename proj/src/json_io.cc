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

#include "fairpay/json_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string text_of(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int int_of(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

Rational rational_of(const Json& j) { return parse_rational(text_of(j, "rational")); }

Json valuation_to_json(const Valuation& v) {
  Json j;
  if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
    j["kind"] = "additive";
    j["values"] = Json::array();
    for (const auto& x : add->values) j["values"].push_back(to_string(x));
  } else if (const auto* table = std::get_if<TableValuation>(&v)) {
    j["kind"] = "table";
    j["entries"] = Json::object();
    for (std::size_t s = 0; s < table->entries.size(); ++s) j["entries"][bundle_key(s)] = to_string(table->entries[s]);
  } else {
    const auto& sq = std::get<SqrtCardinalityValuation>(v);
    j["kind"] = "sqrt_cardinality";
    if (sq.scale != 1) j["scale"] = to_string(sq.scale);
  }
  return j;
}

Valuation valuation_from_json(const Json& j, int items) {
  const std::string kind = text_of(field(j, "kind"), "kind");
  if (kind == "additive") {
    const Json& values = field(j, "values");
    if (!values.is_array() || static_cast<int>(values.size()) != items) {
      throw ParseError("additive values must list one rational per item");
    }
    AdditiveValuation add;
    for (const auto& x : values) add.values.push_back(rational_of(x));
    return add;
  }
  if (kind == "table") {
    if (items > kMaxTableItems) throw TooLargeError("table valuations support at most 20 items");
    const Json& entries = field(j, "entries");
    if (!entries.is_object()) throw ParseError("table entries must be an object");
    const std::size_t size = std::size_t{1} << items;
    if (entries.size() != size) {
      throw ParseError("table must cover all " + std::to_string(size) + " bundles, got " +
                       std::to_string(entries.size()));
    }
    TableValuation table;
    table.entries.assign(size, Rational(0));
    std::vector<bool> seen(size, false);
    for (const auto& [key, value] : entries.items()) {
      const Bundle s = parse_bundle_key(key);
      if (s >= size) throw ParseError("table key " + key + " names an item beyond m");
      if (seen[s]) throw ParseError("duplicate table key " + key);
      seen[s] = true;
      table.entries[s] = rational_of(value);
    }
    return table;
  }
  if (kind == "sqrt_cardinality") {
    SqrtCardinalityValuation sq;
    if (j.contains("scale")) sq.scale = rational_of(j.at("scale"));
    return sq;
  }
  throw ParseError("unknown valuation kind \"" + kind + "\"");
}

Json optional_rational(const std::optional<Rational>& q) { return q ? Json(to_string(*q)) : Json(nullptr); }

std::optional<Rational> optional_rational_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_of(j.at(key));
}

}  // namespace

std::string bundle_key(Bundle s) { return std::to_string(s); }

Bundle parse_bundle_key(std::string_view text) {
  Bundle s = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, s);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("bad bundle key \"" + std::string(text) + "\"");
  }
  return s;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["agents"] = inst.agents();
  j["items"] = inst.items();
  j["class"] = std::string(to_string(inst.declared_class()));
  j["valuations"] = Json::array();
  for (const auto& v : inst.valuations()) j["valuations"].push_back(valuation_to_json(v));
  return j;
}

Instance instance_from_json(const Json& j) {
  const int agents = int_of(field(j, "agents"), "agents");
  const int items = int_of(field(j, "items"), "items");
  if (agents < 1 || items < 0) throw ParseError("agents must be positive and items nonnegative");
  const ValuationClass cls = parse_valuation_class(text_of(field(j, "class"), "class"));
  const Json& vals = field(j, "valuations");
  if (!vals.is_array() || static_cast<int>(vals.size()) != agents) {
    throw ParseError("valuations must list one oracle per agent");
  }
  std::vector<Valuation> valuations;
  for (const auto& v : vals) valuations.push_back(valuation_from_json(v, items));
  return Instance(agents, items, std::move(valuations), cls);
}

Instance load_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return validate(instance_from_json(j));
}

Instance load_instance_file(const std::string& path) { return load_instance(read_file(path)); }

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Json allocation_to_json(const Allocation& a) {
  Json j = Json::array();
  for (Bundle s : a.bundles) j.push_back(bundle_key(s));
  return j;
}

Allocation allocation_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("allocation must be an array of bundle keys");
  Allocation a;
  for (const auto& s : j) a.bundles.push_back(parse_bundle_key(text_of(s, "bundle")));
  return a;
}

Json numbers_to_json(const std::vector<Number>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(x.to_string());
  return j;
}

std::vector<Number> numbers_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  std::vector<Number> xs;
  for (const auto& x : j) xs.push_back(Number::parse(text_of(x, "number")));
  return xs;
}

Json certificate_to_json(const Certificate& c) {
  return Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"approx", c.approx}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.name = text_of(field(j, "name"), "name");
  c.lhs = text_of(field(j, "lhs"), "lhs");
  c.rhs = text_of(field(j, "rhs"), "rhs");
  const Json& holds = field(j, "holds");
  if (!holds.is_boolean()) throw ParseError("holds must be a boolean");
  c.holds = holds.get<bool>();
  c.approx = j.value("approx", false);
  return c;
}

Json result_to_json(const SolveResult& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["alpha"] = optional_rational(r.alpha);
  j["rho"] = optional_rational(r.rho);
  j["allocation"] = allocation_to_json(r.allocation);
  j["subsidies"] = numbers_to_json(r.subsidies.amounts);
  j["transfers"] = numbers_to_json(r.transfers.amounts);
  Json w;
  w["sw"] = r.report.sw.to_string();
  w["nash_product"] = r.report.nash_product ? Json(r.report.nash_product->to_string()) : Json(nullptr);
  w["rho"] = optional_rational(r.report.rho);
  w["rho_mean"] = r.report.rho_mean ? Json{{"value", *r.report.rho_mean}, {"approx", true}} : Json(nullptr);
  w["utilities"] = numbers_to_json(r.report.utilities);
  j["welfare"] = std::move(w);
  return j;
}

SolveResult result_from_json(const Json& result, const Json& certificates) {
  SolveResult r;
  r.algorithm = text_of(field(result, "algorithm"), "algorithm");
  r.alpha = optional_rational_from(result, "alpha");
  r.rho = optional_rational_from(result, "rho");
  r.allocation = allocation_from_json(field(result, "allocation"));
  r.subsidies = PaymentVector{numbers_from_json(field(result, "subsidies")), PaymentKind::kSubsidy};
  r.transfers = PaymentVector{numbers_from_json(field(result, "transfers")), PaymentKind::kTransfer};
  const Json& w = field(result, "welfare");
  r.report.sw = Number::parse(text_of(field(w, "sw"), "sw"));
  if (w.contains("nash_product") && !w.at("nash_product").is_null()) {
    r.report.nash_product = Number::parse(text_of(w.at("nash_product"), "nash_product"));
  }
  r.report.rho = optional_rational_from(w, "rho");
  if (w.contains("rho_mean") && !w.at("rho_mean").is_null()) {
    r.report.rho_mean = field(w.at("rho_mean"), "value").get<double>();
  }
  r.report.utilities = numbers_from_json(field(w, "utilities"));
  if (!certificates.is_array()) throw ParseError("certificates must be an array");
  for (const auto& c : certificates) r.certificates.push_back(certificate_from_json(c));
  return r;
}

RunReport make_report(const Instance& inst, SolveResult result, std::int64_t timing_ms) {
  return RunReport{inst.agents(), inst.items(), inst.declared_class(), std::move(result), timing_ms};
}

Json report_to_json(const RunReport& r) {
  Json j;
  j["instance"] = Json{{"agents", r.agents}, {"items", r.items}, {"class", std::string(to_string(r.declared))}};
  j["result"] = result_to_json(r.result);
  j["certificates"] = Json::array();
  for (const auto& c : r.result.certificates) j["certificates"].push_back(certificate_to_json(c));
  j["timing_ms"] = r.timing_ms;
  return j;
}

RunReport report_from_json(const Json& j) {
  RunReport r;
  const Json& inst = field(j, "instance");
  r.agents = int_of(field(inst, "agents"), "agents");
  r.items = int_of(field(inst, "items"), "items");
  r.declared = parse_valuation_class(text_of(field(inst, "class"), "class"));
  r.result = result_from_json(field(j, "result"), field(j, "certificates"));
  r.timing_ms = j.value("timing_ms", std::int64_t{0});
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace fairpay
