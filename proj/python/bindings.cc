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

// Python bindings. Instances, allocations and reports cross as JSON text;
// the fairpay package wraps these in dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairpay/cli.h"
#include "fairpay/envy.h"
#include "fairpay/errors.h"
#include "fairpay/generators.h"
#include "fairpay/json_io.h"
#include "fairpay/oracles.h"

namespace py = pybind11;

namespace fairpay {
namespace {

std::string generate(const std::string& kind, std::optional<int> n, std::optional<int> m,
                     std::optional<std::string> eps, const std::string& cls, std::optional<std::uint64_t> seed) {
  auto need = [&](bool present, const char* what) {
    if (!present) throw PreconditionError(kind + " needs " + what);
  };
  Instance inst = [&] {
    if (kind == "tightness") {
      need(n.has_value(), "n");
      return gen_tightness(*n);
    }
    if (kind == "bad-nsw") {
      need(eps.has_value(), "eps");
      return gen_bad_nsw(parse_rational(*eps));
    }
    if (kind == "imposs") {
      need(n && m && eps, "n, m and eps");
      return gen_imposs(*n, *m, parse_rational(*eps));
    }
    if (kind == "constant-sum") {
      need(n.has_value(), "n");
      return gen_constant_sum(*n, m.value_or(std::max(1, static_cast<int>(std::lround(std::sqrt(*n))))));
    }
    if (kind == "sqrt") {
      need(m.has_value(), "m");
      return gen_sqrt(*m);
    }
    if (kind == "random") {
      need(n && m && seed, "n, m and seed");
      return gen_random(*n, *m, parse_valuation_class(cls), *seed);
    }
    throw PreconditionError("unknown generator: " + kind);
  }();
  return dump_instance(inst);
}

std::string solve(const std::string& instance, const std::string& alg, const std::string& alpha,
                  const std::string& rho, int workers) {
  const Instance inst = load_instance(instance);
  SolveResult r = solve_named(inst, alg, alpha, rho, workers);
  return report_to_json(make_report(inst, std::move(r), 0)).dump();
}

std::pair<bool, std::string> verify(const std::string& instance, const std::string& report, const std::string& check,
                                    int workers) {
  const Instance inst = load_instance(instance);
  std::ostringstream out;
  const int code = verify_result(inst, Json::parse(report), check, workers, out);
  return {code == kExitOk, out.str()};
}

std::string oracle(const std::string& instance, const std::string& task, const std::string& alpha,
                   const std::string& welfare, const std::string& allocation, int workers) {
  return oracle_json(load_instance(instance), task, alpha, welfare, allocation, workers).dump();
}

Allocation checked_allocation(const Instance& inst, const std::string& allocation) {
  Allocation a = allocation_from_json(Json::parse(allocation));
  check_partition(inst, a);
  return a;
}

bool envy_freeable(const std::string& instance, const std::string& allocation) {
  const Instance inst = load_instance(instance);
  return is_envy_freeable(inst, checked_allocation(inst, allocation)).envy_freeable;
}

std::string subsidies(const std::string& instance, const std::string& allocation) {
  const Instance inst = load_instance(instance);
  const PaymentVector s = min_subsidies(inst, checked_allocation(inst, allocation));
  return numbers_to_json(s.amounts).dump();
}

}  // namespace
}  // namespace fairpay

PYBIND11_MODULE(_core, m) {
  using namespace fairpay;
  m.doc() = "Envy-free allocation with subsidies and transfers (native core)";

  static py::exception<Error> base(m, "FairpayError", PyExc_ValueError);
  static py::exception<NotEnvyFreeableError> not_efable(m, "NotEnvyFreeableError", base.ptr());
  static py::exception<TheoremViolation> violation(m, "TheoremViolation", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotEnvyFreeableError& e) {
      py::set_error(not_efable, e.what());
    } catch (const TheoremViolation& e) {
      py::set_error(violation, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    } catch (const Json::exception& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("generate", &generate, py::arg("kind"), py::arg("n") = py::none(), py::arg("m") = py::none(),
        py::arg("eps") = py::none(), py::arg("cls") = "additive", py::arg("seed") = py::none());
  m.def("solve", &solve, py::arg("instance"), py::arg("alg"), py::arg("alpha") = "", py::arg("rho") = "",
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("verify", &verify, py::arg("instance"), py::arg("report"), py::arg("check"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("oracle", &oracle, py::arg("instance"), py::arg("task"), py::arg("alpha") = "", py::arg("welfare") = "sw",
        py::arg("allocation") = "", py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("is_envy_freeable", &envy_freeable, py::arg("instance"), py::arg("allocation"));
  m.def("min_subsidies", &subsidies, py::arg("instance"), py::arg("allocation"));
}
