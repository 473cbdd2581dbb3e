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

#include "fairpay/cli.h"

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fairpay/algorithms.h"
#include "fairpay/envy.h"
#include "fairpay/errors.h"
#include "fairpay/generators.h"
#include "fairpay/json_io.h"
#include "fairpay/matching.h"
#include "fairpay/oracles.h"

namespace fairpay {
namespace {

struct GenArgs {
  std::string generator;
  int n = 0;
  int m = 0;
  std::string eps;
  std::string cls = "additive";
  std::uint64_t seed = 0;
  std::string out;
  CLI::Option* n_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

struct SolveArgs {
  std::string in;
  std::string alg;
  std::string alpha;
  std::string rho;
  std::string out;
  int workers = 1;
};

struct VerifyArgs {
  std::string in;
  std::string result;
  std::string check;
};

struct OracleArgs {
  std::string in;
  std::string task;
  std::string alpha;
  std::string welfare = "sw";
  std::string allocation;
  std::string out;
  int workers = 1;
};

void require(const CLI::Option* opt, const std::string& what) {
  if (opt->count() == 0) throw PreconditionError(what + " needs " + opt->get_name());
}

int run_gen(const GenArgs& g, std::ostream& out) {
  const std::string who = "gen " + g.generator;
  Instance inst = [&] {
    if (g.generator == "tightness") {
      require(g.n_opt, who);
      return gen_tightness(g.n);
    }
    if (g.generator == "bad-nsw") {
      require(g.eps_opt, who);
      return gen_bad_nsw(parse_rational(g.eps));
    }
    if (g.generator == "imposs") {
      require(g.n_opt, who);
      require(g.m_opt, who);
      require(g.eps_opt, who);
      return gen_imposs(g.n, g.m, parse_rational(g.eps));
    }
    if (g.generator == "constant-sum") {
      require(g.n_opt, who);
      int m = g.m;
      if (g.m_opt->count() == 0) m = std::max(1, static_cast<int>(std::lround(std::sqrt(g.n))));
      return gen_constant_sum(g.n, m);
    }
    if (g.generator == "sqrt") {
      require(g.m_opt, who);
      return gen_sqrt(g.m);
    }
    require(g.n_opt, who);
    require(g.m_opt, who);
    require(g.seed_opt, who);
    return gen_random(g.n, g.m, parse_valuation_class(g.cls), g.seed);
  }();
  const std::string text = dump_instance(inst);
  if (g.out.empty()) {
    out << text;
  } else {
    write_file(g.out, text);
    out << g.generator << ": n=" << inst.agents() << " m=" << inst.items()
        << " class=" << to_string(inst.declared_class()) << " -> " << g.out << "\n";
  }
  return kExitOk;
}

std::optional<Rational> optional_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text);
}

Rational required_rational(const std::string& text, const std::string& what) {
  if (text.empty()) throw PreconditionError(what + " needs --alpha");
  return parse_rational(text);
}

int run_solve(const SolveArgs& s, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance_file(s.in);
  const auto start = std::chrono::steady_clock::now();
  SolveResult result = solve_named(inst, s.alg, s.alpha, s.rho, s.workers);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  const RunReport report = make_report(inst, std::move(result), ms);
  const std::string text = report_to_json(report).dump(2) + "\n";
  if (s.out.empty()) {
    out << text;
  } else {
    write_file(s.out, text);
  }
  if (const Certificate* bad = report.result.first_failure()) {
    err << "certificate failed: " << bad->name << " (lhs " << bad->lhs << ", rhs " << bad->rhs << ")\n";
    return kExitMismatch;
  }
  if (!s.out.empty()) {
    out << report.result.algorithm << ": " << report.result.certificates.size() << " certificates hold -> " << s.out
        << "\n";
  }
  return kExitOk;
}

// Collects verification failures; each line carries its own witness.
class Findings {
 public:
  void fail(std::string line) { lines_.push_back(std::move(line)); }
  void pass(std::string line) { passed_.push_back(std::move(line)); }
  int report(std::ostream& out) const {
    for (const auto& l : passed_) out << "ok: " << l << "\n";
    for (const auto& l : lines_) out << "mismatch: " << l << "\n";
    return lines_.empty() ? kExitOk : kExitMismatch;
  }
  bool clean() const { return lines_.empty(); }

 private:
  std::vector<std::string> passed_;
  std::vector<std::string> lines_;
};

std::string join_cycle(const std::vector<int>& cycle) {
  std::string s;
  for (int v : cycle) s += std::to_string(v) + " -> ";
  return s + (cycle.empty() ? "" : std::to_string(cycle.front()));
}

// The stored payments must be the minimum subsidies of the stored allocation
// and their natural transfers, recomputed here from the valuations.
void check_payments_consistent(const Instance& inst, const SolveResult& r, Findings& f) {
  const int n = inst.agents();
  const auto& s = r.subsidies.amounts;
  const auto& t = r.transfers.amounts;
  if (static_cast<int>(s.size()) != n || static_cast<int>(t.size()) != n) {
    f.fail("payment vectors must have one entry per agent");
    return;
  }
  Number sum;
  for (const auto& x : t) sum += x;
  if (!sum.is_zero()) f.fail("transfers sum to " + sum.to_string() + ", not 0");
  for (int i = 0; i < n; ++i) {
    if (s[i].sign() < 0) f.fail("agent " + std::to_string(i) + ": negative subsidy " + s[i].to_string());
  }
  const EnvyFreeabilityCertificate cert = is_envy_freeable(inst, r.allocation);
  if (!cert.envy_freeable) {
    f.fail("allocation is not envy-freeable: positive cycle " + join_cycle(cert.cycle) + " of weight " +
           cert.cycle_weight.to_string());
    return;
  }
  const PaymentVector minimum = min_subsidies(inst, r.allocation);
  for (int i = 0; i < n; ++i) {
    if (s[i] != minimum.amounts[i]) {
      f.fail("agent " + std::to_string(i) + ": stored subsidy " + s[i].to_string() + ", minimum is " +
             minimum.amounts[i].to_string());
    }
  }
  const PaymentVector natural = natural_transfers(r.subsidies);
  for (int i = 0; i < n; ++i) {
    if (t[i] != natural.amounts[i]) {
      f.fail("agent " + std::to_string(i) + ": stored transfer " + t[i].to_string() + ", expected " +
             natural.amounts[i].to_string());
    }
  }
}

std::optional<std::pair<int, int>> ef1_witness(const Instance& inst, const Allocation& a) {
  const int n = inst.agents();
  for (int i = 0; i < n; ++i) {
    const Number own = inst.value(i, a.bundles[i]);
    for (int j = 0; j < n; ++j) {
      if (i == j || inst.value(i, a.bundles[j]) <= own) continue;
      bool ok = false;
      for (int g = 0; g < inst.items() && !ok; ++g) {
        ok = contains(a.bundles[j], g) && inst.value(i, a.bundles[j] & ~singleton(g)) <= own;
      }
      if (!ok) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

void bound_le(Findings& f, const std::string& name, const Number& lhs, const Number& rhs) {
  const std::string line = name + " (" + lhs.to_string() + " <= " + rhs.to_string() + ")";
  if (lhs <= rhs) {
    f.pass(line);
  } else {
    f.fail(line);
  }
}

void check_bounds(const Instance& inst, const SolveResult& r, const EnumerationOptions& opts, Findings& f) {
  const int n = inst.agents();
  const Number total = r.transfers.total_absolute();
  const Number sw = social_welfare(inst, r.allocation, r.transfers);
  const Number n2(static_cast<long>(n) * n);
  const std::string& alg = r.algorithm;
  auto optimum_max = [&](const Allocation& opt) {
    Number best;
    for (int i = 0; i < n; ++i) best = max(best, inst.value(i, opt.bundles[i]));
    return best;
  };
  if (alg == "alg1" || alg == "alg2") {
    if (!r.alpha) throw ParseError(alg + " result carries no alpha");
    const Number alpha(*r.alpha);
    const Allocation opt = brute_sw_opt(inst, opts);
    bound_le(f, "alpha*SW(A*) <= SW(A,t)", alpha * social_welfare(inst, opt), sw);
    if (alg == "alg1") {
      bound_le(f, "total_transfer <= n*(alpha*max_i v_i(A*_i) + 2)", total,
               Number(n) * (alpha * optimum_max(opt) + Number(2)));
    } else {
      bound_le(f, "total_transfer <= 2*n^2*(3*alpha*max_i v_i(A*_i) + 2)", total,
               Number(2) * n2 * (Number(3) * alpha * optimum_max(opt) + Number(2)));
    }
    return;
  }
  bound_le(f, "total_transfer <= 2*n^2", total, Number(2) * n2);
  if (alg == "baseline" && (inst.is_additive() || allocation_count(inst) <= opts.cap)) {
    bound_le(f, "SW(A*)/n <= SW(A,t)", social_welfare(inst, brute_sw_opt(inst, opts)) / Number(n), sw);
  }
  if ((alg == "nsw" || alg == "nsw-matroid") && allocation_count(inst) <= opts.cap) {
    const Number reference = nash_product(inst, brute_nsw_opt(inst, opts));
    const auto u = utilities(inst, r.allocation, r.transfers);
    bool nonnegative = true;
    for (const auto& x : u) nonnegative = nonnegative && x.sign() >= 0;
    double ratio = 0;
    if (reference.is_zero()) {
      ratio = INFINITY;
    } else if (nonnegative) {
      ratio = std::pow((nash_product(u) / reference).to_double(), 1.0 / n);
    }
    const double bound = r.alpha ? r.alpha->get_d() * kNashRatioBound : kNashRatioBound;
    std::ostringstream line;
    line.precision(17);
    line << "nsw_ratio >= " << bound << " (" << ratio << ", approx)";
    if (ratio >= bound * (1 - kNashRatioTolerance)) {
      f.pass(line.str());
    } else {
      f.fail(line.str());
    }
  }
}

int run_verify(const VerifyArgs& v, std::ostream& out, const EnumerationOptions& opts) {
  const Instance inst = load_instance_file(v.in);
  Json j;
  try {
    j = Json::parse(read_file(v.result));
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed result JSON: ") + e.what());
  }
  return verify_result(inst, j, v.check, opts.workers, out);
}

Allocation parse_allocation_list(const std::string& text) {
  Allocation a;
  std::stringstream ss(text);
  std::string key;
  while (std::getline(ss, key, ',')) a.bundles.push_back(parse_bundle_key(key));
  return a;
}

int run_oracle(const OracleArgs& o, std::ostream& out) {
  const Instance inst = load_instance_file(o.in);
  const Json j = oracle_json(inst, o.task, o.alpha, o.welfare, o.allocation, o.workers);
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
  return kExitOk;
}

}  // namespace

SolveResult solve_named(const Instance& inst, const std::string& alg, const std::string& alpha,
                        const std::string& rho, int workers) {
  const EnumerationOptions opts{workers};
  if (alg == "baseline") return subadditive_baseline(inst, optional_rational(rho), opts);
  if (alg == "bounded") {
    // EF1 start from the envy-cycle procedure; normalized marginals give b = 1.
    Allocation base = envy_cycles(inst, inst.all_items(), empty_allocation(inst.agents()));
    return make_envy_free_from_bounded(inst, base, Rational(1), opts);
  }
  if (alg == "nsw") {
    NashPipelineOptions nash;
    nash.enumeration = opts;
    return nsw_pipeline_additive(inst, nash);
  }
  if (alg == "nsw-matroid") return nsw_pipeline_matroid(inst, opts);
  if (alg == "alg1") return algorithm1_additive(inst, required_rational(alpha, "alg1"));
  if (alg == "alg2") {
    return algorithm2_general(inst, required_rational(alpha, "alg2"), CandidateSearch::kEnumerate, opts);
  }
  throw PreconditionError("unknown algorithm: " + alg);
}

int verify_result(const Instance& inst, const Json& j, const std::string& check, int workers, std::ostream& out) {
  if (check != "ef" && check != "efable" && check != "ef1" && check != "bounds") {
    throw PreconditionError("unknown check: " + check);
  }
  const EnumerationOptions opts{workers};
  const RunReport report = report_from_json(j);
  if (report.agents != inst.agents() || report.items != inst.items()) {
    throw PreconditionError("result was produced for a different instance shape");
  }
  const SolveResult& r = report.result;
  Findings f;
  try {
    check_partition(inst, r.allocation);
  } catch (const InvariantViolation& e) {
    f.fail(std::string("allocation: ") + e.what());
    return f.report(out);
  }
  if (check == "ef") {
    const EnvyFreeCheck ef = is_envy_free(inst, r.allocation, r.transfers);
    if (ef.envy_free) {
      f.pass("envy-free under the stored transfers");
    } else {
      f.fail("agent " + std::to_string(ef.envier) + " envies agent " + std::to_string(ef.envied) + " by " +
             ef.violation.to_string());
    }
  } else if (check == "ef1") {
    if (auto w = ef1_witness(inst, r.allocation)) {
      f.fail("agent " + std::to_string(w->first) + " envies agent " + std::to_string(w->second) +
             " after removing any single item");
    } else {
      f.pass("EF1");
    }
  }
  check_payments_consistent(inst, r, f);
  if (check == "efable" && f.clean()) f.pass("envy-freeable with minimum subsidies as stored");
  if (check == "bounds" && f.clean()) check_bounds(inst, r, opts, f);
  return f.report(out);
}

Json oracle_json(const Instance& inst, const std::string& task, const std::string& alpha_text,
                 const std::string& welfare, const std::string& allocation, int workers) {
  const EnumerationOptions opts{workers};
  Json j;
  j["task"] = task;
  if (task == "sw-opt") {
    const Allocation a = brute_sw_opt(inst, opts);
    j["allocation"] = allocation_to_json(a);
    j["sw"] = social_welfare(inst, a).to_string();
  } else if (task == "nsw-opt") {
    const Allocation a = brute_nsw_opt(inst, opts);
    j["allocation"] = allocation_to_json(a);
    j["nash_product"] = nash_product(inst, a).to_string();
  } else if (task == "enum-efable") {
    const auto all = enumerate_envy_freeable(inst, opts);
    j["count"] = all.size();
    j["allocations"] = Json::array();
    for (const auto& a : all) j["allocations"].push_back(allocation_to_json(a));
  } else if (task == "min-transfer") {
    Allocation a;
    if (allocation.empty()) {
      a = reassign_bundles(inst, brute_nsw_opt(inst, opts)).allocation;
    } else {
      a = parse_allocation_list(allocation);
      check_partition(inst, a);
    }
    const TransferOptimum t = min_total_transfer(inst, a);
    j["allocation"] = allocation_to_json(a);
    j["total"] = t.total.to_string();
    j["transfers"] = numbers_to_json(t.transfers.amounts);
    j["natural_total"] = t.natural_total.to_string();
  } else if (task == "min-transfer-at-welfare") {
    if (welfare != "sw" && welfare != "nsw") throw PreconditionError("--welfare must be sw or nsw");
    const Rational alpha = required_rational(alpha_text, "min-transfer-at-welfare");
    const TransferAtWelfare t =
        min_transfer_at_welfare(inst, alpha, welfare == "sw" ? WelfareKind::kSocial : WelfareKind::kNash, opts);
    j["alpha"] = to_string(alpha);
    j["welfare"] = welfare;
    j["value"] = t.value ? t.value->to_string() : "inf";
    j["witness"] = t.witness ? allocation_to_json(*t.witness) : Json(nullptr);
    j["allocations_examined"] = t.allocations_examined;
  } else {
    throw PreconditionError("unknown oracle task: " + task);
  }
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envy-free allocations of indivisible goods with transfers", "fairpay"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a generated instance");
  gen_cmd->add_option("generator", gen.generator, "Generator name")
      ->required()
      ->check(CLI::IsMember({"tightness", "bad-nsw", "imposs", "constant-sum", "sqrt", "random"}));
  gen.n_opt = gen_cmd->add_option("--n", gen.n, "Agents");
  gen.m_opt = gen_cmd->add_option("--m", gen.m, "Items");
  gen.eps_opt = gen_cmd->add_option("--eps", gen.eps, "Rational epsilon");
  gen_cmd->add_option("--class", gen.cls, "Valuation class for random instances")
      ->check(CLI::IsMember({"additive", "subadditive", "matroid_rank", "monotone"}));
  gen.seed_opt = gen_cmd->add_option("--seed", gen.seed, "Seed (required for random)");
  gen_cmd->add_option("-o,--out", gen.out, "Output path (default stdout)");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run an algorithm and certify its bounds");
  solve_cmd->add_option("-i,--in", solve.in, "Instance file")->required();
  solve_cmd->add_option("--alg", solve.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"baseline", "bounded", "nsw", "nsw-matroid", "alg1", "alg2"}));
  solve_cmd->add_option("--alpha", solve.alpha, "Welfare fraction p/q");
  solve_cmd->add_option("--rho", solve.rho, "rho-mean exponent p/q");
  solve_cmd->add_option("-o,--out", solve.out, "Report path (default stdout)");
  solve_cmd->add_option("--workers", solve.workers, "Enumeration threads")->check(CLI::Range(1, 256));

  VerifyArgs verify;
  int verify_workers = 1;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Re-check a stored result from scratch");
  verify_cmd->add_option("-i,--in", verify.in, "Instance file")->required();
  verify_cmd->add_option("-r,--result", verify.result, "Report file")->required();
  verify_cmd->add_option("--check", verify.check, "Property")
      ->required()
      ->check(CLI::IsMember({"ef", "efable", "ef1", "bounds"}));
  verify_cmd->add_option("--workers", verify_workers, "Enumeration threads")->check(CLI::Range(1, 256));

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Run an exhaustive oracle");
  oracle_cmd->add_option("-i,--in", oracle.in, "Instance file")->required();
  oracle_cmd->add_option("--task", oracle.task, "Oracle task")
      ->required()
      ->check(CLI::IsMember({"sw-opt", "nsw-opt", "enum-efable", "min-transfer", "min-transfer-at-welfare"}));
  oracle_cmd->add_option("--alpha", oracle.alpha, "Welfare fraction p/q");
  oracle_cmd->add_option("--welfare", oracle.welfare, "sw or nsw");
  oracle_cmd->add_option("--allocation", oracle.allocation,
                         "Comma-separated bundle keys (min-transfer; default: reassigned Nash optimum)");
  oracle_cmd->add_option("-o,--out", oracle.out, "Output path (default stdout)");
  oracle_cmd->add_option("--workers", oracle.workers, "Enumeration threads")->check(CLI::Range(1, 256));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*solve_cmd) return run_solve(solve, out, err);
    if (*verify_cmd) return run_verify(verify, out, EnumerationOptions{verify_workers});
    return run_oracle(oracle, out);
  } catch (const NotEnvyFreeableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace fairpay
