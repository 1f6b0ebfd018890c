// Copyright 2026 The stablesim Authors.
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

#ifndef STABLESIM_TOOLS_CLI_APP_HPP_
#define STABLESIM_TOOLS_CLI_APP_HPP_

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 numerical or statistical failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablesim/stablesim.hpp"

namespace stablesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Raised for command lines that parse but do not make sense.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

using json = nlohmann::ordered_json;

struct Selector {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

// Flags each selector reads; anything else given on the command line is rejected.
inline const std::map<std::string, Selector>& sample_selectors() {
  static const std::map<std::string, Selector> m{
      {"positive-stable", {{"nu"}, {"n"}}},
      {"strictly-stable", {{"alpha", "rho"}, {"n"}}},
      {"mittag-leffler", {{"alpha"}, {"n"}}},
      {"positive-linnik", {{"nu", "mu"}, {"n"}}},
      {"dual-positive", {{"alpha", "rho"}, {"n"}}},
  };
  return m;
}

inline const std::map<std::string, Selector>& simulate_selectors() {
  static const std::map<std::string, Selector> m{
      {"fpp", {{"nu", "mu", "t-max"}, {}}},
      {"subordinator", {{"nu", "t-max", "dt"}, {}}},
      {"inverse-subordinator", {{"alpha", "t"}, {"n"}}},
      {"subdiffusion", {{"alpha", "t"}, {"n", "route", "generator"}}},
      {"subordinate-bm", {{"alpha", "t"}, {"n", "generator"}}},
      {"pde-estimate", {{"alpha", "t", "bins", "range"}, {"n", "generator"}}},
  };
  return m;
}

inline const std::map<std::string, Selector>& eval_selectors() {
  static const std::map<std::string, Selector> m{
      {"ml-two", {{"xi", "beta", "z"}, {}}},
      {"ml-three", {{"xi", "beta", "gamma", "z"}, {}}},
      {"linnik-density", {{"nu", "mu", "t"}, {}}},
      {"linnik-cdf", {{"nu", "mu", "t"}, {}}},
      {"fpp-pmf", {{"nu", "mu", "t", "k"}, {}}},
      {"levy-cdf", {{"t"}, {}}},
  };
  return m;
}

template <typename Map>
std::string keys_of(const Map& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ", ") + k;
  return s;
}

/// Option values bound to one subcommand.
struct Flags {
  std::map<std::string, double> reals;
  std::map<std::string, long long> ints;
  std::map<std::string, std::string> strings;
  std::map<std::string, CLI::Option*> options;
  std::uint64_t seed = 1;
  std::size_t n = 1000;

  bool given(const std::string& name) const {
    auto it = options.find(name);
    return it != options.end() && it->second->count() > 0;
  }
  double real(const std::string& name) const { return reals.at(name); }

  void add_real(CLI::App* app, const std::string& name, const std::string& help) {
    options[name] = app->add_option("--" + name, reals[name], help);
  }
  void add_int(CLI::App* app, const std::string& name, const std::string& help) {
    options[name] = app->add_option("--" + name, ints[name], help);
  }
  void add_string(CLI::App* app, const std::string& name, const std::string& help,
                  const std::string& fallback) {
    strings[name] = fallback;
    options[name] = app->add_option("--" + name, strings[name], help);
  }
  void add_common(CLI::App* app, bool with_n, std::uint64_t default_seed) {
    seed = default_seed;
    options["seed"] = app->add_option("--seed", seed, "random seed")->capture_default_str();
    if (with_n) options["n"] = app->add_option("-n", n, "number of draws")->capture_default_str();
  }

  /// Rejects flags the selector does not read and reports missing ones.
  void check(const std::string& command, const std::string& selector, const Selector& sel) const {
    std::set<std::string> allowed(sel.required.begin(), sel.required.end());
    allowed.insert(sel.optional.begin(), sel.optional.end());
    for (const char* always : {"seed", "format", "output"}) allowed.insert(always);
    for (const auto& [name, opt] : options) {
      if (opt->count() > 0 && !allowed.count(name)) {
        throw usage_error("flag " + opt->get_name() + " does not apply to " + command + " " +
                          selector);
      }
    }
    for (const auto& name : sel.required) {
      if (!given(name)) throw usage_error(command + " " + selector + " requires --" + name);
    }
  }
};

inline ParamList param_list(const Flags& f, const Selector& sel) {
  ParamList p;
  auto push = [&](const std::string& name) {
    if (f.reals.count(name) && f.given(name)) p.emplace_back(name, f.real(name));
    if (f.ints.count(name) && f.given(name)) p.emplace_back(name, static_cast<double>(f.ints.at(name)));
  };
  for (const auto& name : sel.required) push(name);
  for (const auto& name : sel.optional) push(name);
  return p;
}

inline Generator parse_generator(const Flags& f) {
  const std::string& g = f.strings.at("generator");
  if (g == "laplacian") return Generator::laplacian;
  if (g == "half-laplacian") return Generator::half_laplacian;
  throw usage_error("--generator must be laplacian or half-laplacian, got '" + g + "'");
}

inline int checked_int(const Flags& f, const std::string& name, long long lo) {
  const long long v = f.ints.at(name);
  if (v < lo || v > 1000000000LL) {
    throw usage_error("--" + name + " must be an integer >= " + std::to_string(lo) + ", got " +
                      std::to_string(v));
  }
  return static_cast<int>(v);
}

inline void emit_values(std::ostream& os, const std::string& format, const std::string& kind,
                        const std::string& selector, const ParamList& params,
                        std::uint64_t seed, const std::vector<double>& values) {
  if (format == "json") {
    json j{{"selector", selector}, {"params", params_json(params)}, {"seed", seed},
           {"n", values.size()}, {"values", values}};
    os << j.dump() << '\n';
  } else {
    write_values_csv(os, header_line(kind, selector, params, seed, "value"), values);
  }
}

// ---------------------------------------------------------------------------

inline int run_sample(const std::string& selector, const Flags& f, const std::string& format,
                      std::ostream& os) {
  const auto& table = sample_selectors();
  auto it = table.find(selector);
  if (it == table.end()) {
    throw usage_error("unknown sample selector '" + selector + "' (expected one of " +
                      keys_of(table) + ")");
  }
  f.check("sample", selector, it->second);
  const RandomStream stream(f.seed, 0);
  std::vector<double> values;
  if (selector == "positive-stable") {
    const OneSidedIndex nu(f.real("nu"));
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_positive_stable(nu, s); });
  } else if (selector == "strictly-stable") {
    const StrictStableParams p(f.real("alpha"), f.real("rho"));
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
  } else if (selector == "mittag-leffler") {
    const OneSidedIndex a(f.real("alpha"));
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_mittag_leffler_rv(a, s); });
  } else if (selector == "positive-linnik") {
    const LinnikParams p(OneSidedIndex(f.real("nu")), f.real("mu"));
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_positive_linnik(p, s); });
  } else {
    const StrictStableParams p(f.real("alpha"), f.real("rho"));
    if (!(p.alpha() > 1.0)) throw usage_error("dual-positive requires --alpha in (1,2]");
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_dual_positive(p, s); });
  }
  emit_values(os, format, "sample", selector, param_list(f, it->second), f.seed, values);
  return kExitOk;
}

inline int run_simulate(const std::string& selector, const Flags& f, const std::string& format,
                        std::ostream& os) {
  const auto& table = simulate_selectors();
  auto it = table.find(selector);
  if (it == table.end()) {
    throw usage_error("unknown simulate selector '" + selector + "' (expected one of " +
                      keys_of(table) + ")");
  }
  f.check("simulate", selector, it->second);
  const ParamList params = param_list(f, it->second);
  RandomStream stream(f.seed, 0);

  if (selector == "fpp") {
    const LinnikParams p(OneSidedIndex(f.real("nu")), f.real("mu"));
    const RenewalTrajectory traj = simulate_frac_poisson(p, f.real("t-max"), stream);
    if (format == "json") {
      os << trajectory_json(params, f.seed, traj).dump() << '\n';
    } else {
      write_trajectory_csv(os, header_line("simulate", selector, params, f.seed, "count,time"), traj);
    }
    return kExitOk;
  }
  if (selector == "subordinator") {
    const double t_max = f.real("t-max"), dt = f.real("dt");
    if (std::isfinite(t_max) && std::isfinite(dt) && dt > 0 && t_max / dt > 1e8) {
      throw usage_error("--t-max / --dt exceeds 1e8 grid points");
    }
    const SubordinatorPath path =
        simulate_subordinator_path(OneSidedIndex(f.real("nu")), t_max, dt, stream);
    if (format == "json") {
      os << path_json(params, f.seed, path).dump() << '\n';
    } else {
      write_path_csv(os, header_line("simulate", selector, params, f.seed, "time,value"), path);
    }
    return kExitOk;
  }

  const double alpha = f.real("alpha"), t = f.real("t");
  const Generator gen = parse_generator(f);
  if (selector == "pde-estimate") {
    const int bins = checked_int(f, "bins", 10);
    const PdeEstimate est = estimate_pde_solution(alpha, t, bins, f.real("range"), f.n, stream, 0, gen);
    if (format == "json") {
      os << pde_json(params, f.seed, est).dump() << '\n';
    } else {
      std::string header = header_line("simulate", selector, params, f.seed,
                                       "bin_left,bin_right,density");
      header += " n=" + std::to_string(est.n_samples) +
                " in_range_mass=" + format_double(est.in_range_mass()) +
                " out_of_range_mass=" + format_double(est.out_of_range_mass);
      write_pde_csv(os, header, est);
    }
    return kExitOk;
  }

  std::vector<double> values;
  if (selector == "inverse-subordinator") {
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_inverse_subordinator(alpha, t, s); });
  } else if (selector == "subordinate-bm") {
    values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_subordinate_bm(alpha, t, s, gen); });
  } else {
    const std::string& route = f.strings.at("route");
    if (alpha < 1.0) {
      if (f.given("route") && route != "direct") {
        throw usage_error("--route " + route + " needs --alpha in (1,2]; alpha < 1 uses the direct route");
      }
      values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_subdiffusion_direct(alpha, t, s, gen); });
    } else if (route == "direct") {
      ::stablesim::detail::require_dual_index(alpha);
      values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_subdiffusion_direct(1.0 / alpha, t, s, gen); });
    } else if (route == "time-inversion" || route == "stable-positive-part") {
      const DualRoute r = route == "time-inversion" ? DualRoute::time_inversion : DualRoute::stable_positive_part;
      values = sample_batch(f.n, stream, [&](RandomStream& s) { return sample_subdiffusion_dual(alpha, t, r, s, gen); });
    } else {
      throw usage_error("--route must be direct, time-inversion or stable-positive-part, got '" + route + "'");
    }
  }
  emit_values(os, format, "simulate", selector, params, f.seed, values);
  return kExitOk;
}

inline int run_eval(const std::string& selector, const Flags& f, const std::string& format,
                    std::ostream& os) {
  const auto& table = eval_selectors();
  auto it = table.find(selector);
  if (it == table.end()) {
    throw usage_error("unknown eval selector '" + selector + "' (expected one of " +
                      keys_of(table) + ")");
  }
  f.check("eval", selector, it->second);
  const ParamList params = param_list(f, it->second);

  std::optional<EvalResult> full;
  double value = 0.0;
  if (selector == "ml-two") {
    full = ml_two(f.real("xi"), f.real("beta"), f.real("z"));
  } else if (selector == "ml-three") {
    full = ml_three(MLArgs(f.real("xi"), f.real("beta"), f.real("gamma"), f.real("z")));
  } else if (selector == "linnik-density") {
    value = linnik_density(LinnikParams(OneSidedIndex(f.real("nu")), f.real("mu")), f.real("t"));
  } else if (selector == "linnik-cdf") {
    value = linnik_cdf(LinnikParams(OneSidedIndex(f.real("nu")), f.real("mu")), f.real("t"));
  } else if (selector == "fpp-pmf") {
    value = frac_poisson_pmf(OneSidedIndex(f.real("nu")), f.real("mu"), f.real("t"),
                             checked_int(f, "k", 0));
  } else {
    value = levy_cdf(f.real("t"));
  }

  if (format == "json") {
    json j{{"selector", selector}, {"params", params_json(params)}};
    if (full) {
      j["value"] = full->value;
      j["est_abs_error"] = full->est_abs_error;
      j["terms_used"] = full->terms_used;
      j["regime"] = to_string(full->regime);
    } else {
      j["value"] = value;
    }
    os << j.dump() << '\n';
    return kExitOk;
  }
  if (full) {
    std::string header = header_line("eval", selector, params, 0, "value,est_abs_error,terms_used");
    header += std::string(" regime=") + to_string(full->regime);
    os << header << '\n';
    const double row[] = {full->value, full->est_abs_error, static_cast<double>(full->terms_used)};
    write_csv_row(os, row);
  } else {
    os << header_line("eval", selector, params, 0, "value") << '\n' << format_double(value) << '\n';
  }
  return kExitOk;
}

inline int run_verify(const std::string& suite, const Flags& f, std::ostream& os) {
  if (!verify::is_suite(suite)) {
    throw usage_error("unknown verify suite '" + suite + "' (expected one of all, samplers, "
                      "mlfun, duality, processes, pde, calibration)");
  }
  if ((f.given("alpha") || f.given("rho")) && suite != "duality") {
    throw usage_error("--alpha and --rho apply only to verify duality");
  }
  verify::Options o;
  o.seed = f.seed;
  o.threshold_p = f.real("threshold-p");
  if (!(o.threshold_p > 0.0 && o.threshold_p < 1.0)) {
    throw usage_error("--threshold-p must lie in (0,1)");
  }
  if (f.given("alpha")) o.alpha = f.real("alpha");
  if (f.given("rho")) o.rho = f.real("rho");
  if (o.alpha && !o.rho) o.rho = 1.0 / *o.alpha;
  if (o.rho && !o.alpha) o.alpha = 1.5;

  const auto results = verify::run_suite(suite, o);
  json checks = json::array();
  for (const auto& c : results) {
    checks.push_back({{"name", c.name}, {"passed", c.passed},
                      {"informational", c.informational}, {"reports", c.reports}});
  }
  const bool ok = verify::all_passed(results);
  json bundle{{"suite", suite}, {"seed", o.seed}, {"threshold_p", o.threshold_p},
              {"passed", ok}, {"checks", checks}};
  os << bundle.dump(2) << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace detail

/// Runs the CLI with the given arguments (argv[0] is the program name).
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable laws, Mittag-Leffler functions and fractional processes", "stablesim"};
  app.require_subcommand(1);
  std::string format = "csv";
  std::string output;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--output", output, "output file (default: standard output)");
  };

  std::string sample_sel, sim_sel, eval_sel, suite;
  detail::Flags fs, fm, fe, fv;

  CLI::App* sample = app.add_subcommand("sample", "draw i.i.d. variates");
  sample->add_option("selector", sample_sel, detail::keys_of(detail::sample_selectors()))->required();
  for (const char* r : {"nu", "alpha", "rho", "mu"}) fs.add_real(sample, r, "distribution parameter");
  fs.add_common(sample, true, 1);
  add_io(sample);

  CLI::App* simulate = app.add_subcommand("simulate", "simulate processes");
  simulate->add_option("selector", sim_sel, detail::keys_of(detail::simulate_selectors()))->required();
  for (const char* r : {"nu", "alpha", "mu", "t", "t-max", "dt", "range"}) fm.add_real(simulate, r, "process parameter");
  fm.add_int(simulate, "bins", "histogram bins");
  fm.add_string(simulate, "route", "subdiffusion route: direct, time-inversion, stable-positive-part", "time-inversion");
  fm.add_string(simulate, "generator", "Brownian scaling: laplacian (variance 2t) or half-laplacian (variance t)", "laplacian");
  fm.add_common(simulate, true, 1);
  add_io(simulate);

  CLI::App* eval = app.add_subcommand("eval", "evaluate special functions");
  eval->add_option("selector", eval_sel, detail::keys_of(detail::eval_selectors()))->required();
  for (const char* r : {"xi", "beta", "gamma", "z", "nu", "mu", "t"}) fe.add_real(eval, r, "function argument");
  fe.add_int(eval, "k", "count");
  add_io(eval);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites (JSON report)");
  verify_cmd->add_option("suite", suite, "all, samplers, mlfun, duality, processes, pde, calibration")->required();
  fv.add_real(verify_cmd, "alpha", "duality index");
  fv.add_real(verify_cmd, "rho", "duality positivity parameter");
  fv.reals["threshold-p"] = kDefaultThresholdP;
  fv.options["threshold-p"] =
      verify_cmd->add_option("--threshold-p", fv.reals["threshold-p"], "p-value threshold")->capture_default_str();
  fv.add_common(verify_cmd, false, verify::kDefaultSeed);
  verify_cmd->add_option("--output", output, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ofstream file;
    if (!output.empty()) {
      file.open(output);
      if (!file) throw usage_error("cannot open output file '" + output + "'");
    }
    std::ostream& os = output.empty() ? out : file;
    int code = kExitOk;
    if (sample->parsed()) code = detail::run_sample(sample_sel, fs, format, os);
    else if (simulate->parsed()) code = detail::run_simulate(sim_sel, fm, format, os);
    else if (eval->parsed()) code = detail::run_eval(eval_sel, fe, format, os);
    else code = detail::run_verify(suite, fv, os);
    os.flush();
    return code;
  } catch (const std::invalid_argument& e) {
    // usage_error, parameter_error, statcheck_error
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const horizon_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"stablesim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace stablesim::cli

#endif  // STABLESIM_TOOLS_CLI_APP_HPP_
