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

#ifndef STABLESIM_VERIFY_HPP_
#define STABLESIM_VERIFY_HPP_

// Verification suites: each check draws from fixed seeds, runs one of the
// statcheck tests, and returns machine-readable reports. Shared by the CLI
// `verify` command and the acceptance test binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stablesim/batch.hpp"
#include "stablesim/mittag_leffler.hpp"
#include "stablesim/processes.hpp"
#include "stablesim/stable.hpp"
#include "stablesim/statcheck.hpp"

namespace stablesim::verify {

/// Base seed of every suite unless overridden on the command line.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  double threshold_p = kDefaultThresholdP;
  std::optional<double> alpha;  // duality suite only
  std::optional<double> rho;    // duality suite only
  unsigned workers = 0;
};

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  bool informational = false;  // reported, never affects the verdict
  std::vector<nlohmann::ordered_json> reports;
};

namespace detail {

using json = nlohmann::ordered_json;

// Stream ids, one per check, so checks never share draws.
enum StreamId : std::uint64_t {
  kKanter = 1,
  kLaplace,
  kMlVariate,
  kLinnik,
  kFpp,
  kDuality,
  kDualityKanter,
  kInverseMean,
  kInverseOracle,
  kRoutes,
  kPde,
  kSubordinateBm,
  kCalibration,
};

inline RandomStream stream_for(const Options& o, StreamId id) { return RandomStream(o.seed, id); }

template <typename Draw>
std::vector<double> draw(std::size_t n, const RandomStream& s, const Options& o, Draw&& d) {
  return sample_batch(n, s, std::forward<Draw>(d), o.workers);
}

inline void absorb(CheckResult& c, json report) {
  if (!report.value("passed", false)) c.passed = false;
  c.reports.push_back(std::move(report));
}

inline json numeric_report(const std::string& name, std::uint64_t seed, double max_err,
                           double tol, std::size_t points) {
  return {{"test", name}, {"seed", seed}, {"kind", "numeric"},
          {"max_error", max_err}, {"tolerance", tol}, {"points", points},
          {"passed", max_err <= tol}};
}

/// Poisson variate by sequential inversion; adequate for small means.
inline int poisson_inversion(double mean, RandomStream& s) {
  const double u = s.uniform();
  double p = std::exp(-mean), cdf = p;
  int k = 0;
  while (u > cdf && k < 10000) {
    ++k;
    p *= mean / k;
    cdf += p;
  }
  return k;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// samplers

inline CheckResult check_kanter_levy(const Options& o) {
  CheckResult c{"kanter-levy-ks"};
  const auto start = std::chrono::steady_clock::now();
  const auto xs = detail::draw(100000, detail::stream_for(o, detail::kKanter), o,
                               [](RandomStream& s) { return sample_positive_stable(OneSidedIndex(0.5), s); });
  const KsReport ks = ks_one_sample(xs, levy_cdf, o.threshold_p);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto rep = to_json(ks, c.name, o.seed);
  rep["critical_value"] = ks_critical_value(o.threshold_p, static_cast<double>(xs.size()));
  rep["runtime_under_1s"] = seconds < 1.0;
  rep["passed"] = ks.passed && seconds < 1.0;
  detail::absorb(c, rep);
  return c;
}

inline CheckResult check_laplace_battery(const Options& o) {
  CheckResult c{"laplace-transform-battery"};
  const RandomStream base = detail::stream_for(o, detail::kLaplace);
  for (int i = 2; i <= 9; ++i) {
    const double nu = i / 10.0;
    const auto xs = detail::draw(100000, base.substream(i), o, [nu](RandomStream& s) {
      return sample_positive_stable(OneSidedIndex(nu), s);
    });
    for (double lambda : {0.5, 1.0, 2.0}) {
      std::vector<double> t(xs.size());
      std::transform(xs.begin(), xs.end(), t.begin(),
                     [lambda](double x) { return std::exp(-lambda * x); });
      const MomentReport m = moment_zscore(t, std::exp(-std::pow(lambda, nu)));
      auto rep = to_json(m, c.name, o.seed);
      rep["nu"] = nu;
      rep["lambda"] = lambda;
      detail::absorb(c, rep);
    }
  }
  return c;
}

inline CheckResult check_mittag_leffler_variate(const Options& o) {
  CheckResult c{"mittag-leffler-variate"};
  const RandomStream base = detail::stream_for(o, detail::kMlVariate);
  const auto m = detail::draw(100000, base.substream(0), o, [](RandomStream& s) {
    return sample_mittag_leffler_rv(OneSidedIndex(0.5), s);
  });
  const auto half_normal = detail::draw(100000, base.substream(1), o, [](RandomStream& s) {
    return std::numbers::sqrt2 * std::abs(s.gaussian());
  });
  detail::absorb(c, to_json(ks_two_sample(m, half_normal, o.threshold_p), c.name + "/ks", o.seed));
  detail::absorb(c, to_json(moment_zscore(m, 2.0 / std::sqrt(std::numbers::pi)),
                            c.name + "/mean", o.seed));
  return c;
}

inline CheckResult check_linnik_cdf(const Options& o) {
  CheckResult c{"linnik-cdf-ks"};
  const LinnikParams params(OneSidedIndex(0.7), 1.0);
  const auto xs = detail::draw(100000, detail::stream_for(o, detail::kLinnik), o,
                               [&](RandomStream& s) { return sample_positive_linnik(params, s); });
  const KsReport ks =
      ks_one_sample(xs, [&](double t) { return linnik_cdf(params, t); }, o.threshold_p);
  detail::absorb(c, to_json(ks, c.name, o.seed));
  return c;
}

// ---------------------------------------------------------------------------
// mlfun

inline CheckResult check_ml_closed_forms(const Options& o) {
  CheckResult c{"ml-closed-forms"};
  const auto grid = detail::linspace(-5.0, 5.0, 201);
  double e_exp = 0.0, e_cos = 0.0, e_erfc = 0.0;
  for (double z : grid) {
    e_exp = std::max(e_exp, std::abs(ml_two(1.0, 1.0, z).value - std::exp(z)));
    e_cos = std::max(e_cos, std::abs(ml_two(2.0, 1.0, -z * z).value - std::cos(z)));
    // e^{z^2} erfc(-z) reaches 1.4e11 at z = 5, so this one is relative.
    const double ref = std::exp(z * z) * std::erfc(-z);
    e_erfc = std::max(e_erfc, std::abs(ml_two(0.5, 1.0, z).value - ref) / std::max(1.0, ref));
  }
  detail::absorb(c, detail::numeric_report(c.name + "/exp", o.seed, e_exp, 1e-12, grid.size()));
  detail::absorb(c, detail::numeric_report(c.name + "/cos", o.seed, e_cos, 1e-10, grid.size()));
  detail::absorb(c, detail::numeric_report(c.name + "/erfc", o.seed, e_erfc, 1e-8, grid.size()));

  // gamma = 1 reduction on a 200-point grid inside the series regime.
  double e_red = 0.0;
  std::size_t points = 0;
  for (int i = 0; i < 10; ++i) {
    const double xi = 0.2 * (i + 1);
    for (double mu : {0.5, 1.0, 1.7, 3.0}) {
      for (double z : {-2.0, -0.9, -0.1, 0.4, 1.5}) {
        const double a = ml_three(MLArgs(xi, mu, 1.0, z)).value;
        const double b = ml_two(xi, mu, z).value;
        e_red = std::max(e_red, std::abs(a - b));
        ++points;
      }
    }
  }
  detail::absorb(c, detail::numeric_report(c.name + "/prabhakar-gamma1", o.seed, e_red, 1e-12, points));

  double e_poi = 0.0;
  points = 0;
  for (int k = 0; k <= 10; ++k) {
    for (double x : {0.25, 1.0, 2.0, 5.0, 10.0}) {
      const double v = ml_three(MLArgs(1.0, k + 1.0, k + 1.0, -x)).value;
      e_poi = std::max(e_poi, std::abs(v - std::exp(-x - std::lgamma(k + 1.0))));
      ++points;
    }
  }
  detail::absorb(c, detail::numeric_report(c.name + "/prabhakar-poisson", o.seed, e_poi, 1e-10, points));
  return c;
}

inline CheckResult check_fpp_pmf_analytic(const Options& o) {
  CheckResult c{"fpp-pmf-analytic"};
  double e_poi = 0.0;
  std::size_t points = 0;
  for (auto [mu, t] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {3.0, 1.0}, {2.0, 5.0}, {0.5, 0.5}}) {
    for (int k = 0; k <= 20; ++k) {
      const double x = mu * t;
      const double ref = std::exp(k * std::log(x) - x - std::lgamma(k + 1.0));
      e_poi = std::max(e_poi, std::abs(frac_poisson_pmf(OneSidedIndex(1.0), mu, t, k) - ref));
      ++points;
    }
  }
  detail::absorb(c, detail::numeric_report(c.name + "/poisson-reduction", o.seed, e_poi, 1e-10, points));

  double e_norm = 0.0;
  bool non_negative = true;
  points = 0;
  for (double nu : {0.3, 0.6, 0.9, 1.0}) {
    for (double mu : {0.5, 1.0, 2.0}) {
      for (double t : {0.5, 1.0, 5.0}) {
        double sum = 0.0;
        for (int k = 0; k < 2000; ++k) {
          const double p = frac_poisson_pmf(OneSidedIndex(nu), mu, t, k);
          non_negative = non_negative && p >= 0.0;
          sum += p;
          if (k > 5 && p < 1e-14 * sum && 1.0 - sum < 1e-10) break;
        }
        e_norm = std::max(e_norm, std::abs(sum - 1.0));
        ++points;
      }
    }
  }
  auto rep = detail::numeric_report(c.name + "/normalization", o.seed, e_norm, 1e-8, points);
  rep["non_negative"] = non_negative;
  rep["passed"] = e_norm <= 1e-8 && non_negative;
  detail::absorb(c, rep);
  return c;
}

// ---------------------------------------------------------------------------
// processes

inline CheckResult check_fpp_chi_square(const Options& o) {
  CheckResult c{"fpp-pmf-chi-square"};
  const LinnikParams params(OneSidedIndex(0.6), 1.0);
  const auto counts_d = detail::draw(100000, detail::stream_for(o, detail::kFpp), o,
                                     [&](RandomStream& s) {
                                       return static_cast<double>(
                                           count_at(simulate_frac_poisson(params, 1.0, s), 1.0));
                                     });
  std::vector<std::uint64_t> counts;
  for (double k : counts_d) {
    const auto i = static_cast<std::size_t>(k);
    if (i >= counts.size()) counts.resize(i + 1, 0);
    counts[i]++;
  }
  const ChiSquareReport r = chi_square_pmf(
      counts, [](int k) { return frac_poisson_pmf(OneSidedIndex(0.6), 1.0, 1.0, k); },
      counts_d.size(), o.threshold_p);
  detail::absorb(c, to_json(r, c.name, o.seed));
  return c;
}

inline CheckResult check_inverse_mean(const Options& o) {
  CheckResult c{"inverse-subordinator-mean"};
  const RandomStream base = detail::stream_for(o, detail::kInverseMean);
  std::uint64_t cell = 0;
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto xs = detail::draw(100000, base.substream(cell++), o, [=](RandomStream& s) {
        return sample_inverse_subordinator(alpha, t, s);
      });
      auto rep = to_json(moment_zscore(xs, std::pow(t, alpha) / std::tgamma(1.0 + alpha)),
                         c.name, o.seed);
      rep["alpha"] = alpha;
      rep["t"] = t;
      detail::absorb(c, rep);
    }
  }
  return c;
}

/// Sample size of the first-passage oracle; each path needs ~1e4 grid steps.
inline constexpr std::size_t kOraclePaths = 20000;

/**
 * Marginal inverse-subordinator sampler against first passages of simulated
 * paths (alpha = 0.5, t = 1, dt = 1e-4). A grid first passage exceeds the
 * continuous one by at most dt, so the two distribution functions differ by
 * at most dt * sup f_L. For alpha <= 1/2 the density of L_t is decreasing
 * with f_L(0) = 1 / (t^alpha Gamma(1 - alpha)); the KS distance is reduced by
 * that bound before its p-value is taken.
 */
inline CheckResult check_inverse_path_oracle(const Options& o) {
  CheckResult c{"inverse-subordinator-path-oracle"};
  constexpr double alpha = 0.5, t = 1.0, dt = 1e-4;
  const RandomStream base = detail::stream_for(o, detail::kInverseOracle);
  const auto marginal = detail::draw(100000, base.substream(0), o, [](RandomStream& s) {
    return sample_inverse_subordinator(alpha, t, s);
  });
  const auto oracle = detail::draw(kOraclePaths, base.substream(1), o, [](RandomStream& s) {
    return inverse_from_path(
        simulate_subordinator_path_until(OneSidedIndex(alpha), t, dt, s), t);
  });
  const KsReport raw = ks_two_sample(marginal, oracle, o.threshold_p);
  const double bias = dt / (std::pow(t, alpha) * std::tgamma(1.0 - alpha));
  const double n_eff = static_cast<double>(raw.n1) * raw.n2 / (raw.n1 + raw.n2);
  KsReport adj = raw;
  adj.p_value = ks_p_value(std::max(0.0, raw.statistic - bias), n_eff);
  adj.passed = adj.p_value > o.threshold_p;
  auto rep = to_json(adj, c.name, o.seed);
  rep["bias_bound"] = bias;
  rep["raw_p_value"] = raw.p_value;
  rep["oracle_mean"] = moment_zscore(oracle, 0.0).empirical;
  rep["marginal_mean"] = moment_zscore(marginal, 0.0).empirical;
  detail::absorb(c, rep);
  return c;
}

inline CheckResult check_subdiffusion_routes(const Options& o) {
  CheckResult c{"subdiffusion-routes"};
  const RandomStream base = detail::stream_for(o, detail::kRoutes);
  std::uint64_t id = 0;
  for (double alpha : {1.25, 1.5, 1.8}) {
    for (double t : {1.0, 2.0}) {
      const auto direct = detail::draw(100000, base.substream(id++), o, [=](RandomStream& s) {
        return sample_subdiffusion_direct(1.0 / alpha, t, s);
      });
      const auto inversion = detail::draw(100000, base.substream(id++), o, [=](RandomStream& s) {
        return sample_subdiffusion_dual(alpha, t, DualRoute::time_inversion, s);
      });
      const auto positive = detail::draw(100000, base.substream(id++), o, [=](RandomStream& s) {
        return sample_subdiffusion_dual(alpha, t, DualRoute::stable_positive_part, s);
      });
      auto add = [&](const std::vector<double>& a, const std::vector<double>& b,
                     const char* pair) {
        auto rep = to_json(ks_two_sample(a, b, o.threshold_p), c.name, o.seed);
        rep["alpha"] = alpha;
        rep["t"] = t;
        rep["pair"] = pair;
        detail::absorb(c, rep);
      };
      add(direct, inversion, "direct/time-inversion");
      add(direct, positive, "direct/stable-positive-part");
      add(inversion, positive, "time-inversion/stable-positive-part");
    }
  }
  return c;
}

inline CheckResult check_subordinate_bm(const Options& o) {
  CheckResult c{"subordinate-bm"};
  constexpr double alpha = 1.5;
  const RandomStream base = detail::stream_for(o, detail::kSubordinateBm);
  const std::vector<double> xis{0.5, 1.0, 2.0};
  std::uint64_t id = 0;
  for (double t : {1.0, 2.0}) {
    const auto xs = detail::draw(100000, base.substream(id++), o, [=](RandomStream& s) {
      return sample_subordinate_bm(alpha, t, s);
    });
    for (const EcfReport& r : ecf_check(xs, xis, [=](double xi) {
           return std::complex<double>(std::exp(-t * std::pow(std::abs(xi), 2.0 / alpha)), 0.0);
         })) {
      auto rep = to_json(r, c.name + "/ecf", o.seed);
      rep["t"] = t;
      detail::absorb(c, rep);
    }
    const double scale = std::pow(t, alpha / 2.0);
    const auto ref = detail::draw(100000, base.substream(id++), o, [=](RandomStream& s) {
      return scale * sample_strictly_stable(StrictStableParams(2.0 / alpha, 0.5), s);
    });
    auto rep = to_json(ks_two_sample(xs, ref, o.threshold_p), c.name + "/ks", o.seed);
    rep["t"] = t;
    detail::absorb(c, rep);
  }
  return c;
}

// ---------------------------------------------------------------------------
// duality

/**
 * S(alpha, rho) conditioned positive against X^(-1/alpha), X ~ S(1/alpha,
 * alpha*rho) conditioned positive, 1e5 accepted draws per side. The second
 * report compares the unconditioned sub-probability laws on (0, inf); their
 * total masses are rho and alpha*rho, so it is informational only.
 */
inline std::vector<CheckResult> check_duality(const Options& o, double alpha, double rho,
                                              detail::StreamId id, const std::string& name) {
  const StrictStableParams outer(alpha, rho);
  const StrictStableParams inner(1.0 / alpha, std::min(1.0, alpha * rho));
  const RandomStream base = detail::stream_for(o, id);
  constexpr std::size_t kSide = 100000;

  std::vector<double> direct;
  std::size_t direct_draws = 0;
  RandomStream s0 = base.substream(0);
  while (direct.size() < kSide) {
    const double x = sample_strictly_stable(outer, s0);
    ++direct_draws;
    if (x > 0.0) direct.push_back(x);
  }
  const auto dual = detail::draw(kSide, base.substream(1), o, [&](RandomStream& s) {
    return sample_dual_positive(outer, s);
  });

  CheckResult cond{name};
  auto rep = to_json(ks_two_sample(direct, dual, o.threshold_p), name, o.seed);
  rep["alpha"] = alpha;
  rep["rho"] = rho;
  rep["critical_value"] = ks_critical_value(o.threshold_p, kSide / 2.0);
  detail::absorb(cond, rep);

  // Sub-probability comparison: F1(x) = P(0 < S <= x), F2(x) = P(0 < X^(-1/alpha) <= x).
  CheckResult uncond{name + "/unconditional"};
  uncond.informational = true;
  std::vector<double> inv;
  std::size_t inner_draws = 0;
  RandomStream s2 = base.substream(2);
  for (; inner_draws < direct_draws; ++inner_draws) {
    const double x = sample_strictly_stable(inner, s2);
    if (x > 0.0) inv.push_back(std::pow(x, -1.0 / alpha));
  }
  std::sort(direct.begin(), direct.end());
  std::sort(inv.begin(), inv.end());
  const double n1 = static_cast<double>(direct_draws), n2 = static_cast<double>(inner_draws);
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < direct.size() || j < inv.size()) {
    const double v = (j == inv.size() || (i < direct.size() && direct[i] <= inv[j])) ? direct[i]
                                                                                    : inv[j];
    while (i < direct.size() && direct[i] == v) ++i;
    while (j < inv.size() && inv[j] == v) ++j;
    d = std::max(d, std::abs(i / n1 - j / n2));
  }
  const double p = ks_p_value(d, n1 * n2 / (n1 + n2));
  uncond.passed = p > o.threshold_p;
  uncond.reports.push_back({{"test", uncond.name}, {"seed", o.seed}, {"kind", "ks"},
                            {"statistic", d}, {"p_value", p}, {"n1", direct_draws},
                            {"n2", inner_draws}, {"passed", uncond.passed},
                            {"threshold_p", o.threshold_p}, {"positive_mass_direct", direct.size() / n1},
                            {"positive_mass_inverted", inv.size() / n2}, {"informational", true}});
  return {cond, uncond};
}

inline std::vector<CheckResult> duality_suite(const Options& o) {
  const double alpha = o.alpha.value_or(1.5);
  const double rho = o.rho.value_or(0.6);
  stablesim::detail::require_dual_index(alpha);
  auto out = check_duality(o, alpha, rho, detail::kDuality, "duality-conditional");
  if (!o.alpha && !o.rho) {
    auto k = check_duality(o, alpha, 1.0 / alpha, detail::kDualityKanter, "duality-kanter-inner");
    out.insert(out.end(), k.begin(), k.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// pde

inline std::vector<CheckResult> pde_suite(const Options& o) {
  const RandomStream base = detail::stream_for(o, detail::kPde);
  constexpr int bins = 81;
  constexpr double range = 8.0;
  constexpr std::size_t n = 100000;

  const PdeEstimate sub = estimate_pde_solution(0.5, 1.0, bins, range, n, base.substream(0), o.workers);
  CheckResult moment{"pde-second-moment"};
  const double target = 2.0 / std::tgamma(1.5);
  const double rel = std::abs(sub.second_moment() / target - 1.0);
  detail::absorb(moment, {{"test", moment.name}, {"seed", o.seed}, {"kind", "relative"},
                          {"empirical", sub.second_moment()}, {"target", target},
                          {"relative_error", rel}, {"tolerance", 0.02}, {"passed", rel <= 0.02}});

  const PdeEstimate near = estimate_pde_solution(0.999, 1.0, bins, range, n, base.substream(1), o.workers);
  CheckResult mass{"pde-mass-accounting"};
  for (const PdeEstimate* e : {&sub, &near}) {
    const double gap = std::abs(e->in_range_mass() + e->out_of_range_mass - 1.0);
    auto rep = detail::numeric_report(mass.name, o.seed, gap, 1e-12, e->bins());
    rep["alpha"] = e->alpha;
    detail::absorb(mass, rep);
  }

  // Bin averages of the heat kernel exp(-x^2/4)/sqrt(4 pi), the alpha -> 1 limit.
  CheckResult heat{"pde-heat-kernel"};
  double worst = 0.0;
  for (std::size_t i = 0; i < near.bins(); ++i) {
    const double a = near.x_grid[i], b = near.x_grid[i + 1];
    const double avg = 0.5 * (std::erf(b / 2.0) - std::erf(a / 2.0)) / (b - a);
    worst = std::max(worst, std::abs(near.density[i] - avg));
  }
  const double tol = 5.0 * std::sqrt(static_cast<double>(bins) / n);
  auto rep = detail::numeric_report(heat.name, o.seed, worst, tol, near.bins());
  rep["seed"] = o.seed;
  detail::absorb(heat, rep);
  return {moment, mass, heat};
}

// ---------------------------------------------------------------------------
// calibration

/**
 * Null batteries: 1000 independent seeds per test type, each at n = 1e4,
 * with data drawn from the hypothesized law. The rejection rate at
 * threshold_p must stay at or below 0.005.
 */
inline CheckResult check_calibration(const Options& o) {
  CheckResult c{"calibration"};
  constexpr int kTrials = 1000;
  constexpr std::size_t n = 10000;
  constexpr double kMaxRate = 0.005;
  const RandomStream base = detail::stream_for(o, detail::kCalibration);
  int rej_ks1 = 0, rej_ks2 = 0, rej_chi = 0, rej_mom = 0;
  std::vector<double> a(n), b(n);
  for (int trial = 0; trial < kTrials; ++trial) {
    RandomStream s = base.substream(static_cast<std::uint64_t>(trial));
    for (auto& x : a) x = s.exponential();
    if (!ks_one_sample(a, [](double x) { return x > 0 ? -std::expm1(-x) : 0.0; }, o.threshold_p).passed) ++rej_ks1;
    if (!moment_zscore(a, 1.0).passed) ++rej_mom;
    for (auto& x : a) x = s.gaussian();
    for (auto& x : b) x = s.gaussian();
    if (!ks_two_sample(a, b, o.threshold_p).passed) ++rej_ks2;
    std::vector<std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(detail::poisson_inversion(3.0, s));
      if (k >= counts.size()) counts.resize(k + 1, 0);
      counts[k]++;
    }
    const auto r = chi_square_pmf(
        counts, [](int k) { return std::exp(k * std::log(3.0) - 3.0 - std::lgamma(k + 1.0)); }, n,
        o.threshold_p);
    if (!r.passed) ++rej_chi;
  }
  for (auto [kind, rej] : {std::pair{"ks_one_sample", rej_ks1}, {"ks_two_sample", rej_ks2},
                           {"chi_square", rej_chi}, {"moment", rej_mom}}) {
    const double rate = static_cast<double>(rej) / kTrials;
    detail::absorb(c, {{"test", c.name + "/" + kind}, {"seed", o.seed}, {"kind", "calibration"},
                       {"trials", kTrials}, {"n", n}, {"rejections", rej}, {"rate", rate},
                       {"max_rate", kMaxRate}, {"passed", rate <= kMaxRate}});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all",       "samplers", "mlfun", "duality",
                                              "processes", "pde",      "calibration"};
  return names;
}

inline bool is_suite(const std::string& s) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), s) != n.end();
}

/// Runs a named suite; throws parameter_error on an unknown name.
inline std::vector<CheckResult> run_suite(const std::string& suite, const Options& o) {
  if (!is_suite(suite)) throw parameter_error("unknown verify suite '" + suite + "'");
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  auto add = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (want("samplers")) {
    add({check_kanter_levy(o), check_laplace_battery(o), check_mittag_leffler_variate(o),
         check_linnik_cdf(o)});
  }
  if (want("mlfun")) add({check_ml_closed_forms(o), check_fpp_pmf_analytic(o)});
  if (want("duality")) add(duality_suite(o));
  if (want("processes")) {
    add({check_fpp_chi_square(o), check_inverse_mean(o), check_inverse_path_oracle(o),
         check_subdiffusion_routes(o), check_subordinate_bm(o)});
  }
  if (want("pde")) add(pde_suite(o));
  if (want("calibration")) add({check_calibration(o)});
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& c) { return c.informational || c.passed; });
}

}  // namespace stablesim::verify

#endif  // STABLESIM_VERIFY_HPP_
