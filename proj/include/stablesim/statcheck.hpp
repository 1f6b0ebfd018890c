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

#ifndef STABLESIM_STATCHECK_HPP_
#define STABLESIM_STATCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "stablesim/errors.hpp"
#include "stablesim/params.hpp"

namespace stablesim {

inline constexpr double kDefaultThresholdP = 0.001;

struct KsReport {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for the one-sample test
  bool passed = true;
  double threshold_p = kDefaultThresholdP;
};

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 1;
  double p_value = 1.0;
  int pooled_bins = 2;
  bool passed = true;
};

struct MomentReport {
  double empirical = 0.0;
  double target = 0.0;
  double z_score = 0.0;
  std::size_t n = 0;
  bool passed = true;
  double variance = 0.0;  // sample variance behind the standard error
};

struct EcfReport {
  double xi = 0.0;
  std::complex<double> empirical;
  std::complex<double> target;
  double distance = 0.0;
  double threshold = 0.0;  // 5 / sqrt(n)
  std::size_t n = 0;
  bool passed = true;
};

// ---------------------------------------------------------------------------
// Kolmogorov distribution

/// Q(lambda) = P(K > lambda) for the Kolmogorov limit law.
inline double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form; converges fast for small lambda.
    const double a = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * a);
      cdf += term;
      if (term < 1e-18 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += sign * term;
    if (term < 1e-300 || term < 1e-18 * q) break;
    sign = -sign;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

/// Asymptotic p-value of a KS distance with effective sample size n_eff,
/// using Stephens' small-sample correction of the scaling.
inline double ks_p_value(double d, double n_eff) {
  const double r = std::sqrt(n_eff);
  return kolmogorov_q((r + 0.12 + 0.11 / r) * d);
}

/// Distance at which ks_p_value drops to p.
inline double ks_critical_value(double p, double n_eff) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ks_p_value(mid, n_eff) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

inline void require_samples(std::size_t n, std::size_t min_n, const char* what) {
  if (n < min_n) {
    throw statcheck_error(std::string(what) + " needs at least " + std::to_string(min_n) +
                          " samples, got " + std::to_string(n));
  }
}

inline std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  for (double x : v) {
    if (std::isnan(x)) throw statcheck_error("sample contains NaN");
  }
  std::sort(v.begin(), v.end());
  return v;
}

inline KsReport finish_ks(double d, std::size_t n1, std::size_t n2, double threshold_p) {
  const double n_eff = n2 == 0 ? static_cast<double>(n1)
                               : static_cast<double>(n1) * static_cast<double>(n2) /
                                     static_cast<double>(n1 + n2);
  KsReport r;
  r.statistic = std::clamp(d, 0.0, 1.0);
  r.p_value = ks_p_value(r.statistic, n_eff);
  r.n1 = n1;
  r.n2 = n2;
  r.threshold_p = threshold_p;
  r.passed = r.p_value > threshold_p;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tests

template <typename Cdf>
KsReport ks_one_sample(std::span<const double> samples, Cdf&& cdf,
                       double threshold_p = kDefaultThresholdP) {
  detail::require_samples(samples.size(), 100, "ks_one_sample");
  const auto x = detail::sorted_copy(samples);
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) {
      throw statcheck_error("cdf returned " + detail::fmt(f) + " outside [0,1]");
    }
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return detail::finish_ks(d, x.size(), 0, threshold_p);
}

inline KsReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                              double threshold_p = kDefaultThresholdP) {
  detail::require_samples(a.size(), 100, "ks_two_sample");
  detail::require_samples(b.size(), 100, "ks_two_sample");
  const auto x = detail::sorted_copy(a);
  const auto y = detail::sorted_copy(b);
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return detail::finish_ks(d, x.size(), y.size(), threshold_p);
}

/**
 * Pearson chi-square of observed counts for k = 0..counts.size()-1 against a
 * pmf. Bins are pooled left to right until each holds expected count >= 5;
 * the pmf mass beyond the last observed k joins the final bin.
 */
template <typename Pmf>
ChiSquareReport chi_square_pmf(std::span<const std::uint64_t> counts, Pmf&& pmf, std::uint64_t n,
                               double threshold_p = kDefaultThresholdP) {
  if (counts.empty() || n == 0) throw statcheck_error("chi_square_pmf needs non-empty counts");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total != n) {
    throw statcheck_error("counts sum to " + std::to_string(total) + ", expected " +
                          std::to_string(n));
  }

  const double dn = static_cast<double>(n);
  std::vector<double> expected(counts.size());
  double covered = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double p = pmf(static_cast<int>(k));
    if (!(p >= 0.0)) throw statcheck_error("pmf returned " + detail::fmt(p) + " at k=" +
                                           std::to_string(k));
    expected[k] = dn * p;
    covered += p;
  }
  expected.back() += dn * std::max(0.0, 1.0 - covered);

  std::vector<double> obs_pooled, exp_pooled;
  double o = 0.0, e = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    o += static_cast<double>(counts[k]);
    e += expected[k];
    if (e >= 5.0) {
      obs_pooled.push_back(o);
      exp_pooled.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_pooled.empty()) {
      obs_pooled.push_back(o);
      exp_pooled.push_back(e);
    } else {
      obs_pooled.back() += o;
      exp_pooled.back() += e;
    }
  }
  if (exp_pooled.size() < 2 || exp_pooled.front() < 5.0) {
    throw statcheck_error("pooling left fewer than 2 bins with expected count >= 5");
  }

  ChiSquareReport r;
  r.statistic = 0.0;
  for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
    const double diff = obs_pooled[i] - exp_pooled[i];
    r.statistic += diff * diff / exp_pooled[i];
  }
  r.pooled_bins = static_cast<int>(exp_pooled.size());
  r.dof = r.pooled_bins - 1;
  r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  r.passed = r.p_value > threshold_p;
  return r;
}

/// Empirical characteristic function against a target at each xi; passes
/// when |ecf - target| <= 5/sqrt(n).
template <typename Target>
std::vector<EcfReport> ecf_check(std::span<const double> samples,
                                 std::span<const double> xi_values, Target&& target) {
  if (samples.empty()) throw statcheck_error("ecf_check needs samples");
  const double n = static_cast<double>(samples.size());
  std::vector<EcfReport> out;
  out.reserve(xi_values.size());
  for (double xi : xi_values) {
    double re = 0.0, im = 0.0;
    for (double x : samples) {
      re += std::cos(xi * x);
      im += std::sin(xi * x);
    }
    EcfReport r;
    r.xi = xi;
    r.empirical = {re / n, im / n};
    r.target = std::complex<double>(target(xi));
    r.distance = std::abs(r.empirical - r.target);
    r.threshold = 5.0 / std::sqrt(n);
    r.n = samples.size();
    r.passed = r.distance <= r.threshold;
    out.push_back(r);
  }
  return out;
}

inline MomentReport moment_zscore(std::span<const double> samples, double target) {
  detail::require_samples(samples.size(), 2, "moment_zscore");
  const double n = static_cast<double>(samples.size());
  long double sum = 0.0L;
  for (double x : samples) sum += x;
  const double mean = static_cast<double>(sum / samples.size());
  long double ss = 0.0L;
  for (double x : samples) ss += (x - mean) * static_cast<long double>(x - mean);
  const double var = static_cast<double>(ss / (samples.size() - 1));

  MomentReport r;
  r.empirical = mean;
  r.target = target;
  r.n = samples.size();
  r.variance = var;
  if (!std::isfinite(var)) throw statcheck_error("sample variance is not finite");
  if (var == 0.0) {
    if (mean != target) {
      throw statcheck_error("zero sample variance with mean " + detail::fmt(mean) +
                            " != target " + detail::fmt(target));
    }
    r.z_score = 0.0;
  } else {
    r.z_score = (mean - target) / std::sqrt(var / n);
  }
  r.passed = std::abs(r.z_score) <= 4.0;
  return r;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const KsReport& r, const std::string& name,
                                      std::uint64_t seed) {
  return {{"test", name}, {"seed", seed}, {"kind", "ks"},
          {"statistic", r.statistic}, {"p_value", r.p_value}, {"n1", r.n1},
          {"n2", r.n2}, {"passed", r.passed}, {"threshold_p", r.threshold_p}};
}

inline nlohmann::ordered_json to_json(const ChiSquareReport& r, const std::string& name,
                                      std::uint64_t seed) {
  return {{"test", name}, {"seed", seed}, {"kind", "chi_square"},
          {"statistic", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value},
          {"pooled_bins", r.pooled_bins}, {"passed", r.passed}};
}

inline nlohmann::ordered_json to_json(const MomentReport& r, const std::string& name,
                                      std::uint64_t seed) {
  return {{"test", name}, {"seed", seed}, {"kind", "moment"},
          {"empirical", r.empirical}, {"target", r.target}, {"z_score", r.z_score},
          {"n", r.n}, {"passed", r.passed}, {"variance", r.variance}};
}

inline nlohmann::ordered_json to_json(const EcfReport& r, const std::string& name,
                                      std::uint64_t seed) {
  return {{"test", name}, {"seed", seed}, {"kind", "ecf"}, {"xi", r.xi},
          {"empirical", {r.empirical.real(), r.empirical.imag()}},
          {"target", {r.target.real(), r.target.imag()}},
          {"distance", r.distance}, {"threshold", r.threshold}, {"n", r.n},
          {"passed", r.passed}};
}

}  // namespace stablesim

#endif  // STABLESIM_STATCHECK_HPP_
