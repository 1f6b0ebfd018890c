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

#ifndef STABLESIM_PROCESSES_HPP_
#define STABLESIM_PROCESSES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "stablesim/batch.hpp"
#include "stablesim/errors.hpp"
#include "stablesim/params.hpp"
#include "stablesim/random_stream.hpp"
#include "stablesim/stable.hpp"

namespace stablesim {

/**
 * Scaling of the Brownian motion used by the time-changed processes.
 * `laplacian` is the process generated by the Laplacian, with variance
 * 2*s at time s. `half_laplacian` is the probabilists' normalization with
 * variance s.
 */
enum class Generator { laplacian, half_laplacian };

inline double variance_factor(Generator g) noexcept {
  return g == Generator::laplacian ? 2.0 : 1.0;
}

enum class DualRoute { time_inversion, stable_positive_part };

inline const char* to_string(DualRoute r) {
  return r == DualRoute::time_inversion ? "time-inversion" : "stable-positive-part";
}

namespace detail {

inline void require_positive(double v, const char* name) {
  require(std::isfinite(v) && v > 0.0,
          std::string(name) + " must be positive and finite, got " + fmt(v));
}

inline void require_open_unit(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0,
          "alpha must lie in (0,1), got " + fmt(alpha));
}

inline void require_dual_index(double alpha) {
  require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
          "alpha must lie in (1,2], got " + fmt(alpha));
}

inline double brownian_at(double time, Generator g, RandomStream& stream) {
  return std::sqrt(variance_factor(g) * time) * stream.gaussian();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fractional Poisson process

struct RenewalTrajectory {
  std::vector<double> event_times;
  LinnikParams params;
  double t_max;
};

/// Renewal process with positive-Linnik waiting times, observed on [0, t_max].
/// The first event past t_max is drawn but not stored.
inline RenewalTrajectory simulate_frac_poisson(const LinnikParams& params, double t_max,
                                               RandomStream& stream) {
  detail::require_positive(t_max, "t_max");
  RenewalTrajectory traj{{}, params, t_max};
  double clock = 0.0;
  for (;;) {
    const double next = clock + sample_positive_linnik(params, stream);
    if (next > t_max) break;
    // A waiting time below half an ulp of the clock would repeat an event time.
    if (next > clock) traj.event_times.push_back(next);
    clock = next;
  }
  return traj;
}

/// N(t): number of events in [0, t].
inline std::size_t count_at(const RenewalTrajectory& traj, double t) {
  if (!(t <= traj.t_max)) {
    throw horizon_error("count_at(" + detail::fmt(t) + ") beyond simulated horizon " +
                        detail::fmt(traj.t_max));
  }
  return static_cast<std::size_t>(
      std::upper_bound(traj.event_times.begin(), traj.event_times.end(), t) -
      traj.event_times.begin());
}

// ---------------------------------------------------------------------------
// Stable subordinator and its inverse

struct SubordinatorPath {
  std::vector<double> grid;
  std::vector<double> values;
  OneSidedIndex index;
  double dt;
};

namespace detail {

inline double subordinator_increment(OneSidedIndex index, double scale, RandomStream& stream) {
  if (index.degenerate()) return scale;
  return scale * std::exp(log_positive_stable(index.value(), stream));
}

}  // namespace detail

/**
 * Subordinator sampled on the grid 0, dt, 2*dt, ..., K*dt with K*dt >= t_max.
 * Increments are dt^(1/nu) * S_nu; nu = 1 gives values == grid.
 */
inline SubordinatorPath simulate_subordinator_path(OneSidedIndex index, double t_max, double dt,
                                                   RandomStream& stream) {
  detail::require_positive(t_max, "t_max");
  detail::require_positive(dt, "dt");
  detail::require(dt <= t_max, "dt must not exceed t_max");
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  SubordinatorPath path{{}, {}, index, dt};
  path.grid.resize(steps + 1);
  path.values.resize(steps + 1);
  const double scale = std::pow(dt, 1.0 / index.value());
  double level = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    path.grid[i] = static_cast<double>(i) * dt;
    if (i > 0) level += detail::subordinator_increment(index, scale, stream);
    path.values[i] = index.degenerate() ? path.grid[i] : level;
  }
  return path;
}

/// Same increments as simulate_subordinator_path, extended until the path
/// first exceeds `level`. Used to build first-passage oracles.
inline SubordinatorPath simulate_subordinator_path_until(OneSidedIndex index, double level,
                                                         double dt, RandomStream& stream) {
  detail::require(std::isfinite(level) && level >= 0.0,
                  "level must be non-negative and finite, got " + detail::fmt(level));
  detail::require_positive(dt, "dt");
  SubordinatorPath path{{0.0}, {0.0}, index, dt};
  const double scale = std::pow(dt, 1.0 / index.value());
  double value = 0.0;
  for (std::size_t i = 1; value <= level; ++i) {
    value += detail::subordinator_increment(index, scale, stream);
    const double s = static_cast<double>(i) * dt;
    path.grid.push_back(s);
    path.values.push_back(index.degenerate() ? s : value);
    value = path.values.back();
  }
  return path;
}

/// First grid time at which the path exceeds t. Never earlier than the
/// continuous first passage, and at most one step later.
inline double inverse_from_path(const SubordinatorPath& path, double t) {
  if (path.values.empty() || !(path.values.back() > t)) {
    throw horizon_error("path never exceeds " + detail::fmt(t) + " on its grid");
  }
  const auto it = std::upper_bound(path.values.begin(), path.values.end(), t);
  return path.grid[static_cast<std::size_t>(it - path.values.begin())];
}

/**
 * Inverse subordinator L_t = inf{s : S(s) > t}. Self-similarity of the
 * subordinator gives L_t = t^alpha * M_alpha in law.
 */
inline double sample_inverse_subordinator(double alpha, double t, RandomStream& stream) {
  detail::require_open_unit(alpha);
  detail::require_positive(t, "t");
  return std::pow(t, alpha) * sample_mittag_leffler_rv(OneSidedIndex(alpha), stream);
}

// ---------------------------------------------------------------------------
// Time-changed Brownian motion

/// B(L_t) for alpha in (0,1).
inline double sample_subdiffusion_direct(double alpha, double t, RandomStream& stream,
                                         Generator g = Generator::laplacian) {
  const double clock = sample_inverse_subordinator(alpha, t, stream);
  return detail::brownian_at(clock, g, stream);
}

/**
 * B(L_t) for the inverse subordinator of index 1/alpha, alpha in (1,2],
 * built without the Mittag-Leffler sampler.
 *
 * time_inversion: T = t^(-1/alpha) * S_{1/alpha}^(1/alpha), output B(T)/T.
 * stable_positive_part: clock t^(1/alpha) * X with X ~ S(alpha, 1/alpha)
 * conditioned positive, drawn by Chambers-Mallows-Stuck with rejection.
 */
inline double sample_subdiffusion_dual(double alpha, double t, DualRoute route,
                                       RandomStream& stream, Generator g = Generator::laplacian,
                                       int rejection_cap = kDefaultRejectionCap) {
  detail::require_dual_index(alpha);
  detail::require_positive(t, "t");
  const double inv = 1.0 / alpha;
  if (route == DualRoute::time_inversion) {
    const double log_s = detail::log_positive_stable(inv, stream);
    const double big_t = std::exp(inv * (log_s - std::log(t)));
    return detail::brownian_at(big_t, g, stream) / big_t;
  }
  const StrictStableParams outer(alpha, inv);
  for (int attempt = 0; attempt < rejection_cap; ++attempt) {
    const double x = sample_strictly_stable(outer, stream);
    if (x > 0.0) return detail::brownian_at(std::pow(t, inv) * x, g, stream);
  }
  throw rejection_cap_error("no positive draw of S(" + detail::fmt(alpha) + ", " +
                            detail::fmt(inv) + ") within " + std::to_string(rejection_cap) +
                            " attempts");
}

/// B(tau_t), tau a subordinator with E exp(-lambda*tau_t) = exp(-t*lambda^(1/alpha)).
inline double sample_subordinate_bm(double alpha, double t, RandomStream& stream,
                                    Generator g = Generator::laplacian) {
  detail::require_dual_index(alpha);
  detail::require_positive(t, "t");
  const double tau = std::pow(t, alpha) * sample_positive_stable(OneSidedIndex(1.0 / alpha), stream);
  return detail::brownian_at(tau, g, stream);
}

// ---------------------------------------------------------------------------
// Monte Carlo solution of the time-fractional diffusion equation

struct PdeEstimate {
  double t;
  double alpha;
  std::vector<double> x_grid;   // bins + 1 edges
  std::vector<double> density;  // per bin
  std::size_t n_samples;
  double out_of_range_mass;

  std::size_t bins() const noexcept { return density.size(); }
  double bin_width(std::size_t i) const { return x_grid[i + 1] - x_grid[i]; }

  double in_range_mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < bins(); ++i) m += density[i] * bin_width(i);
    return m;
  }

  /// Second moment of the histogram, each bin's mass placed at its midpoint.
  double second_moment() const {
    double m = 0.0;
    for (std::size_t i = 0; i < bins(); ++i) {
      const double mid = 0.5 * (x_grid[i] + x_grid[i + 1]);
      m += density[i] * bin_width(i) * mid * mid;
    }
    return m;
  }
};

/**
 * Histogram of n draws of B(L_t) (start at 0, free space) on [-range, range].
 * Draws are generated in fixed chunks so the estimate is independent of
 * `workers`.
 */
inline PdeEstimate estimate_pde_solution(double alpha, double t, int bins, double range,
                                         std::size_t n, const RandomStream& stream,
                                         unsigned workers = 0,
                                         Generator g = Generator::laplacian) {
  detail::require_open_unit(alpha);
  detail::require_positive(t, "t");
  detail::require(bins >= 10, "bins must be at least 10, got " + std::to_string(bins));
  detail::require_positive(range, "range");
  detail::require(n >= 10000, "n must be at least 10000, got " + std::to_string(n));

  const auto draws = sample_batch(
      n, stream, [&](RandomStream& s) { return sample_subdiffusion_direct(alpha, t, s, g); },
      workers);

  const auto nb = static_cast<std::size_t>(bins);
  const double width = 2.0 * range / bins;
  std::vector<std::size_t> counts(nb, 0);
  std::size_t outside = 0;
  for (double x : draws) {
    if (!(x >= -range && x <= range)) {
      ++outside;
      continue;
    }
    auto i = static_cast<std::size_t>((x + range) / width);
    counts[std::min(i, nb - 1)]++;
  }

  PdeEstimate est{t, alpha, std::vector<double>(nb + 1), std::vector<double>(nb), n,
                  static_cast<double>(outside) / static_cast<double>(n)};
  for (std::size_t i = 0; i <= nb; ++i) est.x_grid[i] = -range + width * static_cast<double>(i);
  est.x_grid[nb] = range;
  for (std::size_t i = 0; i < nb; ++i) {
    est.density[i] =
        static_cast<double>(counts[i]) / (static_cast<double>(n) * est.bin_width(i));
  }
  return est;
}

}  // namespace stablesim

#endif  // STABLESIM_PROCESSES_HPP_
