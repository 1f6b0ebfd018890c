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

#ifndef STABLESIM_STABLE_HPP_
#define STABLESIM_STABLE_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stablesim/errors.hpp"
#include "stablesim/params.hpp"
#include "stablesim/random_stream.hpp"

namespace stablesim {

/// Attempts allowed when conditioning a strictly stable draw on positivity.
inline constexpr int kDefaultRejectionCap = 10000;

namespace detail {

// Uniform draws this close to 0 or 1 are redrawn before they reach a sine or
// cosine, which keeps every trigonometric factor away from 0/0.
inline constexpr double kUniformGuard = 1e-12;

inline double guarded_uniform(RandomStream& stream) {
  for (;;) {
    const double u = stream.uniform();
    if (u > kUniformGuard && u < 1.0 - kUniformGuard) return u;
  }
}

// log A(u) of the Kanter representation, u in (0, pi), nu in (0, 1).
inline double kanter_log_a(double nu, double u) {
  const double one_minus = 1.0 - nu;
  return (nu * std::log(std::sin(nu * u)) - std::log(std::sin(u))) / one_minus +
         std::log(std::sin(one_minus * u));
}

// Returns log(A(pi U) / E). The one-sided variate is exp(((1-nu)/nu) * that).
inline double kanter_log_ratio(double nu, RandomStream& stream) {
  const double u = std::numbers::pi * guarded_uniform(stream);
  const double e = stream.exponential();
  return kanter_log_a(nu, u) - std::log(e);
}

// log S_nu for nu in (0, 1); nu = 1 gives 0.
inline double log_positive_stable(double nu, RandomStream& stream) {
  if (nu == 1.0) return 0.0;
  return (1.0 - nu) / nu * kanter_log_ratio(nu, stream);
}

}  // namespace detail

/**
 * One-sided stable variate S_nu with E exp(-lambda*S_nu) = exp(-lambda^nu),
 * drawn by Kanter's representation
 *   S_nu = (A(pi*U) / E)^((1-nu)/nu),
 *   A(u) = sin(nu*u)^(nu/(1-nu)) * sin((1-nu)*u) / sin(u)^(1/(1-nu)).
 * nu = 1 returns exactly 1 without touching the stream.
 */
inline double sample_positive_stable(OneSidedIndex nu, RandomStream& stream) {
  if (nu.degenerate()) return 1.0;
  return std::exp(detail::log_positive_stable(nu.value(), stream));
}

/// Mittag-Leffler random variable M_alpha = S_alpha^(-alpha); alpha = 1 gives 1.
inline double sample_mittag_leffler_rv(OneSidedIndex alpha, RandomStream& stream) {
  if (alpha.degenerate()) return 1.0;
  // S^-alpha = (E / A)^(1 - alpha); kept in log form so tiny alpha cannot overflow.
  return std::exp(-(1.0 - alpha.value()) * detail::kanter_log_ratio(alpha.value(), stream));
}

/**
 * Positive Linnik variate with Laplace transform mu / (s^nu + mu), drawn as
 * E^(1/nu) * S_nu where E is exponential with rate mu and independent of
 * the one-sided stable S_nu.
 */
inline double sample_positive_linnik(const LinnikParams& params, RandomStream& stream) {
  const double nu = params.nu().value();
  const double log_e = std::log(stream.exponential() / params.mu());
  return std::exp(log_e / nu + detail::log_positive_stable(nu, stream));
}

/**
 * Skewness beta of the (alpha, beta) parametrization equivalent to the
 * positivity parameter rho:
 *   rho = 1/2 + arctan(beta * tan(pi*alpha/2)) / (pi*alpha).
 */
inline double rho_to_beta(double alpha, double rho) {
  detail::require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0 && alpha != 1.0,
                  "rho_to_beta requires alpha in (0,2] and alpha != 1, got " + detail::fmt(alpha));
  detail::require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0,
                  "rho must lie in [0,1], got " + detail::fmt(rho));
  const double half_pi_alpha = 0.5 * std::numbers::pi * alpha;
  const double beta = std::tan(std::numbers::pi * alpha * (rho - 0.5)) / std::tan(half_pi_alpha);
  if (!(std::abs(beta) <= 1.0 + 1e-12)) {
    throw parameter_error("rho=" + detail::fmt(rho) + " maps to |beta| > 1 at alpha=" +
                          detail::fmt(alpha) + "; alpha*rho <= 1 and alpha*(1-rho) <= 1 must hold");
  }
  return std::clamp(beta, -1.0, 1.0);
}

inline double beta_to_rho(double alpha, double beta) {
  detail::require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0 && alpha != 1.0,
                  "beta_to_rho requires alpha in (0,2] and alpha != 1, got " + detail::fmt(alpha));
  detail::require(std::isfinite(beta) && std::abs(beta) <= 1.0,
                  "beta must lie in [-1,1], got " + detail::fmt(beta));
  return 0.5 + std::atan(beta * std::tan(0.5 * std::numbers::pi * alpha)) /
                   (std::numbers::pi * alpha);
}

/**
 * Strictly stable variate S(alpha, rho) in the scale documented on
 * StrictStableParams, by the Chambers-Mallows-Stuck construction.
 *
 * The CMS formula in the (alpha, beta) parametrization carries the factor
 * (1 + beta^2 tan^2(pi*alpha/2))^(1/(2*alpha)); rescaling to unit
 * characteristic exponent cancels it exactly, leaving the shift
 * B = pi*(rho - 1/2) as the only skewness input.
 */
inline double sample_strictly_stable(const StrictStableParams& params, RandomStream& stream) {
  const double alpha = params.alpha();
  if (alpha == 2.0) return std::numbers::sqrt2 * stream.gaussian();
  const double v = std::numbers::pi * (detail::guarded_uniform(stream) - 0.5);
  if (alpha == 1.0) return std::tan(v);
  const double w = stream.exponential();
  const double shift = std::numbers::pi * (params.rho() - 0.5);
  const double phase = alpha * (v + shift);
  const double numer = std::sin(phase);
  const double inner = std::cos(v - phase);
  if (numer == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(numer)) - std::log(std::cos(v)) / alpha +
                         (1.0 - alpha) / alpha * (std::log(std::max(inner, 0x1p-1022)) - std::log(w));
  return std::copysign(std::exp(log_mag), numer);
}

/**
 * Positive part of S(alpha, rho), alpha in (1, 2], conditioned on being
 * positive, drawn through the index-inversion duality as X^(-1/alpha) with
 * X ~ S(1/alpha, alpha*rho) conditioned on X > 0. When alpha*rho = 1 the
 * inner law is one-sided and Kanter is used directly.
 */
inline double sample_dual_positive(const StrictStableParams& params, RandomStream& stream,
                                   int rejection_cap = kDefaultRejectionCap) {
  const double alpha = params.alpha();
  detail::require(alpha > 1.0, "dual positive sampler requires alpha in (1,2], got " +
                                   detail::fmt(alpha));
  const double inner_index = 1.0 / alpha;
  const double inner_rho = std::min(1.0, alpha * params.rho());
  if (inner_rho >= 1.0 - 1e-12) {
    return std::exp(-detail::log_positive_stable(inner_index, stream) / alpha);
  }
  const StrictStableParams inner(inner_index, inner_rho);
  for (int attempt = 0; attempt < rejection_cap; ++attempt) {
    const double x = sample_strictly_stable(inner, stream);
    if (x > 0.0) return std::pow(x, -1.0 / alpha);
  }
  throw rejection_cap_error("no positive draw of S(" + detail::fmt(inner_index) + ", " +
                            detail::fmt(inner_rho) + ") within " + std::to_string(rejection_cap) +
                            " attempts");
}

}  // namespace stablesim

#endif  // STABLESIM_STABLE_HPP_
