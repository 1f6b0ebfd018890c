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

#ifndef STABLESIM_MITTAG_LEFFLER_HPP_
#define STABLESIM_MITTAG_LEFFLER_HPP_

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "stablesim/errors.hpp"
#include "stablesim/params.hpp"

namespace stablesim {

enum class Regime { series, asymptotic, closed_form, contour };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::series: return "series";
    case Regime::asymptotic: return "asymptotic";
    case Regime::closed_form: return "closed_form";
    case Regime::contour: return "contour";
  }
  return "unknown";
}

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  int terms_used = 0;
  Regime regime = Regime::series;
};

/// Arguments of the three-parameter (Prabhakar) function E^gamma_{xi,mu}(z).
class MLArgs {
 public:
  MLArgs(double xi, double mu_param, double gamma_param, double z)
      : xi_(xi), mu_(mu_param), gamma_(gamma_param), z_(z) {
    detail::require(std::isfinite(xi) && xi > 0.0 && xi <= 2.0,
                    "Mittag-Leffler exponent must satisfy 0 < xi <= 2, got " + detail::fmt(xi));
    detail::require(std::isfinite(mu_param) && mu_param > 0.0,
                    "Mittag-Leffler offset must be positive, got " + detail::fmt(mu_param));
    detail::require(std::isfinite(gamma_param) && gamma_param > 0.0,
                    "Prabhakar power must be positive, got " + detail::fmt(gamma_param));
    detail::require(std::isfinite(z), "Mittag-Leffler argument must be finite");
  }

  double xi() const noexcept { return xi_; }
  double mu_param() const noexcept { return mu_; }
  double gamma_param() const noexcept { return gamma_; }
  double z() const noexcept { return z_; }

 private:
  double xi_, mu_, gamma_, z_;
};

namespace detail::ml {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr int kTermCap = 10000;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A regime is accepted once its error estimate is below
// max(accept_abs, accept_rel*|value|); the best candidate is returned if it
// is below the failure threshold, otherwise evaluation fails.
struct Target {
  double accept_abs = 1e-15;
  double accept_rel = 4e-15;
  double fail_abs = 1e-6;
  double fail_rel = 1e-6;

  bool accepts(const EvalResult& r) const {
    return r.est_abs_error <= std::max(accept_abs, accept_rel * std::abs(r.value));
  }
  bool tolerates(const EvalResult& r) const {
    return std::isfinite(r.value) &&
           r.est_abs_error <= std::max(fail_abs, fail_rel * std::abs(r.value));
  }
};

// Neumaier compensated sum.
template <typename T>
struct CompensatedSum {
  T sum = 0;
  T comp = 0;
  void add(T x) {
    const T t = sum + x;
    const T ax = x < 0 ? -x : x;
    const T as = sum < 0 ? -sum : sum;
    if (as >= ax) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  T value() const { return sum + comp; }
};

// 1/Gamma(y) split as sign * exp(log_envelope) * sine. For y <= 0 the
// reflection formula gives 1/Gamma(y) = sin(pi y) Gamma(1-y) / pi; the
// envelope drops the sine so it varies smoothly through the poles.
struct RecipGammaParts {
  double log_envelope;
  double sine;  // |sin(pi y)|, 1 for y > 0, 0 at a pole
  int sign;
};

inline RecipGammaParts recip_gamma_parts(double y) {
  if (y > 0.0) return {-std::lgamma(y), 1.0, 1};
  const double n = std::round(y);
  const double r = y - n;
  const double log_env = std::lgamma(1.0 - y) - std::log(std::numbers::pi);
  // Parameters like beta - xi*(gamma+j) land on integers only up to rounding.
  if (std::abs(r) < 1e-12 * std::max(1.0, std::abs(y))) return {log_env, 0.0, 0};
  double s = std::sin(std::numbers::pi * r);
  if (std::fmod(std::abs(n), 2.0) == 1.0) s = -s;
  return {log_env, std::abs(s), s > 0 ? 1 : -1};
}

// Power series sum_k (gamma)_k z^k / (k! Gamma(xi*k + beta)), times
// exp(log_scale), in double precision.
inline EvalResult series_double(double xi, double beta, double gamma, double z,
                                double log_scale, double abs_goal) {
  const bool alternating = z < 0.0;
  const double lz = std::log(std::abs(z));
  const double lg0 = std::lgamma(gamma);
  const bool plain = gamma == 1.0;
  CompensatedSum<double> acc;
  double rounding = 0.0;
  double prev_log = -kInf;
  double remainder = kInf;
  int k = 0;
  for (; k < kTermCap; ++k) {
    const double kd = k;
    const double lg_num = plain ? 0.0 : std::lgamma(gamma + kd) - lg0 - std::lgamma(kd + 1.0);
    const double lg_den = std::lgamma(xi * kd + beta);
    const double log_term = log_scale + kd * lz + lg_num - lg_den;
    const double mag = std::exp(log_term);
    const double term = (alternating && (k & 1)) ? -mag : mag;
    // Absolute error of log_term, carried into a relative error of the term.
    const double dlog =
        2.0 * kEps * (std::abs(log_scale) + kd * std::abs(lz) + std::abs(lg_num) + std::abs(lg_den)) +
        4.0 * kEps * (plain ? 1.0 : 3.0);
    rounding += mag * (dlog + kEps);
    acc.add(term);
    if (k > 0 && log_term < prev_log) {
      const double ratio = std::exp(log_term - prev_log);
      if (ratio < 0.9) {
        remainder = mag * ratio / (1.0 - ratio);
        const double s = std::abs(acc.value());
        if (remainder <= 0.25 * kEps * s || remainder <= 1e-3 * abs_goal || mag == 0.0) {
          ++k;
          break;
        }
      }
    }
    prev_log = log_term;
  }
  EvalResult out;
  out.value = acc.value();
  out.terms_used = k;
  out.regime = Regime::series;
  out.est_abs_error = (k >= kTermCap || !std::isfinite(out.value))
                          ? kInf
                          : rounding + remainder + 2.0 * kEps * std::abs(out.value);
  return out;
}

// Same series in binary128 arithmetic; used where cancellation in the
// alternating series would swamp double precision.
inline EvalResult series_quad(double xi, double beta, double gamma, double z, double log_scale,
                              double abs_goal) {
  using Q = __float128;
  const Q eps_q = ldexpq(1, -112);  // binary128 machine epsilon
  const bool alternating = z < 0.0;
  const Q lz = logq(fabsq(static_cast<Q>(z)));
  const Q xq = xi, bq = beta, gq = gamma;
  const Q lg0 = lgammaq(gq);
  const bool plain = gamma == 1.0;
  CompensatedSum<Q> acc;
  Q rounding = 0;
  Q sum_abs = 0;
  Q prev_log = -HUGE_VALQ;
  Q remainder = HUGE_VALQ;
  int k = 0;
  for (; k < kTermCap; ++k) {
    const Q kq = k;
    const Q lg_num = plain ? Q(0) : lgammaq(gq + kq) - lg0 - lgammaq(kq + 1);
    const Q lg_den = lgammaq(xq * kq + bq);
    const Q log_term = kq * lz + lg_num - lg_den;
    const Q mag = expq(log_term);
    const Q term = (alternating && (k & 1)) ? -mag : mag;
    const Q dlog = 8 * eps_q * (kq * fabsq(lz) + fabsq(lg_num) + fabsq(lg_den) + 4);
    rounding += mag * (dlog + eps_q);
    sum_abs += mag;
    acc.add(term);
    if (k > 0 && log_term < prev_log) {
      const Q ratio = expq(log_term - prev_log);
      if (ratio < Q(0.9)) {
        remainder = mag * ratio / (1 - ratio);
        const Q s = fabsq(acc.value());
        const Q goal = static_cast<Q>(abs_goal) * expq(static_cast<Q>(-log_scale));
        if (remainder <= eps_q * s || remainder <= Q(1e-3) * goal || mag == 0) {
          ++k;
          break;
        }
      }
    }
    prev_log = log_term;
  }
  const Q scale = expq(static_cast<Q>(log_scale));
  const Q value_q = acc.value() * scale;
  EvalResult out;
  out.value = static_cast<double>(value_q);
  out.terms_used = k;
  out.regime = Regime::series;
  if (k >= kTermCap || !std::isfinite(out.value)) {
    out.est_abs_error = kInf;
  } else {
    const Q internal = (rounding + remainder + 4 * eps_q * fabsq(acc.value())) * scale;
    // Rounding to double plus the relative error of exp(log_scale).
    out.est_abs_error = static_cast<double>(internal) +
                        std::abs(out.value) * (0.5 * kEps + 2.0 * kEps * std::abs(log_scale));
  }
  return out;
}

// Algebraic asymptotic expansion for z = -x, x large:
//   E^gamma_{xi,beta}(-x) ~ sum_j (-1)^j (gamma)_j / j! * x^(-gamma-j) / Gamma(beta - xi*(gamma+j)),
// truncated at its smallest term. For 1 < xi <= 2 (gamma = 1 only) the two
// exponential contributions from x^(1/xi) e^(+-i*pi/xi) are added exactly.
inline EvalResult asymptotic_negative(double xi, double beta, double gamma, double x,
                                      double log_scale) {
  const double lx = std::log(x);
  const double lg0 = std::lgamma(gamma);
  const bool plain = gamma == 1.0;
  struct Term {
    double value;
    double mag;
    double dlog;
  };
  std::vector<Term> terms;
  double smallest = kInf;  // smallest envelope seen so far
  std::size_t smallest_at = 0;
  double converged_tail = kInf;
  double partial = 0.0;
  for (int j = 0; j < 4000; ++j) {
    const double jd = j;
    const RecipGammaParts rg = recip_gamma_parts(beta - xi * (gamma + jd));
    const double lg_num = plain ? 0.0 : std::lgamma(gamma + jd) - lg0 - std::lgamma(jd + 1.0);
    const double log_env = log_scale + lg_num - (gamma + jd) * lx + rg.log_envelope;
    const double env = std::exp(log_env);
    if (env > smallest) break;  // past the optimal truncation point
    const double mag = env * rg.sine;
    const int sign = ((j & 1) ? -1 : 1) * rg.sign;
    const double dlog = 2.0 * kEps *
                        (std::abs(log_scale) + std::abs(lg_num) + (gamma + jd) * std::abs(lx) +
                         std::abs(rg.log_envelope) + 8.0);
    terms.push_back({sign * mag, mag, dlog});
    smallest = env;
    smallest_at = terms.size() - 1;
    partial += sign * mag;
    if (env <= 0.1 * kEps * std::abs(partial) || env == 0.0) {
      converged_tail = env;
      break;
    }
  }
  CompensatedSum<double> acc;
  double rounding = 0.0;
  double truncation = 0.0;
  std::size_t used = terms.size();
  if (std::isfinite(converged_tail)) {
    truncation = converged_tail;
  } else if (!std::isfinite(smallest)) {
    truncation = kInf;
  } else {
    used = smallest_at;
    truncation = smallest;
  }
  for (std::size_t i = 0; i < used; ++i) {
    acc.add(terms[i].value);
    rounding += terms[i].mag * (terms[i].dlog + kEps);
  }

  double value = acc.value();
  if (xi > 1.0) {
    // (1/xi) * sum over zeta = x^(1/xi) e^(+-i pi/xi) of zeta^(1-beta) exp(zeta)
    const double r = std::pow(x, 1.0 / xi);
    const double theta = std::numbers::pi / xi;
    const std::complex<double> log_zeta(std::log(r), theta);
    const std::complex<double> zeta = std::exp(log_zeta);
    const std::complex<double> c = std::exp((1.0 - beta) * log_zeta + zeta + log_scale);
    const double expo = 2.0 * c.real() / xi;
    value += expo;
    rounding += std::abs(c) * 2.0 / xi * kEps * (8.0 + r + std::abs(log_scale));
  } else if (xi > 2.0 / 3.0) {
    // Exponentially small contributions not represented by the algebraic series.
    const double r = std::pow(x, 1.0 / xi);
    truncation += std::exp(log_scale + r * std::cos(std::numbers::pi / xi) +
                           (gamma - beta) * std::log(r) - lg0 - gamma * std::log(xi));
  }

  EvalResult out;
  out.value = value;
  out.terms_used = static_cast<int>(used);
  out.regime = Regime::asymptotic;
  out.est_abs_error = std::isfinite(value)
                          ? rounding + truncation + 2.0 * kEps * std::abs(value)
                          : kInf;
  return out;
}

// Numerical inverse Laplace transform on the parabolic contour
// s(u) = m (1 + iu)^2 of F(s) = s^(xi*gamma - beta) / (s^xi + x)^gamma,
// evaluated at time 1. Valid for 0 < xi <= 1 where F is analytic off the
// negative real axis.
inline double contour_trapezoid(double xi, double beta, double gamma, double x, double log_scale,
                                int n, double& abs_sum) {
  using C = std::complex<double>;
  const double m = std::numbers::pi * n / 12.0;
  const double h = 3.0 / n;
  double acc = 0.0;
  abs_sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = k * h;
    const C w(1.0, u);
    const C s = m * w * w;
    const C log_s = std::log(s);
    const C log_f = (xi * gamma - beta) * log_s - gamma * std::log(std::exp(xi * log_s) + x);
    const C ds = C(0.0, 2.0 * m) * w;
    const C g = std::exp(s + log_f + log_scale) * ds;
    const double weight = (k == 0) ? 0.5 : 1.0;
    acc += weight * g.imag();
    abs_sum += weight * std::abs(g);
  }
  abs_sum *= h / std::numbers::pi;
  return acc * h / std::numbers::pi;
}

inline EvalResult contour_negative(double xi, double beta, double gamma, double x,
                                   double log_scale) {
  constexpr int kCoarse = 28;
  constexpr int kFine = 36;
  double abs_coarse = 0.0;
  double abs_fine = 0.0;
  const double coarse = contour_trapezoid(xi, beta, gamma, x, log_scale, kCoarse, abs_coarse);
  const double fine = contour_trapezoid(xi, beta, gamma, x, log_scale, kFine, abs_fine);
  EvalResult out;
  out.value = fine;
  out.terms_used = kCoarse + kFine + 2;
  out.regime = Regime::contour;
  out.est_abs_error = std::isfinite(fine) ? std::abs(fine - coarse) + 16.0 * kEps * abs_fine : kInf;
  return out;
}

// exp(log_scale) * E^gamma_{xi,beta}(z) with regime selection.
inline EvalResult prabhakar(double xi, double beta, double gamma, double z, double log_scale,
                            const Target& target = {}) {
  if (z == 0.0) {
    const double v = std::exp(log_scale - std::lgamma(beta));
    return {v, 4.0 * kEps * std::abs(v) * (1.0 + std::abs(log_scale)), 1, Regime::closed_form};
  }
  auto fail = [&](const EvalResult& best) -> EvalResult {
    throw evaluation_error("Mittag-Leffler evaluation did not converge (xi=" + detail::fmt(xi) +
                               ", beta=" + detail::fmt(beta) + ", gamma=" + detail::fmt(gamma) +
                               ", z=" + detail::fmt(z) + ")",
                           best.value, best.est_abs_error, best.terms_used);
  };
  if (z > 0.0) {
    // All terms positive: no cancellation, double precision is enough.
    const EvalResult r = series_double(xi, beta, gamma, z, log_scale, target.accept_abs);
    if (!target.tolerates(r)) return fail(r);
    return r;
  }

  const double x = -z;
  const double growth = std::pow(x, 1.0 / xi);  // log of the largest series term, roughly
  EvalResult best{0.0, kInf, 0, Regime::series};
  auto consider = [&](const EvalResult& r) {
    if (std::isfinite(r.value) && r.est_abs_error < best.est_abs_error) best = r;
    return target.accepts(r);
  };
  const bool asymptotic_ok = xi <= 1.0 || gamma == 1.0;
  if (growth < 35.0 && consider(series_double(xi, beta, gamma, z, log_scale, target.accept_abs)))
    return best;
  if (asymptotic_ok && growth > 1.0 &&
      consider(asymptotic_negative(xi, beta, gamma, x, log_scale)))
    return best;
  // The contour costs a few dozen complex evaluations; the binary128 series
  // is the slow fallback.
  if (xi <= 1.0 && consider(contour_negative(xi, beta, gamma, x, log_scale))) return best;
  if (growth < 85.0 && consider(series_quad(xi, beta, gamma, z, log_scale, target.accept_abs)))
    return best;
  if (!target.tolerates(best)) return fail(best);
  return best;
}

}  // namespace detail::ml

/// Two-parameter Mittag-Leffler function sum_k z^k / Gamma(xi*k + mu_param).
inline EvalResult ml_two(double xi, double mu_param, double z) {
  const MLArgs args(xi, mu_param, 1.0, z);
  return detail::ml::prabhakar(args.xi(), args.mu_param(), 1.0, args.z(), 0.0);
}

/// Three-parameter function sum_k (gamma)_k z^k / (k! Gamma(xi*k + mu_param)).
inline EvalResult ml_three(const MLArgs& args) {
  return detail::ml::prabhakar(args.xi(), args.mu_param(), args.gamma_param(), args.z(), 0.0);
}

namespace detail {
inline void require_time(double t) {
  require(std::isfinite(t) && t > 0.0, "time must be positive and finite, got " + fmt(t));
}

// Density and distribution function sit inside goodness-of-fit loops with
// 1e5 calls; 1e-11 is far below any statistical resolution and lets the
// contour regime accept without the binary128 fallback.
inline constexpr ml::Target kLinnikTarget{1e-11, 1e-11, 1e-6, 1e-6};
}  // namespace detail

/// Positive Linnik density mu t^(nu-1) E_{nu,nu}(-mu t^nu).
inline double linnik_density(const LinnikParams& params, double t) {
  detail::require_time(t);
  const double nu = params.nu().value();
  const double mu = params.mu();
  const double log_t = std::log(t);
  const double x = mu * std::exp(nu * log_t);
  const EvalResult r =
      detail::ml::prabhakar(nu, nu, 1.0, -x, std::log(mu) + (nu - 1.0) * log_t,
                            detail::kLinnikTarget);
  return std::max(r.value, 0.0);
}

/**
 * Positive Linnik distribution function 1 - E_{nu,1}(-mu t^nu), evaluated as
 * x E_{nu,nu+1}(-x) with x = mu t^nu so that small t keeps full relative
 * accuracy.
 */
inline double linnik_cdf(const LinnikParams& params, double t) {
  detail::require_time(t);
  const double nu = params.nu().value();
  const double log_x = std::log(params.mu()) + nu * std::log(t);
  const EvalResult r = detail::ml::prabhakar(nu, nu + 1.0, 1.0, -std::exp(log_x), log_x,
                                                   detail::kLinnikTarget);
  return std::clamp(r.value, 0.0, 1.0);
}

/// P{N(t) = k} = (mu t^nu)^k E^{k+1}_{nu, nu k + 1}(-mu t^nu).
inline double frac_poisson_pmf(OneSidedIndex nu, double mu, double t, int k) {
  detail::require_time(t);
  detail::require(std::isfinite(mu) && mu > 0.0, "rate must be positive, got " + detail::fmt(mu));
  detail::require(k >= 0, "count must be non-negative, got " + std::to_string(k));
  const double v = nu.value();
  const double log_x = std::log(mu) + v * std::log(t);
  const double kd = k;
  const EvalResult r =
      detail::ml::prabhakar(v, v * kd + 1.0, kd + 1.0, -std::exp(log_x), kd * log_x);
  return std::clamp(r.value, 0.0, 1.0);
}

/// Distribution function erfc(1/(2 sqrt t)) of the unit one-sided 1/2-stable law.
inline double levy_cdf(double t) {
  detail::require_time(t);
  return std::erfc(0.5 / std::sqrt(t));
}

}  // namespace stablesim

#endif  // STABLESIM_MITTAG_LEFFLER_HPP_
