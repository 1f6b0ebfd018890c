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

#ifndef STABLESIM_PARAMS_HPP_
#define STABLESIM_PARAMS_HPP_

#include <cmath>
#include <sstream>
#include <string>

#include "stablesim/errors.hpp"

namespace stablesim {

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw parameter_error(what);
}

}  // namespace detail

/// Index nu of a one-sided stable law, 0 < nu <= 1.
class OneSidedIndex {
 public:
  explicit OneSidedIndex(double nu) : nu_(nu) {
    detail::require(std::isfinite(nu) && nu > 0.0 && nu <= 1.0,
                    "one-sided index must satisfy 0 < nu <= 1, got " + detail::fmt(nu));
  }

  double value() const noexcept { return nu_; }
  bool degenerate() const noexcept { return nu_ == 1.0; }

 private:
  double nu_;
};

/**
 * Strictly stable law S(alpha, rho): index alpha in (0, 2] and positivity
 * parameter rho = P{S > 0} in [0, 1], with alpha*rho <= 1 and
 * alpha*(1 - rho) <= 1. Scale is fixed so that the characteristic exponent
 * is |xi|^alpha * exp(-i*pi*alpha*(rho - 1/2)*sign(xi)), which gives
 * E exp(-lambda*S) = exp(-lambda^alpha) in the one-sided case and
 * exp(-|xi|^alpha) in the symmetric case.
 */
class StrictStableParams {
 public:
  StrictStableParams(double alpha, double rho) : alpha_(alpha), rho_(rho) {
    detail::require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
                    "stable index must satisfy 0 < alpha <= 2, got " + detail::fmt(alpha));
    detail::require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0,
                    "positivity parameter must satisfy 0 <= rho <= 1, got " + detail::fmt(rho));
    // A hair of slack so that rho = 1/alpha computed in floating point passes.
    constexpr double slack = 1e-12;
    detail::require(alpha * rho <= 1.0 + slack,
                    "strict stability requires alpha*rho <= 1, got alpha=" + detail::fmt(alpha) +
                        " rho=" + detail::fmt(rho));
    detail::require(alpha * (1.0 - rho) <= 1.0 + slack,
                    "strict stability requires alpha*(1-rho) <= 1, got alpha=" +
                        detail::fmt(alpha) + " rho=" + detail::fmt(rho));
    if (alpha == 1.0 && rho != 0.5) {
      throw unsupported_parametrization(
          "alpha = 1 is strictly stable only for rho = 1/2 (symmetric Cauchy), got rho=" +
          detail::fmt(rho));
    }
  }

  double alpha() const noexcept { return alpha_; }
  double rho() const noexcept { return rho_; }

 private:
  double alpha_;
  double rho_;
};

/// Positive Linnik law with Laplace transform mu / (s^nu + mu).
class LinnikParams {
 public:
  LinnikParams(OneSidedIndex nu, double mu) : nu_(nu), mu_(mu) {
    detail::require(std::isfinite(mu) && mu > 0.0,
                    "Linnik rate must satisfy mu > 0, got " + detail::fmt(mu));
  }

  OneSidedIndex nu() const noexcept { return nu_; }
  double mu() const noexcept { return mu_; }

 private:
  OneSidedIndex nu_;
  double mu_;
};

}  // namespace stablesim

#endif  // STABLESIM_PARAMS_HPP_
