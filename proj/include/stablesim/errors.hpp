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

#ifndef STABLESIM_ERRORS_HPP_
#define STABLESIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stablesim {

/// A parameter outside the domain of the law or function it configures.
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (alpha, rho) pair that is a valid stable law but not a strictly stable
/// one we can sample, i.e. alpha = 1 with rho != 1/2.
class unsupported_parametrization : public parameter_error {
 public:
  using parameter_error::parameter_error;
};

/// Numerical evaluation did not reach its accuracy target.
class evaluation_error : public std::runtime_error {
 public:
  evaluation_error(const std::string& what, double partial_value,
                   double partial_error, int terms)
      : std::runtime_error(what),
        partial_value_(partial_value),
        partial_error_(partial_error),
        terms_(terms) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }
  int terms() const noexcept { return terms_; }

 private:
  double partial_value_;
  double partial_error_;
  int terms_;
};

/// Query past the simulated time horizon of a trajectory or path.
class horizon_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A conditioning loop ran out of attempts.
class rejection_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input to a statistical check that the check cannot work with.
class statcheck_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stablesim

#endif  // STABLESIM_ERRORS_HPP_
