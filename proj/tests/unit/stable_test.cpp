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

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "stablesim/mittag_leffler.hpp"
#include "stablesim/stable.hpp"
#include "stablesim/statcheck.hpp"
#include "test_support.hpp"

namespace stablesim {
namespace {

using testing::draws;

// ---------------------------------------------------------------------------
// Parameter records

TEST(Params, OneSidedIndexDomain) {
  EXPECT_NO_THROW(OneSidedIndex(1.0));
  EXPECT_NO_THROW(OneSidedIndex(1e-3));
  EXPECT_THROW(OneSidedIndex(0.0), parameter_error);
  EXPECT_THROW(OneSidedIndex(1.0000001), parameter_error);
  EXPECT_THROW(OneSidedIndex(std::numeric_limits<double>::quiet_NaN()), parameter_error);
  EXPECT_TRUE(OneSidedIndex(1.0).degenerate());
}

TEST(Params, StrictStableConstraints) {
  EXPECT_NO_THROW(StrictStableParams(1.5, 0.6));
  EXPECT_NO_THROW(StrictStableParams(1.5, 1.0 / 1.5));
  EXPECT_NO_THROW(StrictStableParams(0.7, 1.0));
  EXPECT_NO_THROW(StrictStableParams(2.0, 0.5));
  EXPECT_THROW(StrictStableParams(2.0, 0.6), parameter_error);   // alpha = 2 forces rho = 1/2
  EXPECT_THROW(StrictStableParams(1.5, 0.7), parameter_error);   // alpha*rho > 1
  EXPECT_THROW(StrictStableParams(1.5, 0.3), parameter_error);   // alpha*(1-rho) > 1
  EXPECT_THROW(StrictStableParams(2.5, 0.5), parameter_error);
  EXPECT_THROW(StrictStableParams(1.0, 0.3), unsupported_parametrization);
  EXPECT_NO_THROW(StrictStableParams(1.0, 0.5));
}

TEST(Params, LinnikRate) {
  EXPECT_THROW(LinnikParams(OneSidedIndex(0.5), 0.0), parameter_error);
  EXPECT_THROW(LinnikParams(OneSidedIndex(0.5), -1.0), parameter_error);
  EXPECT_EQ(LinnikParams(OneSidedIndex(0.5), 2.0).mu(), 2.0);
}

// ---------------------------------------------------------------------------
// One-sided stable

TEST(PositiveStable, DegenerateIndexIsExactlyOne) {
  RandomStream s(1), untouched(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_positive_stable(OneSidedIndex(1.0), s), 1.0);
  EXPECT_EQ(s.next_u64(), untouched.next_u64());
}

TEST(PositiveStable, HalfIndexMatchesLevyLaw) {
  const auto xs = draws(100000, 10, [](RandomStream& s) {
    return sample_positive_stable(OneSidedIndex(0.5), s);
  });
  const KsReport r = ks_one_sample(xs, levy_cdf);
  EXPECT_LT(r.statistic, 0.0062);
  EXPECT_TRUE(r.passed) << r.p_value;
}

TEST(PositiveStable, LaplaceTransformAtNu07) {
  const auto xs = draws(100000, 11, [](RandomStream& s) {
    return std::exp(-sample_positive_stable(OneSidedIndex(0.7), s));
  });
  EXPECT_NEAR(testing::mean(xs), std::exp(-1.0), 0.004);
}

// Property: E exp(-lambda S) = exp(-lambda^nu) over an index/argument grid.
TEST(PositiveStable, LaplaceTransformGrid) {
  for (double nu : {0.2, 0.45, 0.9}) {
    const auto xs = draws(100000, 12 + static_cast<int>(nu * 100), [nu](RandomStream& s) {
      return sample_positive_stable(OneSidedIndex(nu), s);
    });
    for (double lambda : {0.5, 1.0, 2.0}) {
      std::vector<double> t;
      for (double x : xs) t.push_back(std::exp(-lambda * x));
      const MomentReport m = moment_zscore(t, std::exp(-std::pow(lambda, nu)));
      EXPECT_TRUE(m.passed) << "nu=" << nu << " lambda=" << lambda << " z=" << m.z_score;
    }
  }
}

TEST(PositiveStable, KanterGuardsKeepExtremeUniformsFinite) {
  for (double nu : {0.05, 0.5, 0.95}) {
    for (double u : {1e-12, 1e-9, 0.5, 1.0 - 1e-9, 1.0 - 1e-12}) {
      EXPECT_TRUE(std::isfinite(detail::kanter_log_a(nu, std::numbers::pi * u)))
          << "nu=" << nu << " u=" << u;
    }
  }
  RandomStream s(5);
  for (int i = 0; i < 100000; ++i) {
    const double u = detail::guarded_uniform(s);
    ASSERT_GT(u, detail::kUniformGuard);
    ASSERT_LT(u, 1.0 - detail::kUniformGuard);
  }
}

// ---------------------------------------------------------------------------
// Strictly stable

TEST(StrictlyStable, GaussianCase) {
  const StrictStableParams p(2.0, 0.5);
  const auto xs = draws(100000, 20, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
  const auto ref = draws(100000, 21, [](RandomStream& s) { return std::numbers::sqrt2 * s.gaussian(); });
  const KsReport r = ks_two_sample(xs, ref);
  EXPECT_LT(r.statistic, 0.0087);
  EXPECT_TRUE(r.passed);
}

TEST(StrictlyStable, CauchyCase) {
  const StrictStableParams p(1.0, 0.5);
  const auto xs = draws(100000, 22, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
  EXPECT_TRUE(ks_one_sample(xs, [](double x) { return 0.5 + std::atan(x) / std::numbers::pi; }).passed);
}

TEST(StrictlyStable, PositivityMass) {
  const std::vector<std::pair<double, double>> cases{
      {1.5, 0.6}, {1.5, 1.0 / 1.5}, {1.5, 1.0 / 3.0}, {0.5, 0.2}, {0.8, 1.0}, {1.2, 0.5}, {1.9, 0.48}};
  int id = 23;
  for (auto [alpha, rho] : cases) {
    const StrictStableParams p(alpha, rho);
    const auto xs = draws(100000, id++, [&](RandomStream& s) {
      return sample_strictly_stable(p, s) > 0.0 ? 1.0 : 0.0;
    });
    const double half_width = 4.0 * std::sqrt(rho * (1 - rho) / xs.size());
    EXPECT_NEAR(testing::mean(xs), rho, std::max(half_width, 1e-12)) << alpha << "," << rho;
  }
  // The documented example: alpha = 1.5, rho = 0.6 within 0.0062.
  const StrictStableParams p(1.5, 0.6);
  const auto xs = draws(100000, 40, [&](RandomStream& s) {
    return sample_strictly_stable(p, s) > 0.0 ? 1.0 : 0.0;
  });
  EXPECT_NEAR(testing::mean(xs), 0.6, 0.0062);
}

TEST(StrictlyStable, OneSidedCaseMatchesKanterScale) {
  for (double alpha : {0.3, 0.6, 0.9}) {
    const StrictStableParams p(alpha, 1.0);
    const auto cms = draws(100000, 41, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
    const auto kanter = draws(100000, 42, [&](RandomStream& s) {
      return sample_positive_stable(OneSidedIndex(alpha), s);
    });
    EXPECT_TRUE(ks_two_sample(cms, kanter).passed) << alpha;
  }
}

TEST(StrictlyStable, SymmetricCharacteristicFunction) {
  // exp(-|xi|^alpha) for rho = 1/2.
  const double xi_values[] = {0.5, 1.0, 2.0};
  for (double alpha : {0.7, 1.3, 1.8}) {
    const StrictStableParams p(alpha, 0.5);
    const auto xs = draws(100000, 43, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
    for (const auto& r : ecf_check(xs, xi_values, [alpha](double xi) {
           return std::complex<double>(std::exp(-std::pow(std::abs(xi), alpha)), 0.0);
         })) {
      EXPECT_TRUE(r.passed) << "alpha=" << alpha << " xi=" << r.xi << " d=" << r.distance;
    }
  }
}

TEST(StrictlyStable, SkewedCharacteristicFunction) {
  // exp(-|xi|^alpha * exp(-i pi alpha (rho - 1/2) sign(xi))), checked at xi > 0.
  const double xi_values[] = {0.5, 1.0, 2.0};
  for (auto [alpha, rho] : {std::pair{1.5, 0.6}, {0.6, 0.8}, {1.2, 0.3}}) {
    const StrictStableParams p(alpha, rho);
    const auto xs = draws(100000, 44, [&](RandomStream& s) { return sample_strictly_stable(p, s); });
    for (const auto& r : ecf_check(xs, xi_values, [=](double xi) {
           const std::complex<double> phase(0.0, -std::numbers::pi * alpha * (rho - 0.5));
           return std::exp(-std::pow(xi, alpha) * std::exp(phase));
         })) {
      EXPECT_TRUE(r.passed) << alpha << "," << rho << " xi=" << r.xi << " d=" << r.distance;
    }
  }
}

// ---------------------------------------------------------------------------
// rho <-> beta

TEST(RhoBeta, Examples) {
  for (double alpha : {0.3, 0.9, 1.2, 1.7, 2.0}) EXPECT_NEAR(rho_to_beta(alpha, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(rho_to_beta(0.8, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(beta_to_rho(1.5, rho_to_beta(1.5, 2.0 / 3.0)), 2.0 / 3.0, 1e-12);
  EXPECT_THROW(rho_to_beta(1.0, 0.5), parameter_error);
  EXPECT_THROW(rho_to_beta(1.5, 0.9), parameter_error);
}

TEST(RhoBeta, RoundTripProperty) {
  testing::Gen g(1);
  for (int i = 0; i < 2000; ++i) {
    double alpha = g.real(0.05, 2.0);
    if (std::abs(alpha - 1.0) < 1e-3) continue;
    const double lo = std::max(0.0, 1.0 - 1.0 / alpha), hi = std::min(1.0, 1.0 / alpha);
    const double rho = g.real(lo, hi);
    const double beta = rho_to_beta(alpha, rho);
    ASSERT_LE(std::abs(beta), 1.0);
    ASSERT_NEAR(beta_to_rho(alpha, beta), rho, 1e-12) << alpha << "," << rho;
  }
}

// ---------------------------------------------------------------------------
// Mittag-Leffler variate

TEST(MittagLefflerVariate, DegenerateIsOne) {
  RandomStream s(3);
  EXPECT_EQ(sample_mittag_leffler_rv(OneSidedIndex(1.0), s), 1.0);
}

TEST(MittagLefflerVariate, HalfIndexIsScaledHalfNormal) {
  const auto m = draws(100000, 50, [](RandomStream& s) {
    return sample_mittag_leffler_rv(OneSidedIndex(0.5), s);
  });
  const auto ref = draws(100000, 51, [](RandomStream& s) {
    return std::numbers::sqrt2 * std::abs(s.gaussian());
  });
  EXPECT_TRUE(ks_two_sample(m, ref).passed);
  EXPECT_NEAR(testing::mean(m), 2.0 / std::sqrt(std::numbers::pi), testing::four_se(m));
}

TEST(MittagLefflerVariate, MomentsMatchGammaRatios) {
  // E M^k = k! / Gamma(1 + k alpha).
  for (double alpha : {0.25, 0.6, 0.85}) {
    const auto m = draws(100000, 52, [alpha](RandomStream& s) {
      return sample_mittag_leffler_rv(OneSidedIndex(alpha), s);
    });
    EXPECT_NEAR(testing::mean(m), 1.0 / std::tgamma(1.0 + alpha), testing::four_se(m)) << alpha;
    std::vector<double> sq;
    for (double x : m) sq.push_back(x * x);
    EXPECT_NEAR(testing::mean(sq), 2.0 / std::tgamma(1.0 + 2.0 * alpha), testing::four_se(sq)) << alpha;
  }
}

// ---------------------------------------------------------------------------
// Positive Linnik

TEST(PositiveLinnik, ExponentialCase) {
  const LinnikParams p(OneSidedIndex(1.0), 2.0);
  const auto xs = draws(100000, 60, [&](RandomStream& s) { return sample_positive_linnik(p, s); });
  EXPECT_TRUE(ks_one_sample(xs, [](double x) { return -std::expm1(-2.0 * x); }).passed);
}

TEST(PositiveLinnik, MatchesDistributionFunction) {
  const LinnikParams p(OneSidedIndex(0.7), 1.0);
  const auto xs = draws(100000, 61, [&](RandomStream& s) { return sample_positive_linnik(p, s); });
  EXPECT_TRUE(ks_one_sample(xs, [&](double t) { return linnik_cdf(p, t); }).passed);
}

TEST(PositiveLinnik, RateScaling) {
  const LinnikParams unit(OneSidedIndex(0.5), 1.0), fast(OneSidedIndex(0.5), 4.0);
  const auto scaled = draws(100000, 62, [&](RandomStream& s) {
    return sample_positive_linnik(unit, s) / 16.0;
  });
  const auto direct = draws(100000, 63, [&](RandomStream& s) { return sample_positive_linnik(fast, s); });
  EXPECT_TRUE(ks_two_sample(scaled, direct).passed);
}

TEST(PositiveLinnik, LaplaceTransform) {
  // E exp(-s T) = mu / (s^nu + mu).
  const LinnikParams p(OneSidedIndex(0.4), 1.5);
  const auto xs = draws(100000, 64, [&](RandomStream& s) { return sample_positive_linnik(p, s); });
  for (double s : {0.3, 1.0, 4.0}) {
    std::vector<double> t;
    for (double x : xs) t.push_back(std::exp(-s * x));
    EXPECT_TRUE(moment_zscore(t, 1.5 / (std::pow(s, 0.4) + 1.5)).passed) << s;
  }
}

// ---------------------------------------------------------------------------
// Duality

TEST(DualPositive, KanterOnlyInnerCase) {
  // rho = 1/alpha: X^(-1/alpha) with X one-sided stable of index 1/alpha.
  const StrictStableParams p(1.5, 1.0 / 1.5);
  const auto dual = draws(100000, 70, [&](RandomStream& s) { return sample_dual_positive(p, s); });
  const auto ref = draws(100000, 71, [](RandomStream& s) {
    return std::pow(sample_positive_stable(OneSidedIndex(2.0 / 3.0), s), -2.0 / 3.0);
  });
  EXPECT_TRUE(ks_two_sample(dual, ref).passed);
}

TEST(DualPositive, ConditionalDualityAgainstCms) {
  for (auto [alpha, rho] : {std::pair{1.5, 0.6}, {1.8, 0.5}, {1.2, 0.3}}) {
    const StrictStableParams p(alpha, rho);
    const auto dual = draws(100000, 72, [&](RandomStream& s) { return sample_dual_positive(p, s); });
    std::vector<double> cms;
    RandomStream s(testing::kSeed, 73);
    while (cms.size() < 100000) {
      const double x = sample_strictly_stable(p, s);
      if (x > 0) cms.push_back(x);
    }
    const KsReport r = ks_two_sample(dual, cms);
    EXPECT_TRUE(r.passed) << alpha << "," << rho << " p=" << r.p_value;
    EXPECT_LT(r.statistic, ks_critical_value(0.001, 50000.0));
  }
}

TEST(DualPositive, GaussianPositivePart) {
  const StrictStableParams p(2.0, 0.5);
  const auto dual = draws(100000, 74, [&](RandomStream& s) { return sample_dual_positive(p, s); });
  const auto ref = draws(100000, 75, [](RandomStream& s) {
    return std::abs(std::numbers::sqrt2 * s.gaussian());
  });
  EXPECT_TRUE(ks_two_sample(dual, ref).passed);
}

TEST(DualPositive, RejectsIndexBelowOneAndHonoursCap) {
  RandomStream s(1);
  EXPECT_THROW(sample_dual_positive(StrictStableParams(0.8, 0.5), s), parameter_error);
  EXPECT_THROW(sample_dual_positive(StrictStableParams(1.5, 0.5), s, 0), rejection_cap_error);
}

// ---------------------------------------------------------------------------
// Finite output at parameter corners, 1e7 draws each.

TEST(Corners, AllDrawsFinite) {
  constexpr std::size_t n = 10000000;
  RandomStream base(testing::kSeed, 80);
  std::uint64_t id = 0;
  for (double nu : {0.05, 0.5, 0.95, 1.0}) {
    RandomStream s = base.substream(id++);
    const OneSidedIndex idx(nu);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = sample_positive_stable(idx, s);
      bad += !(std::isfinite(x) && x > 0.0);
    }
    EXPECT_EQ(bad, 0u) << "nu=" << nu;
  }
  for (double alpha : {1.01, 1.5, 2.0}) {
    for (double rho : {0.5, 1.0 / alpha, 1.0 - 1.0 / alpha}) {
      if (alpha == 2.0 && rho != 0.5) continue;
      RandomStream s = base.substream(id++);
      const StrictStableParams p(alpha, rho);
      std::size_t bad = 0;
      for (std::size_t i = 0; i < n; ++i) bad += !std::isfinite(sample_strictly_stable(p, s));
      EXPECT_EQ(bad, 0u) << "alpha=" << alpha << " rho=" << rho;
    }
  }
  // Derived samplers at the same corners, 1e6 draws each.
  for (double nu : {0.05, 0.5, 0.95, 1.0}) {
    RandomStream s = base.substream(id++);
    const LinnikParams lp(OneSidedIndex(nu), 1.0);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n / 10; ++i) {
      const double a = sample_positive_linnik(lp, s);
      const double b = sample_mittag_leffler_rv(OneSidedIndex(nu), s);
      bad += !(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0);
    }
    EXPECT_EQ(bad, 0u) << "nu=" << nu;
  }
  for (double alpha : {1.01, 1.5, 2.0}) {
    RandomStream s = base.substream(id++);
    const StrictStableParams p(alpha, 0.5);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n / 10; ++i) {
      const double x = sample_dual_positive(p, s);
      bad += !(std::isfinite(x) && x > 0.0);
    }
    EXPECT_EQ(bad, 0u) << "alpha=" << alpha;
  }
}

}  // namespace
}  // namespace stablesim
