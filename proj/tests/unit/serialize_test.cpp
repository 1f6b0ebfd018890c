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
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "stablesim/serialize.hpp"
#include "test_support.hpp"

namespace stablesim {
namespace {

TEST(FormatDouble, Examples) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(0.0), "0.0");
  EXPECT_EQ(format_double(-3.0), "-3.0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e300), "1e+300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(FormatDouble, RoundTripProperty) {
  testing::Gen g(300);
  for (int i = 0; i < 20000; ++i) {
    const double v = std::ldexp(g.real(-1.0, 1.0), g.integer(-1000, 1000));
    const std::string s = format_double(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
    EXPECT_NE(s.find_first_of(".e"), std::string::npos) << s;
  }
}

TEST(HeaderLine, Layout) {
  const ParamList p{{"nu", 0.5}, {"mu", 2.0}};
  EXPECT_EQ(header_line("sample", "positive-linnik", p, 7, "value"),
            "# sample positive-linnik nu=0.5 mu=2.0 seed=7 columns=value");
  EXPECT_EQ(params_json(p).dump(), R"({"nu":0.5,"mu":2.0})");
}

TEST(Csv, RoundTrip) {
  testing::Gen g(301);
  std::vector<double> values(1000);
  for (auto& v : values) v = std::exp(g.real(-30.0, 30.0)) * (g.s.uniform() < 0.5 ? -1 : 1);
  std::stringstream ss;
  write_values_csv(ss, "# sample x seed=1 columns=value", values);
  const CsvTable t = read_csv(ss);
  EXPECT_EQ(t.header, "sample x seed=1 columns=value");
  EXPECT_EQ(csv_column(t), values);
}

TEST(Csv, TrajectoryAndPathRows) {
  const RenewalTrajectory traj{{0.25, 1.5}, LinnikParams(OneSidedIndex(0.5), 1.0), 2.0};
  std::stringstream ss;
  write_trajectory_csv(ss, "# h", traj);
  EXPECT_EQ(ss.str(), "# h\n1.0,0.25\n2.0,1.5\n");

  RandomStream s(1);
  const auto path = simulate_subordinator_path(OneSidedIndex(0.5), 1.0, 0.25, s);
  std::stringstream ps;
  write_path_csv(ps, "# p", path);
  const CsvTable t = read_csv(ps);
  EXPECT_EQ(csv_column(t, 0), path.grid);
  EXPECT_EQ(csv_column(t, 1), path.values);
  EXPECT_THROW(csv_column(t, 2), parameter_error);
}

TEST(Csv, MalformedInput) {
  std::stringstream a("# h\n1.0,abc\n");
  EXPECT_THROW(read_csv(a), parameter_error);
  std::stringstream b("1.0,\n");
  EXPECT_THROW(read_csv(b), parameter_error);
  std::stringstream c("1.0 2.0\n");
  EXPECT_THROW(read_csv(c), parameter_error);
  std::stringstream d("# h\r\n\r\n3.5\r\n");
  EXPECT_EQ(csv_column(read_csv(d)), std::vector<double>{3.5});
}

TEST(Json, PdeMassFields) {
  const PdeEstimate e = estimate_pde_solution(0.5, 1.0, 20, 3.0, 10000, RandomStream(3), 1);
  const auto j = pde_json({{"alpha", 0.5}}, 3, e);
  EXPECT_NEAR(j["in_range_mass"].get<double>() + j["out_of_range_mass"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(j["x_grid"].size(), 21u);
  EXPECT_EQ(j["density"].size(), 20u);
}

}  // namespace
}  // namespace stablesim
