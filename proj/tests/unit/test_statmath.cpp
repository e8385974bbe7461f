//------------------------------------------------------------------------------
//
//   Copyright 2026 The seedfair Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------


#include "seedfair/statmath.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace seedfair;
using namespace seedfair::statmath;
using Catch::Approx;

TEST_CASE("normal quantile matches reference values", "[statmath]")
{
  CHECK(std_normal_quantile(0.975) == Approx(1.959963984540054).epsilon(1e-14));
  CHECK(std_normal_quantile(0.95) == Approx(1.6448536269514722).epsilon(1e-14));
  CHECK(std_normal_quantile(0.5) == Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
}

TEST_CASE("quantiles are antisymmetric", "[statmath]")
{
  for (double p : {0.001, 0.01, 0.1, 0.3, 0.45})
  {
    CHECK(std_normal_quantile(p) == Approx(-std_normal_quantile(1.0 - p)).epsilon(1e-12));
    for (double df : {1.0, 3.0, 18.0, 200.0})
    {
      CHECK(student_t_quantile(df, p) == Approx(-student_t_quantile(df, 1.0 - p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("t quantile matches reference values and exceeds z", "[statmath]")
{
  CHECK(student_t_quantile(1, 0.975) == Approx(12.7062047361747046).epsilon(1e-12));  // tan(0.475 pi)
  CHECK(student_t_quantile(18, 0.975) == Approx(2.10092204024096).epsilon(1e-12));
  CHECK(student_t_quantile(1e6, 0.975) == Approx(1.9599663568141066).epsilon(1e-10));
  double const z = std_normal_quantile(0.975);
  double prev    = student_t_quantile(1, 0.975);
  for (int df = 2; df <= 400; ++df)
  {
    double const t = student_t_quantile(df, 0.975);
    CHECK(t > z);
    CHECK(t < prev);
    prev = t;
  }
  CHECK_THROWS_AS(student_t_quantile(0, 0.9), DomainError);
}

TEST_CASE("upper tail complements the quantile", "[statmath]")
{
  for (double p : {0.6, 0.9, 0.975, 0.999})
  {
    CHECK(std_normal_upper_tail(std_normal_quantile(p)) == Approx(1.0 - p).epsilon(1e-12));
  }
}

TEST_CASE("log gamma", "[statmath]")
{
  CHECK(log_gamma(0.5) == Approx(0.5723649429247).epsilon(1e-12));
  CHECK(log_gamma(6.0) == Approx(4.78749174278205).epsilon(1e-13));
  CHECK(log_gamma(1.0) == Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("c* reproduces the published c4 constants", "[statmath]")
{
  CHECK(c_star(1) == Approx(0.797884560802865).epsilon(1e-13));
  CHECK(c_star(2) == Approx(0.886226925452758).epsilon(1e-13));
  CHECK(c_star(9) == Approx(0.972659274121588).epsilon(1e-13));
  CHECK(c_star(18) == Approx(0.986214136860194).epsilon(1e-13));
  CHECK(c_star(1e4) == Approx(0.999975000312539).epsilon(1e-13));
  CHECK_THROWS_AS(c_star(0), DomainError);
}

TEST_CASE("c* increases towards one", "[statmath]")
{
  double prev = c_star(1);
  for (int phi = 2; phi <= 2000; ++phi)
  {
    double const c = c_star(phi);
    CHECK(c > prev);
    CHECK(c < 1.0);
    prev = c;
  }
}

TEST_CASE("Shapiro-Wilk matches reference statistics", "[statmath]")
{
  struct Case
  {
    std::vector<double> x;
    double              w;
    double              p;
  };
  std::vector<double> tail(19);
  for (int i = 0; i < 19; ++i)
  {
    tail[i] = i + 1;
  }
  tail.push_back(40);
  std::vector<Case> const cases = {
      {{1.0685, 1.039, 0.4795, 1.0467, 2.2598, 0.3952, 1.6747, 1.0742, 0.6805, 3.3209, 1.5799, 0.487, 1.0457,
        1.4134, 0.8929, 1.5064, 0.9609, 1.4923, 2.3705, 0.6667},
       0.8863449192623447, 0.023051639293822642},
      {{.139, .157, .175, .256, .344, .413, .503, .577, .614, .655, .954, 1.392, 1.557, 1.648, 1.690, 1.994,
        2.174, 2.206, 3.245, 3.510, 3.571, 4.354, 4.980, 6.084, 8.351},
       0.8346662753381485, 0.0009134904825887374},
      {{1, 2, 3}, 1.0, 1.0},
      {{1, 2, 4}, 0.9642857142857142, 0.6368868450289689},
      {{0.2, 0.9, 1.1, 1.3}, 0.9060773599640213, 0.46186799698262127},
      {{5, 1, 3, 2, 11}, 0.8595548540075811, 0.226654529300439},
      {{1, 2, 4, 7, 8, 9, 12, 13, 20, 21, 30}, 0.9280521512652062, 0.39148617501879696},
      {{3, 1, 4, 1.5, 9, 2.6}, 0.8272135713265865, 0.10178568756445883},
      {{0.1, 0.5, 0.45, 0.7}, 0.9469848048710908, 0.6973348878306799},
      {tail, 0.8468728321832649, 0.0047265726246662676},
  };
  for (auto const &c : cases)
  {
    auto const r = shapiro_wilk(c.x);
    CHECK(r.n == c.x.size());
    CHECK(r.w_statistic == Approx(c.w).margin(1e-6));
    CHECK(r.p_value == Approx(c.p).margin(1e-5));
  }
}

TEST_CASE("Shapiro-Wilk is invariant under affine maps and reordering", "[statmath]")
{
  std::vector<double> x = {0.61, 0.64, 0.59, 0.70, 0.66, 0.62, 0.58, 0.67, 0.63, 0.65};
  auto const base = shapiro_wilk(x);
  std::vector<double> y;
  for (double v : x)
  {
    y.push_back(-3.0 * v + 100.0);
  }
  std::reverse(y.begin(), y.end());
  auto const moved = shapiro_wilk(y);
  CHECK(moved.w_statistic == Approx(base.w_statistic).margin(1e-10));
  CHECK(moved.p_value == Approx(base.p_value).margin(1e-10));
}

TEST_CASE("Shapiro-Wilk rejects unusable samples", "[statmath]")
{
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1.0, 2.0}), TooFewSamples);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{0.64, 0.64, 0.64}), DegenerateSample);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 1.0)), DomainError);
}

TEST_CASE("Shapiro-Wilk holds its size on normal data", "[statmath]")
{
  std::mt19937_64 gen(20260101);
  std::normal_distribution<double> normal(0.64, 0.03);
  for (std::size_t n : {3u, 10u, 30u})
  {
    int rejections = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
      std::vector<double> x(n);
      for (auto &v : x)
      {
        v = normal(gen);
      }
      rejections += shapiro_wilk(x).p_value < 0.05;
    }
    CHECK(rejections / 1000.0 == Approx(0.05).margin(0.02));
  }
}
