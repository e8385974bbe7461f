#pragma once
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


#include "seedfair/errors.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace seedfair::statmath {

/// Outcome of a Shapiro-Wilk test. The null hypothesis is normality.
struct NormalityResult
{
  double      w_statistic;
  double      p_value;
  std::size_t n;
};

/// ln Γ(x) for x > 0.
inline double log_gamma(double x)
{
  if (!(x > 0.0) || !std::isfinite(x))
  {
    throw DomainError("log_gamma: argument must be a positive finite real, got " +
                      std::to_string(x));
  }
  return boost::math::lgamma(x);
}

/// Inverse of the standard normal CDF.
inline double std_normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
  {
    throw DomainError("std_normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  static boost::math::normal_distribution<double> const unit{};
  return boost::math::quantile(unit, p);
}

/// Upper tail probability of the standard normal, P(Z > z).
inline double std_normal_upper_tail(double z)
{
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

/// Inverse CDF of Student's t with `df` degrees of freedom.
inline double student_t_quantile(double df, double p)
{
  if (!(df >= 1.0) || !std::isfinite(df))
  {
    throw DomainError("student_t_quantile: df must be >= 1, got " + std::to_string(df));
  }
  if (!(p > 0.0 && p < 1.0))
  {
    throw DomainError("student_t_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  boost::math::students_t_distribution<double> const dist(df);
  return boost::math::quantile(dist, p);
}

/// Bias-correction factor relating the expected sample standard deviation to
/// sigma for a normal sample with `phi` degrees of freedom:
///   sqrt(2) Γ((φ+1)/2) / (sqrt(φ) Γ(φ/2)).
/// Evaluated in log space so large φ does not overflow.
inline double c_star(double phi)
{
  if (!(phi >= 1.0) || !std::isfinite(phi))
  {
    throw DomainError("c_star: degrees of freedom must be >= 1, got " + std::to_string(phi));
  }
  // Gamma(phi/2) / Gamma(phi/2 + 1/2) without the cancellation of a
  // difference of log-gammas at large phi.
  double const inv_ratio = boost::math::tgamma_delta_ratio(phi / 2.0, 0.5);
  return std::sqrt(2.0 / phi) / inv_ratio;
}

namespace detail {

template <std::size_t N>
double poly(double const (&c)[N], double x)
{
  double r = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;)
  {
    r = r * x + c[i];
  }
  return r;
}

/// Shapiro-Wilk coefficients a_1..a_{n/2} for the lower half of the sorted
/// sample (stored positive; the upper half mirrors them with opposite sign).
/// Royston's polynomial approximation (AS R94), exact for n = 3.
inline std::vector<double> swilk_coefficients(std::size_t n)
{
  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};

  std::size_t const half = n / 2;
  std::vector<double> a(half);
  if (n == 3)
  {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }

  double const an    = static_cast<double>(n);
  double const an25  = an + 0.25;
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i)
  {
    m[i] = std_normal_quantile((static_cast<double>(i + 1) - 0.375) / an25);
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  double const ssumm2 = std::sqrt(summ2);
  double const rsn    = 1.0 / std::sqrt(an);
  double const a1     = poly(c1, rsn) - m[0] / ssumm2;

  std::size_t first_scaled;
  double      fac;
  if (n > 5)
  {
    first_scaled    = 2;
    double const a2 = -m[1] / ssumm2 + poly(c2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  }
  else
  {
    first_scaled = 1;
    fac          = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (std::size_t i = first_scaled; i < half; ++i)
  {
    a[i] = -m[i] / fac;
  }
  return a;
}

}  // namespace detail

/// Shapiro-Wilk W test for normality, valid for 3 <= n <= 5000.
///
/// W is evaluated as the squared correlation between the ordered sample and
/// the coefficient vector, which is exact under affine transforms of the data.
/// The p-value uses Royston's normalizing transformations (exact for n = 3).
inline NormalityResult shapiro_wilk(std::span<double const> samples)
{
  std::size_t const n = samples.size();
  if (n < 3)
  {
    throw TooFewSamples("shapiro_wilk: need at least 3 samples, got " + std::to_string(n));
  }
  if (n > 5000)
  {
    throw DomainError("shapiro_wilk: at most 5000 samples supported, got " + std::to_string(n));
  }

  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  double const range = x.back() - x.front();
  if (!(range > 0.0))
  {
    throw DegenerateSample("shapiro_wilk: sample has zero variance");
  }

  std::vector<double> const a = detail::swilk_coefficients(n);

  // Full antisymmetric coefficient vector; the middle entry (odd n) is zero.
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    coef[i]         = -a[i];
    coef[n - 1 - i] = a[i];
  }

  double mean_x = 0.0;
  double mean_c = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    mean_x += x[i] / range;
    mean_c += coef[i];
  }
  mean_x /= static_cast<double>(n);
  mean_c /= static_cast<double>(n);

  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double const da = coef[i] - mean_c;
    double const dx = x[i] / range - mean_x;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  double const ssassx = std::sqrt(ssa * ssx);
  double const w1     = std::clamp((ssassx - sax) * (ssassx + sax) / (ssa * ssx), 0.0, 1.0);
  double const w      = 1.0 - w1;

  NormalityResult result{w, 1.0, n};

  if (n == 3)
  {
    // Exact distribution: P = (6/π)(asin(sqrt(W)) − π/3).
    double const pw  = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    result.p_value = std::clamp(pw, 0.0, 1.0);
    return result;
  }

  static constexpr double c3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[]  = {-2.273, 0.459};

  double const an = static_cast<double>(n);
  double y        = std::log(w1);
  double mu;
  double sigma;
  if (n <= 11)
  {
    double const gamma = detail::poly(g, an);
    if (y >= gamma)
    {
      result.p_value = 1e-99;
      return result;
    }
    y     = -std::log(gamma - y);
    mu    = detail::poly(c3, an);
    sigma = std::exp(detail::poly(c4, an));
  }
  else
  {
    double const ln_n = std::log(an);
    mu                = detail::poly(c5, ln_n);
    sigma             = std::exp(detail::poly(c6, ln_n));
  }
  result.p_value = std::clamp(std_normal_upper_tail((y - mu) / sigma), 0.0, 1.0);
  return result;
}

}  // namespace seedfair::statmath
