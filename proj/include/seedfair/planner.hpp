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
#include "seedfair/statmath.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seedfair::planner {

/// How the interval budget delta is read.
enum class DeltaMode
{
  full_width,  ///< delta bounds the whole interval width (default)
  half_width   ///< delta bounds the margin on each side of the mean
};

/// Which t quantile enters the stopping rule.
enum class StoppingQuantile
{
  two_sided,  ///< t(n-1, 1 - alpha/2), matching the z(alpha/2) of the initial estimate
  one_sided   ///< t(n-1, 1 - alpha), for sensitivity analysis
};

struct PlanParams
{
  double                alpha           = 0.05;
  std::optional<double> delta;           ///< absolute budget, metric units
  std::optional<double> delta_fraction;  ///< budget as a fraction of the pilot mean
  double                normality_alpha = 0.05;
  std::size_t           pilot_n         = 3;
  std::size_t           n_cap           = 1000;
  DeltaMode             delta_mode      = DeltaMode::full_width;
  StoppingQuantile      stopping        = StoppingQuantile::two_sided;

  void validate() const
  {
    if (!(alpha > 0.0 && alpha < 1.0))
    {
      throw DomainError("plan: alpha must lie in (0, 1)");
    }
    if (!(normality_alpha > 0.0 && normality_alpha < 1.0))
    {
      throw DomainError("plan: normality_alpha must lie in (0, 1)");
    }
    if (delta.has_value() == delta_fraction.has_value())
    {
      throw DomainError("plan: give exactly one of delta and delta_fraction");
    }
    if (delta && !(*delta > 0.0))
    {
      throw DomainError("plan: delta must be positive");
    }
    if (delta_fraction && !(*delta_fraction > 0.0))
    {
      throw DomainError("plan: delta_fraction must be positive");
    }
    if (pilot_n < 3)
    {
      throw DomainError("plan: pilot_n must be >= 3");
    }
    if (n_cap < pilot_n)
    {
      throw DomainError("plan: n_cap must be >= pilot_n");
    }
  }
};

/// Real-valued known-variance sample-size bound 4 z(alpha/2)^2 sigma^2 / delta^2.
inline double initial_n_bound(double sigma, double delta, double alpha)
{
  if (!(sigma > 0.0) || !(delta > 0.0))
  {
    throw DomainError("initial_n: sigma and delta must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw DomainError("initial_n: alpha must lie in (0, 1)");
  }
  double const z = statmath::std_normal_quantile(1.0 - alpha / 2.0);
  return 4.0 * z * z * sigma * sigma / (delta * delta);
}

/// Smallest integer n satisfying the known-variance bound, at least 2.
inline std::size_t initial_n(double sigma, double delta, double alpha)
{
  double const bound = initial_n_bound(sigma, delta, alpha);
  if (!(bound < 1e15))
  {
    throw DomainError("initial_n: required sample size is not representable");
  }
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(bound)));
}

/// c*-corrected t-interval width used by the stopping rule:
///   2 t(n-1, q) c*(n-1) sd / sqrt(n).
inline double width_bound(std::size_t n, double sd, double alpha,
                          StoppingQuantile quantile = StoppingQuantile::two_sided)
{
  if (n < 2)
  {
    throw DomainError("width_bound: n must be >= 2");
  }
  if (!(sd >= 0.0))
  {
    throw DomainError("width_bound: sd must be non-negative");
  }
  if (!(alpha > 0.0 && alpha < 1.0))
  {
    throw DomainError("width_bound: alpha must lie in (0, 1)");
  }
  double const phi = static_cast<double>(n - 1);
  double const p   = quantile == StoppingQuantile::two_sided ? 1.0 - alpha / 2.0 : 1.0 - alpha;
  return 2.0 * statmath::student_t_quantile(phi, p) * statmath::c_star(phi) * sd /
         std::sqrt(static_cast<double>(n));
}

struct SampleSizePlan
{
  std::vector<double>       observations;  ///< every draw, in order
  double                    delta    = 0.0;  ///< resolved budget (as configured, before mode scaling)
  double                    sigma0   = 0.0;  ///< pilot standard deviation
  std::size_t               n_initial = 0;
  std::size_t               n_final   = 0;
  double                    mean      = 0.0;
  double                    sd        = 0.0;
  std::size_t               phi       = 0;
  double                    ci_low    = 0.0;
  double                    ci_high   = 0.0;
  double                    final_bound = 0.0;  ///< stopping-rule width at n_final
  std::optional<statmath::NormalityResult> normality;
  bool                      complete = false;

  std::span<double const> pilot(std::size_t pilot_n) const
  {
    return std::span<double const>(observations).first(std::min(pilot_n, observations.size()));
  }
};

/// Supplies observations one at a time, in a reproducible order.
using Sampler = std::function<double()>;

/// Sample mean and standard deviation (n - 1 denominator).
inline std::pair<double, double> mean_sd(std::span<double const> x)
{
  double const n = static_cast<double>(x.size());
  double mean    = 0.0;
  for (double v : x)
  {
    mean += v;
  }
  mean /= n;
  double ss = 0.0;
  for (double v : x)
  {
    ss += (v - mean) * (v - mean);
  }
  return {mean, x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

/// Sequential interval estimation for the mean of a metric.
///
/// 1. Draw a pilot and test it for normality; rejection stops the procedure.
/// 2. Size the sample from the pilot SD with the known-variance bound.
/// 3. Draw up to that size, then one observation at a time until the
///    c*-corrected t-width falls within the budget.
/// 4. Report the plain t-interval mean +/- t(n-1, 1-alpha/2) sd / sqrt(n).
///
/// The planner keeps its partial state when a step throws, so callers can
/// report how far the procedure got.
class SequentialPlanner
{
public:
  explicit SequentialPlanner(PlanParams params)
    : params_(params)
  {
    params_.validate();
  }

  SampleSizePlan const &run(Sampler const &sampler)
  {
    plan_ = SampleSizePlan{};
    while (plan_.observations.size() < params_.pilot_n)
    {
      draw(sampler);
    }

    auto const pilot = plan_.pilot(params_.pilot_n);
    plan_.normality  = statmath::shapiro_wilk(pilot);
    auto const [pilot_mean, pilot_sd] = mean_sd(pilot);
    plan_.sigma0 = pilot_sd;
    plan_.delta  = params_.delta ? *params_.delta : *params_.delta_fraction * std::abs(pilot_mean);
    if (plan_.normality->p_value < params_.normality_alpha)
    {
      throw NormalityViolation("pilot sample rejects normality (Shapiro-Wilk W = " +
                               std::to_string(plan_.normality->w_statistic) +
                               ", p = " + std::to_string(plan_.normality->p_value) + ")");
    }
    if (!(plan_.delta > 0.0))
    {
      throw DomainError("plan: resolved delta is not positive (pilot mean is zero?)");
    }

    double const budget = full_width_budget();
    plan_.n_initial     = initial_n(plan_.sigma0, budget, params_.alpha);

    std::size_t const target = std::min(std::max(params_.pilot_n, plan_.n_initial), params_.n_cap);
    while (plan_.observations.size() < target)
    {
      draw(sampler);
    }

    while (true)
    {
      std::size_t const n = plan_.observations.size();
      auto const [mean, sd] = mean_sd(plan_.observations);
      plan_.mean        = mean;
      plan_.sd          = sd;
      plan_.final_bound = width_bound(n, sd, params_.alpha, params_.stopping);
      if (plan_.final_bound <= budget)
      {
        break;
      }
      if (n >= params_.n_cap)
      {
        throw BudgetExceeded("plan: interval width " + std::to_string(plan_.final_bound) +
                             " still exceeds the budget " + std::to_string(budget) + " at n_cap = " +
                             std::to_string(params_.n_cap));
      }
      draw(sampler);
    }

    std::size_t const n = plan_.observations.size();
    plan_.n_final       = n;
    plan_.phi           = n - 1;
    double const t      = statmath::student_t_quantile(static_cast<double>(n - 1), 1.0 - params_.alpha / 2.0);
    double const margin = t * plan_.sd / std::sqrt(static_cast<double>(n));
    plan_.ci_low        = plan_.mean - margin;
    plan_.ci_high       = plan_.mean + margin;
    plan_.complete      = true;
    return plan_;
  }

  /// Full interval width the stopping rule must reach.
  double full_width_budget() const noexcept
  {
    return params_.delta_mode == DeltaMode::half_width ? 2.0 * plan_.delta : plan_.delta;
  }

  SampleSizePlan const &state() const noexcept
  {
    return plan_;
  }

  PlanParams const &params() const noexcept
  {
    return params_;
  }

private:
  void draw(Sampler const &sampler)
  {
    double const v = sampler();
    if (!std::isfinite(v))
    {
      throw DomainError("plan: sampler produced a non-finite observation");
    }
    plan_.observations.push_back(v);
  }

  PlanParams     params_;
  SampleSizePlan plan_;
};

inline SampleSizePlan sequential_plan(Sampler const &sampler, PlanParams const &params)
{
  SequentialPlanner planner(params);
  return planner.run(sampler);
}

}  // namespace seedfair::planner
