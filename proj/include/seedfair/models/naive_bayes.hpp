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
#include "seedfair/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace seedfair::models {

struct NaiveBayesParams
{
  /// Fraction of the largest feature variance added to every class variance.
  double var_smoothing = 1e-9;

  bool operator==(NaiveBayesParams const &) const = default;
};

/// Gaussian naive Bayes with maximum-likelihood class-conditional moments and
/// empirical class priors.
class GaussianNb
{
public:
  static GaussianNb fit(Matrix const &x, std::span<int const> y, NaiveBayesParams params)
  {
    if (!(params.var_smoothing >= 0.0))
    {
      throw InputError("naive Bayes: var_smoothing must be non-negative");
    }
    std::size_t const d = x.cols();
    GaussianNb model;
    std::array<double, 2> count{0.0, 0.0};
    for (auto &m : model.mean_)
    {
      m.assign(d, 0.0);
    }
    for (auto &v : model.var_)
    {
      v.assign(d, 0.0);
    }
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
      auto const c = static_cast<std::size_t>(y[i]);
      count[c] += 1.0;
      for (std::size_t j = 0; j < d; ++j)
      {
        model.mean_[c][j] += x(i, j);
      }
    }
    for (std::size_t c = 0; c < 2; ++c)
    {
      for (double &m : model.mean_[c])
      {
        m /= count[c];
      }
    }
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
      auto const c = static_cast<std::size_t>(y[i]);
      for (std::size_t j = 0; j < d; ++j)
      {
        double const diff = x(i, j) - model.mean_[c][j];
        model.var_[c][j] += diff * diff;
      }
    }

    // Largest per-feature variance over all rows sets the smoothing scale.
    double max_var = 0.0;
    double const n = static_cast<double>(x.rows());
    for (std::size_t j = 0; j < d; ++j)
    {
      double mean = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i)
      {
        mean += x(i, j);
      }
      mean /= n;
      double ss = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i)
      {
        ss += (x(i, j) - mean) * (x(i, j) - mean);
      }
      max_var = std::max(max_var, ss / n);
    }
    double const epsilon =
        std::max(params.var_smoothing * max_var, std::numeric_limits<double>::min());

    for (std::size_t c = 0; c < 2; ++c)
    {
      for (double &v : model.var_[c])
      {
        v = v / count[c] + epsilon;
      }
      model.log_prior_[c] = std::log(count[c] / n);
    }
    return model;
  }

  /// Joint log-likelihood log P(c) + log p(x | c) for class c.
  double log_joint(std::span<double const> row, int c) const
  {
    auto const k = static_cast<std::size_t>(c);
    double lp    = log_prior_[k];
    for (std::size_t j = 0; j < row.size(); ++j)
    {
      double const diff = row[j] - mean_[k][j];
      lp -= 0.5 * (std::log(2.0 * std::numbers::pi * var_[k][j]) + diff * diff / var_[k][j]);
    }
    return lp;
  }

  int predict(std::span<double const> row) const
  {
    return log_joint(row, 1) > log_joint(row, 0) ? 1 : 0;
  }

private:
  std::array<std::vector<double>, 2> mean_;
  std::array<std::vector<double>, 2> var_;
  std::array<double, 2>              log_prior_{};
};

}  // namespace seedfair::models
