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


#include "seedfair/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace seedfair::models {

/// Per-column z-scoring with statistics taken from the training rows only.
/// Constant columns are centred but not scaled.
class Standardizer
{
public:
  Standardizer() = default;

  explicit Standardizer(Matrix const &train)
    : mean_(train.cols(), 0.0)
    , scale_(train.cols(), 1.0)
  {
    double const n = static_cast<double>(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i)
    {
      for (std::size_t j = 0; j < train.cols(); ++j)
      {
        mean_[j] += train(i, j);
      }
    }
    for (double &m : mean_)
    {
      m /= n;
    }
    std::vector<double> ss(train.cols(), 0.0);
    for (std::size_t i = 0; i < train.rows(); ++i)
    {
      for (std::size_t j = 0; j < train.cols(); ++j)
      {
        double const d = train(i, j) - mean_[j];
        ss[j] += d * d;
      }
    }
    for (std::size_t j = 0; j < train.cols(); ++j)
    {
      double const sd = std::sqrt(ss[j] / n);
      scale_[j]       = sd > 0.0 ? sd : 1.0;
    }
  }

  Matrix transform(Matrix const &x) const
  {
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
    {
      for (std::size_t j = 0; j < x.cols(); ++j)
      {
        out(i, j) = (x(i, j) - mean_[j]) / scale_[j];
      }
    }
    return out;
  }

  std::vector<double> const &mean() const noexcept
  {
    return mean_;
  }

  std::vector<double> const &scale() const noexcept
  {
    return scale_;
  }

private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace seedfair::models
