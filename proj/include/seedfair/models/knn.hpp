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
#include "seedfair/models/scaler.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace seedfair::models {

enum class NeighborWeights
{
  uniform,
  distance
};

struct KnnParams
{
  std::size_t     n_neighbors = 5;
  NeighborWeights weights     = NeighborWeights::uniform;

  bool operator==(KnnParams const &) const = default;
};

/// k-nearest-neighbour vote over standardized Euclidean distance.
///
/// Equidistant neighbours are ordered by training index; tied votes go to
/// label 0. With distance weighting, exact matches (distance 0) outvote every
/// other neighbour.
class KnnModel
{
public:
  static KnnModel fit(Matrix const &x, std::span<int const> y, KnnParams params)
  {
    if (params.n_neighbors == 0)
    {
      throw InputError("knn: n_neighbors must be >= 1");
    }
    KnnModel model;
    model.params_ = params;
    model.scaler_ = Standardizer(x);
    model.rows_   = model.scaler_.transform(x);
    model.labels_.assign(y.begin(), y.end());
    return model;
  }

  int predict(std::span<double const> raw) const
  {
    std::size_t const d = rows_.cols();
    std::vector<double> q(d);
    for (std::size_t j = 0; j < d; ++j)
    {
      q[j] = (raw[j] - scaler_.mean()[j]) / scaler_.scale()[j];
    }

    std::vector<std::pair<double, std::size_t>> dist(rows_.rows());
    for (std::size_t i = 0; i < rows_.rows(); ++i)
    {
      auto const r = rows_.row(i);
      double s     = 0.0;
      for (std::size_t j = 0; j < d; ++j)
      {
        double const diff = r[j] - q[j];
        s += diff * diff;
      }
      dist[i] = {s, i};
    }
    std::size_t const k = std::min(params_.n_neighbors, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    double vote[2] = {0.0, 0.0};
    if (params_.weights == NeighborWeights::uniform)
    {
      for (std::size_t j = 0; j < k; ++j)
      {
        vote[labels_[dist[j].second]] += 1.0;
      }
    }
    else if (dist[0].first == 0.0)
    {
      for (std::size_t j = 0; j < k && dist[j].first == 0.0; ++j)
      {
        vote[labels_[dist[j].second]] += 1.0;
      }
    }
    else
    {
      for (std::size_t j = 0; j < k; ++j)
      {
        vote[labels_[dist[j].second]] += 1.0 / std::sqrt(dist[j].first);
      }
    }
    return vote[1] > vote[0] ? 1 : 0;
  }

private:
  KnnParams        params_;
  Standardizer     scaler_;
  Matrix           rows_;
  std::vector<int> labels_;
};

}  // namespace seedfair::models
