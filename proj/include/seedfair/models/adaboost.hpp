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
#include "seedfair/models/tree.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace seedfair::models {

struct AdaBoostParams
{
  std::size_t n_estimators  = 50;
  double      learning_rate = 1.0;

  bool operator==(AdaBoostParams const &) const = default;
};

/// Discrete two-class SAMME boosting of depth-1 gini trees.
///
/// Boosting stops early on a perfect stump, or on a stump no better than
/// chance (weighted error >= 0.5). A first-round stump at chance is kept with
/// unit weight so the ensemble is never empty.
class AdaBoost
{
public:
  struct Member
  {
    DecisionTree stump;
    double       alpha;
  };

  static AdaBoost fit(Matrix const &x, std::span<int const> y, AdaBoostParams params)
  {
    if (params.n_estimators == 0 || !(params.learning_rate > 0.0))
    {
      throw InputError("adaboost: n_estimators >= 1 and learning_rate > 0 required");
    }
    std::size_t const n = x.rows();
    AdaBoost model;
    FeatureOrder const order(x);
    TreeParams const stump_params{Criterion::gini, 1, 2, 1};
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<unsigned char> miss(n);

    for (std::size_t m = 0; m < params.n_estimators; ++m)
    {
      DecisionTree stump = DecisionTree::fit(x, y, stump_params, w, order);
      double err_w       = 0.0;
      double total_w     = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        miss[i] = stump.predict(x.row(i)) != y[i];
        total_w += w[i];
        err_w += miss[i] ? w[i] : 0.0;
      }
      double const err = err_w / total_w;

      if (err <= 0.0)
      {
        model.members_.push_back({std::move(stump), 1.0});
        break;
      }
      if (err >= 0.5)
      {
        if (model.members_.empty())
        {
          model.members_.push_back({std::move(stump), 1.0});
        }
        break;
      }

      double const alpha = params.learning_rate * std::log((1.0 - err) / err);
      model.members_.push_back({std::move(stump), alpha});
      if (m + 1 == params.n_estimators)
      {
        break;
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        if (miss[i])
        {
          w[i] *= std::exp(alpha);
        }
        sum += w[i];
      }
      for (double &wi : w)
      {
        wi /= sum;
      }
    }
    return model;
  }

  /// Weighted vote: positive favours label 1.
  double decision_function(std::span<double const> row) const
  {
    double score = 0.0;
    for (auto const &member : members_)
    {
      score += member.stump.predict(row) == 1 ? member.alpha : -member.alpha;
    }
    return score;
  }

  int predict(std::span<double const> row) const
  {
    return decision_function(row) > 0.0 ? 1 : 0;
  }

  std::vector<Member> const &members() const noexcept
  {
    return members_;
  }

private:
  std::vector<Member> members_;
};

}  // namespace seedfair::models
