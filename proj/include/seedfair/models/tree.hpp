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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace seedfair::models {

enum class Criterion
{
  gini,
  entropy
};

struct TreeParams
{
  Criterion                  criterion         = Criterion::gini;
  std::optional<std::size_t> max_depth         = std::nullopt;  ///< nullopt = unbounded
  std::size_t                min_samples_split = 2;
  std::size_t                min_samples_leaf  = 1;

  bool operator==(TreeParams const &) const = default;
};

/// Row order of every feature column, computed once and reused across fits
/// on the same rows (boosting refits a stump per round).
struct FeatureOrder
{
  std::vector<std::vector<std::uint32_t>> by_feature;

  explicit FeatureOrder(Matrix const &x)
    : by_feature(x.cols())
  {
    for (std::size_t f = 0; f < x.cols(); ++f)
    {
      auto &order = by_feature[f];
      order.resize(x.rows());
      std::iota(order.begin(), order.end(), std::uint32_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return x(a, f) < x(b, f); });
    }
  }
};

/// Binary CART classifier with optional sample weights.
///
/// Thresholds sit midway between consecutive distinct values and rows with
/// x[f] <= threshold go left. Among equal-gain candidates the lowest feature
/// index wins, then the lowest threshold. An impure node is split whenever a
/// candidate satisfying the leaf-size limits exists, even at zero gain.
class DecisionTree
{
public:
  struct Node
  {
    std::int32_t feature   = -1;  ///< -1 marks a leaf
    double       threshold = 0.0;
    std::int32_t left      = -1;
    std::int32_t right     = -1;
    double       weight[2] = {0.0, 0.0};

    int label() const noexcept
    {
      return weight[1] > weight[0] ? 1 : 0;
    }
  };

  static DecisionTree fit(Matrix const &x, std::span<int const> y, TreeParams params,
                          std::span<double const> weights = {})
  {
    return fit(x, y, params, weights, FeatureOrder(x));
  }

  static DecisionTree fit(Matrix const &x, std::span<int const> y, TreeParams params,
                          std::span<double const> weights, FeatureOrder order)
  {
    if (params.min_samples_split < 2 || params.min_samples_leaf < 1)
    {
      throw InputError("decision tree: min_samples_split >= 2 and min_samples_leaf >= 1 required");
    }
    if (params.max_depth && *params.max_depth < 1)
    {
      throw InputError("decision tree: max_depth must be >= 1");
    }
    Builder builder(x, y, params, weights, std::move(order));
    DecisionTree tree;
    tree.nodes_ = builder.build();
    return tree;
  }

  int predict(std::span<double const> row) const
  {
    std::size_t i = 0;
    while (nodes_[i].feature >= 0)
    {
      auto const &n = nodes_[i];
      i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                           : n.right);
    }
    return nodes_[i].label();
  }

  std::vector<Node> const &nodes() const noexcept
  {
    return nodes_;
  }

  std::size_t depth() const
  {
    return depth_of(0);
  }

private:
  std::size_t depth_of(std::size_t i) const
  {
    if (nodes_[i].feature < 0)
    {
      return 0;
    }
    return 1 + std::max(depth_of(static_cast<std::size_t>(nodes_[i].left)),
                        depth_of(static_cast<std::size_t>(nodes_[i].right)));
  }

  class Builder
  {
  public:
    Builder(Matrix const &x, std::span<int const> y, TreeParams params,
            std::span<double const> weights, FeatureOrder order)
      : x_(x)
      , y_(y)
      , params_(params)
      , order_(std::move(order))
      , goes_left_(x.rows(), 0)
      , scratch_(x.rows())
    {
      if (weights.empty())
      {
        w_.assign(x.rows(), 1.0);
      }
      else
      {
        if (weights.size() != x.rows())
        {
          throw InputError("decision tree: one weight per row required");
        }
        w_.assign(weights.begin(), weights.end());
      }
    }

    std::vector<Node> build()
    {
      nodes_.clear();
      grow(0, x_.rows(), 0);
      return std::move(nodes_);
    }

  private:
    double impurity(double w0, double w1) const
    {
      double const total = w0 + w1;
      if (total <= 0.0)
      {
        return 0.0;
      }
      double const p0 = w0 / total;
      double const p1 = w1 / total;
      if (params_.criterion == Criterion::gini)
      {
        return 1.0 - p0 * p0 - p1 * p1;
      }
      double h = 0.0;
      if (p0 > 0.0)
      {
        h -= p0 * std::log2(p0);
      }
      if (p1 > 0.0)
      {
        h -= p1 * std::log2(p1);
      }
      return h;
    }

    std::int32_t grow(std::size_t lo, std::size_t hi, std::size_t depth)
    {
      auto const id = static_cast<std::int32_t>(nodes_.size());
      nodes_.emplace_back();
      Node node;
      std::size_t count[2] = {0, 0};
      for (std::size_t p = lo; p < hi; ++p)
      {
        std::uint32_t const r = order_.by_feature[0][p];
        auto const c          = static_cast<std::size_t>(y_[r]);
        node.weight[c] += w_[r];
        count[c] += 1;
      }
      std::size_t const n = hi - lo;
      bool const pure     = count[0] == 0 || count[1] == 0;
      bool const at_depth = params_.max_depth && depth >= *params_.max_depth;
      if (pure || at_depth || n < params_.min_samples_split || n < 2 * params_.min_samples_leaf)
      {
        nodes_[static_cast<std::size_t>(id)] = node;
        return id;
      }

      auto const best = find_split(lo, hi, node.weight[0], node.weight[1]);
      if (!best)
      {
        nodes_[static_cast<std::size_t>(id)] = node;
        return id;
      }

      node.feature   = static_cast<std::int32_t>(best->feature);
      node.threshold = best->threshold;
      std::size_t const mid = partition(lo, hi, best->feature, best->threshold);
      node.left  = grow(lo, mid, depth + 1);
      node.right = grow(mid, hi, depth + 1);
      nodes_[static_cast<std::size_t>(id)] = node;
      return id;
    }

    struct Split
    {
      std::size_t feature;
      double      threshold;
      double      gain;
    };

    std::optional<Split> find_split(std::size_t lo, std::size_t hi, double w0, double w1) const
    {
      double const parent = (w0 + w1) * impurity(w0, w1);
      std::size_t const n = hi - lo;
      std::size_t const min_leaf = params_.min_samples_leaf;
      std::optional<Split> best;
      for (std::size_t f = 0; f < x_.cols(); ++f)
      {
        auto const &order = order_.by_feature[f];
        double left[2]    = {0.0, 0.0};
        for (std::size_t p = lo; p + 1 < hi; ++p)
        {
          std::uint32_t const r = order[p];
          left[static_cast<std::size_t>(y_[r])] += w_[r];
          std::size_t const n_left = p + 1 - lo;
          if (n_left < min_leaf)
          {
            continue;
          }
          if (n - n_left < min_leaf)
          {
            break;
          }
          double const a = x_(r, f);
          double const b = x_(order[p + 1], f);
          if (!(a < b))
          {
            continue;
          }
          double const r0   = w0 - left[0];
          double const r1   = w1 - left[1];
          double const gain = parent - (left[0] + left[1]) * impurity(left[0], left[1]) -
                              (r0 + r1) * impurity(r0, r1);
          if (!best || gain > best->gain)
          {
            double threshold = a + (b - a) / 2.0;
            if (!(threshold < b))
            {
              threshold = a;
            }
            best = Split{f, threshold, gain};
          }
        }
      }
      return best;
    }

    /// Stable partition of every feature order in [lo, hi) into the rows
    /// going left followed by the rows going right. Returns the boundary.
    std::size_t partition(std::size_t lo, std::size_t hi, std::size_t feature, double threshold)
    {
      std::size_t n_left = 0;
      for (std::size_t p = lo; p < hi; ++p)
      {
        std::uint32_t const r = order_.by_feature[0][p];
        goes_left_[r]         = x_(r, feature) <= threshold ? 1 : 0;
        n_left += goes_left_[r];
      }
      for (auto &order : order_.by_feature)
      {
        std::size_t l = lo;
        std::size_t s = 0;
        for (std::size_t p = lo; p < hi; ++p)
        {
          std::uint32_t const r = order[p];
          if (goes_left_[r])
          {
            order[l++] = r;
          }
          else
          {
            scratch_[s++] = r;
          }
        }
        std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(s),
                  order.begin() + static_cast<std::ptrdiff_t>(l));
      }
      return lo + n_left;
    }

    Matrix const              &x_;
    std::span<int const>       y_;
    TreeParams                 params_;
    FeatureOrder               order_;
    std::vector<double>        w_;
    std::vector<std::uint8_t>  goes_left_;
    std::vector<std::uint32_t> scratch_;
    std::vector<Node>          nodes_;
  };

  std::vector<Node> nodes_;
};

}  // namespace seedfair::models
