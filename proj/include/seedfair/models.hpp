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
#include "seedfair/models/adaboost.hpp"
#include "seedfair/models/knn.hpp"
#include "seedfair/models/logistic.hpp"
#include "seedfair/models/naive_bayes.hpp"
#include "seedfair/models/tree.hpp"

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace seedfair::models {

/// The implemented subset of classifiers, named by their conventional symbols.
enum class Algorithm
{
  lr,
  nb,
  knn,
  dt,
  ada
};

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {Algorithm::lr, Algorithm::nb, Algorithm::knn,
                                                            Algorithm::dt, Algorithm::ada};

inline constexpr std::string_view to_string(Algorithm a)
{
  switch (a)
  {
  case Algorithm::lr:
    return "lr";
  case Algorithm::nb:
    return "nb";
  case Algorithm::knn:
    return "knn";
  case Algorithm::dt:
    return "dt";
  case Algorithm::ada:
    return "ada";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s)
{
  for (Algorithm a : kAllAlgorithms)
  {
    if (to_string(a) == s)
    {
      return a;
    }
  }
  throw InputError("unknown algorithm '" + std::string(s) + "' (expected lr, nb, knn, dt or ada)");
}

/// Tunable parameters; the active alternative identifies the algorithm and
/// follows the declaration order of Algorithm.
using HyperParams = std::variant<LogisticParams, NaiveBayesParams, KnnParams, TreeParams, AdaBoostParams>;

inline Algorithm algorithm_of(HyperParams const &p)
{
  return static_cast<Algorithm>(p.index());
}

/// Untuned defaults for each algorithm.
inline HyperParams default_params(Algorithm a)
{
  switch (a)
  {
  case Algorithm::lr:
    return LogisticParams{};
  case Algorithm::nb:
    return NaiveBayesParams{};
  case Algorithm::knn:
    return KnnParams{};
  case Algorithm::dt:
    return TreeParams{};
  case Algorithm::ada:
    return AdaBoostParams{};
  }
  throw InputError("default_params: invalid algorithm");
}

namespace detail {

inline std::string format_real(double v)
{
  std::array<char, 32> buf{};
  auto const res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline double parse_real(std::string_view key, std::string_view s)
{
  double v{};
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
  {
    throw ParseError("hyperparameter '" + std::string(key) + "': bad number '" + std::string(s) + "'");
  }
  return v;
}

inline std::size_t parse_count(std::string_view key, std::string_view s)
{
  std::size_t v{};
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
  {
    throw ParseError("hyperparameter '" + std::string(key) + "': bad count '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

/// Flat "key=value,key=value" rendering with a fixed key order per algorithm.
inline std::string format_params(HyperParams const &params)
{
  using detail::format_real;
  return std::visit(
      [](auto const &p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticParams>)
        {
          return "C=" + format_real(p.C) + ",penalty=" + (p.penalty == Penalty::l2 ? "l2" : "none");
        }
        else if constexpr (std::is_same_v<T, NaiveBayesParams>)
        {
          return "var_smoothing=" + format_real(p.var_smoothing);
        }
        else if constexpr (std::is_same_v<T, KnnParams>)
        {
          return "n_neighbors=" + std::to_string(p.n_neighbors) +
                 ",weights=" + (p.weights == NeighborWeights::uniform ? "uniform" : "distance");
        }
        else if constexpr (std::is_same_v<T, TreeParams>)
        {
          return std::string("criterion=") + (p.criterion == Criterion::gini ? "gini" : "entropy") +
                 ",max_depth=" + (p.max_depth ? std::to_string(*p.max_depth) : "none") +
                 ",min_samples_split=" + std::to_string(p.min_samples_split) +
                 ",min_samples_leaf=" + std::to_string(p.min_samples_leaf);
        }
        else
        {
          return "n_estimators=" + std::to_string(p.n_estimators) +
                 ",learning_rate=" + format_real(p.learning_rate);
        }
      },
      params);
}

/// Inverse of format_params. Keys missing from `text` keep their defaults;
/// unknown keys are rejected.
inline HyperParams parse_params(Algorithm algo, std::string_view text)
{
  std::map<std::string, std::string, std::less<>> kv;
  while (!text.empty())
  {
    auto const comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    auto const eq = item.find('=');
    if (eq == std::string_view::npos)
    {
      throw ParseError("hyperparameters: expected key=value, got '" + std::string(item) + "'");
    }
    kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }

  HyperParams params = default_params(algo);
  auto take          = [&](std::string_view key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end())
    {
      return std::nullopt;
    }
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto bad = [](std::string_view key, std::string const &v) {
    return ParseError("hyperparameter '" + std::string(key) + "': invalid value '" + v + "'");
  };

  std::visit(
      [&](auto &p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticParams>)
        {
          if (auto v = take("C"))
          {
            p.C = detail::parse_real("C", *v);
          }
          if (auto v = take("penalty"))
          {
            if (*v != "l2" && *v != "none")
            {
              throw bad("penalty", *v);
            }
            p.penalty = *v == "l2" ? Penalty::l2 : Penalty::none;
          }
        }
        else if constexpr (std::is_same_v<T, NaiveBayesParams>)
        {
          if (auto v = take("var_smoothing"))
          {
            p.var_smoothing = detail::parse_real("var_smoothing", *v);
          }
        }
        else if constexpr (std::is_same_v<T, KnnParams>)
        {
          if (auto v = take("n_neighbors"))
          {
            p.n_neighbors = detail::parse_count("n_neighbors", *v);
          }
          if (auto v = take("weights"))
          {
            if (*v != "uniform" && *v != "distance")
            {
              throw bad("weights", *v);
            }
            p.weights = *v == "uniform" ? NeighborWeights::uniform : NeighborWeights::distance;
          }
        }
        else if constexpr (std::is_same_v<T, TreeParams>)
        {
          if (auto v = take("criterion"))
          {
            if (*v != "gini" && *v != "entropy")
            {
              throw bad("criterion", *v);
            }
            p.criterion = *v == "gini" ? Criterion::gini : Criterion::entropy;
          }
          if (auto v = take("max_depth"))
          {
            p.max_depth = *v == "none" ? std::nullopt
                                       : std::optional<std::size_t>(detail::parse_count("max_depth", *v));
          }
          if (auto v = take("min_samples_split"))
          {
            p.min_samples_split = detail::parse_count("min_samples_split", *v);
          }
          if (auto v = take("min_samples_leaf"))
          {
            p.min_samples_leaf = detail::parse_count("min_samples_leaf", *v);
          }
        }
        else
        {
          if (auto v = take("n_estimators"))
          {
            p.n_estimators = detail::parse_count("n_estimators", *v);
          }
          if (auto v = take("learning_rate"))
          {
            p.learning_rate = detail::parse_real("learning_rate", *v);
          }
        }
      },
      params);

  if (!kv.empty())
  {
    throw ParseError("hyperparameters: unknown key '" + kv.begin()->first + "' for " +
                     std::string(to_string(algo)));
  }
  return params;
}

/// A fitted classifier. Immutable after train(); safe to share for prediction.
class TrainedModel
{
public:
  using Fitted = std::variant<LogisticModel, GaussianNb, KnnModel, DecisionTree, AdaBoost>;

  TrainedModel(HyperParams params, std::uint64_t seed, Fitted fitted, bool converged,
               std::size_t width)
    : params_(std::move(params))
    , seed_(seed)
    , fitted_(std::move(fitted))
    , converged_(converged)
    , width_(width)
  {}

  Algorithm algorithm() const noexcept
  {
    return algorithm_of(params_);
  }

  HyperParams const &params() const noexcept
  {
    return params_;
  }

  std::uint64_t seed() const noexcept
  {
    return seed_;
  }

  /// False only for an iterative fit that hit its iteration cap.
  bool converged() const noexcept
  {
    return converged_;
  }

  Fitted const &fitted() const noexcept
  {
    return fitted_;
  }

  int predict_row(std::span<double const> row) const
  {
    return std::visit([&](auto const &m) { return m.predict(row); }, fitted_);
  }

  std::vector<int> predict(Matrix const &rows) const
  {
    if (rows.cols() != width_)
    {
      throw InputError("predict: expected rows of width " + std::to_string(width_) + ", got " +
                       std::to_string(rows.cols()));
    }
    std::vector<int> out(rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i)
    {
      out[i] = predict_row(rows.row(i));
    }
    return out;
  }

private:
  HyperParams   params_;
  std::uint64_t seed_;
  Fitted        fitted_;
  bool          converged_;
  std::size_t   width_;
};

/// Fits the algorithm selected by `params`. All five fits are deterministic;
/// `seed` is recorded as metadata.
inline TrainedModel train(HyperParams const &params, LabeledData const &data, std::uint64_t seed)
{
  if (data.size() == 0)
  {
    throw TrainingError("train: empty training set");
  }
  std::size_t const pos = data.positives();
  if (pos == 0 || pos == data.size())
  {
    throw TrainingError("train: training set contains a single class");
  }
  auto const &x = data.features;
  std::span<int const> const y(data.labels);
  bool converged = true;
  TrainedModel::Fitted fitted = std::visit(
      [&](auto const &p) -> TrainedModel::Fitted {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticParams>)
        {
          auto m    = LogisticModel::fit(x, y, p);
          converged = m.converged();
          return m;
        }
        else if constexpr (std::is_same_v<T, NaiveBayesParams>)
        {
          return GaussianNb::fit(x, y, p);
        }
        else if constexpr (std::is_same_v<T, KnnParams>)
        {
          return KnnModel::fit(x, y, p);
        }
        else if constexpr (std::is_same_v<T, TreeParams>)
        {
          return DecisionTree::fit(x, y, p);
        }
        else
        {
          return AdaBoost::fit(x, y, p);
        }
      },
      params);
  return TrainedModel(params, seed, std::move(fitted), converged, x.cols());
}

inline TrainedModel train(Algorithm algo, HyperParams const &params, LabeledData const &data,
                          std::uint64_t seed)
{
  if (algorithm_of(params) != algo)
  {
    throw InputError("train: hyperparameters for " + std::string(to_string(algorithm_of(params))) +
                     " passed to " + std::string(to_string(algo)));
  }
  return train(params, data, seed);
}

inline std::vector<int> predict(TrainedModel const &model, Matrix const &rows)
{
  return model.predict(rows);
}

}  // namespace seedfair::models
