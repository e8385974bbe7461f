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


#include "seedfair/dataset.hpp"
#include "seedfair/errors.hpp"
#include "seedfair/metrics.hpp"
#include "seedfair/models.hpp"
#include "seedfair/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seedfair::tuning {

using models::Algorithm;
using models::HyperParams;

/// Metric maximized by the search.
enum class Optimize
{
  accuracy,
  recall,
  precision
};

inline constexpr std::string_view to_string(Optimize o)
{
  switch (o)
  {
  case Optimize::accuracy:
    return "accuracy";
  case Optimize::recall:
    return "recall";
  case Optimize::precision:
    return "precision";
  }
  return "?";
}

inline Optimize parse_optimize(std::string_view s)
{
  for (Optimize o : {Optimize::accuracy, Optimize::recall, Optimize::precision})
  {
    if (to_string(o) == s)
    {
      return o;
    }
  }
  throw InputError("unknown optimize metric '" + std::string(s) +
                   "' (expected accuracy, recall or precision)");
}

/// One tuning condition. "No tuning" is represented by an empty optional.
struct HptCondition
{
  std::size_t n_iter   = 10;
  Optimize    optimize = Optimize::accuracy;

  bool operator==(HptCondition const &) const = default;
};

/// The six tuned conditions: n_iter in {10, 50} x three metrics.
inline std::vector<HptCondition> standard_conditions()
{
  std::vector<HptCondition> out;
  for (std::size_t n : {10u, 50u})
  {
    for (Optimize o : {Optimize::accuracy, Optimize::precision, Optimize::recall})
    {
      out.push_back({n, o});
    }
  }
  return out;
}

inline double score(metrics::ConfusionMatrix const &cm, Optimize o)
{
  switch (o)
  {
  case Optimize::accuracy:
    return metrics::accuracy_or_zero(cm);
  case Optimize::recall:
    return metrics::recall_or_zero(cm);
  case Optimize::precision:
    return metrics::precision_or_zero(cm);
  }
  return 0.0;
}

/// Finite search space: one list of admissible values per hyperparameter,
/// in format_params syntax. Each candidate draws every axis independently
/// and uniformly.
struct ParamGrid
{
  Algorithm                                                      algorithm;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
};

inline ParamGrid default_grid(Algorithm a)
{
  switch (a)
  {
  case Algorithm::lr:
    return {a, {{"C", {"0.01", "0.1", "1", "10", "100"}}, {"penalty", {"l2", "none"}}}};
  case Algorithm::nb:
    return {a,
            {{"var_smoothing",
              {"1e-09", "1e-08", "1e-07", "1e-06", "1e-05", "0.0001", "0.001", "0.01", "0.1", "0.5", "1"}}}};
  case Algorithm::knn:
    return {a,
            {{"n_neighbors", {"3", "5", "7", "9", "11", "13", "15", "17", "19", "21", "23", "25"}},
             {"weights", {"uniform", "distance"}}}};
  case Algorithm::dt:
    return {a,
            {{"criterion", {"gini", "entropy"}},
             {"max_depth",
              {"2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "none"}},
             {"min_samples_split", {"2", "5", "10", "20"}},
             {"min_samples_leaf", {"1", "2", "4", "8"}}}};
  case Algorithm::ada:
    return {a,
            {{"n_estimators", {"10", "25", "50", "75", "100", "150", "200", "250", "300"}},
             {"learning_rate", {"0.01", "0.05", "0.1", "0.2", "0.5", "1", "1.5", "2"}}}};
  }
  throw InputError("default_grid: invalid algorithm");
}

inline HyperParams sample_candidate(ParamGrid const &grid, Rng &rng)
{
  std::string text;
  for (auto const &[key, values] : grid.axes)
  {
    if (values.empty())
    {
      throw InputError("search grid axis '" + key + "' has no values");
    }
    if (!text.empty())
    {
      text += ',';
    }
    text += key + '=' + values[rng.uniform_index(values.size())];
  }
  return models::parse_params(grid.algorithm, text);
}

struct SearchOptions
{
  bool                       fix_imbalance = false;
  dataset::OversampleMethod  oversample    = dataset::OversampleMethod::smote;
  std::optional<ParamGrid>   grid;  ///< defaults to default_grid(algorithm)
};

struct ScoredCandidate
{
  HyperParams params;
  double      cv_score;
};

struct SearchResult
{
  HyperParams                  best;
  double                       best_score = 0.0;
  std::vector<ScoredCandidate> evaluated;  ///< in sampling order
};

/// Cross-validation folds materialized once and shared by every candidate.
/// When imbalance fixing is on, each fold's training part is oversampled
/// independently; validation folds are never augmented.
class CrossValidation
{
public:
  CrossValidation(LabeledData const &train, dataset::FoldAssignment const &folds,
                  std::uint64_t seed, SearchOptions const &options)
  {
    if (folds.fold_of_row.size() != train.size())
    {
      throw InputError("cross-validation: fold assignment does not match the training rows");
    }
    for (std::size_t f = 0; f < folds.k; ++f)
    {
      auto const fit_rows = folds.complement(f);
      auto const val_rows = folds.members(f);
      LabeledData fit     = train.subset(fit_rows);
      if (options.fix_imbalance)
      {
        std::size_t const pos = fit.positives();
        if (pos > 0 && pos < fit.size())
        {
          fit = dataset::oversample_minority(fit, stream_seed(seed, "cv-oversample", f),
                                             options.oversample);
        }
      }
      fit_.push_back(std::move(fit));
      validate_.push_back(train.subset(val_rows));
    }
  }

  /// Mean over folds of the metric on the held-out fold. A fold whose fit
  /// fails or whose metric is undefined contributes 0.
  double evaluate(HyperParams const &params, Optimize optimize) const
  {
    double total = 0.0;
    for (std::size_t f = 0; f < fit_.size(); ++f)
    {
      try
      {
        auto const model = models::train(params, fit_[f], 0);
        auto const pred  = model.predict(validate_[f].features);
        total += score(metrics::confusion_from_labels(validate_[f].labels, pred), optimize);
      }
      catch (TrainingError const &)
      {
      }
    }
    return total / static_cast<double>(fit_.size());
  }

private:
  std::vector<LabeledData> fit_;
  std::vector<LabeledData> validate_;
};

/// Random search over the algorithm's grid. The best mean cross-validated
/// score wins, earliest candidate on ties. The result is returned even when
/// it would score below the untuned defaults.
inline SearchResult random_search(Algorithm algo, LabeledData const &train,
                                  dataset::FoldAssignment const &folds, HptCondition cond,
                                  std::uint64_t seed, SearchOptions const &options = {})
{
  if (cond.n_iter == 0)
  {
    throw InputError("random_search: n_iter must be >= 1");
  }
  ParamGrid const grid = options.grid ? *options.grid : default_grid(algo);
  if (grid.algorithm != algo)
  {
    throw InputError("random_search: grid is for a different algorithm");
  }
  CrossValidation const cv(train, folds, seed, options);
  Rng rng(seed, "hpt");

  SearchResult result{models::default_params(algo), 0.0, {}};
  std::map<std::string, double> seen;
  for (std::size_t i = 0; i < cond.n_iter; ++i)
  {
    HyperParams candidate = sample_candidate(grid, rng);
    auto [it, fresh]      = seen.try_emplace(models::format_params(candidate), 0.0);
    if (fresh)
    {
      it->second = cv.evaluate(candidate, cond.optimize);
    }
    double const s = it->second;
    if (i == 0 || s > result.best_score)
    {
      result.best       = candidate;
      result.best_score = s;
    }
    result.evaluated.push_back({std::move(candidate), s});
  }
  return result;
}

}  // namespace seedfair::tuning
