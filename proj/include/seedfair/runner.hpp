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
#include "seedfair/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace seedfair::runner {

inline constexpr char const *kToolkitVersion = "0.1.0";

using dataset::FoldStrategy;
using models::Algorithm;
using tuning::HptCondition;

/// Parses "none" or "<n_iter>:<metric>", e.g. "50:accuracy".
inline std::optional<HptCondition> parse_hpt_condition(std::string_view s)
{
  if (s == "none")
  {
    return std::nullopt;
  }
  auto const colon = s.find(':');
  if (colon == std::string_view::npos)
  {
    throw InputError("bad tuning condition '" + std::string(s) + "' (expected none or N:metric)");
  }
  std::size_t n_iter = 0;
  auto const digits  = s.substr(0, colon);
  auto const [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n_iter);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n_iter == 0)
  {
    throw InputError("bad tuning iteration count in '" + std::string(s) + "'");
  }
  return HptCondition{n_iter, tuning::parse_optimize(s.substr(colon + 1))};
}

/// Everything a run depends on except the seed.
struct Condition
{
  Algorithm                   algorithm     = Algorithm::lr;
  FoldStrategy                fold_strategy = FoldStrategy::stratified;
  bool                        fix_imbalance = false;
  std::optional<HptCondition> hpt;

  bool operator==(Condition const &) const = default;

  /// Canonical text form, e.g. "ada|kfold|imbalance=true|hpt=50:accuracy".
  std::string key() const
  {
    std::string k = std::string(models::to_string(algorithm)) + '|' +
                    std::string(dataset::to_string(fold_strategy)) +
                    (fix_imbalance ? "|imbalance=true" : "|imbalance=false") + "|hpt=";
    k += hpt ? std::to_string(hpt->n_iter) + ':' + std::string(tuning::to_string(hpt->optimize)) : "none";
    return k;
  }
};

/// One cell of the experiment grid.
struct RunConfig
{
  std::uint64_t seed = 0;
  Condition     condition;

  bool operator==(RunConfig const &) const = default;

  std::string key() const
  {
    return "seed=" + std::to_string(seed) + '|' + condition.key();
  }
};

/// Result of one run, or the error that stopped it.
struct RunRecord
{
  RunConfig                  config;
  metrics::ConfusionMatrix   confusion;
  double                     f1        = 0.0;
  double                     precision = 0.0;
  double                     recall    = 0.0;
  double                     accuracy  = 0.0;
  std::string                hyperparams;  ///< models::format_params of the fitted parameters
  std::size_t                train_size = 0;
  std::size_t                test_size  = 0;
  double                     wall_time_s = 0.0;
  std::string                toolkit_version = kToolkitVersion;
  std::optional<std::string> error;  ///< "kind: message" for failed runs

  bool ok() const noexcept
  {
    return !error.has_value();
  }

  bool operator==(RunRecord const &) const = default;
};

/// Sets the four metrics from the confusion counts. Undefined precision or
/// recall are reported as 0, and so is F1 when there is no true positive.
inline void assign_metrics(RunRecord &r)
{
  r.f1        = metrics::f1_or_zero(r.confusion);
  r.precision = metrics::precision_or_zero(r.confusion);
  r.recall    = metrics::recall_or_zero(r.confusion);
  r.accuracy  = metrics::accuracy_or_zero(r.confusion);
}

inline std::vector<RunConfig> enumerate_grid(std::vector<std::uint64_t> const &seeds,
                                             std::vector<Algorithm> const &algorithms,
                                             std::vector<FoldStrategy> const &folds,
                                             std::vector<bool> const &imbalance,
                                             std::vector<std::optional<HptCondition>> const &hpt)
{
  if (seeds.empty() || algorithms.empty() || folds.empty() || imbalance.empty() || hpt.empty())
  {
    throw InputError("enumerate_grid: every condition set must be non-empty");
  }
  std::vector<RunConfig> out;
  out.reserve(seeds.size() * algorithms.size() * folds.size() * imbalance.size() * hpt.size());
  for (auto seed : seeds)
  {
    for (auto algo : algorithms)
    {
      for (auto fold : folds)
      {
        for (bool imb : imbalance)
        {
          for (auto const &h : hpt)
          {
            out.push_back({seed, {algo, fold, imb, h}});
          }
        }
      }
    }
  }
  return out;
}

struct RunOptions
{
  double                    train_fraction   = 0.7;
  bool                      stratified_split = true;
  std::size_t               cv_folds         = 10;
  dataset::OversampleMethod oversample       = dataset::OversampleMethod::smote;
  bool                      record_wall_time = false;  ///< off keeps record files reproducible
};

/// Stream context for everything a run draws besides the split, so two
/// conditions sharing a seed still use independent fold, oversampling and
/// search streams. The split itself depends on the seed alone.
inline std::uint64_t condition_context(Condition const &c)
{
  return hash_tag(c.key());
}

/// Split -> optional oversampling of the train part -> optional random search
/// over CV folds of the train part -> fit on the full train part -> score on
/// the untouched test part.
inline RunRecord execute_run(dataset::Dataset const &ds, RunConfig const &config,
                             RunOptions const &options = {})
{
  auto const started = std::chrono::steady_clock::now();
  RunRecord record;
  record.config = config;

  auto const &cond = config.condition;
  auto const split = dataset::seeded_split(ds.labels, config.seed, options.train_fraction,
                                           options.stratified_split);
  {
    std::vector<std::size_t> overlap;
    std::set_intersection(split.train_rows.begin(), split.train_rows.end(), split.test_rows.begin(),
                          split.test_rows.end(), std::back_inserter(overlap));
    if (!overlap.empty() || split.train_rows.size() + split.test_rows.size() != ds.size())
    {
      throw Error("internal: train/test partition is not disjoint and exhaustive");
    }
  }
  LabeledData const train = ds.subset(split.train_rows);
  LabeledData const test  = ds.subset(split.test_rows);
  record.train_size       = train.size();
  record.test_size        = test.size();

  std::uint64_t const context = condition_context(cond);
  models::HyperParams params  = models::default_params(cond.algorithm);
  if (cond.hpt)
  {
    auto const folds = dataset::kfold_indices(train.size(), options.cv_folds, cond.fold_strategy,
                                              train.labels, stream_seed(config.seed, "cv", context));
    tuning::SearchOptions search;
    search.fix_imbalance = cond.fix_imbalance;
    search.oversample    = options.oversample;
    params = tuning::random_search(cond.algorithm, train, folds, *cond.hpt,
                                   stream_seed(config.seed, "search", context), search)
                 .best;
  }

  LabeledData const fit_set =
      cond.fix_imbalance
          ? dataset::oversample_minority(train, stream_seed(config.seed, "oversample", context),
                                         options.oversample)
          : train;
  auto const model     = models::train(params, fit_set, config.seed);
  auto const predicted = model.predict(test.features);

  record.confusion   = metrics::confusion_from_labels(test.labels, predicted);
  record.hyperparams = models::format_params(params);
  assign_metrics(record);
  if (options.record_wall_time)
  {
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    record.wall_time_s = std::round(secs * 1e6) / 1e6;
  }
  return record;
}

/// Runs that throw become error records carrying the config and error class.
inline RunRecord execute_run_captured(dataset::Dataset const &ds, RunConfig const &config,
                                      RunOptions const &options = {})
{
  try
  {
    return execute_run(ds, config, options);
  }
  catch (Error const &e)
  {
    RunRecord r;
    r.config = config;
    r.error  = std::string(e.kind()) + ": " + e.what();
    return r;
  }
  catch (std::exception const &e)
  {
    RunRecord r;
    r.config = config;
    r.error  = std::string("internal: ") + e.what();
    return r;
  }
}

/// Executes every config on `workers` threads. Output order equals input
/// order whatever the scheduling.
inline std::vector<RunRecord> execute_grid(dataset::Dataset const &ds,
                                           std::vector<RunConfig> const &configs,
                                           std::size_t workers = 1, RunOptions const &options = {},
                                           std::function<void(std::size_t)> const &progress = {})
{
  std::vector<RunRecord> out(configs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++)
    {
      out[i] = execute_run_captured(ds, configs[i], options);
      std::size_t const finished = ++done;
      if (progress)
      {
        std::lock_guard lock(progress_mutex);
        progress(finished);
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, configs.size()));
  if (workers == 1)
  {
    work();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back(work);
  }
  pool.clear();
  return out;
}

/// Run records keyed by config; lets samplers reuse earlier results.
class RecordStore
{
public:
  RecordStore() = default;

  explicit RecordStore(std::vector<RunRecord> const &records)
  {
    for (auto const &r : records)
    {
      insert(r);
    }
  }

  RecordStore(RecordStore &&other)
  {
    std::lock_guard lock(other.mutex_);
    records_ = std::move(other.records_);
  }

  RecordStore &operator=(RecordStore &&other)
  {
    if (this != &other)
    {
      std::scoped_lock lock(mutex_, other.mutex_);
      records_ = std::move(other.records_);
    }
    return *this;
  }

  void insert(RunRecord const &r)
  {
    std::lock_guard lock(mutex_);
    records_.insert_or_assign(r.config.key(), r);
  }

  std::optional<RunRecord> find(RunConfig const &c) const
  {
    std::lock_guard lock(mutex_);
    auto it = records_.find(c.key());
    if (it == records_.end())
    {
      return std::nullopt;
    }
    return it->second;
  }

  /// Successful records of one condition, in seed order.
  std::vector<RunRecord> of_condition(Condition const &cond) const
  {
    std::lock_guard lock(mutex_);
    std::vector<RunRecord> out;
    for (auto const &[key, r] : records_)
    {
      if (r.ok() && r.config.condition == cond)
      {
        out.push_back(r);
      }
    }
    std::sort(out.begin(), out.end(),
              [](RunRecord const &a, RunRecord const &b) { return a.config.seed < b.config.seed; });
    return out;
  }

  std::size_t size() const
  {
    std::lock_guard lock(mutex_);
    return records_.size();
  }

private:
  mutable std::mutex               mutex_;
  std::map<std::string, RunRecord> records_;
};

/// Observation source for the planner: the test F1 of the fixed condition at
/// seeds 0, 1, 2, ... in order. Stored records are reused; new runs are added
/// to the store. A failed run throws.
class ConditionSampler
{
public:
  ConditionSampler(dataset::Dataset const &ds, Condition condition, RecordStore &store,
                   RunOptions options = {})
    : ds_(&ds)
    , condition_(std::move(condition))
    , store_(&store)
    , options_(options)
  {}

  double operator()()
  {
    RunConfig const config{next_seed_++, condition_};
    auto record = store_->find(config);
    if (!record)
    {
      record = execute_run_captured(*ds_, config, options_);
      store_->insert(*record);
      ++fresh_runs_;
    }
    if (!record->ok())
    {
      throw Error("run " + config.key() + " failed: " + *record->error);
    }
    return record->f1;
  }

  std::uint64_t next_seed() const noexcept
  {
    return next_seed_;
  }

  std::size_t fresh_runs() const noexcept
  {
    return fresh_runs_;
  }

private:
  dataset::Dataset const *ds_;
  Condition               condition_;
  RecordStore            *store_;
  RunOptions              options_;
  std::uint64_t           next_seed_  = 0;
  std::size_t             fresh_runs_ = 0;
};

}  // namespace seedfair::runner
