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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace seedfair::metrics {

/// Binary confusion counts for the positive (diabetic, label 1) class.
struct ConfusionMatrix
{
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept
  {
    return tp + fp + fn + tn;
  }

  bool operator==(ConfusionMatrix const &) const = default;
};

inline ConfusionMatrix confusion_from_labels(std::span<int const> actual, std::span<int const> predicted)
{
  if (actual.size() != predicted.size())
  {
    throw InputError("confusion_from_labels: length mismatch (" + std::to_string(actual.size()) +
                     " actual vs " + std::to_string(predicted.size()) + " predicted)");
  }
  if (actual.empty())
  {
    throw InputError("confusion_from_labels: empty label lists");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i)
  {
    int const a = actual[i];
    int const p = predicted[i];
    if ((a != 0 && a != 1) || (p != 0 && p != 1))
    {
      throw InputError("confusion_from_labels: non-binary label at index " + std::to_string(i));
    }
    if (a == 1)
    {
      (p == 1 ? cm.tp : cm.fn) += 1;
    }
    else
    {
      (p == 1 ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

inline double recall(ConfusionMatrix const &cm)
{
  if (cm.tp + cm.fn == 0)
  {
    throw UndefinedMetric("recall: no actual positives");
  }
  return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

inline double precision(ConfusionMatrix const &cm)
{
  if (cm.tp + cm.fp == 0)
  {
    throw UndefinedMetric("precision: no predicted positives");
  }
  return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
}

/// Harmonic mean of precision and recall.
///
/// When tp = 0 but positives exist among the actual or predicted labels the
/// score is 0 (e.g. a classifier that never predicts the positive class).
/// Only a matrix with no positives anywhere is undefined.
inline double f1_score(ConfusionMatrix const &cm)
{
  if (cm.tp == 0)
  {
    if (cm.fp + cm.fn == 0)
    {
      throw UndefinedMetric("f1_score: no actual or predicted positives");
    }
    return 0.0;
  }
  double const p = precision(cm);
  double const r = recall(cm);
  return 2.0 * (p * r) / (p + r);
}

inline double accuracy(ConfusionMatrix const &cm)
{
  if (cm.total() == 0)
  {
    throw InputError("accuracy: empty confusion matrix");
  }
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

// Zero-for-undefined variants, used where a metric must always be reported
// (persisted run records, cross-validation scoring).

inline double recall_or_zero(ConfusionMatrix const &cm) noexcept
{
  return cm.tp + cm.fn == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

inline double precision_or_zero(ConfusionMatrix const &cm) noexcept
{
  return cm.tp + cm.fp == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
}

inline double f1_or_zero(ConfusionMatrix const &cm) noexcept
{
  return cm.tp == 0 ? 0.0 : f1_score(cm);
}

inline double accuracy_or_zero(ConfusionMatrix const &cm) noexcept
{
  return cm.total() == 0 ? 0.0 : accuracy(cm);
}

}  // namespace seedfair::metrics
