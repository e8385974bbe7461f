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
#include "seedfair/rng.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace seedfair::dataset {

/// The PID table: eight risk-factor columns in canonical order plus the
/// binary outcome (1 = diabetic) as the label vector.
using Dataset = LabeledData;

inline constexpr std::size_t kFeatureCount = 8;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "Pregnancies", "Glucose", "BloodPressure", "SkinThickness",
    "Insulin",     "BMI",     "DiabetesPedigreeFunction", "Age"};

inline constexpr std::string_view kOutcomeName = "Outcome";

namespace detail {

inline std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true)
  {
    auto const pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
    if (pos == std::string_view::npos)
    {
      break;
    }
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> parse_real(std::string_view cell)
{
  if (cell.empty())
  {
    return std::nullopt;
  }
  if (cell.front() == '+')
  {
    cell.remove_prefix(1);
  }
  double value{};
  auto const [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value))
  {
    return std::nullopt;
  }
  return value;
}

}  // namespace detail

/// Parses PID CSV text. Columns are located by header name, so any column
/// order is accepted; extra columns are ignored. No imputation is performed.
inline Dataset parse_csv(std::istream &in, std::string const &source = "<stream>")
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw ParseError(source + ": missing header row");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
  {
    line.erase(0, 3);
  }
  auto const header = detail::split_commas(line);

  std::array<std::size_t, kFeatureCount + 1> column_of{};
  for (std::size_t c = 0; c <= kFeatureCount; ++c)
  {
    std::string_view const name = c < kFeatureCount ? kFeatureNames[c] : kOutcomeName;
    auto const it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
    {
      throw ParseError(source + ": missing column '" + std::string(name) + "'");
    }
    column_of[c] = static_cast<std::size_t>(it - header.begin());
  }

  Dataset ds{Matrix(kFeatureCount), {}};
  std::array<double, kFeatureCount> values{};
  std::size_t line_no = 1;
  while (std::getline(in, line))
  {
    ++line_no;
    if (detail::trim(line).empty())
    {
      continue;
    }
    auto const cells = detail::split_commas(line);
    if (cells.size() != header.size())
    {
      throw ParseError(source + ": row " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header.size()));
    }
    for (std::size_t c = 0; c <= kFeatureCount; ++c)
    {
      std::string_view const name = c < kFeatureCount ? kFeatureNames[c] : kOutcomeName;
      auto const value = detail::parse_real(cells[column_of[c]]);
      if (!value)
      {
        throw ParseError(source + ": row " + std::to_string(line_no) + " column '" +
                         std::string(name) + "': non-numeric cell '" +
                         std::string(cells[column_of[c]]) + "'");
      }
      if (c < kFeatureCount)
      {
        values[c] = *value;
      }
      else if (*value != 0.0 && *value != 1.0)
      {
        throw ParseError(source + ": row " + std::to_string(line_no) + " column 'Outcome': value " +
                         std::string(cells[column_of[c]]) + " is not 0 or 1");
      }
      else
      {
        ds.labels.push_back(static_cast<int>(*value));
      }
    }
    ds.features.append_row(values);
  }
  return ds;
}

inline Dataset load_csv(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ParseError("cannot open '" + path + "'");
  }
  return parse_csv(in, path);
}

// ---------------------------------------------------------------------------
// Table 1 comparison

enum class Statistic
{
  mean,
  sd,
  min,
  median,
  max
};

inline constexpr std::string_view to_string(Statistic s)
{
  switch (s)
  {
  case Statistic::mean:
    return "mean";
  case Statistic::sd:
    return "sd";
  case Statistic::min:
    return "min";
  case Statistic::median:
    return "median";
  case Statistic::max:
    return "max";
  }
  return "?";
}

/// One published descriptive statistic of the canonical PID table.
struct ReferenceStat
{
  std::string_view column;
  Statistic        statistic;
  double           expected;
  int              printed_decimals;
  double           tolerance;
};

/// Published reference statistics (sample SD, n - 1 denominator).
inline std::vector<ReferenceStat> reference_statistics()
{
  struct Row
  {
    std::string_view      column;
    std::array<double, 5> value;
    std::array<int, 5>    decimals;
  };
  static constexpr Row rows[] = {
      {"Pregnancies", {3.85, 3.37, 0, 3, 17}, {2, 2, 0, 0, 0}},
      {"Glucose", {120.89, 31.97, 0, 117, 199}, {2, 2, 0, 0, 0}},
      {"BloodPressure", {69.11, 19.36, 0, 72, 122}, {2, 2, 0, 0, 0}},
      {"SkinThickness", {20.54, 15.95, 0, 23, 99}, {2, 2, 0, 0, 0}},
      {"Insulin", {79.80, 115.24, 0, 31, 846}, {2, 2, 0, 0, 0}},
      {"BMI", {32.0, 7.9, 0.0, 32.0, 67.1}, {1, 1, 1, 1, 1}},
      {"DiabetesPedigreeFunction", {0.47, 0.33, 0.08, 0.37, 2.42}, {2, 2, 2, 2, 2}},
      {"Age", {33.24, 11.76, 21, 29, 81}, {2, 2, 0, 0, 0}},
      {"Outcome", {0.35, 0.48, 0, 0, 1}, {2, 2, 0, 0, 0}},
  };
  static constexpr Statistic order[] = {Statistic::mean, Statistic::sd, Statistic::min,
                                        Statistic::median, Statistic::max};
  std::vector<ReferenceStat> out;
  for (auto const &r : rows)
  {
    for (std::size_t s = 0; s < 5; ++s)
    {
      double tol = r.column == "BMI" ? 0.1 : 0.01;
      if (r.column == "Outcome" && order[s] == Statistic::mean)
      {
        tol = 0.005;
      }
      out.push_back({r.column, order[s], r.value[s], r.decimals[s], tol});
    }
  }
  return out;
}

struct StatCheck
{
  ReferenceStat         reference;
  std::optional<double> actual;  ///< nullopt when the column is empty
  bool                  passed = false;
};

struct ValidationReport
{
  std::vector<StatCheck> checks;

  bool all_passed() const noexcept
  {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](StatCheck const &c) { return c.passed; });
  }
};

/// mean, sample SD, min, median, max of one column.
inline std::array<double, 5> describe(std::span<double const> values)
{
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double const n    = static_cast<double>(v.size());
  double const mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v)
  {
    ss += (x - mean) * (x - mean);
  }
  double const sd     = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::size_t const h = v.size() / 2;
  double const median = v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  return {mean, sd, v.front(), median, v.back()};
}

/// A value agrees with a printed reference when it lies within the absolute
/// tolerance, or when it rounds (half away from zero) to the printed digits.
inline bool matches_printed(double actual, ReferenceStat const &ref)
{
  if (std::abs(actual - ref.expected) <= ref.tolerance + 1e-12)
  {
    return true;
  }
  double const scale   = std::pow(10.0, ref.printed_decimals);
  double const rounded = std::round(actual * scale) / scale;
  return std::abs(rounded - ref.expected) < 1e-9;
}

inline ValidationReport validate_against_table1(Dataset const &ds)
{
  ValidationReport report;
  std::array<std::array<double, 5>, kFeatureCount + 1> stats{};
  bool const evaluable = ds.size() > 0;
  if (evaluable)
  {
    std::vector<double> column(ds.size());
    for (std::size_t c = 0; c <= kFeatureCount; ++c)
    {
      for (std::size_t i = 0; i < ds.size(); ++i)
      {
        column[i] = c < kFeatureCount ? ds.features(i, c) : static_cast<double>(ds.labels[i]);
      }
      stats[c] = describe(column);
    }
  }
  for (auto const &ref : reference_statistics())
  {
    StatCheck check{ref, std::nullopt, false};
    if (evaluable)
    {
      auto const name_it = std::find(kFeatureNames.begin(), kFeatureNames.end(), ref.column);
      std::size_t const c =
          name_it == kFeatureNames.end() ? kFeatureCount
                                         : static_cast<std::size_t>(name_it - kFeatureNames.begin());
      check.actual = stats[c][static_cast<std::size_t>(ref.statistic)];
      check.passed = matches_printed(*check.actual, ref);
    }
    report.checks.push_back(check);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Partitioning

/// Disjoint train/test row indices, each sorted ascending.
struct SplitIndices
{
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;

  bool operator==(SplitIndices const &) const = default;
};

/// Train-partition size: floor(fraction * n).
inline std::size_t train_size_for(std::size_t n, double train_fraction)
{
  return static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));
}

/// Random train/test split driven only by `seed` (and the row count and
/// stratification flag). The stratified variant shuffles each class
/// separately and keeps round(positives * n_train / n) positives for training.
inline SplitIndices seeded_split(std::span<int const> outcome, std::uint64_t seed,
                                 double train_fraction = 0.7, bool stratified = true)
{
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
  {
    throw InputError("seeded_split: train_fraction must lie in (0, 1), got " +
                     std::to_string(train_fraction));
  }
  std::size_t const n       = outcome.size();
  std::size_t const n_train = train_size_for(n, train_fraction);
  Rng rng(seed, "split");

  SplitIndices split;
  if (!stratified)
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
    split.train_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  }
  else
  {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i)
    {
      (outcome[i] == 1 ? pos : neg).push_back(i);
    }
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));

    double const ideal = n == 0 ? 0.0
                                : static_cast<double>(pos.size()) * static_cast<double>(n_train) /
                                      static_cast<double>(n);
    std::size_t n_pos = static_cast<std::size_t>(std::floor(ideal + 0.5));
    n_pos             = std::min(n_pos, pos.size());
    if (n_train - n_pos > neg.size())
    {
      n_pos = n_train - neg.size();
    }
    std::size_t const n_neg = n_train - n_pos;

    split.train_rows.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n_pos));
    split.train_rows.insert(split.train_rows.end(), neg.begin(),
                            neg.begin() + static_cast<std::ptrdiff_t>(n_neg));
    split.test_rows.assign(pos.begin() + static_cast<std::ptrdiff_t>(n_pos), pos.end());
    split.test_rows.insert(split.test_rows.end(), neg.begin() + static_cast<std::ptrdiff_t>(n_neg),
                           neg.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  return split;
}

enum class FoldStrategy
{
  kfold,
  stratified
};

inline constexpr std::string_view to_string(FoldStrategy f)
{
  return f == FoldStrategy::kfold ? "kfold" : "stratifiedkfold";
}

inline FoldStrategy parse_fold_strategy(std::string_view s)
{
  if (s == "kfold")
  {
    return FoldStrategy::kfold;
  }
  if (s == "stratifiedkfold" || s == "stratified")
  {
    return FoldStrategy::stratified;
  }
  throw InputError("unknown fold strategy '" + std::string(s) + "' (expected kfold or stratifiedkfold)");
}

/// Cross-validation fold id of every training row.
struct FoldAssignment
{
  std::size_t              k = 0;
  std::vector<std::size_t> fold_of_row;

  /// Row positions belonging to fold `f` (validation part).
  std::vector<std::size_t> members(std::size_t f) const
  {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of_row.size(); ++i)
    {
      if (fold_of_row[i] == f)
      {
        out.push_back(i);
      }
    }
    return out;
  }

  /// Row positions outside fold `f` (training part).
  std::vector<std::size_t> complement(std::size_t f) const
  {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of_row.size(); ++i)
    {
      if (fold_of_row[i] != f)
      {
        out.push_back(i);
      }
    }
    return out;
  }

  bool operator==(FoldAssignment const &) const = default;
};

/// Shuffled k-fold assignment. Plain folds take contiguous chunks of a
/// shuffled order, the first n % k folds one row larger. Stratified folds
/// deal shuffled positives then shuffled negatives round-robin, which balances
/// both the per-fold class counts and the fold sizes.
inline FoldAssignment kfold_indices(std::size_t n_train, std::size_t k, FoldStrategy strategy,
                                    std::span<int const> outcome, std::uint64_t seed)
{
  if (k < 2)
  {
    throw InputError("kfold_indices: k must be >= 2, got " + std::to_string(k));
  }
  if (k > n_train)
  {
    throw InputError("kfold_indices: k = " + std::to_string(k) + " exceeds " +
                     std::to_string(n_train) + " training rows");
  }
  Rng rng(seed, "kfold");
  FoldAssignment folds{k, std::vector<std::size_t>(n_train, 0)};

  if (strategy == FoldStrategy::kfold)
  {
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));
    std::size_t const base  = n_train / k;
    std::size_t const extra = n_train % k;
    std::size_t pos         = 0;
    for (std::size_t f = 0; f < k; ++f)
    {
      std::size_t const size = base + (f < extra ? 1 : 0);
      for (std::size_t j = 0; j < size; ++j)
      {
        folds.fold_of_row[order[pos++]] = f;
      }
    }
    return folds;
  }

  if (outcome.size() != n_train)
  {
    throw InputError("kfold_indices: stratified folds need one outcome per training row");
  }
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < n_train; ++i)
  {
    (outcome[i] == 1 ? pos : neg).push_back(i);
  }
  rng.shuffle(std::span(pos));
  rng.shuffle(std::span(neg));
  std::size_t dealt = 0;
  for (std::size_t i : pos)
  {
    folds.fold_of_row[i] = dealt++ % k;
  }
  for (std::size_t i : neg)
  {
    folds.fold_of_row[i] = dealt++ % k;
  }
  return folds;
}

// ---------------------------------------------------------------------------
// Minority oversampling

enum class OversampleMethod
{
  smote,
  duplicate
};

/// Balances the classes by appending synthetic minority rows after the
/// original rows. SMOTE draws a random minority row, one of its k nearest
/// minority neighbours (Euclidean, ties to the lower index) and a uniform gap
/// in [0, 1), and interpolates. Falls back to duplication when the minority
/// class has a single row.
inline LabeledData oversample_minority(LabeledData const &train, std::uint64_t seed,
                                       OversampleMethod method = OversampleMethod::smote,
                                       std::size_t k_neighbors = 5)
{
  std::size_t const n_pos = train.positives();
  std::size_t const n_neg = train.size() - n_pos;
  if (n_pos == 0 || n_neg == 0)
  {
    throw InputError("oversample_minority: training data must contain both classes");
  }
  if (n_pos == n_neg)
  {
    return train;
  }
  int const minority_label = n_pos < n_neg ? 1 : 0;
  std::size_t const deficit = n_pos < n_neg ? n_neg - n_pos : n_pos - n_neg;

  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < train.size(); ++i)
  {
    if (train.labels[i] == minority_label)
    {
      minority.push_back(i);
    }
  }

  LabeledData out = train;
  out.features.reserve_rows(train.size() + deficit);
  out.labels.reserve(train.size() + deficit);
  Rng rng(seed, "oversample");

  std::size_t const k = std::min(k_neighbors, minority.size() - 1);
  if (method == OversampleMethod::duplicate || k == 0)
  {
    for (std::size_t s = 0; s < deficit; ++s)
    {
      std::size_t const src = minority[rng.uniform_index(minority.size())];
      std::vector<double> const copy(train.features.row(src).begin(), train.features.row(src).end());
      out.features.append_row(copy);
      out.labels.push_back(minority_label);
    }
    return out;
  }

  std::size_t const m    = minority.size();
  std::size_t const cols = train.features.cols();
  std::vector<std::vector<std::size_t>> neighbours(m);
  std::vector<std::pair<double, std::size_t>> dist(m);
  for (std::size_t a = 0; a < m; ++a)
  {
    auto const ra = train.features.row(minority[a]);
    for (std::size_t b = 0; b < m; ++b)
    {
      double d = 0.0;
      if (a == b)
      {
        d = std::numeric_limits<double>::infinity();
      }
      else
      {
        auto const rb = train.features.row(minority[b]);
        for (std::size_t j = 0; j < cols; ++j)
        {
          d += (ra[j] - rb[j]) * (ra[j] - rb[j]);
        }
      }
      dist[b] = {d, b};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t j = 0; j < k; ++j)
    {
      neighbours[a].push_back(dist[j].second);
    }
  }

  std::vector<double> synthetic(cols);
  for (std::size_t s = 0; s < deficit; ++s)
  {
    std::size_t const base  = rng.uniform_index(m);
    std::size_t const other = neighbours[base][rng.uniform_index(k)];
    double const gap        = rng.uniform01();
    auto const x = train.features.row(minority[base]);
    auto const y = train.features.row(minority[other]);
    for (std::size_t j = 0; j < cols; ++j)
    {
      synthetic[j] = x[j] + gap * (y[j] - x[j]);
    }
    out.features.append_row(synthetic);
    out.labels.push_back(minority_label);
  }
  return out;
}

}  // namespace seedfair::dataset
