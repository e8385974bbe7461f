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
#include "seedfair/planner.hpp"
#include "seedfair/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace seedfair::report {

using runner::RunRecord;

/// F1 values of the successful records, in record order.
inline std::vector<double> f1_values(std::span<RunRecord const> records)
{
  std::vector<double> out;
  out.reserve(records.size());
  for (auto const &r : records)
  {
    if (r.ok())
    {
      out.push_back(r.f1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Histogram

struct Histogram
{
  double                   bin_width = 0.0;
  std::vector<double>      edges;   ///< bins.size() + 1 edges over [0, 1]
  std::vector<std::size_t> counts;  ///< bin i is [edges[i], edges[i+1]); the last bin includes 1
  std::size_t              n    = 0;
  double                   mean = 0.0;
  double                   sd   = 0.0;  ///< sample SD (n - 1)
};

/// Bins the F1 values over [0, 1] and reports their grand mean and SD
/// (Welford's streaming update, record order).
inline Histogram histogram(std::span<RunRecord const> records, double bin_width = 0.02)
{
  if (!(bin_width > 0.0 && bin_width <= 1.0))
  {
    throw InputError("histogram: bin width must lie in (0, 1]");
  }
  auto const values = f1_values(records);
  if (values.empty())
  {
    throw InputError("histogram: no successful records");
  }
  Histogram h;
  h.bin_width = bin_width;
  auto const bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  for (std::size_t i = 0; i <= bins; ++i)
  {
    h.edges.push_back(std::min(1.0, static_cast<double>(i) * bin_width));
  }
  h.counts.assign(bins, 0);

  double m2 = 0.0;
  for (double v : values)
  {
    auto const upper = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    auto idx = static_cast<std::ptrdiff_t>(upper - h.edges.begin()) - 1;
    idx      = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    h.counts[static_cast<std::size_t>(idx)] += 1;

    h.n += 1;
    double const delta = v - h.mean;
    h.mean += delta / static_cast<double>(h.n);
    m2 += delta * (v - h.mean);
  }
  h.sd = h.n > 1 ? std::sqrt(m2 / static_cast<double>(h.n - 1)) : 0.0;
  return h;
}

// ---------------------------------------------------------------------------
// Subgroup statistics

enum class GroupBy
{
  seed,
  algorithm,
  hpt
};

inline GroupBy parse_group_by(std::string const &s)
{
  if (s == "seed")
  {
    return GroupBy::seed;
  }
  if (s == "algo" || s == "algorithm")
  {
    return GroupBy::algorithm;
  }
  if (s == "hpt")
  {
    return GroupBy::hpt;
  }
  throw InputError("unknown grouping '" + s + "' (expected seed, algo or hpt)");
}

/// Sortable group key; `label` is what tables print.
struct GroupKey
{
  std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> order;
  std::string label;

  bool operator<(GroupKey const &o) const
  {
    return order < o.order;
  }
};

inline GroupKey group_key(RunRecord const &r, GroupBy by)
{
  auto const &c = r.config.condition;
  switch (by)
  {
  case GroupBy::seed:
    return {{r.config.seed, 0, 0}, std::to_string(r.config.seed)};
  case GroupBy::algorithm:
    return {{static_cast<std::uint64_t>(c.algorithm), 0, 0}, std::string(models::to_string(c.algorithm))};
  case GroupBy::hpt:
    if (!c.hpt)
    {
      return {{0, 0, 0}, "none"};
    }
    return {{1, c.hpt->n_iter, static_cast<std::uint64_t>(c.hpt->optimize)},
            std::to_string(c.hpt->n_iter) + ":" + std::string(tuning::to_string(c.hpt->optimize))};
  }
  return {};
}

struct SubgroupStats
{
  std::string key;
  std::size_t n     = 0;
  double      mean  = 0.0;
  double      sd    = 0.0;
  double      max   = 0.0;
  double      min   = 0.0;
  double      range = 0.0;
  std::size_t rank_max   = 0;  ///< 1 = largest
  std::size_t rank_min   = 0;  ///< 1 = largest
  std::size_t rank_mean  = 0;  ///< 1 = largest
  std::size_t rank_range = 0;  ///< 1 = smallest
};

/// Groups successful records and returns the values of each group in key order.
inline std::vector<std::pair<GroupKey, std::vector<double>>> group_values(std::span<RunRecord const> records,
                                                                          GroupBy by)
{
  std::map<GroupKey, std::vector<double>> groups;
  for (auto const &r : records)
  {
    if (r.ok())
    {
      groups[group_key(r, by)].push_back(r.f1);
    }
  }
  return {groups.begin(), groups.end()};
}

/// Competition ranks ("1224"): equal values share the smaller rank and the
/// following rank is skipped. `descending` ranks the largest value first.
inline std::vector<std::size_t> competition_ranks(std::vector<double> const &values, bool descending)
{
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    std::size_t better = 0;
    for (double other : values)
    {
      better += descending ? (other > values[i]) : (other < values[i]);
    }
    ranks[i] = better + 1;
  }
  return ranks;
}

inline std::vector<SubgroupStats> subgroup_stats(std::span<RunRecord const> records, GroupBy by)
{
  auto const groups = group_values(records, by);
  if (groups.empty())
  {
    throw InputError("subgroup_stats: no successful records");
  }
  std::vector<SubgroupStats> out;
  for (auto const &[key, values] : groups)
  {
    SubgroupStats s;
    s.key = key.label;
    s.n   = values.size();
    auto const [mean, sd] = planner::mean_sd(values);
    s.mean  = mean;
    s.sd    = sd;
    s.max   = *std::max_element(values.begin(), values.end());
    s.min   = *std::min_element(values.begin(), values.end());
    s.range = s.max - s.min;
    out.push_back(s);
  }
  auto column = [&](auto member) {
    std::vector<double> v;
    for (auto const &s : out)
    {
      v.push_back(s.*member);
    }
    return v;
  };
  auto const r_max   = competition_ranks(column(&SubgroupStats::max), true);
  auto const r_min   = competition_ranks(column(&SubgroupStats::min), true);
  auto const r_mean  = competition_ranks(column(&SubgroupStats::mean), true);
  auto const r_range = competition_ranks(column(&SubgroupStats::range), false);
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i].rank_max   = r_max[i];
    out[i].rank_min   = r_min[i];
    out[i].rank_mean  = r_mean[i];
    out[i].rank_range = r_range[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Box statistics

struct BoxStats
{
  std::string         key;
  std::size_t         n = 0;
  double              median = 0.0;
  double              q1 = 0.0;
  double              q3 = 0.0;
  double              whisker_low = 0.0;
  double              whisker_high = 0.0;
  std::vector<double> outliers;  ///< ascending
};

/// Quantile of sorted data by linear interpolation between order statistics
/// (position (n - 1) p, the "type 7" rule).
inline double quantile_sorted(std::span<double const> sorted, double p)
{
  if (sorted.empty())
  {
    throw InputError("quantile: empty data");
  }
  double const h      = static_cast<double>(sorted.size() - 1) * p;
  auto const lo       = static_cast<std::size_t>(std::floor(h));
  std::size_t const hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline BoxStats box_of(std::string key, std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.key    = std::move(key);
  b.n      = values.size();
  b.q1     = quantile_sorted(values, 0.25);
  b.median = quantile_sorted(values, 0.5);
  b.q3     = quantile_sorted(values, 0.75);
  double const iqr  = b.q3 - b.q1;
  double const lo_f = b.q1 - 1.5 * iqr;
  double const hi_f = b.q3 + 1.5 * iqr;
  b.whisker_low  = b.q1;
  b.whisker_high = b.q3;
  for (double v : values)
  {
    if (v < lo_f || v > hi_f)
    {
      b.outliers.push_back(v);
    }
    else
    {
      b.whisker_low  = std::min(b.whisker_low, v);
      b.whisker_high = std::max(b.whisker_high, v);
    }
  }
  return b;
}

/// Box-plot summary per group; whiskers reach the most extreme data within
/// 1.5 IQR of the quartiles.
inline std::vector<BoxStats> box_stats(std::span<RunRecord const> records, GroupBy by = GroupBy::seed)
{
  auto groups = group_values(records, by);
  if (groups.empty())
  {
    throw InputError("box_stats: no successful records");
  }
  std::vector<BoxStats> out;
  for (auto &[key, values] : groups)
  {
    out.push_back(box_of(key.label, std::move(values)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fair evaluation

enum class FairEvalStatus
{
  complete,
  normality_violation,
  degenerate_sample,
  budget_exceeded,
  failed
};

inline std::string_view to_string(FairEvalStatus s)
{
  switch (s)
  {
  case FairEvalStatus::complete:
    return "complete";
  case FairEvalStatus::normality_violation:
    return "normality_violation";
  case FairEvalStatus::degenerate_sample:
    return "degenerate_sample";
  case FairEvalStatus::budget_exceeded:
    return "budget_exceeded";
  case FairEvalStatus::failed:
    return "failed";
  }
  return "?";
}

struct FairEvalReport
{
  runner::Condition       condition;
  planner::PlanParams     params;
  planner::SampleSizePlan plan;  ///< possibly partial when status != complete
  FairEvalStatus          status = FairEvalStatus::failed;
  std::string             message;
  std::string             remediation;
  std::size_t             grid_n = 0;             ///< stored records of the condition before sampling
  std::optional<double>   grid_mean;
  std::optional<bool>     ci_contains_grid_mean;  ///< set when complete and grid records exist
  std::size_t             fresh_runs = 0;
};

/// Runs the sequential procedure on the F1 of `condition` at seeds 0, 1, ...
/// and checks the resulting interval against the mean of any records of the
/// same condition already present in `store`.
inline FairEvalReport fair_eval_report(dataset::Dataset const &ds, runner::Condition const &condition,
                                       planner::PlanParams const &params, runner::RecordStore &store,
                                       runner::RunOptions const &options = {})
{
  FairEvalReport rep;
  rep.condition = condition;
  rep.params    = params;

  auto const existing = store.of_condition(condition);
  rep.grid_n          = existing.size();
  if (!existing.empty())
  {
    double sum = 0.0;
    for (auto const &r : existing)
    {
      sum += r.f1;
    }
    rep.grid_mean = sum / static_cast<double>(existing.size());
  }

  runner::ConditionSampler sampler(ds, condition, store, options);
  planner::SequentialPlanner planner(params);
  try
  {
    planner.run(std::ref(sampler));
    rep.status  = FairEvalStatus::complete;
    rep.message = "interval estimate complete";
  }
  catch (NormalityViolation const &e)
  {
    rep.status      = FairEvalStatus::normality_violation;
    rep.message     = e.what();
    rep.remediation = "the F1 distribution of this condition may not be normal; inspect the "
                      "histogram of a full seed grid (report --histogram) before relying on an "
                      "interval estimate";
  }
  catch (DegenerateSample const &e)
  {
    rep.status      = FairEvalStatus::degenerate_sample;
    rep.message     = e.what();
    rep.remediation = "the pilot F1 scores are identical; the condition shows no seed variation to "
                      "estimate, or the pilot is too small";
  }
  catch (BudgetExceeded const &e)
  {
    rep.status      = FairEvalStatus::budget_exceeded;
    rep.message     = e.what();
    rep.remediation = "increase delta (or delta-frac) or raise n_cap";
  }
  catch (Error const &e)
  {
    rep.status  = FairEvalStatus::failed;
    rep.message = e.what();
  }
  rep.plan       = planner.state();
  rep.fresh_runs = sampler.fresh_runs();
  if (rep.status == FairEvalStatus::complete && rep.grid_mean)
  {
    rep.ci_contains_grid_mean = rep.plan.ci_low <= *rep.grid_mean && *rep.grid_mean <= rep.plan.ci_high;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Emission

enum class Format
{
  text,
  csv,
  json
};

inline Format parse_format(std::string const &s)
{
  if (s == "text")
  {
    return Format::text;
  }
  if (s == "csv")
  {
    return Format::csv;
  }
  if (s == "json")
  {
    return Format::json;
  }
  throw InputError("unknown format '" + s + "' (expected text, csv or json)");
}

namespace detail {

inline std::string fmt4(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string fmt6(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width, bool left = false)
{
  if (s.size() < width)
  {
    s = left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
  }
  return s;
}

/// Reals rounded to 6 decimals so JSON output is stable and compact.
inline double r6(double v)
{
  return std::round(v * 1e6) / 1e6;
}

}  // namespace detail

inline std::string render(std::vector<SubgroupStats> const &stats, Format format,
                          std::string const &group_label)
{
  using namespace detail;
  std::string out;
  if (format == Format::json)
  {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto const &s : stats)
    {
      arr.push_back({{"key", s.key},       {"n", s.n},           {"mean", r6(s.mean)},
                     {"sd", r6(s.sd)},     {"max", r6(s.max)},   {"min", r6(s.min)},
                     {"range", r6(s.range)}, {"rank_max", s.rank_max}, {"rank_min", s.rank_min},
                     {"rank_mean", s.rank_mean}, {"rank_range", s.rank_range}});
    }
    nlohmann::ordered_json doc = {{"group_by", group_label}, {"groups", arr}};
    return doc.dump(2) + "\n";
  }
  if (format == Format::csv)
  {
    out = group_label + ",n,max,rank_max,min,rank_min,mean,rank_mean,range,rank_range,sd\n";
    for (auto const &s : stats)
    {
      out += s.key + "," + std::to_string(s.n) + "," + fmt6(s.max) + "," + std::to_string(s.rank_max) +
             "," + fmt6(s.min) + "," + std::to_string(s.rank_min) + "," + fmt6(s.mean) + "," +
             std::to_string(s.rank_mean) + "," + fmt6(s.range) + "," + std::to_string(s.rank_range) +
             "," + fmt6(s.sd) + "\n";
    }
    return out;
  }
  out = pad(group_label, 12, true) + pad("n", 7) + pad("max", 9) + pad("rank", 6) + pad("min", 9) +
        pad("rank", 6) + pad("mean", 9) + pad("rank", 6) + pad("range", 9) + pad("rank", 6) +
        pad("sd", 9) + "\n";
  for (auto const &s : stats)
  {
    out += pad(s.key, 12, true) + pad(std::to_string(s.n), 7) + pad(fmt4(s.max), 9) +
           pad(std::to_string(s.rank_max), 6) + pad(fmt4(s.min), 9) + pad(std::to_string(s.rank_min), 6) +
           pad(fmt4(s.mean), 9) + pad(std::to_string(s.rank_mean), 6) + pad(fmt4(s.range), 9) +
           pad(std::to_string(s.rank_range), 6) + pad(fmt4(s.sd), 9) + "\n";
  }
  return out;
}

inline std::string render(Histogram const &h, Format format)
{
  using namespace detail;
  if (format == Format::json)
  {
    nlohmann::ordered_json doc = {{"bin_width", h.bin_width}, {"n", h.n}, {"mean", r6(h.mean)},
                                  {"sd", r6(h.sd)}};
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (double e : h.edges)
    {
      edges.push_back(r6(e));
    }
    doc["edges"]  = edges;
    doc["counts"] = h.counts;
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (format == Format::csv)
  {
    out = "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
    {
      out += fmt6(h.edges[i]) + "," + fmt6(h.edges[i + 1]) + "," + std::to_string(h.counts[i]) + "\n";
    }
    return out;
  }
  out = "n = " + std::to_string(h.n) + ", mean = " + fmt4(h.mean) + ", sd = " + fmt4(h.sd) + "\n";
  std::size_t const peak = h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  for (std::size_t i = 0; i < h.counts.size(); ++i)
  {
    if (h.counts[i] == 0)
    {
      continue;
    }
    std::size_t const bar = peak == 0 ? 0 : (h.counts[i] * 50 + peak - 1) / peak;
    out += "[" + fmt4(h.edges[i]) + ", " + fmt4(h.edges[i + 1]) + ") " + pad(std::to_string(h.counts[i]), 7) +
           " " + std::string(bar, '#') + "\n";
  }
  return out;
}

inline std::string render(std::vector<BoxStats> const &boxes, Format format, std::string const &group_label)
{
  using namespace detail;
  if (format == Format::json)
  {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto const &b : boxes)
    {
      nlohmann::ordered_json outliers = nlohmann::ordered_json::array();
      for (double v : b.outliers)
      {
        outliers.push_back(r6(v));
      }
      arr.push_back({{"key", b.key}, {"n", b.n}, {"whisker_low", r6(b.whisker_low)}, {"q1", r6(b.q1)},
                     {"median", r6(b.median)}, {"q3", r6(b.q3)}, {"whisker_high", r6(b.whisker_high)},
                     {"outliers", outliers}});
    }
    nlohmann::ordered_json doc = {{"group_by", group_label}, {"boxes", arr}};
    return doc.dump(2) + "\n";
  }
  std::string out;
  if (format == Format::csv)
  {
    out = group_label + ",n,whisker_low,q1,median,q3,whisker_high,outliers\n";
    for (auto const &b : boxes)
    {
      std::string o;
      for (double v : b.outliers)
      {
        o += (o.empty() ? "" : " ") + fmt6(v);
      }
      out += b.key + "," + std::to_string(b.n) + "," + fmt6(b.whisker_low) + "," + fmt6(b.q1) + "," +
             fmt6(b.median) + "," + fmt6(b.q3) + "," + fmt6(b.whisker_high) + "," + o + "\n";
    }
    return out;
  }
  out = pad(group_label, 12, true) + pad("n", 7) + pad("lo", 9) + pad("q1", 9) + pad("median", 9) +
        pad("q3", 9) + pad("hi", 9) + pad("outliers", 10) + "\n";
  for (auto const &b : boxes)
  {
    out += pad(b.key, 12, true) + pad(std::to_string(b.n), 7) + pad(fmt4(b.whisker_low), 9) +
           pad(fmt4(b.q1), 9) + pad(fmt4(b.median), 9) + pad(fmt4(b.q3), 9) + pad(fmt4(b.whisker_high), 9) +
           pad(std::to_string(b.outliers.size()), 10) + "\n";
  }
  return out;
}

inline std::string render(FairEvalReport const &r, Format format)
{
  using namespace detail;
  auto const &p       = r.plan;
  std::size_t const k = std::min(r.params.pilot_n, p.observations.size());
  if (format == Format::json)
  {
    nlohmann::ordered_json doc;
    doc["condition"] = r.condition.key();
    doc["status"]    = std::string(to_string(r.status));
    doc["message"]   = r.message;
    if (!r.remediation.empty())
    {
      doc["remediation"] = r.remediation;
    }
    nlohmann::ordered_json pilot = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < k; ++i)
    {
      pilot.push_back(r6(p.observations[i]));
    }
    doc["pilot"] = pilot;
    if (p.normality)
    {
      doc["normality"] = {{"w", r6(p.normality->w_statistic)}, {"p", r6(p.normality->p_value)}};
    }
    doc["alpha"]     = r.params.alpha;
    doc["delta"]     = r6(p.delta);
    doc["sigma0"]    = r6(p.sigma0);
    doc["n_initial"] = p.n_initial;
    doc["n_final"]   = p.n_final;
    doc["mean"]      = r6(p.mean);
    doc["sd"]        = r6(p.sd);
    doc["ci_low"]    = r6(p.ci_low);
    doc["ci_high"]   = r6(p.ci_high);
    doc["grid_n"]    = r.grid_n;
    doc["grid_mean"] = r.grid_mean ? nlohmann::ordered_json(r6(*r.grid_mean)) : nlohmann::ordered_json();
    doc["ci_contains_grid_mean"] =
        r.ci_contains_grid_mean ? nlohmann::ordered_json(*r.ci_contains_grid_mean) : nlohmann::ordered_json();
    return doc.dump(2) + "\n";
  }
  if (format == Format::csv)
  {
    std::string out = "field,value\n";
    out += "condition," + r.condition.key() + "\nstatus," + std::string(to_string(r.status)) + "\n";
    out += "pilot_n," + std::to_string(k) + "\n";
    if (p.normality)
    {
      out += "w," + fmt6(p.normality->w_statistic) + "\np," + fmt6(p.normality->p_value) + "\n";
    }
    out += "delta," + fmt6(p.delta) + "\nsigma0," + fmt6(p.sigma0) + "\nn_initial," +
           std::to_string(p.n_initial) + "\nn_final," + std::to_string(p.n_final) + "\nmean," +
           fmt6(p.mean) + "\nsd," + fmt6(p.sd) + "\nci_low," + fmt6(p.ci_low) + "\nci_high," +
           fmt6(p.ci_high) + "\n";
    if (r.grid_mean)
    {
      out += "grid_mean," + fmt6(*r.grid_mean) + "\n";
    }
    return out;
  }

  std::string out = "condition       " + r.condition.key() + "\n";
  out += "pilot           ";
  for (std::size_t i = 0; i < k; ++i)
  {
    out += fmt4(p.observations[i]) + (i + 1 < k ? ", " : "");
  }
  out += "\n";
  if (p.normality)
  {
    out += "shapiro-wilk    W = " + fmt4(p.normality->w_statistic) + ", p = " + fmt4(p.normality->p_value) + "\n";
  }
  out += "status          " + std::string(to_string(r.status)) + "\n";
  if (r.status != FairEvalStatus::complete)
  {
    out += "reason          " + r.message + "\n";
    if (!r.remediation.empty())
    {
      out += "remediation     " + r.remediation + "\n";
    }
    return out;
  }
  out += "delta           " + fmt4(p.delta) + "\n";
  out += "sigma0          " + fmt4(p.sigma0) + "\n";
  out += "n_initial       " + std::to_string(p.n_initial) + "\n";
  out += "n_final         " + std::to_string(p.n_final) + "\n";
  out += "mean            " + fmt4(p.mean) + " (sd " + fmt4(p.sd) + ")\n";
  char ci[128];
  std::snprintf(ci, sizeof ci, "%.0f%% CI          [%.4f, %.4f]\n", 100.0 * (1.0 - r.params.alpha), p.ci_low,
                p.ci_high);
  out += ci;
  if (r.grid_mean)
  {
    out += "grid mean       " + fmt4(*r.grid_mean) + " over " + std::to_string(r.grid_n) + " seeds: " +
           (*r.ci_contains_grid_mean ? "PASS (inside the interval)" : "FAIL (outside the interval)") + "\n";
  }
  else
  {
    out += "grid mean       not evaluated (no stored records for this condition)\n";
  }
  return out;
}

}  // namespace seedfair::report
