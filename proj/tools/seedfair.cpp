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


// seedfair command-line front end: dataset validation, grid execution,
// aggregation, sample-size planning and fair evaluation.

#include "seedfair/seedfair.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace seedfair;

std::vector<std::string> split_list(std::string const &s)
{
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
  {
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

std::uint64_t parse_u64(std::string const &s)
{
  std::uint64_t v = 0;
  auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
  {
    throw InputError("not a non-negative integer: '" + s + "'");
  }
  return v;
}

/// "a:b" is the half-open range [a, b); a single number is one seed; lists
/// of either are comma separated.
std::vector<std::uint64_t> parse_seeds(std::string const &s)
{
  std::vector<std::uint64_t> out;
  for (auto const &item : split_list(s))
  {
    auto const colon = item.find(':');
    if (colon == std::string::npos)
    {
      out.push_back(parse_u64(item));
      continue;
    }
    auto const lo = parse_u64(item.substr(0, colon));
    auto const hi = parse_u64(item.substr(colon + 1));
    if (hi <= lo)
    {
      throw InputError("empty seed range '" + item + "'");
    }
    for (auto v = lo; v < hi; ++v)
    {
      out.push_back(v);
    }
  }
  return out;
}

bool parse_bool(std::string const &s)
{
  if (s == "true" || s == "True" || s == "1")
  {
    return true;
  }
  if (s == "false" || s == "False" || s == "0")
  {
    return false;
  }
  throw InputError("expected true or false, got '" + s + "'");
}

int validate_cmd(std::string const &path)
{
  auto const ds  = dataset::load_csv(path);
  auto const rep = dataset::validate_against_table1(ds);
  std::printf("rows %zu, positives %zu\n", ds.size(), ds.positives());
  for (auto const &c : rep.checks)
  {
    std::printf("%-4s %-26s %-6s expected %10.4f actual %s\n", c.passed ? "ok" : "FAIL",
                std::string(c.reference.column).c_str(), std::string(to_string(c.reference.statistic)).c_str(),
                c.reference.expected, c.actual ? std::to_string(*c.actual).c_str() : "n/a");
  }
  bool const ok = rep.all_passed() && ds.size() == 768 && ds.positives() == 268;
  std::printf("%s\n", ok ? "dataset valid" : "dataset INVALID");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"seedfair: seed-effect experiments and fair model evaluation"};
  app.require_subcommand(1);

  // validate
  std::string data_path;
  auto *validate = app.add_subcommand("validate", "check a dataset against the reference statistics");
  validate->add_option("--data", data_path, "input CSV")->required();

  // run
  std::string seeds_s = "0:100", algos_s = "lr,nb,knn,dt,ada", folds_s = "kfold,stratifiedkfold";
  std::string imbalance_s = "true,false", hpt_s = "none", out_path;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t cv_folds = 10;
  bool timing = false, append = false, quiet = false;
  auto *run = app.add_subcommand("run", "execute an experiment grid");
  run->add_option("--data", data_path, "input CSV")->required();
  run->add_option("--seeds", seeds_s, "seeds, e.g. 0:100 (half-open) or 1,5,9")->capture_default_str();
  run->add_option("--algos", algos_s, "algorithms")->capture_default_str();
  run->add_option("--folds", folds_s, "fold strategies")->capture_default_str();
  run->add_option("--imbalance", imbalance_s, "imbalance fixing settings")->capture_default_str();
  run->add_option("--hpt", hpt_s, "tuning conditions: none or N:metric")->capture_default_str();
  run->add_option("--out", out_path, "output record file")->required();
  run->add_option("--workers", workers, "worker threads")->capture_default_str();
  run->add_option("--cv-folds", cv_folds, "folds used by tuning")->capture_default_str();
  run->add_flag("--timing", timing, "record wall time (breaks byte-reproducibility)");
  run->add_flag("--append", append, "append to the output instead of truncating");
  run->add_flag("--quiet", quiet, "no progress output");

  // report
  std::string in_path, group_by = "algo", format = "text", algo_filter;
  double bin_width = 0.02;
  bool want_hist = false, want_box = false;
  auto *report = app.add_subcommand("report", "aggregate a record file");
  report->add_option("--in", in_path, "record file")->required();
  report->add_option("--group-by", group_by, "algo, seed or hpt")->capture_default_str();
  report->add_option("--format", format, "text, csv or json")->capture_default_str();
  report->add_option("--algo", algo_filter, "only records of this algorithm");
  report->add_flag("--histogram", want_hist, "emit the F1 histogram instead of subgroup statistics");
  report->add_option("--bin-width", bin_width, "histogram bin width")->capture_default_str();
  report->add_flag("--box", want_box, "emit box statistics for the grouping");

  // plan / fair-eval shared planner parameters
  double alpha = 0.05, sigma = 0.0, delta = 0.0, delta_frac = 0.0, normality_alpha = 0.05;
  std::size_t pilot_n = 3, n_cap = 1000;
  bool half_width = false, one_sided = false;
  std::string samples_path;
  auto add_plan_options = [&](CLI::App *cmd) {
    cmd->add_option("--alpha", alpha, "significance level")->capture_default_str();
    cmd->add_option("--delta", delta, "acceptable interval width");
    cmd->add_option("--delta-frac", delta_frac, "width as a fraction of the pilot mean");
    cmd->add_option("--normality-alpha", normality_alpha, "level of the normality gate")->capture_default_str();
    cmd->add_option("--pilot-n", pilot_n, "pilot size")->capture_default_str();
    cmd->add_option("--n-cap", n_cap, "maximum number of observations")->capture_default_str();
    cmd->add_flag("--half-width", half_width, "treat delta as the half width");
    cmd->add_flag("--one-sided", one_sided, "one-sided t quantile in the stopping rule");
  };
  auto *plan = app.add_subcommand("plan", "sample-size planning");
  plan->add_option("--sigma", sigma, "assumed standard deviation");
  plan->add_option("--samples", samples_path, "file of observations (whitespace or comma separated)");
  add_plan_options(plan);

  // fair-eval
  std::string algo_s = "ada", fold_s = "kfold", imb_s = "true", optimize_s = "accuracy", records_path;
  std::size_t n_iter = 0;
  bool save_fresh = false;
  auto *fair = app.add_subcommand("fair-eval", "estimate the mean F1 of one condition over seeds");
  fair->add_option("--data", data_path, "input CSV")->required();
  fair->add_option("--algo", algo_s, "algorithm")->capture_default_str();
  fair->add_option("--fold", fold_s, "fold strategy")->capture_default_str();
  fair->add_option("--imbalance", imb_s, "imbalance fixing")->capture_default_str();
  fair->add_option("--n-iter", n_iter, "tuning iterations (0 = no tuning)")->capture_default_str();
  fair->add_option("--optimize", optimize_s, "tuning metric")->capture_default_str();
  fair->add_option("--records", records_path, "existing record file (reused and used for the grid check)");
  fair->add_option("--format", format, "text, csv or json")->capture_default_str();
  fair->add_flag("--save", save_fresh, "append newly trained runs to --records");
  add_plan_options(fair);

  CLI11_PARSE(app, argc, argv);

  auto plan_params = [&](CLI::App *cmd) {
    planner::PlanParams p;
    p.alpha           = alpha;
    p.normality_alpha = normality_alpha;
    p.pilot_n         = pilot_n;
    p.n_cap           = n_cap;
    p.delta_mode      = half_width ? planner::DeltaMode::half_width : planner::DeltaMode::full_width;
    p.stopping        = one_sided ? planner::StoppingQuantile::one_sided : planner::StoppingQuantile::two_sided;
    if (cmd->count("--delta") > 0)
    {
      p.delta = delta;
    }
    if (cmd->count("--delta-frac") > 0)
    {
      p.delta_fraction = delta_frac;
    }
    p.validate();
    return p;
  };

  try
  {
    if (*validate)
    {
      return validate_cmd(data_path);
    }

    if (*run)
    {
      auto const ds = dataset::load_csv(data_path);
      std::vector<models::Algorithm> algos;
      for (auto const &a : split_list(algos_s))
      {
        algos.push_back(models::parse_algorithm(a));
      }
      std::vector<dataset::FoldStrategy> folds;
      for (auto const &f : split_list(folds_s))
      {
        folds.push_back(dataset::parse_fold_strategy(f));
      }
      std::vector<bool> imbalance;
      for (auto const &b : split_list(imbalance_s))
      {
        imbalance.push_back(parse_bool(b));
      }
      std::vector<std::optional<tuning::HptCondition>> hpt;
      for (auto const &h : split_list(hpt_s))
      {
        hpt.push_back(runner::parse_hpt_condition(h));
      }
      auto const configs = runner::enumerate_grid(parse_seeds(seeds_s), algos, folds, imbalance, hpt);

      runner::RunOptions options;
      options.cv_folds         = cv_folds;
      options.record_wall_time = timing;
      std::size_t const total  = configs.size();
      auto progress = [&](std::size_t done) {
        if (!quiet && (done % 100 == 0 || done == total))
        {
          std::fprintf(stderr, "\r%zu / %zu runs", done, total);
          if (done == total)
          {
            std::fprintf(stderr, "\n");
          }
        }
      };
      auto const records = runner::execute_grid(ds, configs, workers, options, progress);
      if (append)
      {
        records::append_records(records, out_path);
      }
      else
      {
        records::save_records(records, out_path);
      }
      std::size_t failed = 0;
      for (auto const &r : records)
      {
        failed += !r.ok();
      }
      std::printf("%zu runs written to %s (%zu failed)\n", records.size(), out_path.c_str(), failed);
      return 0;
    }

    if (*report)
    {
      auto records = records::load_records(in_path);
      if (!algo_filter.empty())
      {
        auto const a = models::parse_algorithm(algo_filter);
        std::erase_if(records, [&](runner::RunRecord const &r) { return r.config.condition.algorithm != a; });
      }
      auto const fmt = report::parse_format(format);
      if (want_hist)
      {
        std::fputs(report::render(report::histogram(records, bin_width), fmt).c_str(), stdout);
        return 0;
      }
      auto const by = report::parse_group_by(group_by);
      std::string const label = group_by == "algorithm" ? "algo" : group_by;
      if (want_box)
      {
        std::fputs(report::render(report::box_stats(records, by), fmt, label).c_str(), stdout);
        return 0;
      }
      std::fputs(report::render(report::subgroup_stats(records, by), fmt, label).c_str(), stdout);
      return 0;
    }

    if (*plan)
    {
      if (samples_path.empty())
      {
        if (plan->count("--sigma") == 0 || plan->count("--delta") == 0)
        {
          throw InputError("plan: give --sigma and --delta, or --samples");
        }
        double const budget = half_width ? 2.0 * delta : delta;
        std::printf("n_initial %zu (bound %.6f)\n", planner::initial_n(sigma, budget, alpha),
                    planner::initial_n_bound(sigma, budget, alpha));
        return 0;
      }
      std::ifstream in(samples_path);
      if (!in)
      {
        throw InputError("cannot open '" + samples_path + "'");
      }
      std::vector<double> values;
      std::string token;
      while (in >> token)
      {
        for (auto const &t : split_list(token))
        {
          values.push_back(std::stod(t));
        }
      }
      std::size_t next = 0;
      auto sampler     = [&]() -> double {
        if (next >= values.size())
        {
          throw InputError("plan: sample file exhausted after " + std::to_string(values.size()) +
                           " observations; the procedure needs more");
        }
        return values[next++];
      };
      auto const result = planner::sequential_plan(sampler, plan_params(plan));
      std::printf("sigma0 %.6f\nn_initial %zu\nn_final %zu\nmean %.6f\nsd %.6f\nci [%.6f, %.6f]\n",
                  result.sigma0, result.n_initial, result.n_final, result.mean, result.sd, result.ci_low,
                  result.ci_high);
      return 0;
    }

    if (*fair)
    {
      auto const ds = dataset::load_csv(data_path);
      runner::Condition cond;
      cond.algorithm     = models::parse_algorithm(algo_s);
      cond.fold_strategy = dataset::parse_fold_strategy(fold_s);
      cond.fix_imbalance = parse_bool(imb_s);
      if (n_iter > 0)
      {
        cond.hpt = tuning::HptCondition{n_iter, tuning::parse_optimize(optimize_s)};
      }
      runner::RecordStore store;
      if (!records_path.empty() && std::ifstream(records_path).good())
      {
        store = runner::RecordStore(records::load_records(records_path));
      }
      std::set<std::uint64_t> stored_seeds;
      for (auto const &r : store.of_condition(cond))
      {
        stored_seeds.insert(r.config.seed);
      }
      auto const params = plan_params(fair);
      auto const rep    = report::fair_eval_report(ds, cond, params, store);
      std::fputs(report::render(rep, report::parse_format(format)).c_str(), stdout);
      if (save_fresh && !records_path.empty() && rep.fresh_runs > 0)
      {
        std::vector<runner::RunRecord> fresh;
        for (std::uint64_t s = 0; s < rep.plan.observations.size(); ++s)
        {
          if (auto r = store.find({s, cond}); r && !stored_seeds.contains(s))
          {
            fresh.push_back(*r);
          }
        }
        records::append_records(fresh, records_path);
      }
      if (rep.status != report::FairEvalStatus::complete)
      {
        return 2;
      }
      return rep.ci_contains_grid_mean.value_or(true) ? 0 : 3;
    }
  }
  catch (Error const &e)
  {
    std::fprintf(stderr, "error (%s): %s\n", e.kind(), e.what());
    return 1;
  }
  return 0;
}
