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
#include "seedfair/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace seedfair::records {

using runner::RunRecord;

/// Current record line layout. Fields, in order: schema_version, seed,
/// algorithm, fold_strategy, fix_imbalance, n_iter, optimize, tp, fp, fn, tn,
/// f1, precision, recall, accuracy, chosen_hyperparams, wall_time_s,
/// train_size, test_size, toolkit_version, error. Reals carry 6 decimals.
inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string fixed6(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string quoted(std::string const &s)
{
  return nlohmann::json(s).dump();
}

}  // namespace detail

/// One record as a single JSON line (no trailing newline).
inline std::string format_record(RunRecord const &r)
{
  using detail::fixed6;
  using detail::quoted;
  auto const &c = r.config.condition;
  std::string line = "{\"schema_version\":" + std::to_string(kSchemaVersion);
  line += ",\"seed\":" + std::to_string(r.config.seed);
  line += ",\"algorithm\":" + quoted(std::string(models::to_string(c.algorithm)));
  line += ",\"fold_strategy\":" + quoted(std::string(dataset::to_string(c.fold_strategy)));
  line += std::string(",\"fix_imbalance\":") + (c.fix_imbalance ? "true" : "false");
  line += ",\"n_iter\":" + (c.hpt ? std::to_string(c.hpt->n_iter) : std::string("null"));
  line += ",\"optimize\":" + (c.hpt ? quoted(std::string(tuning::to_string(c.hpt->optimize)))
                                    : std::string("null"));
  line += ",\"tp\":" + std::to_string(r.confusion.tp);
  line += ",\"fp\":" + std::to_string(r.confusion.fp);
  line += ",\"fn\":" + std::to_string(r.confusion.fn);
  line += ",\"tn\":" + std::to_string(r.confusion.tn);
  line += ",\"f1\":" + fixed6(r.f1);
  line += ",\"precision\":" + fixed6(r.precision);
  line += ",\"recall\":" + fixed6(r.recall);
  line += ",\"accuracy\":" + fixed6(r.accuracy);
  line += ",\"chosen_hyperparams\":" + quoted(r.hyperparams);
  line += ",\"wall_time_s\":" + fixed6(r.wall_time_s);
  line += ",\"train_size\":" + std::to_string(r.train_size);
  line += ",\"test_size\":" + std::to_string(r.test_size);
  line += ",\"toolkit_version\":" + quoted(r.toolkit_version);
  line += ",\"error\":" + (r.error ? quoted(*r.error) : std::string("null"));
  line += '}';
  return line;
}

namespace detail {

template <typename T>
T field(nlohmann::json const &j, char const *name, std::size_t line_no)
{
  auto it = j.find(name);
  if (it == j.end())
  {
    throw ParseError("records line " + std::to_string(line_no) + ": missing field '" + name + "'");
  }
  try
  {
    return it->get<T>();
  }
  catch (nlohmann::json::exception const &)
  {
    throw ParseError("records line " + std::to_string(line_no) + ": field '" + name +
                     "' has the wrong type");
  }
}

}  // namespace detail

/// Parses one record line. Metrics are recomputed from the confusion counts;
/// a stored metric outside [0, 1] or disagreeing with the counts beyond the
/// 6-decimal serialization is rejected.
inline RunRecord parse_record(std::string const &line, std::size_t line_no)
{
  using detail::field;
  auto const where = [&] { return "records line " + std::to_string(line_no) + ": "; };
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(line);
  }
  catch (nlohmann::json::exception const &e)
  {
    throw ParseError(where() + "malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object())
  {
    throw ParseError(where() + "expected a JSON object");
  }
  if (field<int>(j, "schema_version", line_no) != kSchemaVersion)
  {
    throw ParseError(where() + "unsupported schema_version");
  }

  RunRecord r;
  try
  {
    r.config.seed = field<std::uint64_t>(j, "seed", line_no);
    auto &c       = r.config.condition;
    c.algorithm   = models::parse_algorithm(field<std::string>(j, "algorithm", line_no));
    auto const fold = field<std::string>(j, "fold_strategy", line_no);
    if (fold != "kfold" && fold != "stratifiedkfold")
    {
      throw ParseError(where() + "unknown fold_strategy '" + fold + "'");
    }
    c.fold_strategy = fold == "kfold" ? dataset::FoldStrategy::kfold : dataset::FoldStrategy::stratified;
    c.fix_imbalance = field<bool>(j, "fix_imbalance", line_no);
    bool const tuned = !j.value("n_iter", nlohmann::json()).is_null();
    if (tuned)
    {
      c.hpt = tuning::HptCondition{field<std::size_t>(j, "n_iter", line_no),
                                   tuning::parse_optimize(field<std::string>(j, "optimize", line_no))};
    }
  }
  catch (ParseError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw ParseError(where() + e.what());
  }

  r.confusion.tp = field<std::uint64_t>(j, "tp", line_no);
  r.confusion.fp = field<std::uint64_t>(j, "fp", line_no);
  r.confusion.fn = field<std::uint64_t>(j, "fn", line_no);
  r.confusion.tn = field<std::uint64_t>(j, "tn", line_no);
  r.hyperparams  = field<std::string>(j, "chosen_hyperparams", line_no);
  r.wall_time_s  = field<double>(j, "wall_time_s", line_no);
  r.train_size   = field<std::size_t>(j, "train_size", line_no);
  r.test_size    = field<std::size_t>(j, "test_size", line_no);
  r.toolkit_version = field<std::string>(j, "toolkit_version", line_no);
  if (auto it = j.find("error"); it != j.end() && !it->is_null())
  {
    r.error = it->get<std::string>();
  }

  double const stored[4] = {field<double>(j, "f1", line_no), field<double>(j, "precision", line_no),
                            field<double>(j, "recall", line_no), field<double>(j, "accuracy", line_no)};
  char const *names[4]   = {"f1", "precision", "recall", "accuracy"};
  for (int i = 0; i < 4; ++i)
  {
    if (!(stored[i] >= 0.0 && stored[i] <= 1.0))
    {
      throw ParseError(where() + "range error: " + names[i] + " = " + std::to_string(stored[i]) +
                       " outside [0, 1]");
    }
  }
  if (r.ok())
  {
    runner::assign_metrics(r);
    double const recomputed[4] = {r.f1, r.precision, r.recall, r.accuracy};
    for (int i = 0; i < 4; ++i)
    {
      if (std::abs(recomputed[i] - stored[i]) > 5e-7 + 1e-12)
      {
        throw ParseError(where() + names[i] + " does not match the confusion counts");
      }
    }
  }
  else
  {
    r.f1        = stored[0];
    r.precision = stored[1];
    r.recall    = stored[2];
    r.accuracy  = stored[3];
  }
  return r;
}

inline void write_records(std::ostream &out, std::vector<RunRecord> const &records)
{
  for (auto const &r : records)
  {
    out << format_record(r) << '\n';
  }
}

inline std::vector<RunRecord> read_records(std::istream &in)
{
  std::vector<RunRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
    {
      continue;
    }
    out.push_back(parse_record(line, line_no));
  }
  return out;
}

inline void save_records(std::vector<RunRecord> const &records, std::string const &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw InputError("cannot write '" + path + "'");
  }
  write_records(out, records);
  if (!out)
  {
    throw InputError("write to '" + path + "' failed");
  }
}

/// Appends to an existing file (or creates it).
inline void append_records(std::vector<RunRecord> const &records, std::string const &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out)
  {
    throw InputError("cannot write '" + path + "'");
  }
  write_records(out, records);
}

inline std::vector<RunRecord> load_records(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ParseError("cannot open '" + path + "'");
  }
  return read_records(in);
}

}  // namespace seedfair::records
