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


#include "seedfair/records.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace seedfair;
using namespace seedfair::runner;

namespace {

std::vector<RunRecord> synthetic_records(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> cell(0, 120);
  std::vector<std::optional<HptCondition>> hpt = {std::nullopt};
  for (auto const &h : tuning::standard_conditions())
  {
    hpt.push_back(h);
  }
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < n; ++i)
  {
    RunRecord r;
    r.config.seed                    = i / 140;
    r.config.condition.algorithm     = models::kAllAlgorithms[i % 5];
    r.config.condition.fold_strategy = (i / 5) % 2 ? dataset::FoldStrategy::kfold : dataset::FoldStrategy::stratified;
    r.config.condition.fix_imbalance = (i / 10) % 2;
    r.config.condition.hpt           = hpt[(i / 20) % 7];
    r.confusion   = {std::size_t(cell(gen)), std::size_t(cell(gen)), std::size_t(cell(gen)), std::size_t(cell(gen))};
    r.hyperparams = models::format_params(models::default_params(r.config.condition.algorithm));
    r.train_size  = 537;
    r.test_size   = 231;
    if (i % 997 == 5)
    {
      r.error = "training: \"quoted\" message";
    }
    else
    {
      assign_metrics(r);
      r.wall_time_s = std::round(std::uniform_real_distribution<double>(0, 3)(gen) * 1e6) / 1e6;
    }
    out.push_back(r);
  }
  return out;
}

std::string temp_path(std::string const &name)
{
  return (std::filesystem::temp_directory_path() / ("seedfair_" + name)).string();
}

}  // namespace

TEST_CASE("save then load is the identity", "[records]")
{
  auto const records = synthetic_records(14000, 1);
  auto const path    = temp_path("roundtrip.ndjson");
  records::save_records(records, path);
  auto const loaded = records::load_records(path);
  REQUIRE(loaded.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
  {
    REQUIRE(loaded[i] == records[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("appending extends a record file", "[records]")
{
  auto const records = synthetic_records(30, 2);
  auto const path    = temp_path("append.ndjson");
  records::save_records({records.begin(), records.begin() + 10}, path);
  records::append_records({records.begin() + 10, records.end()}, path);
  CHECK(records::load_records(path) == records);
  std::remove(path.c_str());
}

TEST_CASE("empty input yields no records", "[records]")
{
  std::istringstream empty("");
  CHECK(records::read_records(empty).empty());
  std::istringstream blanks("\n\n  \n");
  CHECK(records::read_records(blanks).empty());
  CHECK_THROWS(records::load_records("/nonexistent/runs.ndjson"));
}

TEST_CASE("field order is fixed", "[records]")
{
  RunRecord r;
  r.config      = {7, {Algorithm::knn, dataset::FoldStrategy::kfold, true, HptCondition{10, tuning::Optimize::recall}}};
  r.confusion   = {50, 20, 30, 131};
  r.hyperparams = "n_neighbors=5,weights=uniform";
  r.train_size  = 537;
  r.test_size   = 231;
  assign_metrics(r);
  CHECK(records::format_record(r) ==
        "{\"schema_version\":1,\"seed\":7,\"algorithm\":\"knn\",\"fold_strategy\":\"kfold\",\"fix_imbalance\":true,"
        "\"n_iter\":10,\"optimize\":\"recall\",\"tp\":50,\"fp\":20,\"fn\":30,\"tn\":131,\"f1\":0.666667,"
        "\"precision\":0.714286,\"recall\":0.625000,\"accuracy\":0.783550,"
        "\"chosen_hyperparams\":\"n_neighbors=5,weights=uniform\",\"wall_time_s\":0.000000,\"train_size\":537,"
        "\"test_size\":231,\"toolkit_version\":\"0.1.0\",\"error\":null}");
}

TEST_CASE("invalid lines are rejected with their line number", "[records]")
{
  auto const good = records::format_record(synthetic_records(1, 3).front());
  auto expect_error = [](std::string const &text, std::string const &fragment) {
    std::istringstream in(text);
    try
    {
      records::read_records(in);
      FAIL("expected a parse error");
    }
    catch (ParseError const &e)
    {
      std::string const msg = e.what();
      INFO(msg);
      CHECK(msg.find(fragment) != std::string::npos);
    }
  };

  std::string bad_f1 = good;
  auto const at      = bad_f1.find("\"f1\":");
  bad_f1.replace(at, bad_f1.find(',', at) - at, "\"f1\":1.2");
  expect_error(good + "\n" + bad_f1 + "\n", "range error");
  expect_error(good + "\n" + bad_f1 + "\n", "line 2");

  std::string mismatch = good;
  auto const tp        = mismatch.find("\"tp\":");
  mismatch.replace(tp, mismatch.find(',', tp) - tp, "\"tp\":999");
  expect_error(mismatch, "does not match");

  expect_error(good + "\n{not json\n", "line 2");
  expect_error("{\"schema_version\":1}", "missing field");
  expect_error("{\"schema_version\":2}", "schema_version");
  std::string unknown = good;
  unknown.replace(unknown.find("\"algorithm\":\"") + 13, 2, "sv");
  expect_error(unknown, "line 1");
}
