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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

using namespace seedfair;
using namespace seedfair::dataset;
using Catch::Approx;

namespace {

Dataset const &pid()
{
  static Dataset const ds = load_csv(std::string(SEEDFAIR_DATA_DIR) + "/diabetes.csv");
  return ds;
}

std::string const kHeader =
    "Pregnancies,Glucose,BloodPressure,SkinThickness,Insulin,BMI,DiabetesPedigreeFunction,Age,Outcome\n";

}  // namespace

TEST_CASE("canonical dataset shape", "[dataset]")
{
  auto const &ds = pid();
  CHECK(ds.size() == 768);
  CHECK(ds.positives() == 268);
  CHECK(ds.features.cols() == kFeatureCount);
}

TEST_CASE("canonical dataset matches every reference statistic", "[dataset]")
{
  auto const rep = validate_against_table1(pid());
  CHECK(rep.checks.size() == 45);
  for (auto const &c : rep.checks)
  {
    INFO(std::string(c.reference.column) << " " << to_string(c.reference.statistic));
    CHECK(c.passed);
  }
  CHECK(rep.all_passed());
}

TEST_CASE("columns are located by header name", "[dataset]")
{
  std::istringstream in("Outcome,Age,DiabetesPedigreeFunction,BMI,Insulin,SkinThickness,BloodPressure,Glucose,"
                        "Pregnancies\n1,50,0.627,33.6,0,35,72,148,6\n");
  auto const ds = parse_csv(in);
  REQUIRE(ds.size() == 1);
  CHECK(ds.features(0, 0) == 6);
  CHECK(ds.features(0, 1) == 148);
  CHECK(ds.features(0, 7) == 50);
  CHECK(ds.labels[0] == 1);
}

TEST_CASE("malformed input names row and column", "[dataset]")
{
  {
    std::istringstream in(kHeader + "6,148,72,35,0,33.6,0.627,50,1\n1,abc,66,29,0,26.6,0.351,31,0\n");
    try
    {
      parse_csv(in, "x.csv");
      FAIL("expected a parse error");
    }
    catch (ParseError const &e)
    {
      std::string const msg = e.what();
      CHECK(msg.find("3") != std::string::npos);
      CHECK(msg.find("Glucose") != std::string::npos);
    }
  }
  {
    std::istringstream in("Pregnancies,Glucose\n1,2\n");
    CHECK_THROWS_AS(parse_csv(in), ParseError);
  }
  {
    std::istringstream in(kHeader + "6,148,72,35,0,33.6,0.627,50,2\n");
    CHECK_THROWS_AS(parse_csv(in), ParseError);
  }
  {
    std::istringstream in(kHeader + "6,148,72,35,0,33.6,0.627\n");
    CHECK_THROWS_AS(parse_csv(in), ParseError);
  }
  CHECK_THROWS(load_csv("/nonexistent/diabetes.csv"));
}

TEST_CASE("empty dataset fails validation without crashing", "[dataset]")
{
  std::istringstream in(kHeader);
  auto const ds  = parse_csv(in);
  auto const rep = validate_against_table1(ds);
  CHECK(ds.size() == 0);
  CHECK_FALSE(rep.all_passed());
  for (auto const &c : rep.checks)
  {
    CHECK_FALSE(c.actual.has_value());
  }
}

TEST_CASE("split is a seeded disjoint partition", "[dataset]")
{
  auto const &ds = pid();
  for (bool stratified : {true, false})
  {
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
      auto const s = seeded_split(ds.labels, seed, 0.7, stratified);
      REQUIRE(s.train_rows.size() == 537);
      REQUIRE(s.test_rows.size() == 231);
      std::vector<std::size_t> all = s.train_rows;
      all.insert(all.end(), s.test_rows.begin(), s.test_rows.end());
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> expected(768);
      std::iota(expected.begin(), expected.end(), std::size_t{0});
      REQUIRE(all == expected);
      REQUIRE(std::is_sorted(s.train_rows.begin(), s.train_rows.end()));
      REQUIRE(s == seeded_split(ds.labels, seed, 0.7, stratified));
      if (stratified)
      {
        std::size_t pos = 0;
        for (auto r : s.train_rows)
        {
          pos += ds.labels[r] == 1;
        }
        REQUIRE(pos == 187);  // round(268 * 537 / 768) = round(187.39)
      }
    }
  }
  CHECK(seeded_split(ds.labels, 0) != seeded_split(ds.labels, 1));
}

TEST_CASE("split fraction bounds", "[dataset]")
{
  auto const &ds = pid();
  CHECK_THROWS_AS(seeded_split(ds.labels, 0, 0.0), InputError);
  CHECK_THROWS_AS(seeded_split(ds.labels, 0, 1.0), InputError);
  CHECK(train_size_for(768, 0.7) == 537);
  CHECK(train_size_for(10, 0.7) == 7);
}

TEST_CASE("fold assignment partitions the training rows", "[dataset]")
{
  auto const &ds = pid();
  auto const split = seeded_split(ds.labels, 3);
  std::vector<int> y;
  for (auto r : split.train_rows)
  {
    y.push_back(ds.labels[r]);
  }
  std::size_t const total_pos = std::count(y.begin(), y.end(), 1);
  for (auto strategy : {FoldStrategy::kfold, FoldStrategy::stratified})
  {
    for (std::size_t k : {2u, 5u, 10u})
    {
      auto const f = kfold_indices(y.size(), k, strategy, y, 11);
      REQUIRE(f.k == k);
      std::vector<std::size_t> seen;
      for (std::size_t i = 0; i < k; ++i)
      {
        auto const m = f.members(i);
        auto const c = f.complement(i);
        REQUIRE(m.size() + c.size() == y.size());
        REQUIRE(m.size() >= y.size() / k);
        REQUIRE(m.size() <= y.size() / k + 1);
        seen.insert(seen.end(), m.begin(), m.end());
        if (strategy == FoldStrategy::stratified)
        {
          std::size_t pos = 0;
          for (auto r : m)
          {
            pos += y[r] == 1;
          }
          REQUIRE(pos >= total_pos / k);
          REQUIRE(pos <= total_pos / k + 1);
        }
      }
      std::sort(seen.begin(), seen.end());
      for (std::size_t i = 0; i < seen.size(); ++i)
      {
        REQUIRE(seen[i] == i);
      }
      REQUIRE(f.fold_of_row == kfold_indices(y.size(), k, strategy, y, 11).fold_of_row);
    }
  }
  CHECK_THROWS_AS(kfold_indices(10, 1, FoldStrategy::kfold, y, 0), InputError);
  CHECK_THROWS_AS(kfold_indices(3, 5, FoldStrategy::kfold, y, 0), InputError);
}

TEST_CASE("minority oversampling balances and keeps the originals", "[dataset]")
{
  auto const &ds = pid();
  auto const split = seeded_split(ds.labels, 5);
  auto const train = ds.subset(split.train_rows);
  for (auto method : {OversampleMethod::smote, OversampleMethod::duplicate})
  {
    auto const out = oversample_minority(train, 42, method);
    REQUIRE(out.size() == 2 * (train.size() - train.positives()));
    CHECK(out.positives() * 2 == out.size());
    for (std::size_t i = 0; i < train.size(); ++i)
    {
      REQUIRE(out.labels[i] == train.labels[i]);
      for (std::size_t j = 0; j < train.features.cols(); ++j)
      {
        REQUIRE(out.features(i, j) == train.features(i, j));
      }
    }
    // Every synthetic row stays within the per-feature range of the minority.
    for (std::size_t j = 0; j < train.features.cols(); ++j)
    {
      double lo = 1e300, hi = -1e300;
      for (std::size_t i = 0; i < train.size(); ++i)
      {
        if (train.labels[i] == 1)
        {
          lo = std::min(lo, train.features(i, j));
          hi = std::max(hi, train.features(i, j));
        }
      }
      for (std::size_t i = train.size(); i < out.size(); ++i)
      {
        REQUIRE(out.labels[i] == 1);
        REQUIRE(out.features(i, j) >= lo);
        REQUIRE(out.features(i, j) <= hi);
      }
    }
    CHECK(out == oversample_minority(train, 42, method));
    CHECK_FALSE(out == oversample_minority(train, 43, method));
  }
}

TEST_CASE("SMOTE interpolates on segments between minority rows", "[dataset]")
{
  // Minority rows on a line: synthetic rows must land on the same line.
  LabeledData d{Matrix(2), {}};
  for (int i = 0; i < 6; ++i)
  {
    d.features.append_row(std::vector<double>{double(i), 2.0 * i + 1.0});
    d.labels.push_back(1);
  }
  for (int i = 0; i < 20; ++i)
  {
    d.features.append_row(std::vector<double>{100.0 + i, -5.0});
    d.labels.push_back(0);
  }
  auto const out = oversample_minority(d, 7);
  REQUIRE(out.size() == 40);
  for (std::size_t i = d.size(); i < out.size(); ++i)
  {
    CHECK(out.features(i, 1) == Approx(2.0 * out.features(i, 0) + 1.0).margin(1e-12));
  }
}

TEST_CASE("oversampling edge cases", "[dataset]")
{
  LabeledData one_class{Matrix(1), {}};
  one_class.features.append_row(std::vector<double>{1.0});
  one_class.labels.push_back(0);
  one_class.features.append_row(std::vector<double>{2.0});
  one_class.labels.push_back(0);
  CHECK_THROWS_AS(oversample_minority(one_class, 0), InputError);

  LabeledData single = one_class;
  single.features.append_row(std::vector<double>{3.0});
  single.labels.push_back(1);
  auto const out = oversample_minority(single, 0);
  REQUIRE(out.size() == 4);
  CHECK(out.features(3, 0) == 3.0);  // a lone minority row is duplicated

  LabeledData balanced = single;
  balanced.features.append_row(std::vector<double>{4.0});
  balanced.labels.push_back(1);
  CHECK(oversample_minority(balanced, 0) == balanced);
}
