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
#include "seedfair/models.hpp"
#include "seedfair/tuning.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

using namespace seedfair;
using namespace seedfair::models;
using Catch::Approx;

namespace {

dataset::Dataset const &pid()
{
  static dataset::Dataset const ds = dataset::load_csv(std::string(SEEDFAIR_DATA_DIR) + "/diabetes.csv");
  return ds;
}

LabeledData pid_train(std::uint64_t seed)
{
  auto const split = dataset::seeded_split(pid().labels, seed);
  return pid().subset(split.train_rows);
}

LabeledData xor_data()
{
  LabeledData d{Matrix(2), {}};
  for (int rep = 0; rep < 5; ++rep)
  {
    for (int a = 0; a < 2; ++a)
    {
      for (int b = 0; b < 2; ++b)
      {
        d.features.append_row(std::vector<double>{a + 0.01 * rep, b - 0.01 * rep});
        d.labels.push_back(a ^ b);
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("logistic gradient and Hessian agree with finite differences", "[models][lr]")
{
  auto const train = pid_train(0);
  Standardizer const scaler(train.features);
  Matrix const z = scaler.transform(train.features);
  for (auto penalty : {Penalty::l2, Penalty::none})
  {
    LogisticObjective const obj(z, train.labels, LogisticParams{0.5, penalty});
    Eigen::VectorXd theta(static_cast<Eigen::Index>(obj.dimension()));
    for (Eigen::Index i = 0; i < theta.size(); ++i)
    {
      theta[i] = 0.1 * std::sin(1.0 + static_cast<double>(i));
    }
    auto const g = obj.gradient(theta);
    auto const h = obj.hessian(theta);
    double const eps = 1e-5;
    for (Eigen::Index i = 0; i < theta.size(); ++i)
    {
      Eigen::VectorXd up = theta, down = theta;
      up[i] += eps;
      down[i] -= eps;
      double const fd = (obj.loss(up) - obj.loss(down)) / (2 * eps);
      CHECK(g[i] == Approx(fd).epsilon(1e-6).margin(1e-6));
      Eigen::VectorXd const gd = (obj.gradient(up) - obj.gradient(down)) / (2 * eps);
      for (Eigen::Index j = 0; j < theta.size(); ++j)
      {
        CHECK(h(j, i) == Approx(gd[j]).epsilon(1e-5).margin(1e-5));
      }
    }
  }
}

TEST_CASE("logistic regression converges on the canonical data", "[models][lr]")
{
  auto const train = pid_train(1);
  auto const model = LogisticModel::fit(train.features, train.labels, LogisticParams{});
  CHECK(model.converged());
  CHECK(model.gradient_norm() <= 1e-6);
  // Glucose and BMI are the strongest positive predictors.
  CHECK(model.weights()[1] > 0.5);
  CHECK(model.weights()[5] > 0.3);
  auto const refit = LogisticModel::fit(train.features, train.labels, LogisticParams{});
  CHECK(refit.weights() == model.weights());
  CHECK_THROWS_AS(LogisticModel::fit(train.features, train.labels, LogisticParams{0.0, Penalty::l2}),
                  InputError);
}

TEST_CASE("logistic probability is the sigmoid of the decision function", "[models][lr]")
{
  auto const train = pid_train(2);
  auto const model = LogisticModel::fit(train.features, train.labels, LogisticParams{10.0, Penalty::l2});
  for (std::size_t i = 0; i < 20; ++i)
  {
    auto const row = train.features.row(i);
    double const d = model.decision_function(row);
    CHECK(model.probability(row) == Approx(1.0 / (1.0 + std::exp(-d))).epsilon(1e-12));
    CHECK(model.predict(row) == (d >= 0.0 ? 1 : 0));
  }
  CHECK(detail::softplus(800.0) == Approx(800.0));
  CHECK(detail::softplus(-800.0) >= 0.0);
  CHECK(detail::sigmoid(-800.0) >= 0.0);
}

TEST_CASE("Gaussian naive Bayes uses class moments", "[models][nb]")
{
  LabeledData d{Matrix(1), {}};
  for (double v : {0.0, 1.0, 2.0})
  {
    d.features.append_row(std::vector<double>{v});
    d.labels.push_back(0);
  }
  for (double v : {10.0, 12.0})
  {
    d.features.append_row(std::vector<double>{v});
    d.labels.push_back(1);
  }
  auto const nb = GaussianNb::fit(d.features, d.labels, NaiveBayesParams{1e-9});
  // Class 0: mean 1, ML variance 2/3, prior 3/5.
  std::vector<double> const x = {1.5};
  double const var0 = 2.0 / 3.0 + 1e-9 * 24.8;  // smoothing scales with the overall variance
  double const expected0 = std::log(0.6) - 0.5 * std::log(2 * M_PI * var0) - 0.25 / (2 * var0);
  CHECK(nb.log_joint(x, 0) == Approx(expected0).epsilon(1e-9));
  CHECK(nb.predict(x) == 0);
  CHECK(nb.predict(std::vector<double>{11.0}) == 1);
}

TEST_CASE("k nearest neighbours", "[models][knn]")
{
  auto const d = xor_data();
  auto const k1 = KnnModel::fit(d.features, d.labels, KnnParams{1, NeighborWeights::uniform});
  for (std::size_t i = 0; i < d.size(); ++i)
  {
    CHECK(k1.predict(d.features.row(i)) == d.labels[i]);
  }
  // An exact match decides a distance-weighted vote on its own.
  auto const kd = KnnModel::fit(d.features, d.labels, KnnParams{15, NeighborWeights::distance});
  CHECK(kd.predict(d.features.row(1)) == d.labels[1]);
  // k larger than the training set is clamped.
  auto const big = KnnModel::fit(d.features, d.labels, KnnParams{500, NeighborWeights::uniform});
  CHECK(big.predict(d.features.row(0)) == 0);  // 10-10 tie goes to 0
}

TEST_CASE("decision tree fits XOR and respects depth", "[models][dt]")
{
  auto const d = xor_data();
  auto const full = DecisionTree::fit(d.features, d.labels, TreeParams{});
  for (std::size_t i = 0; i < d.size(); ++i)
  {
    CHECK(full.predict(d.features.row(i)) == d.labels[i]);
  }

  auto const train = pid_train(4);
  for (std::size_t depth : {1u, 2u, 5u})
  {
    auto const t = DecisionTree::fit(train.features, train.labels, TreeParams{Criterion::entropy, depth, 2, 1});
    CHECK(t.depth() <= depth);
  }
  auto const unbounded = DecisionTree::fit(train.features, train.labels, TreeParams{});
  std::size_t correct = 0;
  for (std::size_t i = 0; i < train.size(); ++i)
  {
    correct += unbounded.predict(train.features.row(i)) == train.labels[i];
  }
  CHECK(correct >= train.size() - 5);  // only duplicate rows with clashing labels can be wrong

  auto const leafy = DecisionTree::fit(train.features, train.labels, TreeParams{Criterion::gini, std::nullopt, 2, 20});
  for (auto const &node : leafy.nodes())
  {
    if (node.feature < 0)
    {
      CHECK(node.weight[0] + node.weight[1] >= 20.0 - 1e-9);
    }
  }
  CHECK_THROWS_AS(DecisionTree::fit(train.features, train.labels, TreeParams{Criterion::gini, 0, 2, 1}),
                  InputError);
}

TEST_CASE("one-round boosting equals a gini stump", "[models][ada]")
{
  auto const train = pid_train(6);
  auto const ada   = AdaBoost::fit(train.features, train.labels, AdaBoostParams{1, 1.0});
  auto const stump = DecisionTree::fit(train.features, train.labels, TreeParams{Criterion::gini, 1, 2, 1});
  REQUIRE(ada.members().size() == 1);
  for (std::size_t i = 0; i < train.size(); ++i)
  {
    REQUIRE(ada.predict(train.features.row(i)) == stump.predict(train.features.row(i)));
  }
}

TEST_CASE("boosting improves the training fit", "[models][ada]")
{
  auto const train = pid_train(7);
  auto accuracy_of = [&](AdaBoost const &m) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < train.size(); ++i)
    {
      ok += m.predict(train.features.row(i)) == train.labels[i];
    }
    return static_cast<double>(ok) / static_cast<double>(train.size());
  };
  double const one  = accuracy_of(AdaBoost::fit(train.features, train.labels, AdaBoostParams{1, 1.0}));
  double const many = accuracy_of(AdaBoost::fit(train.features, train.labels, AdaBoostParams{100, 1.0}));
  CHECK(many > one);
  CHECK_THROWS_AS(AdaBoost::fit(train.features, train.labels, AdaBoostParams{0, 1.0}), InputError);
}

TEST_CASE("hyperparameter text round-trips", "[models]")
{
  CHECK(format_params(default_params(Algorithm::lr)) == "C=1,penalty=l2");
  CHECK(format_params(default_params(Algorithm::knn)) == "n_neighbors=5,weights=uniform");
  CHECK(format_params(default_params(Algorithm::dt)) ==
        "criterion=gini,max_depth=none,min_samples_split=2,min_samples_leaf=1");
  CHECK(format_params(default_params(Algorithm::ada)) == "n_estimators=50,learning_rate=1");
  CHECK(format_params(default_params(Algorithm::nb)) == "var_smoothing=1e-09");
  Rng rng(99);
  for (auto algo : kAllAlgorithms)
  {
    CHECK(algorithm_of(default_params(algo)) == algo);
    CHECK(parse_algorithm(to_string(algo)) == algo);
    auto const grid = tuning::default_grid(algo);
    for (int i = 0; i < 30; ++i)
    {
      auto const p    = tuning::sample_candidate(grid, rng);
      auto const text = format_params(p);
      CHECK(format_params(parse_params(algo, text)) == text);
      CHECK(parse_params(algo, text) == p);
    }
  }
  CHECK_THROWS_AS(parse_params(Algorithm::lr, "C=1,gamma=2"), ParseError);
  CHECK_THROWS(parse_params(Algorithm::lr, "C=abc"));
  CHECK_THROWS_AS(parse_algorithm("svm"), InputError);
}

TEST_CASE("training guards", "[models]")
{
  LabeledData one_class{Matrix(2), {}};
  one_class.features.append_row(std::vector<double>{1.0, 2.0});
  one_class.labels.push_back(1);
  one_class.features.append_row(std::vector<double>{2.0, 3.0});
  one_class.labels.push_back(1);
  LabeledData empty{Matrix(2), {}};
  for (auto algo : kAllAlgorithms)
  {
    CHECK_THROWS_AS(train(default_params(algo), one_class, 0), TrainingError);
    CHECK_THROWS_AS(train(default_params(algo), empty, 0), TrainingError);
  }
  auto const model = train(default_params(Algorithm::nb), pid_train(0), 0);
  CHECK_THROWS_AS(model.predict(Matrix(3, 4)), InputError);
}

TEST_CASE("every algorithm beats the majority baseline on held-out data", "[models]")
{
  auto const split = dataset::seeded_split(pid().labels, 0);
  auto const train_set = pid().subset(split.train_rows);
  auto const test_set  = pid().subset(split.test_rows);
  for (auto algo : kAllAlgorithms)
  {
    auto const model = train(default_params(algo), train_set, 0);
    auto const pred  = model.predict(test_set.features);
    std::size_t ok   = 0;
    for (std::size_t i = 0; i < test_set.size(); ++i)
    {
      ok += pred[i] == test_set.labels[i];
    }
    INFO(to_string(algo));
    CHECK(static_cast<double>(ok) / static_cast<double>(test_set.size()) > 0.66);
  }
}
