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
#include "seedfair/models/scaler.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace seedfair::models {

enum class Penalty
{
  none,
  l2
};

struct LogisticParams
{
  double  C       = 1.0;
  Penalty penalty = Penalty::l2;

  bool operator==(LogisticParams const &) const = default;
};

struct LogisticSolverOptions
{
  int    max_iterations = 500;
  double gradient_tol   = 1e-6;
};

namespace detail {

/// log(1 + exp(z)) without overflow.
inline double softplus(double z)
{
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z)
{
  if (z >= 0.0)
  {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double const e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace detail

/// Regularized logistic loss over already-standardized rows.
///
///   L(w, b) = C * sum_i [softplus(z_i) - y_i z_i] + 1/2 |w|^2,  z_i = w.x_i + b
///
/// The intercept is never penalized; with Penalty::none the quadratic term is
/// dropped. Parameters are packed as (w_0 .. w_{d-1}, b).
class LogisticObjective
{
public:
  LogisticObjective(Matrix const &x, std::span<int const> y, LogisticParams params)
    : x_(x)
    , y_(y)
    , params_(params)
  {}

  std::size_t dimension() const noexcept
  {
    return x_.cols() + 1;
  }

  double loss(Eigen::VectorXd const &theta) const
  {
    std::size_t const d = x_.cols();
    double sum          = 0.0;
    for (std::size_t i = 0; i < x_.rows(); ++i)
    {
      double const z = linear(theta, i);
      sum += detail::softplus(z) - (y_[i] == 1 ? z : 0.0);
    }
    double value = params_.C * sum;
    if (params_.penalty == Penalty::l2)
    {
      value += 0.5 * theta.head(static_cast<Eigen::Index>(d)).squaredNorm();
    }
    return value;
  }

  Eigen::VectorXd gradient(Eigen::VectorXd const &theta) const
  {
    std::size_t const d = x_.cols();
    Eigen::VectorXd g   = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d + 1));
    for (std::size_t i = 0; i < x_.rows(); ++i)
    {
      double const r = detail::sigmoid(linear(theta, i)) - (y_[i] == 1 ? 1.0 : 0.0);
      auto const row = x_.row(i);
      for (std::size_t j = 0; j < d; ++j)
      {
        g[static_cast<Eigen::Index>(j)] += r * row[j];
      }
      g[static_cast<Eigen::Index>(d)] += r;
    }
    g *= params_.C;
    if (params_.penalty == Penalty::l2)
    {
      g.head(static_cast<Eigen::Index>(d)) += theta.head(static_cast<Eigen::Index>(d));
    }
    return g;
  }

  Eigen::MatrixXd hessian(Eigen::VectorXd const &theta) const
  {
    std::size_t const d  = x_.cols();
    auto const        dd = static_cast<Eigen::Index>(d + 1);
    Eigen::MatrixXd h    = Eigen::MatrixXd::Zero(dd, dd);
    Eigen::VectorXd xi(dd);
    for (std::size_t i = 0; i < x_.rows(); ++i)
    {
      double const p = detail::sigmoid(linear(theta, i));
      auto const row = x_.row(i);
      for (std::size_t j = 0; j < d; ++j)
      {
        xi[static_cast<Eigen::Index>(j)] = row[j];
      }
      xi[static_cast<Eigen::Index>(d)] = 1.0;
      h.selfadjointView<Eigen::Lower>().rankUpdate(xi, p * (1.0 - p));
    }
    h = h.selfadjointView<Eigen::Lower>();
    h *= params_.C;
    if (params_.penalty == Penalty::l2)
    {
      for (std::size_t j = 0; j < d; ++j)
      {
        h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += 1.0;
      }
    }
    return h;
  }

private:
  double linear(Eigen::VectorXd const &theta, std::size_t i) const
  {
    auto const row = x_.row(i);
    double z       = theta[static_cast<Eigen::Index>(x_.cols())];
    for (std::size_t j = 0; j < row.size(); ++j)
    {
      z += theta[static_cast<Eigen::Index>(j)] * row[j];
    }
    return z;
  }

  Matrix const        &x_;
  std::span<int const> y_;
  LogisticParams       params_;
};

/// Binary logistic regression fitted by damped Newton iterations with an
/// Armijo backtracking line search. Features are standardized internally.
class LogisticModel
{
public:
  LogisticModel() = default;

  static LogisticModel fit(Matrix const &x, std::span<int const> y, LogisticParams params,
                           LogisticSolverOptions options = {})
  {
    if (!(params.C > 0.0))
    {
      throw InputError("logistic regression: C must be positive");
    }
    LogisticModel model;
    model.scaler_  = Standardizer(x);
    Matrix const z = model.scaler_.transform(x);
    LogisticObjective const objective(z, y, params);

    auto const dim        = static_cast<Eigen::Index>(objective.dimension());
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
    double f              = objective.loss(theta);
    Eigen::VectorXd g     = objective.gradient(theta);

    int it = 0;
    for (; it < options.max_iterations && g.norm() > options.gradient_tol; ++it)
    {
      Eigen::MatrixXd h = objective.hessian(theta);
      // Tiny ridge keeps the unpenalized problem solvable on separable data.
      h.diagonal().array() += 1e-10;
      Eigen::VectorXd step = h.ldlt().solve(-g);
      double slope         = g.dot(step);
      if (!(slope < 0.0) || !step.allFinite())
      {
        step  = -g;
        slope = -g.squaredNorm();
      }
      double t = 1.0;
      bool accepted = false;
      Eigen::VectorXd candidate;
      double f_new = f;
      for (int ls = 0; ls < 60 && !accepted; ++ls, t *= 0.5)
      {
        candidate = theta + t * step;
        f_new     = objective.loss(candidate);
        accepted  = f_new <= f + 1e-4 * t * slope;
        // Near the optimum the loss decrease drowns in rounding noise; a full
        // Newton step that halves the gradient is accepted on that basis.
        if (!accepted && ls == 0 && std::abs(f_new - f) <= 1e-12 * (1.0 + std::abs(f)))
        {
          accepted = objective.gradient(candidate).norm() < 0.5 * g.norm();
        }
      }
      if (!accepted)
      {
        break;
      }
      theta = candidate;
      f     = f_new;
      g     = objective.gradient(theta);
    }

    model.weights_.assign(theta.data(), theta.data() + dim - 1);
    model.intercept_     = theta[dim - 1];
    model.gradient_norm_ = g.norm();
    model.converged_     = g.norm() <= options.gradient_tol;
    model.iterations_    = it;
    return model;
  }

  /// Linear score w.x + b of a raw (unstandardized) row.
  double decision_function(std::span<double const> row) const
  {
    double z = intercept_;
    for (std::size_t j = 0; j < weights_.size(); ++j)
    {
      z += weights_[j] * (row[j] - scaler_.mean()[j]) / scaler_.scale()[j];
    }
    return z;
  }

  double probability(std::span<double const> row) const
  {
    return detail::sigmoid(decision_function(row));
  }

  int predict(std::span<double const> row) const
  {
    return probability(row) >= 0.5 ? 1 : 0;
  }

  std::vector<double> const &weights() const noexcept
  {
    return weights_;
  }

  double intercept() const noexcept
  {
    return intercept_;
  }

  Standardizer const &scaler() const noexcept
  {
    return scaler_;
  }

  bool converged() const noexcept
  {
    return converged_;
  }

  double gradient_norm() const noexcept
  {
    return gradient_norm_;
  }

  int iterations() const noexcept
  {
    return iterations_;
  }

private:
  Standardizer        scaler_;
  std::vector<double> weights_;
  double              intercept_     = 0.0;
  double              gradient_norm_ = 0.0;
  bool                converged_     = false;
  int                 iterations_    = 0;
};

}  // namespace seedfair::models
