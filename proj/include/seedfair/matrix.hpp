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

#include <cassert>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seedfair {

/// Dense row-major table of reals.
class Matrix
{
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, fill)
  {}

  explicit Matrix(std::size_t cols)
    : cols_(cols)
  {}

  std::size_t rows() const noexcept
  {
    return rows_;
  }

  std::size_t cols() const noexcept
  {
    return cols_;
  }

  bool empty() const noexcept
  {
    return rows_ == 0;
  }

  std::span<double const> row(std::size_t i) const noexcept
  {
    assert(i < rows_);
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> row(std::size_t i) noexcept
  {
    assert(i < rows_);
    return {data_.data() + i * cols_, cols_};
  }

  double operator()(std::size_t i, std::size_t j) const noexcept
  {
    return data_[i * cols_ + j];
  }

  double &operator()(std::size_t i, std::size_t j) noexcept
  {
    return data_[i * cols_ + j];
  }

  void append_row(std::span<double const> values)
  {
    if (values.size() != cols_)
    {
      throw InputError("Matrix::append_row: expected " + std::to_string(cols_) + " values, got " +
                       std::to_string(values.size()));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void reserve_rows(std::size_t n)
  {
    data_.reserve(n * cols_);
  }

  std::span<double const> data() const noexcept
  {
    return data_;
  }

  bool operator==(Matrix const &) const = default;

private:
  std::size_t         rows_ = 0;
  std::size_t         cols_ = 0;
  std::vector<double> data_;
};

/// Feature rows with one binary label per row; the unit models train on.
struct LabeledData
{
  Matrix           features;
  std::vector<int> labels;

  std::size_t size() const noexcept
  {
    return labels.size();
  }

  std::size_t positives() const noexcept
  {
    std::size_t n = 0;
    for (int y : labels)
    {
      n += (y == 1);
    }
    return n;
  }

  /// Rows selected by index, in the order given.
  LabeledData subset(std::span<std::size_t const> rows) const
  {
    LabeledData out{Matrix(features.cols()), {}};
    out.features.reserve_rows(rows.size());
    out.labels.reserve(rows.size());
    for (std::size_t r : rows)
    {
      out.features.append_row(features.row(r));
      out.labels.push_back(labels[r]);
    }
    return out;
  }

  bool operator==(LabeledData const &) const = default;
};

}  // namespace seedfair
