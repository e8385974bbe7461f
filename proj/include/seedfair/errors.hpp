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

#include <stdexcept>
#include <string>

namespace seedfair {

/// Root of every error thrown by the toolkit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;

  /// Short stable class name, used when errors are persisted in run records.
  virtual char const *kind() const noexcept
  {
    return "error";
  }
};

#define SEEDFAIR_DEFINE_ERROR(Name, Kind)          \
  class Name : public Error                        \
  {                                                \
  public:                                          \
    using Error::Error;                            \
    char const *kind() const noexcept override     \
    {                                              \
      return Kind;                                 \
    }                                              \
  }

SEEDFAIR_DEFINE_ERROR(DomainError, "domain");
SEEDFAIR_DEFINE_ERROR(InputError, "input");
SEEDFAIR_DEFINE_ERROR(ParseError, "parse");
SEEDFAIR_DEFINE_ERROR(UndefinedMetric, "undefined_metric");
SEEDFAIR_DEFINE_ERROR(TooFewSamples, "too_few_samples");
SEEDFAIR_DEFINE_ERROR(DegenerateSample, "degenerate_sample");
SEEDFAIR_DEFINE_ERROR(TrainingError, "training");
SEEDFAIR_DEFINE_ERROR(NormalityViolation, "normality_violation");
SEEDFAIR_DEFINE_ERROR(BudgetExceeded, "budget_exceeded");

#undef SEEDFAIR_DEFINE_ERROR

}  // namespace seedfair
