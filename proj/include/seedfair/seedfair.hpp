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
#include "seedfair/matrix.hpp"
#include "seedfair/metrics.hpp"
#include "seedfair/models.hpp"
#include "seedfair/planner.hpp"
#include "seedfair/records.hpp"
#include "seedfair/report.hpp"
#include "seedfair/rng.hpp"
#include "seedfair/runner.hpp"
#include "seedfair/statmath.hpp"
#include "seedfair/tuning.hpp"
