// Copyright 2026 The RoboGest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBOGEST_ROBOGEST_HPP_
#define ROBOGEST_ROBOGEST_HPP_

// Umbrella header: the whole pose-to-robot retargeting and gesture-metrics
// toolkit.

#include "robogest/core.hpp"
#include "robogest/errors.hpp"
#include "robogest/formats.hpp"
#include "robogest/limiter.hpp"
#include "robogest/metrics.hpp"
#include "robogest/retarget.hpp"

#endif  // ROBOGEST_ROBOGEST_HPP_
