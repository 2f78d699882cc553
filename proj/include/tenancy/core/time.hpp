// Copyright 2026 The Tenancy Plane Authors
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

#pragma once

#include <cstdint>

namespace tenancy {

/// Logical time in microseconds on the simulated clock. Every timestamp in
/// the control plane (object metadata, event log, benchmark records) is
/// expressed on this clock so that runs are deterministic.
using SimTime = std::int64_t;

constexpr SimTime sim_us(std::int64_t us) { return us; }
constexpr SimTime sim_ms(std::int64_t ms) { return ms * 1000; }
constexpr SimTime sim_seconds(std::int64_t s) { return s * 1000000; }

}  // namespace tenancy
