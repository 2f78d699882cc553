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
#include <set>

#include "tenancy/core/time.hpp"

namespace tenancy::runtime {

/// Service-time model for the shared API path. Deterministic given
/// (model, in-flight count, seed, op sequence number).
struct LatencyModel {
  std::int64_t base_write_us = 500;
  std::int64_t base_read_us = 200;
  // Added service time per in-flight request, modelling control plane
  // saturation under simultaneous arrivals.
  std::int64_t contention_factor_us = 25;
  std::uint64_t seed = 0;
  // Deterministic pseudo-jitter amplitude in percent of the base time.
  std::int64_t jitter_pct = 0;

  /// No contention, no jitter: service time is a constant per operation.
  static LatencyModel constant_rate(std::int64_t write_us = 500, std::int64_t read_us = 200) {
    return LatencyModel{write_us, read_us, 0, 0, 0};
  }

  /// Rough approximation of the reference hardware's figures; useful for
  /// demo output, not required by any test.
  static LatencyModel calibrated() { return LatencyModel{100000, 40000, 8000, 0, 10}; }
};

/// The single logical service channel of the control plane: requests are
/// served one at a time in arrival order, so many simultaneous requests
/// queue up and each sees the backlog ahead of it.
class ServiceChannel {
 public:
  explicit ServiceChannel(LatencyModel model) : model_(model) {}

  /// Admits a request arriving at `t`; returns its completion time.
  SimTime admit(SimTime t, bool is_write) {
    t = std::max(t, last_arrival_);
    last_arrival_ = t;
    while (!completions_.empty() && *completions_.begin() <= t) {
      completions_.erase(completions_.begin());
    }
    std::int64_t in_flight = static_cast<std::int64_t>(completions_.size());
    std::int64_t base = is_write ? model_.base_write_us : model_.base_read_us;
    std::int64_t service = base + model_.contention_factor_us * in_flight + jitter(base);
    if (service < 1) service = 1;
    SimTime start = std::max(t, next_free_);
    SimTime done = start + service;
    next_free_ = done;
    completions_.insert(done);
    ++ops_;
    return done;
  }

  const LatencyModel& model() const { return model_; }
  std::uint64_t ops() const { return ops_; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::int64_t jitter(std::int64_t base) const {
    if (model_.jitter_pct <= 0) return 0;
    std::int64_t amp = base * model_.jitter_pct / 100;
    if (amp <= 0) return 0;
    std::uint64_t h = splitmix(model_.seed ^ (ops_ * 0x100000001b3ULL));
    return static_cast<std::int64_t>(h % static_cast<std::uint64_t>(2 * amp + 1)) - amp;
  }

  LatencyModel model_;
  SimTime next_free_ = 0;
  SimTime last_arrival_ = 0;
  std::multiset<SimTime> completions_;
  std::uint64_t ops_ = 0;
};

}  // namespace tenancy::runtime
