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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tenancy/core/time.hpp"

namespace tenancy::runtime {

/// Reservation-style token bucket over simulated time. Each reserve() claims
/// one token and returns the earliest instant, at or after the requested
/// time, when that token is available. Grants are first-come-first-served in
/// call order; a request with a timestamp earlier than the previous one is
/// treated as arriving at the previous timestamp.
class TokenBucket {
 public:
  TokenBucket(double qps, double burst)
      : qps_(qps), burst_(burst), tokens_(burst) {}

  SimTime reserve(SimTime t) {
    t = std::max(t, last_);
    refill(t);
    tokens_ -= 1.0;
    last_ = t;
    if (tokens_ >= 0.0) return t;
    SimTime wait = static_cast<SimTime>(-tokens_ * 1e6 / qps_ + 0.999999);
    return t + wait;
  }

  double qps() const { return qps_; }
  double burst() const { return burst_; }

 private:
  void refill(SimTime t) {
    if (t <= last_) return;
    tokens_ = std::min(burst_, tokens_ + static_cast<double>(t - last_) * qps_ / 1e6);
  }

  double qps_;
  double burst_;
  double tokens_;
  SimTime last_ = 0;
};

}  // namespace tenancy::runtime
