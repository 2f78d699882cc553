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
#include <functional>
#include <queue>
#include <vector>

#include "tenancy/core/time.hpp"

namespace tenancy::runtime {

/// Deterministic discrete-event loop over the simulated clock. Events fire
/// in (time, insertion order). "Work" events represent outstanding control
/// plane activity; "tick" events are periodic housekeeping (controller
/// resyncs) that alone never keep the loop running.
class EventLoop {
 public:
  using Fn = std::function<void()>;

  SimTime now() const { return now_; }

  /// Schedules a work event; `t` below the current time is clamped.
  void schedule_at(SimTime t, Fn fn) { push(t, /*tick=*/false, std::move(fn)); }
  void schedule_after(SimTime delay, Fn fn) { schedule_at(now_ + delay, std::move(fn)); }

  /// Schedules a housekeeping tick.
  void schedule_tick_at(SimTime t, Fn fn) { push(t, /*tick=*/true, std::move(fn)); }

  /// Runs events in order until no work events remain. Pending ticks stay
  /// queued for a later call.
  void run_until_quiescent();

  /// Executes a single event; returns false when the queue is empty.
  bool step();

  /// Advances the clock without processing anything; used when restoring a
  /// persisted session so new timestamps continue after the replayed ones.
  void fast_forward(SimTime t) {
    if (t > now_) now_ = t;
  }

  /// Demo-mode adapter: replays the queue against the wall clock, sleeping
  /// between events. `speedup` maps simulated seconds to real seconds.
  void run_realtime(double speedup);

  std::size_t pending_work() const { return work_count_; }

 private:
  struct Ev {
    SimTime at;
    std::uint64_t id;
    bool tick;
    Fn fn;
  };
  struct Later {
    bool operator()(const Ev& a, const Ev& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.id > b.id;
    }
  };

  void push(SimTime t, bool tick, Fn fn);

  SimTime now_ = 0;
  std::uint64_t next_id_ = 1;
  std::size_t work_count_ = 0;
  std::priority_queue<Ev, std::vector<Ev>, Later> queue_;
};

}  // namespace tenancy::runtime
