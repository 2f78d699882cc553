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

#include "tenancy/runtime/sim_clock.hpp"

#include <chrono>
#include <thread>

namespace tenancy::runtime {

void EventLoop::push(SimTime t, bool tick, Fn fn) {
  if (t < now_) t = now_;
  if (!tick) ++work_count_;
  queue_.push(Ev{t, next_id_++, tick, std::move(fn)});
}

bool EventLoop::step() {
  if (queue_.empty()) return false;
  Ev ev = queue_.top();
  queue_.pop();
  now_ = ev.at;
  if (!ev.tick) --work_count_;
  ev.fn();
  return true;
}

void EventLoop::run_until_quiescent() {
  while (work_count_ > 0) {
    step();
  }
}

void EventLoop::run_realtime(double speedup) {
  if (speedup <= 0) speedup = 1.0;
  using clock = std::chrono::steady_clock;
  auto start_real = clock::now();
  SimTime start_sim = now_;
  while (work_count_ > 0) {
    SimTime next = queue_.top().at;
    auto target = start_real + std::chrono::microseconds(
                                   static_cast<std::int64_t>((next - start_sim) / speedup));
    std::this_thread::sleep_until(target);
    step();
  }
}

}  // namespace tenancy::runtime
