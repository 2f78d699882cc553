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

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tenancy/runtime/client.hpp"
#include "tenancy/runtime/objects.hpp"

namespace tenancy::runtime {

class ControlPlane;

struct ControllerConfig {
  int workers = 2;
  std::int64_t period_ms = 1000;  // resync interval
  double qps = 5;
  double burst = 10;
};

enum class ReconcileStatus { Converged, Requeue };

struct ReconcileOutcome {
  ReconcileStatus status = ReconcileStatus::Converged;
  std::string reason;
};

inline ReconcileOutcome converged() { return {}; }
inline ReconcileOutcome requeue(std::string reason) {
  return {ReconcileStatus::Requeue, std::move(reason)};
}

struct ReconcileContext {
  ControlPlane& plane;
  Client::Session& client;
  std::string controller;
};

using ReconcileFn = std::function<ReconcileOutcome(const std::string& key, ReconcileContext&)>;
/// Maps an event on a secondary watched kind to the keys to re-reconcile.
using KeyMapper = std::function<std::vector<std::string>(const EventRecord&)>;

/// Level-triggered reconciler: a keyed work queue fed by watch events plus a
/// periodic resync, processed by up to `workers` concurrent workers (never
/// two on the same key), each store call paced by the controller's token
/// bucket. Failed reconciles requeue with exponential backoff
/// (5 ms base, x2, capped at 1000 ms).
class Controller {
 public:
  struct Stats {
    std::uint64_t reconciles = 0;
    std::uint64_t requeues = 0;
    std::uint64_t resyncs = 0;
    int max_busy = 0;
    std::uint64_t same_key_overlaps = 0;  // stays 0 by construction
  };

  Controller(ControlPlane& plane, std::string name, Kind primary, ControllerConfig config,
             ReconcileFn fn);

  void watch_also(Kind kind, KeyMapper mapper);

  /// Collapses the work queue to one fixed key: any watched event or resync
  /// re-enqueues that key (used by the scheduler, which plans globally).
  void make_singleton(std::string key);

  void start();

  const std::string& name() const { return name_; }
  Kind primary() const { return primary_; }
  const Stats& stats() const { return stats_; }
  Client& client() { return *client_; }
  bool idle() const { return busy_ == 0 && fifo_.empty(); }

  static std::string key_of(const StoredObject& o);
  static std::pair<std::optional<std::string>, std::string> split_key(const std::string& key);

  static constexpr std::int64_t kBackoffBaseMs = 5;
  static constexpr std::int64_t kBackoffCapMs = 1000;

 private:
  void on_event(const EventRecord& rec);
  void enqueue(const std::string& key, bool from_resync);
  void maybe_dispatch();
  void dispatch();
  void run_one(const std::string& key);
  void finish(const std::string& key, const ReconcileOutcome& outcome);
  void resync();

  ControlPlane& plane_;
  std::string name_;
  Kind primary_;
  ControllerConfig config_;
  ReconcileFn fn_;
  std::optional<std::string> singleton_key_;
  std::vector<std::pair<Kind, KeyMapper>> extra_watches_;
  std::unique_ptr<Client> client_;

  std::deque<std::string> fifo_;
  std::set<std::string> queued_;
  std::set<std::string> active_;
  std::set<std::string> dirty_while_active_;
  // Keys whose last reconcile converged and which saw no event since; the
  // periodic resync skips them, everything else re-enters the queue.
  std::set<std::string> clean_;
  std::map<std::string, std::int64_t> backoff_ms_;
  int busy_ = 0;
  bool started_ = false;
  bool dispatch_scheduled_ = false;
  // Event-driven enqueues since start; when unchanged since the previous
  // resync and the controller is idle, the scan would enqueue nothing
  // (every completed key is clean) and is skipped.
  std::uint64_t activity_ = 0;
  std::uint64_t last_resync_activity_ = 0;
  Stats stats_;
};

}  // namespace tenancy::runtime
