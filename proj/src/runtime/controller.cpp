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

#include "tenancy/runtime/controller.hpp"

#include <algorithm>
#include <cassert>

#include "tenancy/runtime/control_plane.hpp"

namespace tenancy::runtime {

Controller::Controller(ControlPlane& plane, std::string name, Kind primary,
                       ControllerConfig config, ReconcileFn fn)
    : plane_(plane),
      name_(std::move(name)),
      primary_(primary),
      config_(config),
      fn_(std::move(fn)),
      client_(std::make_unique<Client>(plane, config.qps, config.burst, name_)) {}

std::string Controller::key_of(const StoredObject& o) {
  if (o.ns) return *o.ns + "/" + o.meta.name;
  return o.meta.name;
}

std::pair<std::optional<std::string>, std::string> Controller::split_key(const std::string& key) {
  auto slash = key.find('/');
  if (slash == std::string::npos) return {std::nullopt, key};
  return {key.substr(0, slash), key.substr(slash + 1)};
}

void Controller::watch_also(Kind kind, KeyMapper mapper) {
  extra_watches_.emplace_back(kind, std::move(mapper));
}

void Controller::make_singleton(std::string key) { singleton_key_ = std::move(key); }

void Controller::start() {
  started_ = true;
  std::set<Kind> kinds{primary_};
  for (const auto& [k, mapper] : extra_watches_) kinds.insert(k);
  plane_.store().watch(kinds, plane_.store().last_seq(),
                       [this](const EventRecord& rec) { on_event(rec); });
  if (singleton_key_) {
    enqueue(*singleton_key_, false);
  } else {
    for (const auto* o : plane_.store().list_refs(primary_)) enqueue(key_of(*o), false);
  }
  plane_.loop().schedule_tick_at(plane_.loop().now() + sim_ms(config_.period_ms),
                                 [this] { resync(); });
}

void Controller::on_event(const EventRecord& rec) {
  if (singleton_key_) {
    enqueue(*singleton_key_, false);
    return;
  }
  if (rec.object.kind == primary_) enqueue(key_of(rec.object), false);
  for (const auto& [kind, mapper] : extra_watches_) {
    if (rec.object.kind != kind) continue;
    for (const auto& key : mapper(rec)) enqueue(key, false);
  }
}

void Controller::enqueue(const std::string& key, bool from_resync) {
  if (from_resync && clean_.count(key) > 0) return;
  if (!from_resync) {
    ++activity_;
    clean_.erase(key);
  }
  if (active_.count(key) > 0) {
    dirty_while_active_.insert(key);
    return;
  }
  if (queued_.count(key) > 0) return;
  queued_.insert(key);
  fifo_.push_back(key);
  maybe_dispatch();
}

void Controller::maybe_dispatch() {
  if (dispatch_scheduled_ || !started_ || fifo_.empty() || busy_ >= config_.workers) return;
  dispatch_scheduled_ = true;
  plane_.loop().schedule_at(plane_.loop().now(), [this] {
    dispatch_scheduled_ = false;
    dispatch();
  });
}

void Controller::dispatch() {
  while (busy_ < config_.workers && !fifo_.empty()) {
    std::string key = fifo_.front();
    fifo_.pop_front();
    queued_.erase(key);
    if (active_.count(key) > 0) {
      // Cannot happen: active keys are kept out of the queue.
      ++stats_.same_key_overlaps;
      dirty_while_active_.insert(key);
      continue;
    }
    active_.insert(key);
    ++busy_;
    stats_.max_busy = std::max(stats_.max_busy, busy_);
    run_one(key);
  }
}

void Controller::run_one(const std::string& key) {
  ++stats_.reconciles;
  auto session = client_->session(plane_.loop().now());
  ReconcileContext ctx{plane_, session, name_};
  ReconcileOutcome outcome = fn_(key, ctx);
  SimTime finished = session.now();
  plane_.loop().schedule_at(finished,
                            [this, key, outcome] { finish(key, outcome); });
}

void Controller::finish(const std::string& key, const ReconcileOutcome& outcome) {
  active_.erase(key);
  --busy_;
  if (outcome.status == ReconcileStatus::Requeue) {
    ++stats_.requeues;
    std::int64_t& backoff = backoff_ms_[key];
    backoff = backoff == 0 ? kBackoffBaseMs : std::min(backoff * 2, kBackoffCapMs);
    plane_.loop().schedule_after(sim_ms(backoff), [this, key] { enqueue(key, false); });
  } else {
    backoff_ms_.erase(key);
    if (dirty_while_active_.count(key) > 0) {
      dirty_while_active_.erase(key);
      enqueue(key, false);
    } else {
      clean_.insert(key);
    }
  }
  maybe_dispatch();
}

void Controller::resync() {
  ++stats_.resyncs;
  const bool idle = fifo_.empty() && busy_ == 0 && backoff_ms_.empty();
  if (!(idle && activity_ == last_resync_activity_)) {
    last_resync_activity_ = activity_;
    if (singleton_key_) {
      enqueue(*singleton_key_, true);
    } else {
      for (const auto* o : plane_.store().list_refs(primary_)) enqueue(key_of(*o), true);
    }
  }
  plane_.loop().schedule_tick_at(plane_.loop().now() + sim_ms(config_.period_ms),
                                 [this] { resync(); });
}

}  // namespace tenancy::runtime
