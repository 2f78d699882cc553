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

#include "tenancy/runtime/store.hpp"

#include <algorithm>

namespace tenancy::runtime {

std::optional<StoredObject> Store::get(const ObjectKey& key) const {
  auto it = objects_.find(key);
  if (it == objects_.end()) return std::nullopt;
  return it->second;
}

const StoredObject* Store::find(const ObjectKey& key) const {
  auto it = objects_.find(key);
  return it == objects_.end() ? nullptr : &it->second;
}

std::vector<StoredObject> Store::list(Kind kind, const std::optional<std::string>& ns) const {
  std::vector<StoredObject> out;
  for (const auto* o : list_refs(kind, ns)) out.push_back(*o);
  return out;
}

std::vector<const StoredObject*> Store::list_refs(Kind kind,
                                                  const std::optional<std::string>& ns) const {
  std::vector<const StoredObject*> out;
  ObjectKey lo{kind, "", ""};
  for (auto it = objects_.lower_bound(lo); it != objects_.end() && it->first.kind == kind; ++it) {
    if (ns && it->second.ns != ns) continue;
    out.push_back(&it->second);
  }
  return out;
}

std::size_t Store::count(Kind kind) const {
  std::size_t n = 0;
  ObjectKey lo{kind, "", ""};
  for (auto it = objects_.lower_bound(lo); it != objects_.end() && it->first.kind == kind; ++it) {
    ++n;
  }
  return n;
}

Result<void> Store::validate(const std::vector<WriteOp>& batch) const {
  // Track namespace-record creations/deletions inside the batch so the
  // threshold is checked against the post-batch count.
  std::int64_t record_delta = 0;
  std::set<ObjectKey> created_in_batch;
  for (const auto& op : batch) {
    switch (op.type) {
      case WriteOp::Type::Create: {
        const StoredObject& o = op.object;
        if (!valid_dns_label(o.meta.name)) {
          return make_error(Errc::invalid_name, "object name is not a DNS label: " + o.meta.name);
        }
        if (kind_cluster_scoped(o.kind) && o.ns.has_value()) {
          return make_error(Errc::invalid_argument,
                            std::string("cluster-scoped kind cannot carry a namespace: ") +
                                kind_name(o.kind));
        }
        if (!kind_cluster_scoped(o.kind) && !kind_scope_optional(o.kind) && !o.ns.has_value()) {
          return make_error(Errc::invalid_argument,
                            std::string("namespaced kind requires a namespace: ") +
                                kind_name(o.kind));
        }
        if (objects_.count(o.key()) > 0 || created_in_batch.count(o.key()) > 0) {
          return make_error(Errc::conflict, "object exists: " + o.key().to_string());
        }
        created_in_batch.insert(o.key());
        if (o.kind == Kind::NamespaceRecord) ++record_delta;
        break;
      }
      case WriteOp::Type::Update: {
        auto it = objects_.find(op.key);
        if (it == objects_.end()) {
          return make_error(Errc::not_found, "object not found: " + op.key.to_string());
        }
        if (op.expected_version && *op.expected_version != it->second.resource_version) {
          return make_error(Errc::conflict, "stale resource version for " + op.key.to_string());
        }
        if (!phase_transition_allowed(it->second.meta.phase, op.object.meta.phase)) {
          return make_error(Errc::invalid_transition,
                            std::string("phase may not move ") +
                                phase_name(it->second.meta.phase) + " -> " +
                                phase_name(op.object.meta.phase) + " for " +
                                op.key.to_string());
        }
        break;
      }
      case WriteOp::Type::Delete: {
        auto it = objects_.find(op.key);
        if (it == objects_.end()) {
          return make_error(Errc::not_found, "object not found: " + op.key.to_string());
        }
        if (op.expected_version && *op.expected_version != it->second.resource_version) {
          return make_error(Errc::conflict, "stale resource version for " + op.key.to_string());
        }
        if (op.key.kind == Kind::NamespaceRecord) --record_delta;
        break;
      }
    }
  }
  if (record_delta > 0) {
    std::size_t current = count(Kind::NamespaceRecord);
    if (current + static_cast<std::size_t>(record_delta) > options_.namespace_threshold) {
      Error e = make_error(Errc::threshold_exceeded, "namespace threshold reached");
      e.requested = static_cast<std::int64_t>(current) + record_delta;
      e.available = static_cast<std::int64_t>(options_.namespace_threshold);
      return e;
    }
  }
  return {};
}

void Store::commit(const WriteOp& op, SimTime at) {
  EventRecord record;
  record.seq = ++seq_;
  record.at = at;
  switch (op.type) {
    case WriteOp::Type::Create: {
      StoredObject o = op.object;
      o.resource_version = record.seq;
      if (o.meta.created_at == 0) o.meta.created_at = at;
      record.op = EventOp::Create;
      record.object = o;
      objects_[o.key()] = std::move(o);
      break;
    }
    case WriteOp::Type::Update: {
      StoredObject o = op.object;
      o.resource_version = record.seq;
      record.op = EventOp::Update;
      record.object = o;
      objects_[o.key()] = std::move(o);
      break;
    }
    case WriteOp::Type::Delete: {
      record.op = EventOp::Delete;
      record.object = objects_.at(op.key);
      objects_.erase(op.key);
      break;
    }
  }
  log_.push_back(record);
  for (auto& sink : sinks_) sink(record);
  fan_out(record);
  maybe_compact();
}

Result<std::uint64_t> Store::apply(std::vector<WriteOp> batch, SimTime at) {
  if (auto v = validate(batch); !v.ok()) return v.error();
  for (const auto& op : batch) commit(op, at);
  return seq_;
}

Result<StoredObject> Store::create(StoredObject o, SimTime at) {
  ObjectKey key = o.key();
  auto r = apply({WriteOp::create(std::move(o))}, at);
  if (!r.ok()) return r.error();
  return *get(key);
}

Result<StoredObject> Store::update(StoredObject o, SimTime at) {
  ObjectKey key = o.key();
  auto r = apply({WriteOp::update(std::move(o))}, at);
  if (!r.ok()) return r.error();
  return *get(key);
}

Result<void> Store::remove(const ObjectKey& key, SimTime at) {
  auto r = apply({WriteOp::del(key)}, at);
  if (!r.ok()) return r.error();
  return {};
}

std::uint64_t Store::oldest_retained_seq() const { return compacted_before_; }

Result<std::uint64_t> Store::watch(std::set<Kind> kinds, std::uint64_t from_seq,
                                   WatchCallback cb) {
  if (from_seq > seq_) {
    return make_error(Errc::invalid_argument, "from_seq is ahead of the log");
  }
  if (from_seq + 1 < compacted_before_) {
    return make_error(Errc::seq_compacted, "requested records have been compacted");
  }
  std::uint64_t id = next_watch_id_++;
  Watcher w{id, std::move(kinds), std::move(cb), loop_.now()};
  watchers_.emplace(id, std::move(w));
  Watcher& stored = watchers_.at(id);
  // Backlog delivery, in seq order, honoring per-watcher time ordering.
  for (const auto& rec : log_) {
    if (rec.seq <= from_seq) continue;
    if (!stored.kinds.empty() && stored.kinds.count(rec.object.kind) == 0) continue;
    stored.last_delivery = std::max({loop_.now(), rec.at, stored.last_delivery});
    EventRecord copy = rec;
    auto callback = stored.cb;
    loop_.schedule_at(stored.last_delivery, [callback, copy]() { callback(copy); });
  }
  return id;
}

void Store::unwatch(std::uint64_t watch_id) { watchers_.erase(watch_id); }

void Store::fan_out(const EventRecord& record) {
  for (auto& [id, w] : watchers_) {
    if (!w.kinds.empty() && w.kinds.count(record.object.kind) == 0) continue;
    w.last_delivery = std::max({loop_.now(), record.at, w.last_delivery});
    auto callback = w.cb;
    EventRecord copy = record;
    loop_.schedule_at(w.last_delivery, [callback, copy]() { callback(copy); });
  }
}

void Store::maybe_compact() {
  if (options_.in_memory_log_limit == 0) return;
  if (log_.size() <= options_.in_memory_log_limit * 2) return;
  while (log_.size() > options_.in_memory_log_limit) {
    compacted_before_ = log_.front().seq + 1;
    log_.pop_front();
  }
}

void Store::restore(const EventRecord& record) {
  seq_ = record.seq;
  switch (record.op) {
    case EventOp::Create:
    case EventOp::Update:
      objects_[record.object.key()] = record.object;
      break;
    case EventOp::Delete:
      objects_.erase(record.object.key());
      break;
  }
  log_.push_back(record);
  maybe_compact();
}

std::vector<StoredObject> Store::snapshot() const {
  std::vector<StoredObject> out;
  out.reserve(objects_.size());
  for (const auto& [key, o] : objects_) out.push_back(o);
  return out;
}

}  // namespace tenancy::runtime
