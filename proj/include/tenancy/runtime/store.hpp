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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tenancy/runtime/objects.hpp"
#include "tenancy/runtime/sim_clock.hpp"

namespace tenancy::runtime {

/// One mutation in a write batch.
struct WriteOp {
  enum class Type { Create, Update, Delete };
  Type type = Type::Create;
  StoredObject object;            // Create/Update payload
  ObjectKey key;                  // Delete target
  std::optional<std::uint64_t> expected_version;  // CAS guard for Update/Delete

  static WriteOp create(StoredObject o) {
    WriteOp w;
    w.type = Type::Create;
    w.key = o.key();
    w.object = std::move(o);
    return w;
  }
  static WriteOp update(StoredObject o) {
    WriteOp w;
    w.type = Type::Update;
    w.key = o.key();
    w.expected_version = o.resource_version;
    w.object = std::move(o);
    return w;
  }
  static WriteOp del(ObjectKey k) {
    WriteOp w;
    w.type = Type::Delete;
    w.key = std::move(k);
    return w;
  }
};

/// The versioned object map with its append-only event log and watch
/// fan-out. Writes are serialized: a batch applies atomically or not at
/// all, each op appending one EventRecord. There is exactly one logical
/// writer; readers see immutable snapshots.
class Store {
 public:
  struct Options {
    std::size_t namespace_threshold = 10000;
    // When > 0, the in-memory log is compacted down to this many records
    // once it grows past twice the limit. The persistent sink, if any,
    // always keeps everything.
    std::size_t in_memory_log_limit = 0;
  };

  using LogSink = std::function<void(const EventRecord&)>;
  using WatchCallback = std::function<void(const EventRecord&)>;

  Store(EventLoop& loop, Options options) : loop_(loop), options_(options) {}

  // -- reads (snapshot copies; free of charge at this layer) --
  std::optional<StoredObject> get(const ObjectKey& key) const;
  const StoredObject* find(const ObjectKey& key) const;
  std::vector<StoredObject> list(Kind kind, const std::optional<std::string>& ns = {}) const;
  std::vector<const StoredObject*> list_refs(Kind kind,
                                             const std::optional<std::string>& ns = {}) const;
  std::size_t count(Kind kind) const;
  std::size_t size() const { return objects_.size(); }

  /// Applies a batch atomically at simulated time `at`; on success returns
  /// the seq of the last appended record. Validation covers key/name
  /// shape, CAS guards, phase monotonicity, and the namespace threshold.
  Result<std::uint64_t> apply(std::vector<WriteOp> batch, SimTime at);

  /// Convenience single-op forms.
  Result<StoredObject> create(StoredObject o, SimTime at);
  Result<StoredObject> update(StoredObject o, SimTime at);
  Result<void> remove(const ObjectKey& key, SimTime at);

  /// Streams all records with seq > from_seq (then live ones) to `cb`, in
  /// seq order, via loop events. Errors with SeqCompacted when that range
  /// is no longer retained.
  Result<std::uint64_t> watch(std::set<Kind> kinds, std::uint64_t from_seq, WatchCallback cb);
  void unwatch(std::uint64_t watch_id);

  std::uint64_t last_seq() const { return seq_; }
  std::uint64_t oldest_retained_seq() const;
  const std::deque<EventRecord>& log() const { return log_; }

  void add_log_sink(LogSink sink) { sinks_.push_back(std::move(sink)); }

  /// Installs a record as-is (log replay); bypasses validation hooks but
  /// keeps the live map and seq consistent with the record.
  void restore(const EventRecord& record);

  /// Live objects sorted by (kind, namespace, name).
  std::vector<StoredObject> snapshot() const;

  std::size_t namespace_threshold() const { return options_.namespace_threshold; }

 private:
  struct Watcher {
    std::uint64_t id;
    std::set<Kind> kinds;
    WatchCallback cb;
    SimTime last_delivery = 0;
  };

  Result<void> validate(const std::vector<WriteOp>& batch) const;
  void commit(const WriteOp& op, SimTime at);
  void fan_out(const EventRecord& record);
  void maybe_compact();

  EventLoop& loop_;
  Options options_;
  std::map<ObjectKey, StoredObject> objects_;
  std::deque<EventRecord> log_;
  std::uint64_t seq_ = 0;
  std::uint64_t compacted_before_ = 1;  // seq of the oldest retained record
  std::vector<LogSink> sinks_;
  std::map<std::uint64_t, Watcher> watchers_;
  std::uint64_t next_watch_id_ = 1;
};

}  // namespace tenancy::runtime
