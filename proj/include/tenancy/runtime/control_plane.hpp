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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tenancy/core/namespace_tree.hpp"
#include "tenancy/naming/naming.hpp"
#include "tenancy/runtime/client.hpp"
#include "tenancy/runtime/controller.hpp"
#include "tenancy/runtime/event_log.hpp"
#include "tenancy/runtime/latency_model.hpp"
#include "tenancy/runtime/sim_clock.hpp"
#include "tenancy/runtime/store.hpp"

namespace tenancy::runtime {

struct PlaneOptions {
  std::uint64_t seed = 42;
  ControllerConfig controller;  // applied to every controller
  LatencyModel latency;
  std::size_t namespace_threshold = 10000;
  std::size_t in_memory_log_limit = 0;
  std::string event_log_path;  // empty: no persistence
  naming::DigestFn digest;     // empty: SHA-256
  bool install_controllers = true;
  bool seed_provider_roles = true;
};

/// The single-process control plane: event loop, store, admission-wired
/// write path, controllers, and the deterministic identity sources. One
/// instance serves every tenant; per-tenant state is namespaces, labels,
/// and bindings, never processes.
class ControlPlane {
 public:
  explicit ControlPlane(PlaneOptions options);
  ~ControlPlane();

  ControlPlane(const ControlPlane&) = delete;
  ControlPlane& operator=(const ControlPlane&) = delete;

  EventLoop& loop() { return loop_; }
  Store& store() { return *store_; }
  const Store& store() const { return *store_; }
  ServiceChannel& channel() { return channel_; }
  const PlaneOptions& options() const { return options_; }
  const Uid& cluster_uid() const { return cluster_uid_; }
  const naming::DigestFn& digest() const { return digest_; }

  Uid fresh_uid();

  /// Unthrottled administrative client (still queues on the service
  /// channel).
  Client& system_client() { return *system_client_; }

  /// The serialized write path: admission on policy-bearing kinds, then
  /// pod accounting companions, then an atomic store apply.
  Result<std::uint64_t> submit(std::vector<WriteOp> batch, SimTime at);

  Controller& add_controller(std::string name, Kind primary, ReconcileFn fn);
  Controller* controller(const std::string& name);
  std::vector<Controller*> controllers();

  void start();
  bool started() const { return started_; }
  void run_until_quiescent() { loop_.run_until_quiescent(); }

  /// Rebuilds the namespace hierarchy from the live NamespaceRecords.
  NamespaceTree load_tree() const;
  std::optional<NamespaceNode> namespace_node(const std::string& ns) const;
  std::optional<TenantSpec> tenant_spec(const std::string& tenant) const;

  std::uint64_t admission_calls(Kind kind) const;

  /// Loads a previously written event log, restoring objects, seq, clock,
  /// and known UIDs. Must run before start().
  Result<std::size_t> replay_log(const std::string& path);

 private:
  void seed_provider_roles();

  PlaneOptions options_;
  EventLoop loop_;
  ServiceChannel channel_;
  std::unique_ptr<Store> store_;
  naming::DigestFn digest_;
  Uid cluster_uid_;
  UidGenerator uid_gen_;
  std::set<std::string> used_uids_;
  std::unique_ptr<Client> system_client_;
  std::unique_ptr<EventLogWriter> log_writer_;
  std::vector<std::unique_ptr<Controller>> controllers_;
  std::map<Kind, std::uint64_t> admission_calls_;
  bool started_ = false;
};

}  // namespace tenancy::runtime
