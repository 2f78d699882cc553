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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tenancy/core/namespace_tree.hpp"
#include "tenancy/core/object_meta.hpp"
#include "tenancy/core/quota_ledger.hpp"
#include "tenancy/core/resource_vector.hpp"
#include "tenancy/core/result.hpp"

namespace tenancy::runtime {

using Json = nlohmann::ordered_json;

enum class Kind {
  Tenant,
  TenantRequest,
  Subnamespace,
  Slice,
  SliceClaim,
  RoleRequest,
  ClusterRoleRequest,
  Role,
  RoleBinding,
  NetworkPolicy,
  LimitRange,
  Secret,
  ConfigMap,
  ServiceAccount,
  Node,
  Pod,
  NamespaceRecord,
};

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(std::string_view name);

/// Kinds that never carry a namespace.
bool kind_cluster_scoped(Kind k);
/// Role and RoleBinding are normally namespaced but may appear without a
/// namespace, standing in for their cluster-wide flavors.
bool kind_scope_optional(Kind k);

/// Object kinds that can be inherited from a parent namespace into a child.
const std::set<Kind>& inheritable_kinds();

struct ObjectKey {
  Kind kind = Kind::Tenant;
  std::string ns;  // empty for cluster-scoped objects
  std::string name;

  friend auto operator<=>(const ObjectKey&, const ObjectKey&) = default;
  std::string to_string() const;
};

/// Uniform envelope for every control plane object. `spec` holds the
/// kind-specific payload as canonical JSON so that copies, diffs, and log
/// replay are byte-exact.
struct StoredObject {
  Kind kind = Kind::Tenant;
  ObjectMeta meta;
  std::optional<std::string> ns;
  Json spec;
  std::uint64_t resource_version = 0;

  ObjectKey key() const { return ObjectKey{kind, ns.value_or(""), meta.name}; }
};

enum class EventOp { Create, Update, Delete };
const char* event_op_name(EventOp op);
std::optional<EventOp> event_op_from_name(std::string_view name);

/// One append-only log entry. seq is gapless from 1; replaying all records
/// reproduces the exact live-object set.
struct EventRecord {
  std::uint64_t seq = 0;
  SimTime at = 0;
  EventOp op = EventOp::Create;
  StoredObject object;
};

// --- JSON codecs -----------------------------------------------------------

Json to_json(const ResourceVector& v);
ResourceVector resource_vector_from_json(const Json& j);

Json to_json(const ObjectMeta& m);
ObjectMeta object_meta_from_json(const Json& j);

Json to_json(const StoredObject& o);
StoredObject stored_object_from_json(const Json& j);

/// Fixed field order {"seq","at","op","object"}; integers decimal.
Json to_json(const EventRecord& r);
EventRecord event_record_from_json(const Json& j);

// --- Typed specs ------------------------------------------------------------

enum class Decision { Pending, Approved, Denied };
const char* decision_name(Decision d);
std::optional<Decision> decision_from_name(std::string_view name);

struct TenantRequestSpec {
  std::string owner;  // user identity
  bool cluster_network_policy = false;
  std::optional<ResourceVector> quota;
  Decision decision = Decision::Pending;
  std::string decided_by;

  Json to_json() const;
  static TenantRequestSpec from_json(const Json& j);
};

struct TenantSpec {
  std::string owner;
  bool cluster_network_policy = false;
  std::optional<ResourceVector> quota;       // ledger base; absent = no enforcement
  std::vector<QuotaDelta> quota_deltas;

  bool quota_enforced() const { return quota.has_value(); }
  TenantQuotaLedger ledger(const std::string& tenant) const;

  Json to_json() const;
  static TenantSpec from_json(const Json& j);
};

struct SubnamespaceSpec {
  std::string requested_name;
  std::string parent;
  SubnamespaceMode mode = SubnamespaceMode::Workspace;
  NameScope scope = NameScope::Local;
  std::set<Kind> inherit;
  bool sync = false;
  std::optional<std::string> owner;
  std::optional<ResourceVector> quota;
  std::optional<std::string> slice_claim;
  std::optional<std::string> requester;
  // Filled by the controller once the namespace exists.
  std::optional<std::string> child_namespace;

  bool inherits_rbac() const {
    return inherit.count(Kind::Role) > 0 && inherit.count(Kind::RoleBinding) > 0;
  }

  Json to_json() const;
  static SubnamespaceSpec from_json(const Json& j);
};

struct RoleRule {
  std::set<std::string> verbs;  // "*" allowed
  std::set<std::string> kinds;  // kind names, "*" allowed

  Json to_json() const;
  static RoleRule from_json(const Json& j);
};

struct RoleSpec {
  std::vector<RoleRule> rules;

  Json to_json() const;
  static RoleSpec from_json(const Json& j);
};

enum class RoleRefScope { Namespace, Cluster };
const char* role_ref_scope_name(RoleRefScope s);

struct RoleBindingSpec {
  std::string user;
  std::string role;
  RoleRefScope role_scope = RoleRefScope::Namespace;
  std::string origin;  // which reconcile or request created this binding

  Json to_json() const;
  static RoleBindingSpec from_json(const Json& j);
};

struct RoleRequestSpec {
  std::string user;
  std::string role;
  RoleRefScope role_scope = RoleRefScope::Namespace;
  Decision status = Decision::Pending;
  std::string decided_by;

  Json to_json() const;
  static RoleRequestSpec from_json(const Json& j);
};

struct ClusterRoleRequestSpec {
  std::string user;
  std::string role;
  Decision status = Decision::Pending;
  std::string decided_by;

  Json to_json() const;
  static ClusterRoleRequestSpec from_json(const Json& j);
};

enum class SlicePhase { Provisioning, PreReserved, Bound, Failed, Terminating };
const char* slice_phase_name(SlicePhase p);
std::optional<SlicePhase> slice_phase_from_name(std::string_view name);

struct SliceSelector {
  std::map<std::string, std::string> labels;
  std::int64_t node_count = 1;
  ResourceVector resources;  // minimum per node

  Json to_json() const;
  static SliceSelector from_json(const Json& j);
};

struct SliceSpec {
  SliceSelector selector;
  SlicePhase phase = SlicePhase::Provisioning;
  std::set<std::string> nodes;
  std::optional<std::string> bound_namespace;
  std::int64_t grace_period_ms = 60000;
  std::string failure_reason;

  Json to_json() const;
  static SliceSpec from_json(const Json& j);
};

enum class ClaimMode { Dynamic, Manual };
const char* claim_mode_name(ClaimMode m);

enum class ClaimPhase { Pending, Requested, Bound, Failed };
const char* claim_phase_name(ClaimPhase p);
std::optional<ClaimPhase> claim_phase_from_name(std::string_view name);

struct SliceClaimSpec {
  ClaimMode mode = ClaimMode::Dynamic;
  std::string slice_name;
  SliceSelector requested;
  ClaimPhase phase = ClaimPhase::Pending;
  std::string reason;
  std::optional<ResourceVector> charged;  // namespace usage charged at bind

  Json to_json() const;
  static SliceClaimSpec from_json(const Json& j);
};

enum class NodeState { Shared, PreReserved, Reserved };
const char* node_state_name(NodeState s);

struct NodeSpec {
  std::map<std::string, std::string> labels;
  ResourceVector capacity;
  NodeState state = NodeState::Shared;
  std::string slice;  // owning slice when state != Shared
  std::set<std::string> resident;  // pod "ns/name" keys
  ResourceVector allocated;

  Json to_json() const;
  static NodeSpec from_json(const Json& j);
};

enum class PodPhase { Pending, Scheduled, Terminating, Gone };
const char* pod_phase_name(PodPhase p);
std::optional<PodPhase> pod_phase_from_name(std::string_view name);

struct PodSpec {
  std::string runtime_class;
  ResourceVector request;
  std::optional<std::string> node;
  PodPhase phase = PodPhase::Pending;

  Json to_json() const;
  static PodSpec from_json(const Json& j);
};

/// Persistent form of a NamespaceNode; the spec payload of NamespaceRecord
/// objects. The record's meta carries the four tenancy labels.
Json namespace_node_to_json(const NamespaceNode& n);
NamespaceNode namespace_node_from_json(const ObjectMeta& meta, const Json& j);

StoredObject make_namespace_record(const NamespaceNode& node);
NamespaceNode namespace_node_from_record(const StoredObject& o);

/// Opaque payload kinds (NetworkPolicy, LimitRange, Secret, ConfigMap,
/// ServiceAccount) keep their spec as free-form JSON under {"data":...}.
StoredObject make_opaque_object(Kind kind, std::string ns, std::string name, Json data);

}  // namespace tenancy::runtime
