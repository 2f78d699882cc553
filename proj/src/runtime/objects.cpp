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

#include "tenancy/runtime/objects.hpp"

namespace tenancy::runtime {

namespace {

constexpr const char* kKindNames[] = {
    "Tenant",       "TenantRequest", "Subnamespace",   "Slice",
    "SliceClaim",   "RoleRequest",   "ClusterRoleRequest", "Role",
    "RoleBinding",  "NetworkPolicy", "LimitRange",     "Secret",
    "ConfigMap",    "ServiceAccount", "Node",          "Pod",
    "NamespaceRecord",
};
constexpr int kKindCount = 17;

Json labels_to_json(const std::map<std::string, std::string>& labels) {
  Json j = Json::object();
  for (const auto& [k, v] : labels) j[k] = v;
  return j;
}

std::map<std::string, std::string> labels_from_json(const Json& j) {
  std::map<std::string, std::string> out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

Json string_set_to_json(const std::set<std::string>& s) {
  Json j = Json::array();
  for (const auto& v : s) j.push_back(v);
  return j;
}

std::set<std::string> string_set_from_json(const Json& j) {
  std::set<std::string> out;
  if (j.is_array()) {
    for (const auto& v : j) out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace

const char* kind_name(Kind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<Kind> kind_from_name(std::string_view name) {
  for (int i = 0; i < kKindCount; ++i) {
    if (name == kKindNames[i]) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

bool kind_cluster_scoped(Kind k) {
  switch (k) {
    case Kind::Tenant:
    case Kind::TenantRequest:
    case Kind::Slice:
    case Kind::ClusterRoleRequest:
    case Kind::Node:
    case Kind::NamespaceRecord:
      return true;
    default:
      return false;
  }
}

bool kind_scope_optional(Kind k) { return k == Kind::Role || k == Kind::RoleBinding; }

const std::set<Kind>& inheritable_kinds() {
  static const std::set<Kind> kSet = {Kind::Role,   Kind::RoleBinding, Kind::NetworkPolicy,
                                      Kind::LimitRange, Kind::Secret,  Kind::ConfigMap,
                                      Kind::ServiceAccount};
  return kSet;
}

std::string ObjectKey::to_string() const {
  std::string s = kind_name(kind);
  s += "/";
  if (!ns.empty()) {
    s += ns;
    s += "/";
  }
  s += name;
  return s;
}

const char* event_op_name(EventOp op) {
  switch (op) {
    case EventOp::Create: return "create";
    case EventOp::Update: return "update";
    case EventOp::Delete: return "delete";
  }
  return "create";
}

std::optional<EventOp> event_op_from_name(std::string_view name) {
  if (name == "create") return EventOp::Create;
  if (name == "update") return EventOp::Update;
  if (name == "delete") return EventOp::Delete;
  return std::nullopt;
}

Json to_json(const ResourceVector& v) {
  Json j = Json::object();
  j["cpu"] = v.cpu;
  j["memory"] = v.memory;
  j["local_storage"] = v.local_storage;
  j["ephemeral_storage"] = v.ephemeral_storage;
  j["bandwidth"] = v.bandwidth;
  return j;
}

ResourceVector resource_vector_from_json(const Json& j) {
  ResourceVector v;
  v.cpu = j.value("cpu", std::int64_t{0});
  v.memory = j.value("memory", std::int64_t{0});
  v.local_storage = j.value("local_storage", std::int64_t{0});
  v.ephemeral_storage = j.value("ephemeral_storage", std::int64_t{0});
  v.bandwidth = j.value("bandwidth", std::int64_t{0});
  return v;
}

Json to_json(const ObjectMeta& m) {
  Json j = Json::object();
  j["name"] = m.name;
  j["uid"] = m.uid.value;
  j["labels"] = labels_to_json(m.labels);
  j["created_at"] = m.created_at;
  j["phase"] = phase_name(m.phase);
  if (m.failure_reason) j["failure_reason"] = *m.failure_reason;
  return j;
}

ObjectMeta object_meta_from_json(const Json& j) {
  ObjectMeta m;
  m.name = j.value("name", std::string{});
  m.uid = Uid{j.value("uid", std::string{})};
  m.labels = labels_from_json(j.value("labels", Json::object()));
  m.created_at = j.value("created_at", std::int64_t{0});
  m.phase = phase_from_name(j.value("phase", std::string{"Pending"})).value_or(Phase::Pending);
  if (j.contains("failure_reason")) m.failure_reason = j["failure_reason"].get<std::string>();
  return m;
}

Json to_json(const StoredObject& o) {
  Json j = Json::object();
  j["kind"] = kind_name(o.kind);
  j["meta"] = to_json(o.meta);
  if (o.ns) j["namespace"] = *o.ns;
  j["spec"] = o.spec;
  j["resource_version"] = o.resource_version;
  return j;
}

StoredObject stored_object_from_json(const Json& j) {
  StoredObject o;
  o.kind = kind_from_name(j.value("kind", std::string{"Tenant"})).value_or(Kind::Tenant);
  o.meta = object_meta_from_json(j.value("meta", Json::object()));
  if (j.contains("namespace")) o.ns = j["namespace"].get<std::string>();
  o.spec = j.value("spec", Json::object());
  o.resource_version = j.value("resource_version", std::uint64_t{0});
  return o;
}

Json to_json(const EventRecord& r) {
  Json j = Json::object();
  j["seq"] = r.seq;
  j["at"] = r.at;
  j["op"] = event_op_name(r.op);
  j["object"] = to_json(r.object);
  return j;
}

EventRecord event_record_from_json(const Json& j) {
  EventRecord r;
  r.seq = j.value("seq", std::uint64_t{0});
  r.at = j.value("at", std::int64_t{0});
  r.op = event_op_from_name(j.value("op", std::string{"create"})).value_or(EventOp::Create);
  r.object = stored_object_from_json(j.value("object", Json::object()));
  return r;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Pending: return "Pending";
    case Decision::Approved: return "Approved";
    case Decision::Denied: return "Denied";
  }
  return "Pending";
}

std::optional<Decision> decision_from_name(std::string_view name) {
  if (name == "Pending") return Decision::Pending;
  if (name == "Approved") return Decision::Approved;
  if (name == "Denied") return Decision::Denied;
  return std::nullopt;
}

namespace {

Json quota_deltas_to_json(const std::vector<QuotaDelta>& deltas) {
  Json arr = Json::array();
  for (const auto& d : deltas) {
    Json j = Json::object();
    j["amount"] = to_json(d.amount);
    if (d.expires_at) j["expires_at"] = *d.expires_at;
    j["reason"] = d.reason;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<QuotaDelta> quota_deltas_from_json(const Json& j) {
  std::vector<QuotaDelta> out;
  if (!j.is_array()) return out;
  for (const auto& e : j) {
    QuotaDelta d;
    d.amount = resource_vector_from_json(e.value("amount", Json::object()));
    if (e.contains("expires_at")) d.expires_at = e["expires_at"].get<std::int64_t>();
    d.reason = e.value("reason", std::string{});
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

Json TenantRequestSpec::to_json() const {
  Json j = Json::object();
  j["owner"] = owner;
  j["cluster_network_policy"] = cluster_network_policy;
  if (quota) j["quota"] = runtime::to_json(*quota);
  j["decision"] = decision_name(decision);
  if (!decided_by.empty()) j["decided_by"] = decided_by;
  return j;
}

TenantRequestSpec TenantRequestSpec::from_json(const Json& j) {
  TenantRequestSpec s;
  s.owner = j.value("owner", std::string{});
  s.cluster_network_policy = j.value("cluster_network_policy", false);
  if (j.contains("quota")) s.quota = resource_vector_from_json(j["quota"]);
  s.decision =
      decision_from_name(j.value("decision", std::string{"Pending"})).value_or(Decision::Pending);
  s.decided_by = j.value("decided_by", std::string{});
  return s;
}

TenantQuotaLedger TenantSpec::ledger(const std::string& tenant) const {
  TenantQuotaLedger l;
  l.tenant = tenant;
  l.base = quota.value_or(ResourceVector{});
  l.deltas = quota_deltas;
  return l;
}

Json TenantSpec::to_json() const {
  Json j = Json::object();
  j["owner"] = owner;
  j["cluster_network_policy"] = cluster_network_policy;
  if (quota) j["quota"] = runtime::to_json(*quota);
  if (!quota_deltas.empty()) j["quota_deltas"] = quota_deltas_to_json(quota_deltas);
  return j;
}

TenantSpec TenantSpec::from_json(const Json& j) {
  TenantSpec s;
  s.owner = j.value("owner", std::string{});
  s.cluster_network_policy = j.value("cluster_network_policy", false);
  if (j.contains("quota")) s.quota = resource_vector_from_json(j["quota"]);
  if (j.contains("quota_deltas")) s.quota_deltas = quota_deltas_from_json(j["quota_deltas"]);
  return s;
}

Json SubnamespaceSpec::to_json() const {
  Json j = Json::object();
  j["requested_name"] = requested_name;
  j["parent"] = parent;
  j["mode"] = mode_name(mode);
  j["scope"] = scope_name(scope);
  Json inh = Json::array();
  for (Kind k : inherit) inh.push_back(kind_name(k));
  j["inherit"] = std::move(inh);
  j["sync"] = sync;
  if (owner) j["owner"] = *owner;
  if (quota) j["quota"] = runtime::to_json(*quota);
  if (slice_claim) j["slice_claim"] = *slice_claim;
  if (requester) j["requester"] = *requester;
  if (child_namespace) j["child_namespace"] = *child_namespace;
  return j;
}

SubnamespaceSpec SubnamespaceSpec::from_json(const Json& j) {
  SubnamespaceSpec s;
  s.requested_name = j.value("requested_name", std::string{});
  s.parent = j.value("parent", std::string{});
  s.mode = j.value("mode", std::string{"Workspace"}) == "Subtenant" ? SubnamespaceMode::Subtenant
                                                                    : SubnamespaceMode::Workspace;
  s.scope = j.value("scope", std::string{"Local"}) == "Federated" ? NameScope::Federated
                                                                  : NameScope::Local;
  if (j.contains("inherit")) {
    for (const auto& e : j["inherit"]) {
      if (auto k = kind_from_name(e.get<std::string>())) s.inherit.insert(*k);
    }
  }
  s.sync = j.value("sync", false);
  if (j.contains("owner")) s.owner = j["owner"].get<std::string>();
  if (j.contains("quota")) s.quota = resource_vector_from_json(j["quota"]);
  if (j.contains("slice_claim")) s.slice_claim = j["slice_claim"].get<std::string>();
  if (j.contains("requester")) s.requester = j["requester"].get<std::string>();
  if (j.contains("child_namespace")) s.child_namespace = j["child_namespace"].get<std::string>();
  return s;
}

Json RoleRule::to_json() const {
  Json j = Json::object();
  j["verbs"] = string_set_to_json(verbs);
  j["kinds"] = string_set_to_json(kinds);
  return j;
}

RoleRule RoleRule::from_json(const Json& j) {
  RoleRule r;
  r.verbs = string_set_from_json(j.value("verbs", Json::array()));
  r.kinds = string_set_from_json(j.value("kinds", Json::array()));
  return r;
}

Json RoleSpec::to_json() const {
  Json j = Json::object();
  Json arr = Json::array();
  for (const auto& r : rules) arr.push_back(r.to_json());
  j["rules"] = std::move(arr);
  return j;
}

RoleSpec RoleSpec::from_json(const Json& j) {
  RoleSpec s;
  if (j.contains("rules")) {
    for (const auto& e : j["rules"]) s.rules.push_back(RoleRule::from_json(e));
  }
  return s;
}

const char* role_ref_scope_name(RoleRefScope s) {
  return s == RoleRefScope::Namespace ? "Namespace" : "Cluster";
}

Json RoleBindingSpec::to_json() const {
  Json j = Json::object();
  j["user"] = user;
  j["role"] = role;
  j["role_scope"] = role_ref_scope_name(role_scope);
  j["origin"] = origin;
  return j;
}

RoleBindingSpec RoleBindingSpec::from_json(const Json& j) {
  RoleBindingSpec s;
  s.user = j.value("user", std::string{});
  s.role = j.value("role", std::string{});
  s.role_scope = j.value("role_scope", std::string{"Namespace"}) == "Cluster"
                     ? RoleRefScope::Cluster
                     : RoleRefScope::Namespace;
  s.origin = j.value("origin", std::string{});
  return s;
}

Json RoleRequestSpec::to_json() const {
  Json j = Json::object();
  j["user"] = user;
  j["role"] = role;
  j["role_scope"] = role_ref_scope_name(role_scope);
  j["status"] = decision_name(status);
  if (!decided_by.empty()) j["decided_by"] = decided_by;
  return j;
}

RoleRequestSpec RoleRequestSpec::from_json(const Json& j) {
  RoleRequestSpec s;
  s.user = j.value("user", std::string{});
  s.role = j.value("role", std::string{});
  s.role_scope = j.value("role_scope", std::string{"Namespace"}) == "Cluster"
                     ? RoleRefScope::Cluster
                     : RoleRefScope::Namespace;
  s.status =
      decision_from_name(j.value("status", std::string{"Pending"})).value_or(Decision::Pending);
  s.decided_by = j.value("decided_by", std::string{});
  return s;
}

Json ClusterRoleRequestSpec::to_json() const {
  Json j = Json::object();
  j["user"] = user;
  j["role"] = role;
  j["status"] = decision_name(status);
  if (!decided_by.empty()) j["decided_by"] = decided_by;
  return j;
}

ClusterRoleRequestSpec ClusterRoleRequestSpec::from_json(const Json& j) {
  ClusterRoleRequestSpec s;
  s.user = j.value("user", std::string{});
  s.role = j.value("role", std::string{});
  s.status =
      decision_from_name(j.value("status", std::string{"Pending"})).value_or(Decision::Pending);
  s.decided_by = j.value("decided_by", std::string{});
  return s;
}

const char* slice_phase_name(SlicePhase p) {
  switch (p) {
    case SlicePhase::Provisioning: return "Provisioning";
    case SlicePhase::PreReserved: return "PreReserved";
    case SlicePhase::Bound: return "Bound";
    case SlicePhase::Failed: return "Failed";
    case SlicePhase::Terminating: return "Terminating";
  }
  return "Provisioning";
}

std::optional<SlicePhase> slice_phase_from_name(std::string_view name) {
  for (SlicePhase p : {SlicePhase::Provisioning, SlicePhase::PreReserved, SlicePhase::Bound,
                       SlicePhase::Failed, SlicePhase::Terminating}) {
    if (name == slice_phase_name(p)) return p;
  }
  return std::nullopt;
}

Json SliceSelector::to_json() const {
  Json j = Json::object();
  j["labels"] = labels_to_json(labels);
  j["node_count"] = node_count;
  j["resources"] = runtime::to_json(resources);
  return j;
}

SliceSelector SliceSelector::from_json(const Json& j) {
  SliceSelector s;
  s.labels = labels_from_json(j.value("labels", Json::object()));
  s.node_count = j.value("node_count", std::int64_t{1});
  s.resources = resource_vector_from_json(j.value("resources", Json::object()));
  return s;
}

Json SliceSpec::to_json() const {
  Json j = Json::object();
  j["selector"] = selector.to_json();
  j["phase"] = slice_phase_name(phase);
  j["nodes"] = string_set_to_json(nodes);
  if (bound_namespace) j["bound_namespace"] = *bound_namespace;
  j["grace_period_ms"] = grace_period_ms;
  if (!failure_reason.empty()) j["failure_reason"] = failure_reason;
  return j;
}

SliceSpec SliceSpec::from_json(const Json& j) {
  SliceSpec s;
  s.selector = SliceSelector::from_json(j.value("selector", Json::object()));
  s.phase = slice_phase_from_name(j.value("phase", std::string{"Provisioning"}))
                .value_or(SlicePhase::Provisioning);
  s.nodes = string_set_from_json(j.value("nodes", Json::array()));
  if (j.contains("bound_namespace")) s.bound_namespace = j["bound_namespace"].get<std::string>();
  s.grace_period_ms = j.value("grace_period_ms", std::int64_t{60000});
  s.failure_reason = j.value("failure_reason", std::string{});
  return s;
}

const char* claim_mode_name(ClaimMode m) { return m == ClaimMode::Dynamic ? "Dynamic" : "Manual"; }

const char* claim_phase_name(ClaimPhase p) {
  switch (p) {
    case ClaimPhase::Pending: return "Pending";
    case ClaimPhase::Requested: return "Requested";
    case ClaimPhase::Bound: return "Bound";
    case ClaimPhase::Failed: return "Failed";
  }
  return "Pending";
}

std::optional<ClaimPhase> claim_phase_from_name(std::string_view name) {
  for (ClaimPhase p :
       {ClaimPhase::Pending, ClaimPhase::Requested, ClaimPhase::Bound, ClaimPhase::Failed}) {
    if (name == claim_phase_name(p)) return p;
  }
  return std::nullopt;
}

Json SliceClaimSpec::to_json() const {
  Json j = Json::object();
  j["mode"] = claim_mode_name(mode);
  j["slice_name"] = slice_name;
  j["requested"] = requested.to_json();
  j["phase"] = claim_phase_name(phase);
  if (!reason.empty()) j["reason"] = reason;
  if (charged) j["charged"] = runtime::to_json(*charged);
  return j;
}

SliceClaimSpec SliceClaimSpec::from_json(const Json& j) {
  SliceClaimSpec s;
  s.mode = j.value("mode", std::string{"Dynamic"}) == "Manual" ? ClaimMode::Manual
                                                               : ClaimMode::Dynamic;
  s.slice_name = j.value("slice_name", std::string{});
  s.requested = SliceSelector::from_json(j.value("requested", Json::object()));
  s.phase =
      claim_phase_from_name(j.value("phase", std::string{"Pending"})).value_or(ClaimPhase::Pending);
  s.reason = j.value("reason", std::string{});
  if (j.contains("charged")) s.charged = resource_vector_from_json(j["charged"]);
  return s;
}

const char* node_state_name(NodeState s) {
  switch (s) {
    case NodeState::Shared: return "Shared";
    case NodeState::PreReserved: return "PreReserved";
    case NodeState::Reserved: return "Reserved";
  }
  return "Shared";
}

Json NodeSpec::to_json() const {
  Json j = Json::object();
  j["labels"] = labels_to_json(labels);
  j["capacity"] = runtime::to_json(capacity);
  j["state"] = node_state_name(state);
  if (!slice.empty()) j["slice"] = slice;
  j["resident"] = string_set_to_json(resident);
  j["allocated"] = runtime::to_json(allocated);
  return j;
}

NodeSpec NodeSpec::from_json(const Json& j) {
  NodeSpec s;
  s.labels = labels_from_json(j.value("labels", Json::object()));
  s.capacity = resource_vector_from_json(j.value("capacity", Json::object()));
  std::string st = j.value("state", std::string{"Shared"});
  s.state = st == "PreReserved" ? NodeState::PreReserved
            : st == "Reserved"  ? NodeState::Reserved
                                : NodeState::Shared;
  s.slice = j.value("slice", std::string{});
  s.resident = string_set_from_json(j.value("resident", Json::array()));
  s.allocated = resource_vector_from_json(j.value("allocated", Json::object()));
  return s;
}

const char* pod_phase_name(PodPhase p) {
  switch (p) {
    case PodPhase::Pending: return "Pending";
    case PodPhase::Scheduled: return "Scheduled";
    case PodPhase::Terminating: return "Terminating";
    case PodPhase::Gone: return "Gone";
  }
  return "Pending";
}

std::optional<PodPhase> pod_phase_from_name(std::string_view name) {
  for (PodPhase p :
       {PodPhase::Pending, PodPhase::Scheduled, PodPhase::Terminating, PodPhase::Gone}) {
    if (name == pod_phase_name(p)) return p;
  }
  return std::nullopt;
}

Json PodSpec::to_json() const {
  Json j = Json::object();
  j["runtime_class"] = runtime_class;
  j["request"] = runtime::to_json(request);
  if (node) j["node"] = *node;
  j["phase"] = pod_phase_name(phase);
  return j;
}

PodSpec PodSpec::from_json(const Json& j) {
  PodSpec s;
  s.runtime_class = j.value("runtime_class", std::string{});
  s.request = resource_vector_from_json(j.value("request", Json::object()));
  if (j.contains("node")) s.node = j["node"].get<std::string>();
  s.phase =
      pod_phase_from_name(j.value("phase", std::string{"Pending"})).value_or(PodPhase::Pending);
  return s;
}

Json namespace_node_to_json(const NamespaceNode& n) {
  Json j = Json::object();
  j["kind"] = namespace_kind_name(n.kind);
  j["tenant"] = n.tenant;
  if (n.parent) j["parent"] = *n.parent;
  j["mode"] = mode_name(n.mode);
  j["scope"] = scope_name(n.scope);
  j["quota"] = to_json(n.quota);
  j["usage"] = to_json(n.usage);
  j["network_policy_confined"] = n.network_policy_confined;
  j["rbac_inherited"] = n.rbac_inherited;
  if (n.owner_handle) j["owner_handle"] = *n.owner_handle;
  return j;
}

NamespaceNode namespace_node_from_json(const ObjectMeta& meta, const Json& j) {
  NamespaceNode n;
  n.meta = meta;
  n.kind = j.value("kind", std::string{"core"}) == "sub" ? NamespaceKind::Sub
                                                         : NamespaceKind::Core;
  n.tenant = j.value("tenant", std::string{});
  if (j.contains("parent")) n.parent = j["parent"].get<std::string>();
  n.mode = j.value("mode", std::string{"Workspace"}) == "Subtenant" ? SubnamespaceMode::Subtenant
                                                                    : SubnamespaceMode::Workspace;
  n.scope = j.value("scope", std::string{"Local"}) == "Federated" ? NameScope::Federated
                                                                  : NameScope::Local;
  n.quota = resource_vector_from_json(j.value("quota", Json::object()));
  n.usage = resource_vector_from_json(j.value("usage", Json::object()));
  n.network_policy_confined = j.value("network_policy_confined", false);
  n.rbac_inherited = j.value("rbac_inherited", false);
  if (j.contains("owner_handle")) n.owner_handle = j["owner_handle"].get<std::string>();
  return n;
}

StoredObject make_namespace_record(const NamespaceNode& node) {
  StoredObject o;
  o.kind = Kind::NamespaceRecord;
  o.meta = node.meta;
  o.spec = namespace_node_to_json(node);
  return o;
}

NamespaceNode namespace_node_from_record(const StoredObject& o) {
  return namespace_node_from_json(o.meta, o.spec);
}

StoredObject make_opaque_object(Kind kind, std::string ns, std::string name, Json data) {
  StoredObject o;
  o.kind = kind;
  o.meta.name = std::move(name);
  if (!ns.empty()) o.ns = std::move(ns);
  o.spec = Json::object();
  o.spec["data"] = std::move(data);
  return o;
}

}  // namespace tenancy::runtime
