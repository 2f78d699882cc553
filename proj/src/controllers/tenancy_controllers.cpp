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

#include "tenancy/controllers/tenancy_controllers.hpp"

#include <algorithm>

#include "tenancy/naming/naming.hpp"
#include "tenancy/rbac/rbac.hpp"

namespace tenancy::controllers {

using namespace tenancy::runtime;

namespace {

constexpr const char* kOriginRequestUidLabel = "origin-request-uid";

StoredObject set_meta_phase(StoredObject o, Phase phase, std::optional<std::string> reason) {
  o.meta.phase = phase;
  o.meta.failure_reason = std::move(reason);
  return o;
}

ReconcileOutcome finalize_phase(ReconcileContext& ctx, const StoredObject& obj, Phase phase,
                                std::optional<std::string> reason) {
  auto r = ctx.client.update(set_meta_phase(obj, phase, std::move(reason)));
  if (!r.ok()) return requeue(r.error().to_string());
  return converged();
}

// --- tenant request --------------------------------------------------------

ReconcileOutcome reconcile_tenant_request(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  const StoredObject* obj = store.find({Kind::TenantRequest, "", key});
  if (obj == nullptr) return converged();
  if (obj->meta.phase == Phase::Established || obj->meta.phase == Phase::Failed) {
    return converged();
  }
  auto spec = TenantRequestSpec::from_json(obj->spec);
  if (spec.decision == Decision::Pending) return converged();
  if (spec.decision == Decision::Denied) {
    return finalize_phase(ctx, *obj, Phase::Failed, "denied");
  }

  const StoredObject* tenant = store.find({Kind::Tenant, "", key});
  if (tenant != nullptr) {
    auto it = tenant->meta.labels.find(kOriginRequestUidLabel);
    if (it != tenant->meta.labels.end() && it->second == obj->meta.uid.value) {
      return finalize_phase(ctx, *obj, Phase::Established, std::nullopt);
    }
    return finalize_phase(ctx, *obj, Phase::Failed, "DuplicateTenantName");
  }
  // A foreign namespace already holding the name also blocks the tenant.
  if (store.find({Kind::NamespaceRecord, "", key}) != nullptr) {
    return finalize_phase(ctx, *obj, Phase::Failed, "DuplicateTenantName");
  }

  StoredObject t;
  t.kind = Kind::Tenant;
  t.meta.name = key;
  t.meta.labels[kOriginRequestUidLabel] = obj->meta.uid.value;
  TenantSpec tenant_spec;
  tenant_spec.owner = spec.owner;
  tenant_spec.cluster_network_policy = spec.cluster_network_policy;
  tenant_spec.quota = spec.quota;
  t.spec = tenant_spec.to_json();
  if (auto r = ctx.client.create(std::move(t)); !r.ok()) {
    return requeue(r.error().to_string());
  }
  return finalize_phase(ctx, *obj, Phase::Established, std::nullopt);
}

// --- tenant -----------------------------------------------------------------

ReconcileOutcome reconcile_tenant(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  const StoredObject* obj = store.find({Kind::Tenant, "", key});
  if (obj == nullptr) return converged();
  if (obj->meta.phase == Phase::Failed || obj->meta.phase == Phase::Terminating) {
    return converged();
  }
  auto spec = TenantSpec::from_json(obj->spec);

  const StoredObject* rec = store.find({Kind::NamespaceRecord, "", key});
  std::string tenant_uid;
  if (rec == nullptr) {
    tenant_uid = ctx.plane.fresh_uid().value;
    NamespaceNode node;
    node.meta.name = key;
    node.meta.phase = Phase::Established;
    node.meta.labels = {{kLabelKind, "core"},
                        {kLabelTenant, key},
                        {kLabelTenantUid, tenant_uid},
                        {kLabelClusterUid, ctx.plane.cluster_uid().value}};
    node.kind = NamespaceKind::Core;
    node.tenant = key;
    node.quota = spec.quota.value_or(ResourceVector{});
    node.network_policy_confined = spec.cluster_network_policy;
    auto created = ctx.client.create(make_namespace_record(node));
    if (!created.ok()) {
      if (created.error().code == Errc::threshold_exceeded) {
        return finalize_phase(ctx, *obj, Phase::Failed, "threshold exceeded");
      }
      return requeue(created.error().to_string());
    }
  } else {
    tenant_uid = rec->meta.labels.count(kLabelTenantUid) ? rec->meta.labels.at(kLabelTenantUid)
                                                         : "";
  }

  // Owner binding: full control, scoped to the core namespace only.
  ObjectKey binding_key{Kind::RoleBinding, key, kOwnerBindingName};
  const StoredObject* binding = store.find(binding_key);
  if (binding == nullptr) {
    StoredObject b;
    b.kind = Kind::RoleBinding;
    b.ns = key;
    b.meta.name = kOwnerBindingName;
    b.meta.phase = Phase::Established;
    RoleBindingSpec bspec;
    bspec.user = spec.owner;
    bspec.role = rbac::kAdminRole;
    bspec.role_scope = RoleRefScope::Cluster;
    bspec.origin = "tenant-reconcile";
    b.spec = bspec.to_json();
    if (auto r = ctx.client.create(std::move(b)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  } else {
    RoleBindingSpec bspec = RoleBindingSpec::from_json(binding->spec);
    if (bspec.user != spec.owner) {
      StoredObject updated = *binding;
      bspec.user = spec.owner;
      updated.spec = bspec.to_json();
      if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
        return requeue(r.error().to_string());
      }
    }
  }

  // Cluster-level network policy, toggled by the tenant spec; recomputed on
  // every reconcile.
  ObjectKey policy_key{Kind::NetworkPolicy, key, kConfinementPolicyName};
  const StoredObject* policy = store.find(policy_key);
  if (spec.cluster_network_policy && policy == nullptr) {
    Json data = Json::object();
    data["confine"] = Json::object();
    data["confine"][kLabelTenantUid] = tenant_uid;
    StoredObject p = make_opaque_object(Kind::NetworkPolicy, key, kConfinementPolicyName,
                                        std::move(data));
    p.meta.phase = Phase::Established;
    if (auto r = ctx.client.create(std::move(p)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  } else if (!spec.cluster_network_policy && policy != nullptr) {
    if (auto r = ctx.client.remove(policy_key); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }

  rec = store.find({Kind::NamespaceRecord, "", key});
  if (rec != nullptr) {
    NamespaceNode node = namespace_node_from_record(*rec);
    if (node.network_policy_confined != spec.cluster_network_policy) {
      node.network_policy_confined = spec.cluster_network_policy;
      StoredObject updated = *rec;
      updated.spec = namespace_node_to_json(node);
      if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
        return requeue(r.error().to_string());
      }
    }
  }

  if (obj->meta.phase != Phase::Established) {
    return finalize_phase(ctx, *obj, Phase::Established, std::nullopt);
  }
  return converged();
}

// --- subnamespace -----------------------------------------------------------

struct CopyPlan {
  std::vector<WriteOp> ops;
};

// Desired state of inherited copies in `child`: byte-equal specs of every
// parent object of the inherited kinds, carrying the provenance label.
CopyPlan plan_inherited_copies(const Store& store, const std::set<Kind>& inherit,
                               const std::string& parent_ns, const std::string& child_ns,
                               bool delete_stale) {
  CopyPlan plan;
  for (Kind kind : inherit) {
    if (inheritable_kinds().count(kind) == 0) continue;
    std::set<std::string> desired_names;
    for (const auto* src : store.list_refs(kind, parent_ns)) {
      desired_names.insert(src->meta.name);
      const StoredObject* existing = store.find({kind, child_ns, src->meta.name});
      if (existing != nullptr) {
        bool labeled = existing->meta.labels.count(kInheritedFromLabel) > 0;
        if (labeled && existing->spec == src->spec) continue;
        StoredObject updated = *existing;
        updated.meta.labels = src->meta.labels;
        updated.meta.labels[kInheritedFromLabel] = parent_ns;
        updated.spec = src->spec;
        plan.ops.push_back(WriteOp::update(std::move(updated)));
      } else {
        StoredObject copy;
        copy.kind = kind;
        copy.ns = child_ns;
        copy.meta.name = src->meta.name;
        copy.meta.phase = Phase::Established;
        copy.meta.labels = src->meta.labels;
        copy.meta.labels[kInheritedFromLabel] = parent_ns;
        copy.spec = src->spec;
        plan.ops.push_back(WriteOp::create(std::move(copy)));
      }
    }
    if (delete_stale) {
      for (const auto* existing : store.list_refs(kind, child_ns)) {
        if (existing->meta.labels.count(kInheritedFromLabel) == 0) continue;
        if (existing->meta.labels.at(kInheritedFromLabel) != parent_ns) continue;
        if (desired_names.count(existing->meta.name) > 0) continue;
        plan.ops.push_back(WriteOp::del(existing->key()));
      }
    }
  }
  return plan;
}

ReconcileOutcome teardown_subnamespace(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  // Children created by this handle (normally exactly one).
  std::vector<std::string> roots;
  for (const auto* rec : store.list_refs(Kind::NamespaceRecord)) {
    NamespaceNode node = namespace_node_from_record(*rec);
    if (node.owner_handle == key) roots.push_back(node.name());
  }
  if (roots.empty()) return converged();

  NamespaceTree tree = ctx.plane.load_tree();
  for (const auto& root : roots) {
    if (!tree.contains(root)) continue;
    auto names = tree.subtree_names(root).value();
    for (const auto& n : names) {
      if (!tree.find(n)->usage.is_zero()) return requeue("subtree in use: " + n);
    }
    ResourceVector recouped = subtree_quota(tree, root).value();
    const NamespaceNode* child = tree.find(root);

    std::vector<WriteOp> batch;
    // The parent recoups the child's whole portion.
    const StoredObject* parent_rec = store.find({Kind::NamespaceRecord, "", *child->parent});
    if (parent_rec != nullptr) {
      NamespaceNode parent_node = namespace_node_from_record(*parent_rec);
      parent_node.quota += recouped;
      StoredObject updated = *parent_rec;
      updated.spec = namespace_node_to_json(parent_node);
      batch.push_back(WriteOp::update(std::move(updated)));
    }
    for (const auto& n : names) {
      for (Kind kind : {Kind::Subnamespace, Kind::SliceClaim, Kind::RoleRequest, Kind::Role,
                        Kind::RoleBinding, Kind::NetworkPolicy, Kind::LimitRange, Kind::Secret,
                        Kind::ConfigMap, Kind::ServiceAccount, Kind::Pod}) {
        for (const auto* o : store.list_refs(kind, n)) batch.push_back(WriteOp::del(o->key()));
      }
      batch.push_back(WriteOp::del({Kind::NamespaceRecord, "", n}));
    }
    // Manual slices bound into the vanishing subtree are released.
    std::set<std::string> removed(names.begin(), names.end());
    for (const auto* slice : store.list_refs(Kind::Slice)) {
      auto sspec = SliceSpec::from_json(slice->spec);
      if (sspec.bound_namespace && removed.count(*sspec.bound_namespace) > 0 &&
          sspec.phase != SlicePhase::Terminating) {
        sspec.phase = SlicePhase::Terminating;
        StoredObject updated = *slice;
        updated.spec = sspec.to_json();
        batch.push_back(WriteOp::update(std::move(updated)));
      }
    }
    if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }
  return converged();
}

ReconcileOutcome reconcile_subnamespace(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  auto [ns_opt, name] = Controller::split_key(key);
  if (!ns_opt) return converged();
  const std::string parent_ns = *ns_opt;

  const StoredObject* handle = store.find({Kind::Subnamespace, parent_ns, name});
  if (handle == nullptr) return teardown_subnamespace(key, ctx);
  if (handle->meta.phase == Phase::Failed) return converged();

  auto spec = SubnamespaceSpec::from_json(handle->spec);
  const StoredObject* parent_rec = store.find({Kind::NamespaceRecord, "", parent_ns});
  if (parent_rec == nullptr) return requeue("parent namespace record missing: " + parent_ns);
  NamespaceNode parent_node = namespace_node_from_record(*parent_rec);

  naming::NameRequest name_req{parent_ns, spec.requested_name, spec.scope,
                               ctx.plane.cluster_uid()};
  auto composed = naming::object_name(name_req, ctx.plane.digest());
  if (!composed.ok()) {
    return finalize_phase(ctx, *handle, Phase::Failed, composed.error().to_string());
  }
  const std::string child_ns = composed.value();

  const StoredObject* child_rec = store.find({Kind::NamespaceRecord, "", child_ns});
  if (child_rec != nullptr) {
    NamespaceNode existing = namespace_node_from_record(*child_rec);
    if (existing.owner_handle != key) {
      return finalize_phase(ctx, *handle, Phase::Failed, "collision");
    }
  } else {
    ResourceVector amount = spec.quota.value_or(ResourceVector{});
    if (spec.quota && !amount.fits_within(parent_node.quota)) {
      return finalize_phase(ctx, *handle, Phase::Failed, "insufficient quota");
    }

    NamespaceNode child;
    child.meta.name = child_ns;
    child.meta.phase = Phase::Established;
    child.kind = NamespaceKind::Sub;
    child.parent = parent_ns;
    child.mode = spec.mode;
    child.scope = spec.scope;
    child.quota = amount;
    child.rbac_inherited = spec.inherits_rbac();
    child.owner_handle = key;
    if (spec.mode == SubnamespaceMode::Workspace) {
      child.tenant = parent_node.tenant;
      child.network_policy_confined = parent_node.network_policy_confined;
      child.meta.labels = {
          {kLabelKind, "sub"},
          {kLabelTenant, parent_node.meta.labels.at(kLabelTenant)},
          {kLabelTenantUid, parent_node.meta.labels.at(kLabelTenantUid)},
          {kLabelClusterUid, ctx.plane.cluster_uid().value}};
    } else {
      // Subtenant: a fresh identity so label-scoped policies isolate the
      // subtree from the vendor.
      child.tenant = child_ns;
      child.network_policy_confined = false;
      child.meta.labels = {{kLabelKind, "sub"},
                           {kLabelTenant, child_ns},
                           {kLabelTenantUid, ctx.plane.fresh_uid().value},
                           {kLabelClusterUid, ctx.plane.cluster_uid().value}};
    }

    std::vector<WriteOp> batch;
    if (spec.quota && !amount.is_zero()) {
      NamespaceNode taxed = parent_node;
      taxed.quota -= amount;
      StoredObject updated = *parent_rec;
      updated.spec = namespace_node_to_json(taxed);
      batch.push_back(WriteOp::update(std::move(updated)));
    }
    batch.push_back(WriteOp::create(make_namespace_record(child)));
    if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
      if (r.error().code == Errc::threshold_exceeded) {
        return finalize_phase(ctx, *handle, Phase::Failed, "threshold exceeded");
      }
      return requeue(r.error().to_string());
    }
  }

  // One-time copy of the inherited kinds (the sync controller handles
  // continuous re-copy for sync=true).
  CopyPlan plan = plan_inherited_copies(store, spec.inherit, parent_ns, child_ns,
                                        /*delete_stale=*/false);
  if (!plan.ops.empty()) {
    if (auto r = ctx.client.apply(std::move(plan.ops)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }

  if (spec.owner) {
    ObjectKey owner_key{Kind::RoleBinding, child_ns, "subns-owner"};
    if (store.find(owner_key) == nullptr) {
      StoredObject b;
      b.kind = Kind::RoleBinding;
      b.ns = child_ns;
      b.meta.name = "subns-owner";
      b.meta.phase = Phase::Established;
      RoleBindingSpec bspec;
      bspec.user = *spec.owner;
      bspec.role = rbac::kAdminRole;
      bspec.role_scope = RoleRefScope::Cluster;
      bspec.origin = "subns-reconcile";
      b.spec = bspec.to_json();
      if (auto r = ctx.client.create(std::move(b)); !r.ok()) {
        return requeue(r.error().to_string());
      }
    }
  }

  if (spec.child_namespace != child_ns || handle->meta.phase != Phase::Established) {
    StoredObject updated = *handle;
    spec.child_namespace = child_ns;
    updated.spec = spec.to_json();
    updated.meta.phase = Phase::Established;
    updated.meta.failure_reason.reset();
    if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }
  return converged();
}

// --- continuous inheritance sync ---------------------------------------------

ReconcileOutcome reconcile_sync(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  auto [ns_opt, name] = Controller::split_key(key);
  if (!ns_opt) return converged();
  const StoredObject* handle = store.find({Kind::Subnamespace, *ns_opt, name});
  if (handle == nullptr || handle->meta.phase != Phase::Established) return converged();
  auto spec = SubnamespaceSpec::from_json(handle->spec);
  if (!spec.sync || !spec.child_namespace) return converged();

  CopyPlan plan = plan_inherited_copies(store, spec.inherit, *ns_opt, *spec.child_namespace,
                                        /*delete_stale=*/true);
  if (plan.ops.empty()) return converged();
  if (auto r = ctx.client.apply(std::move(plan.ops)); !r.ok()) {
    return requeue(r.error().to_string());
  }
  return converged();
}

// --- role requests ------------------------------------------------------------

ReconcileOutcome reconcile_role_request(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  auto [ns_opt, name] = Controller::split_key(key);
  if (!ns_opt) return converged();
  const StoredObject* obj = store.find({Kind::RoleRequest, *ns_opt, name});
  if (obj == nullptr) return converged();
  if (obj->meta.phase == Phase::Established || obj->meta.phase == Phase::Failed) {
    return converged();
  }
  auto spec = RoleRequestSpec::from_json(obj->spec);
  if (spec.status == Decision::Pending) return converged();
  if (spec.status == Decision::Denied) return finalize_phase(ctx, *obj, Phase::Failed, "denied");

  // Only a user holding approval rights in the namespace may decide.
  if (spec.decided_by.empty() || !rbac::can_approve_in(store, spec.decided_by, *ns_opt)) {
    StoredObject reverted = *obj;
    spec.status = Decision::Pending;
    spec.decided_by.clear();
    reverted.spec = spec.to_json();
    if (auto r = ctx.client.update(std::move(reverted)); !r.ok()) {
      return requeue(r.error().to_string());
    }
    return converged();
  }

  const StoredObject* role =
      spec.role_scope == RoleRefScope::Cluster
          ? store.find({Kind::Role, "", spec.role})
          : store.find({Kind::Role, *ns_opt, spec.role});
  if (role == nullptr) {
    return finalize_phase(ctx, *obj, Phase::Failed, "unknown role: " + spec.role);
  }

  ObjectKey binding_key{Kind::RoleBinding, *ns_opt, "rr-" + name};
  if (store.find(binding_key) == nullptr) {
    StoredObject b;
    b.kind = Kind::RoleBinding;
    b.ns = *ns_opt;
    b.meta.name = "rr-" + name;
    b.meta.phase = Phase::Established;
    RoleBindingSpec bspec;
    bspec.user = spec.user;
    bspec.role = spec.role;
    bspec.role_scope = spec.role_scope;
    bspec.origin = "role-request:" + name;
    b.spec = bspec.to_json();
    if (auto r = ctx.client.create(std::move(b)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }
  return finalize_phase(ctx, *obj, Phase::Established, std::nullopt);
}

ReconcileOutcome reconcile_cluster_role_request(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  const StoredObject* obj = store.find({Kind::ClusterRoleRequest, "", key});
  if (obj == nullptr) return converged();
  if (obj->meta.phase == Phase::Established || obj->meta.phase == Phase::Failed) {
    return converged();
  }
  auto spec = ClusterRoleRequestSpec::from_json(obj->spec);
  if (spec.status == Decision::Pending) return converged();
  if (spec.status == Decision::Denied) return finalize_phase(ctx, *obj, Phase::Failed, "denied");

  if (spec.decided_by.empty() ||
      !rbac::rbac_can(store, spec.decided_by, "approve", Kind::ClusterRoleRequest, std::nullopt)) {
    StoredObject reverted = *obj;
    spec.status = Decision::Pending;
    spec.decided_by.clear();
    reverted.spec = spec.to_json();
    if (auto r = ctx.client.update(std::move(reverted)); !r.ok()) {
      return requeue(r.error().to_string());
    }
    return converged();
  }

  if (store.find({Kind::Role, "", spec.role}) == nullptr) {
    return finalize_phase(ctx, *obj, Phase::Failed, "unknown role: " + spec.role);
  }

  ObjectKey binding_key{Kind::RoleBinding, "", "crr-" + key};
  if (store.find(binding_key) == nullptr) {
    StoredObject b;
    b.kind = Kind::RoleBinding;
    b.meta.name = "crr-" + key;
    b.meta.phase = Phase::Established;
    RoleBindingSpec bspec;
    bspec.user = spec.user;
    bspec.role = spec.role;
    bspec.role_scope = RoleRefScope::Cluster;
    bspec.origin = "cluster-role-request:" + key;
    b.spec = bspec.to_json();
    if (auto r = ctx.client.create(std::move(b)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }
  return finalize_phase(ctx, *obj, Phase::Established, std::nullopt);
}

}  // namespace

void install(ControlPlane& plane) {
  plane.add_controller("tenant-request", Kind::TenantRequest, reconcile_tenant_request);
  plane.add_controller("tenant", Kind::Tenant, reconcile_tenant);
  plane.add_controller("subnamespace", Kind::Subnamespace, reconcile_subnamespace);

  Controller& sync = plane.add_controller("subns-sync", Kind::Subnamespace, reconcile_sync);
  // A change to an inheritable object re-syncs the children of its
  // namespace (parent-side updates) and the namespace's own handle
  // (child-side drift of a copy, which the parent's version overwrites).
  for (Kind kind : inheritable_kinds()) {
    sync.watch_also(kind, [&plane, kind](const EventRecord& rec) {
      std::vector<std::string> keys;
      if (!rec.object.ns) return keys;
      const std::string& event_ns = *rec.object.ns;
      for (const auto* handle : plane.store().list_refs(Kind::Subnamespace)) {
        auto spec = SubnamespaceSpec::from_json(handle->spec);
        if (!spec.sync || spec.inherit.count(kind) == 0) continue;
        bool parent_side = handle->ns == event_ns;
        bool child_side = spec.child_namespace == event_ns;
        if (parent_side || child_side) keys.push_back(Controller::key_of(*handle));
      }
      return keys;
    });
  }

  plane.add_controller("role-request", Kind::RoleRequest, reconcile_role_request);
  plane.add_controller("cluster-role-request", Kind::ClusterRoleRequest,
                       reconcile_cluster_role_request);
}

StoredObject make_tenant_request(const std::string& name, TenantRequestSpec spec) {
  StoredObject o;
  o.kind = Kind::TenantRequest;
  o.meta.name = name;
  o.spec = spec.to_json();
  return o;
}

StoredObject make_subnamespace(const std::string& parent_ns, SubnamespaceSpec spec) {
  StoredObject o;
  o.kind = Kind::Subnamespace;
  o.ns = parent_ns;
  o.meta.name = spec.requested_name;
  spec.parent = parent_ns;
  o.spec = spec.to_json();
  return o;
}

StoredObject make_role_request(const std::string& ns, const std::string& name,
                               RoleRequestSpec spec) {
  StoredObject o;
  o.kind = Kind::RoleRequest;
  o.ns = ns;
  o.meta.name = name;
  o.spec = spec.to_json();
  return o;
}

StoredObject make_cluster_role_request(const std::string& name, ClusterRoleRequestSpec spec) {
  StoredObject o;
  o.kind = Kind::ClusterRoleRequest;
  o.meta.name = name;
  o.spec = spec.to_json();
  return o;
}

}  // namespace tenancy::controllers
