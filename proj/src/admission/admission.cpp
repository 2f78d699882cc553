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

#include "tenancy/admission/admission.hpp"

#include "tenancy/naming/naming.hpp"
#include "tenancy/rbac/rbac.hpp"

namespace tenancy::admission {

using runtime::Kind;
using runtime::Store;
using runtime::StoredObject;

namespace {

const StoredObject* namespace_record(const Store& store, const std::string& ns) {
  return store.find({Kind::NamespaceRecord, "", ns});
}

/// Effective quota enforcement is a tenant-wide property: the core
/// namespace's tenant holds a quota, or nothing in the subtree does.
bool tenant_quota_enforced(const Store& store, const std::string& ns) {
  std::string cur = ns;
  const std::size_t limit = store.count(Kind::NamespaceRecord) + 1;
  for (std::size_t hops = 0; hops <= limit; ++hops) {
    const StoredObject* rec = namespace_record(store, cur);
    if (rec == nullptr) return false;
    NamespaceNode node = runtime::namespace_node_from_record(*rec);
    if (!node.parent) {
      const StoredObject* tenant = store.find({Kind::Tenant, "", node.tenant});
      if (tenant == nullptr) return false;
      return runtime::TenantSpec::from_json(tenant->spec).quota_enforced();
    }
    cur = *node.parent;
  }
  return false;
}

bool namespace_slice_bound(const Store& store, const std::string& ns) {
  for (const auto* slice : store.list_refs(Kind::Slice)) {
    auto spec = runtime::SliceSpec::from_json(slice->spec);
    if (spec.bound_namespace == ns && spec.phase == runtime::SlicePhase::Bound) return true;
  }
  return false;
}

}  // namespace

bool policy_bearing(Kind kind) {
  switch (kind) {
    case Kind::Pod:
    case Kind::Subnamespace:
    case Kind::Slice:
    case Kind::SliceClaim:
    case Kind::RoleRequest:
    case Kind::ClusterRoleRequest:
    case Kind::TenantRequest:
      return true;
    default:
      return false;
  }
}

void apply_patches(StoredObject& object, const std::vector<Patch>& patches) {
  if (patches.empty()) return;
  runtime::Json j = runtime::to_json(object);
  for (const auto& p : patches) {
    j[runtime::Json::json_pointer(p.field_path)] = p.value;
  }
  object = runtime::stored_object_from_json(j);
}

AdmissionDecision admit_pod(const StoredObject& pod, bool is_create, const Store& store) {
  if (!pod.ns) return AdmissionDecision::deny("unknown namespace", "pod carries no namespace");
  const StoredObject* rec = namespace_record(store, *pod.ns);
  if (rec == nullptr) {
    return AdmissionDecision::deny("unknown namespace", "namespace not found: " + *pod.ns);
  }
  auto spec = runtime::PodSpec::from_json(pod.spec);
  if (!spec.request.non_negative()) {
    return AdmissionDecision::deny("negative request", "pod resource request must be >= 0");
  }

  AdmissionDecision decision;
  // Multitenant workloads on shared nodes always run sandboxed; only a
  // slice-bound namespace keeps its requested runtime class.
  if (!namespace_slice_bound(store, *pod.ns)) {
    if (spec.runtime_class != "kata") {
      decision.mutations.push_back({"/spec/runtime_class", runtime::Json("kata")});
    }
  }

  if (is_create && tenant_quota_enforced(store, *pod.ns)) {
    NamespaceNode node = runtime::namespace_node_from_record(*rec);
    ChargeResult charge = charge_usage(node, spec.request);
    if (!charge.admitted) {
      return AdmissionDecision::deny(
          "quota", std::string("namespace quota exhausted on ") +
                       ResourceVector::component_name(charge.rejected_component));
    }
  }
  return decision;
}

AdmissionDecision admit_subnamespace(const StoredObject& handle, bool is_create,
                                     const Store& store) {
  auto spec = runtime::SubnamespaceSpec::from_json(handle.spec);
  if (!valid_dns_label(spec.requested_name) ||
      spec.requested_name.size() > naming::kMaxRequestedNameLength) {
    return AdmissionDecision::deny("invalid name",
                                   "requested name must be a DNS label of at most 32 chars");
  }
  if (!handle.ns || *handle.ns != spec.parent) {
    return AdmissionDecision::deny("parent mismatch",
                                   "subnamespace object must live in its parent namespace");
  }
  const StoredObject* parent = namespace_record(store, spec.parent);
  if (parent == nullptr) {
    return AdmissionDecision::deny("unknown parent", "parent namespace not found: " + spec.parent);
  }
  if (is_create && spec.requester &&
      !rbac::rbac_can(store, *spec.requester, "create", Kind::Subnamespace, spec.parent)) {
    return AdmissionDecision::deny("forbidden",
                                   "requester lacks admin rights on parent: " + *spec.requester);
  }
  if (spec.mode == SubnamespaceMode::Subtenant && spec.inherits_rbac()) {
    return AdmissionDecision::deny("vendor blindness",
                                   "a subtenant may not inherit Role/RoleBinding");
  }
  if (!spec.inherits_rbac() && !spec.owner) {
    return AdmissionDecision::deny("owner required",
                                   "owner must be set when RBAC objects are not inherited");
  }
  if (spec.quota) {
    if (!spec.quota->non_negative()) {
      return AdmissionDecision::deny("negative quota", "quota components must be >= 0");
    }
    if (!tenant_quota_enforced(store, spec.parent)) {
      return AdmissionDecision::deny("quota not enforced",
                                     "tenant has no resource quota; remove the quota field");
    }
    if (is_create) {
      NamespaceNode parent_node = runtime::namespace_node_from_record(*parent);
      if (auto i = spec.quota->first_exceeding(parent_node.quota)) {
        return AdmissionDecision::deny(
            "insufficient quota", std::string("parent cannot spare ") +
                                      ResourceVector::component_name(*i) + " for this child");
      }
    }
  }
  return AdmissionDecision::allowed();
}

AdmissionDecision admit_slice(const StoredObject& slice, bool, const Store&) {
  auto spec = runtime::SliceSpec::from_json(slice.spec);
  if (spec.selector.node_count < 1) {
    return AdmissionDecision::deny("node_count", "node_count must be >= 1");
  }
  if (!spec.selector.resources.non_negative()) {
    return AdmissionDecision::deny("negative resources", "per-node resources must be >= 0");
  }
  if (spec.grace_period_ms < 0) {
    return AdmissionDecision::deny("grace period", "grace_period_ms must be >= 0");
  }
  return AdmissionDecision::allowed();
}

AdmissionDecision admit_slice_claim(const StoredObject& claim, bool, const Store& store) {
  if (!claim.ns || namespace_record(store, *claim.ns) == nullptr) {
    return AdmissionDecision::deny("unknown namespace",
                                   "claim namespace not found: " + claim.ns.value_or("<none>"));
  }
  auto spec = runtime::SliceClaimSpec::from_json(claim.spec);
  if (!valid_dns_label(spec.slice_name)) {
    return AdmissionDecision::deny("invalid name", "slice_name must be a DNS label");
  }
  if (spec.requested.node_count < 1) {
    return AdmissionDecision::deny("node_count", "node_count must be >= 1");
  }
  if (!spec.requested.resources.non_negative()) {
    return AdmissionDecision::deny("negative resources", "per-node resources must be >= 0");
  }
  return AdmissionDecision::allowed();
}

AdmissionDecision admit_role_request(const StoredObject& req, bool, const Store& store) {
  if (!req.ns || namespace_record(store, *req.ns) == nullptr) {
    return AdmissionDecision::deny("unknown namespace",
                                   "target namespace not found: " + req.ns.value_or("<none>"));
  }
  auto spec = runtime::RoleRequestSpec::from_json(req.spec);
  if (spec.user.empty()) return AdmissionDecision::deny("user required", "user must be set");
  if (spec.role.empty()) return AdmissionDecision::deny("role required", "role must be set");
  return AdmissionDecision::allowed();
}

AdmissionDecision admit_cluster_role_request(const StoredObject& req, bool, const Store&) {
  auto spec = runtime::ClusterRoleRequestSpec::from_json(req.spec);
  if (spec.user.empty()) return AdmissionDecision::deny("user required", "user must be set");
  if (spec.role.empty()) return AdmissionDecision::deny("role required", "role must be set");
  return AdmissionDecision::allowed();
}

AdmissionDecision admit_tenant_request(const StoredObject& req, bool, const Store&) {
  auto spec = runtime::TenantRequestSpec::from_json(req.spec);
  if (spec.owner.empty()) {
    return AdmissionDecision::deny("owner required", "tenant request must name an owner");
  }
  if (spec.quota && !spec.quota->non_negative()) {
    return AdmissionDecision::deny("negative quota", "quota components must be >= 0");
  }
  return AdmissionDecision::allowed();
}

AdmissionDecision admit(const StoredObject& incoming, bool is_create, const Store& store) {
  switch (incoming.kind) {
    case Kind::Pod: return admit_pod(incoming, is_create, store);
    case Kind::Subnamespace: return admit_subnamespace(incoming, is_create, store);
    case Kind::Slice: return admit_slice(incoming, is_create, store);
    case Kind::SliceClaim: return admit_slice_claim(incoming, is_create, store);
    case Kind::RoleRequest: return admit_role_request(incoming, is_create, store);
    case Kind::ClusterRoleRequest: return admit_cluster_role_request(incoming, is_create, store);
    case Kind::TenantRequest: return admit_tenant_request(incoming, is_create, store);
    default: return AdmissionDecision::allowed();
  }
}

}  // namespace tenancy::admission
