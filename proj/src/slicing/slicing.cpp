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

#include "tenancy/slicing/slicing.hpp"

#include <algorithm>

#include "tenancy/sim/cluster.hpp"

namespace tenancy::slicing {

using namespace tenancy::runtime;

namespace {

bool labels_match(const std::map<std::string, std::string>& node_labels,
                  const std::map<std::string, std::string>& selector) {
  for (const auto& [k, v] : selector) {
    auto it = node_labels.find(k);
    if (it == node_labels.end() || it->second != v) return false;
  }
  return true;
}

bool tenant_quota_enforced(const Store& store, const std::string& ns) {
  std::string cur = ns;
  const std::size_t limit = store.count(Kind::NamespaceRecord) + 1;
  for (std::size_t hops = 0; hops <= limit; ++hops) {
    const StoredObject* rec = store.find({Kind::NamespaceRecord, "", cur});
    if (rec == nullptr) return false;
    NamespaceNode node = namespace_node_from_record(*rec);
    if (!node.parent) {
      const StoredObject* tenant = store.find({Kind::Tenant, "", node.tenant});
      return tenant != nullptr && TenantSpec::from_json(tenant->spec).quota_enforced();
    }
    cur = *node.parent;
  }
  return false;
}

ReconcileOutcome do_select(ReconcileContext& ctx, const StoredObject& obj, SliceSpec spec) {
  Store& store = ctx.plane.store();
  std::vector<std::pair<const StoredObject*, NodeSpec>> picked;
  for (const auto* n : store.list_refs(Kind::Node)) {  // lexicographic, first-fit
    NodeSpec node = NodeSpec::from_json(n->spec);
    if (node.state != NodeState::Shared) continue;
    if (!labels_match(node.labels, spec.selector.labels)) continue;
    ResourceVector free = node.capacity - node.allocated;
    if (!spec.selector.resources.fits_within(free)) continue;
    picked.emplace_back(n, std::move(node));
    if (static_cast<std::int64_t>(picked.size()) == spec.selector.node_count) break;
  }

  if (static_cast<std::int64_t>(picked.size()) < spec.selector.node_count) {
    if (spec.phase != SlicePhase::Failed || spec.failure_reason != "insufficient nodes") {
      spec.phase = SlicePhase::Failed;
      spec.failure_reason = "insufficient nodes";
      spec.nodes.clear();
      StoredObject updated = obj;
      updated.spec = spec.to_json();
      if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
        return requeue(r.error().to_string());
      }
    }
    return converged();
  }

  std::vector<WriteOp> batch;
  spec.nodes.clear();
  for (auto& [node_obj, node_spec] : picked) {
    node_spec.state = NodeState::PreReserved;
    node_spec.slice = obj.meta.name;
    StoredObject updated = *node_obj;
    updated.spec = node_spec.to_json();
    batch.push_back(WriteOp::update(std::move(updated)));
    spec.nodes.insert(node_obj->meta.name);
  }
  spec.phase = SlicePhase::PreReserved;
  spec.failure_reason.clear();
  StoredObject updated = obj;
  updated.spec = spec.to_json();
  updated.meta.phase = Phase::Established;
  batch.push_back(WriteOp::update(std::move(updated)));
  if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
    return requeue(r.error().to_string());  // lost the race for a node
  }
  return converged();
}

ReconcileOutcome do_release(ReconcileContext& ctx, const StoredObject& obj, SliceSpec spec) {
  Store& store = ctx.plane.store();
  const std::vector<std::string> nodes(spec.nodes.begin(), spec.nodes.end());

  if (spec.bound_namespace && !nodes.empty()) {
    const std::string bound = *spec.bound_namespace;
    auto evicted = sim::evict_nodes(
        ctx.plane, nodes,
        [&bound](const StoredObject& pod) { return pod.ns.value_or("") == bound; },
        spec.grace_period_ms, ctx.client.now());
    if (!evicted.ok()) return requeue(evicted.error().to_string());
  }

  std::vector<WriteOp> batch;
  for (const auto& name : nodes) {
    const StoredObject* node_obj = store.find({Kind::Node, "", name});
    if (node_obj == nullptr) continue;
    NodeSpec node = NodeSpec::from_json(node_obj->spec);
    if (node.slice != obj.meta.name) continue;
    node.state = NodeState::Shared;
    node.slice.clear();
    StoredObject updated = *node_obj;
    updated.spec = node.to_json();
    batch.push_back(WriteOp::update(std::move(updated)));
  }
  // Restore quota charged by dynamic claims and drop the claims themselves.
  for (const auto* claim : store.list_refs(Kind::SliceClaim)) {
    auto cspec = SliceClaimSpec::from_json(claim->spec);
    if (cspec.slice_name != obj.meta.name) continue;
    if (cspec.charged && claim->ns) {
      const StoredObject* rec = store.find({Kind::NamespaceRecord, "", *claim->ns});
      if (rec != nullptr) {
        NamespaceNode node = namespace_node_from_record(*rec);
        release_usage(node, *cspec.charged);
        StoredObject updated = *rec;
        updated.spec = namespace_node_to_json(node);
        batch.push_back(WriteOp::update(std::move(updated)));
      }
    }
    batch.push_back(WriteOp::del(claim->key()));
  }
  batch.push_back(WriteOp::del(obj.key()));
  if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
    return requeue(r.error().to_string());
  }
  return converged();
}

ReconcileOutcome reconcile_slice(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  const StoredObject* obj = store.find({Kind::Slice, "", key});
  if (obj == nullptr) {
    // Defensive cleanup: nodes still tagged with a vanished slice go back
    // to the shared pool.
    std::vector<WriteOp> batch;
    for (const auto* n : store.list_refs(Kind::Node)) {
      NodeSpec node = NodeSpec::from_json(n->spec);
      if (node.slice != key || node.state == NodeState::Shared) continue;
      node.state = NodeState::Shared;
      node.slice.clear();
      StoredObject updated = *n;
      updated.spec = node.to_json();
      batch.push_back(WriteOp::update(std::move(updated)));
    }
    if (!batch.empty()) {
      if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
        return requeue(r.error().to_string());
      }
    }
    return converged();
  }

  SliceSpec spec = SliceSpec::from_json(obj->spec);
  switch (spec.phase) {
    case SlicePhase::Provisioning:
    case SlicePhase::Failed:
      return do_select(ctx, *obj, std::move(spec));
    case SlicePhase::Terminating:
      return do_release(ctx, *obj, std::move(spec));
    case SlicePhase::PreReserved:
    case SlicePhase::Bound:
      return converged();
  }
  return converged();
}

ReconcileOutcome bind(ReconcileContext& ctx, const StoredObject& claim_obj, SliceClaimSpec cspec,
                      const StoredObject& slice_obj, SliceSpec sspec) {
  Store& store = ctx.plane.store();
  const std::string ns = claim_obj.ns.value_or("");

  std::vector<WriteOp> batch;
  sspec.bound_namespace = ns;
  sspec.phase = SlicePhase::Bound;
  StoredObject slice_updated = slice_obj;
  slice_updated.spec = sspec.to_json();
  slice_updated.meta.phase = Phase::Established;
  batch.push_back(WriteOp::update(std::move(slice_updated)));

  for (const auto& name : sspec.nodes) {
    const StoredObject* node_obj = store.find({Kind::Node, "", name});
    if (node_obj == nullptr) return requeue("slice node missing: " + name);
    NodeSpec node = NodeSpec::from_json(node_obj->spec);
    node.state = NodeState::Reserved;
    node.slice = slice_obj.meta.name;
    StoredObject updated = *node_obj;
    updated.spec = node.to_json();
    batch.push_back(WriteOp::update(std::move(updated)));
  }

  cspec.phase = ClaimPhase::Bound;
  cspec.reason.clear();
  StoredObject claim_updated = claim_obj;
  claim_updated.spec = cspec.to_json();
  claim_updated.meta.phase = Phase::Established;
  batch.push_back(WriteOp::update(std::move(claim_updated)));

  if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
    return requeue(r.error().to_string());
  }

  // Multitenant workloads on the reserved nodes terminate within the grace
  // period; afterwards only the bound namespace schedules there.
  std::vector<std::string> nodes(sspec.nodes.begin(), sspec.nodes.end());
  auto evicted = sim::evict_nodes(
      ctx.plane, nodes,
      [&ns](const StoredObject& pod) { return pod.ns.value_or("") != ns; },
      sspec.grace_period_ms, ctx.client.now());
  if (!evicted.ok()) return requeue(evicted.error().to_string());
  return converged();
}

ReconcileOutcome reconcile_claim(const std::string& key, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  auto [ns_opt, name] = Controller::split_key(key);
  if (!ns_opt) return converged();
  const StoredObject* obj = store.find({Kind::SliceClaim, *ns_opt, name});
  if (obj == nullptr) return converged();
  SliceClaimSpec spec = SliceClaimSpec::from_json(obj->spec);
  if (spec.phase == ClaimPhase::Bound || spec.phase == ClaimPhase::Failed) return converged();

  const StoredObject* slice_obj = store.find({Kind::Slice, "", spec.slice_name});

  if (slice_obj == nullptr) {
    if (spec.mode == ClaimMode::Manual) {
      // An administrator must satisfy the request; the claim only signals.
      if (spec.phase != ClaimPhase::Requested) {
        spec.phase = ClaimPhase::Requested;
        StoredObject updated = *obj;
        updated.spec = spec.to_json();
        if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
          return requeue(r.error().to_string());
        }
      }
      return converged();
    }

    // Dynamic mode: auto-create when the namespace's remaining quota covers
    // node_count x per-node resources.
    const StoredObject* rec = store.find({Kind::NamespaceRecord, "", *ns_opt});
    if (rec == nullptr) return requeue("namespace record missing: " + *ns_opt);
    ResourceVector required = spec.requested.resources.scaled(spec.requested.node_count);
    if (tenant_quota_enforced(store, *ns_opt)) {
      NamespaceNode node = namespace_node_from_record(*rec);
      if (!(node.usage + required).fits_within(node.quota)) {
        if (spec.phase != ClaimPhase::Pending || spec.reason != "insufficient quota") {
          spec.phase = ClaimPhase::Pending;
          spec.reason = "insufficient quota";
          StoredObject updated = *obj;
          updated.spec = spec.to_json();
          if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
            return requeue(r.error().to_string());
          }
        }
        return converged();
      }
    }

    std::vector<WriteOp> batch;
    batch.push_back(WriteOp::create(make_slice(spec.slice_name, spec.requested)));
    if (!required.is_zero()) {
      NamespaceNode node = namespace_node_from_record(*rec);
      node.usage += required;
      StoredObject rec_updated = *rec;
      rec_updated.spec = namespace_node_to_json(node);
      batch.push_back(WriteOp::update(std::move(rec_updated)));
    }
    spec.charged = required;
    spec.reason = "awaiting slice";
    StoredObject claim_updated = *obj;
    claim_updated.spec = spec.to_json();
    batch.push_back(WriteOp::update(std::move(claim_updated)));
    if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
      return requeue(r.error().to_string());
    }
    return converged();  // the slice's PreReserved event continues the flow
  }

  SliceSpec sspec = SliceSpec::from_json(slice_obj->spec);
  if (sspec.bound_namespace && *sspec.bound_namespace != *ns_opt) {
    spec.phase = ClaimPhase::Failed;
    spec.reason = "already bound";
    StoredObject updated = *obj;
    updated.spec = spec.to_json();
    updated.meta.phase = Phase::Failed;
    updated.meta.failure_reason = "already bound";
    if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
      return requeue(r.error().to_string());
    }
    return converged();
  }
  if (sspec.phase == SlicePhase::PreReserved && !sspec.bound_namespace) {
    return bind(ctx, *obj, std::move(spec), *slice_obj, std::move(sspec));
  }
  if (sspec.phase == SlicePhase::Bound && sspec.bound_namespace == *ns_opt &&
      spec.phase != ClaimPhase::Bound) {
    spec.phase = ClaimPhase::Bound;
    StoredObject updated = *obj;
    updated.spec = spec.to_json();
    if (auto r = ctx.client.update(std::move(updated)); !r.ok()) {
      return requeue(r.error().to_string());
    }
  }
  return converged();  // Provisioning/Failed slices wake us via watch
}

}  // namespace

void install(ControlPlane& plane) {
  Controller& slice_ctrl = plane.add_controller("slice", Kind::Slice, reconcile_slice);
  slice_ctrl.watch_also(Kind::Node, [&plane](const EventRecord&) {
    // Node arrivals or freed capacity can unblock pending selections.
    std::vector<std::string> keys;
    for (const auto* s : plane.store().list_refs(Kind::Slice)) {
      auto spec = SliceSpec::from_json(s->spec);
      if (spec.phase == SlicePhase::Provisioning || spec.phase == SlicePhase::Failed) {
        keys.push_back(s->meta.name);
      }
    }
    return keys;
  });

  Controller& claim_ctrl = plane.add_controller("slice-claim", Kind::SliceClaim, reconcile_claim);
  claim_ctrl.watch_also(Kind::Slice, [&plane](const EventRecord& rec) {
    std::vector<std::string> keys;
    for (const auto* c : plane.store().list_refs(Kind::SliceClaim)) {
      if (SliceClaimSpec::from_json(c->spec).slice_name == rec.object.meta.name) {
        keys.push_back(Controller::key_of(*c));
      }
    }
    return keys;
  });
  claim_ctrl.watch_also(Kind::NamespaceRecord, [&plane](const EventRecord& rec) {
    // Quota freed in a namespace may allow a pending dynamic claim.
    std::vector<std::string> keys;
    for (const auto* c :
         plane.store().list_refs(Kind::SliceClaim, rec.object.meta.name)) {
      keys.push_back(Controller::key_of(*c));
    }
    return keys;
  });
}

StoredObject make_slice(const std::string& name, SliceSelector selector,
                        std::int64_t grace_period_ms) {
  StoredObject o;
  o.kind = Kind::Slice;
  o.meta.name = name;
  SliceSpec spec;
  spec.selector = std::move(selector);
  spec.phase = SlicePhase::Provisioning;
  spec.grace_period_ms = grace_period_ms;
  o.spec = spec.to_json();
  return o;
}

StoredObject make_slice_claim(const std::string& ns, const std::string& name,
                              SliceClaimSpec spec) {
  StoredObject o;
  o.kind = Kind::SliceClaim;
  o.ns = ns;
  o.meta.name = name;
  o.spec = spec.to_json();
  return o;
}

Result<void> request_release(ControlPlane& plane, const std::string& slice_name) {
  const StoredObject* obj = plane.store().find({Kind::Slice, "", slice_name});
  if (obj == nullptr) {
    return make_error(Errc::unknown_slice, "slice not found: " + slice_name);
  }
  SliceSpec spec = SliceSpec::from_json(obj->spec);
  if (spec.phase == SlicePhase::Terminating) return {};
  spec.phase = SlicePhase::Terminating;
  StoredObject updated = *obj;
  updated.spec = spec.to_json();
  auto r = plane.submit({WriteOp::update(std::move(updated))}, plane.loop().now());
  if (!r.ok()) return r.error();
  return {};
}

}  // namespace tenancy::slicing
