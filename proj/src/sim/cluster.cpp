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

#include "tenancy/sim/cluster.hpp"

#include <algorithm>

namespace tenancy::sim {

using namespace tenancy::runtime;

namespace {

ReconcileOutcome reconcile_scheduler(const std::string&, ReconcileContext& ctx) {
  Store& store = ctx.plane.store();
  if (store.count(Kind::Node) == 0) return converged();

  struct NodeView {
    const StoredObject* obj;
    NodeSpec spec;
  };
  std::vector<NodeView> nodes;  // lexicographic by name (store order)
  for (const auto* n : store.list_refs(Kind::Node)) {
    nodes.push_back({n, NodeSpec::from_json(n->spec)});
  }

  std::map<std::string, std::optional<std::string>> slice_bound;
  for (const auto* s : store.list_refs(Kind::Slice)) {
    slice_bound[s->meta.name] = SliceSpec::from_json(s->spec).bound_namespace;
  }

  struct PodView {
    const StoredObject* obj;
    PodSpec spec;
  };
  std::vector<PodView> pending;
  for (const auto* p : store.list_refs(Kind::Pod)) {
    PodSpec spec = PodSpec::from_json(p->spec);
    if (spec.phase == PodPhase::Pending) pending.push_back({p, std::move(spec)});
  }
  std::sort(pending.begin(), pending.end(), [](const PodView& a, const PodView& b) {
    if (a.obj->meta.created_at != b.obj->meta.created_at) {
      return a.obj->meta.created_at < b.obj->meta.created_at;
    }
    return a.obj->key() < b.obj->key();
  });

  std::vector<WriteOp> batch;
  for (auto& pod : pending) {
    const std::string& pod_ns = pod.obj->ns.value_or("");
    // Only sandboxed workloads may share nodes; anything else must run on
    // nodes reserved for its own namespace.
    const bool sandboxed = pod.spec.runtime_class == "kata";
    for (auto& node : nodes) {
      bool eligible = false;
      switch (node.spec.state) {
        case NodeState::Shared:
          eligible = sandboxed;
          break;
        case NodeState::PreReserved:
          eligible = false;  // pre-reserved nodes accept no new pods
          break;
        case NodeState::Reserved: {
          auto it = slice_bound.find(node.spec.slice);
          eligible = it != slice_bound.end() && it->second && *it->second == pod_ns;
          break;
        }
      }
      if (!eligible) continue;
      if (!(node.spec.allocated + pod.spec.request).fits_within(node.spec.capacity)) continue;
      node.spec.allocated += pod.spec.request;  // local view for this pass
      PodSpec placed = pod.spec;
      placed.node = node.obj->meta.name;
      placed.phase = PodPhase::Scheduled;
      StoredObject updated = *pod.obj;
      updated.spec = placed.to_json();
      batch.push_back(WriteOp::update(std::move(updated)));
      break;
    }
  }
  if (batch.empty()) return converged();
  if (auto r = ctx.client.apply(std::move(batch)); !r.ok()) {
    return requeue(r.error().to_string());
  }
  return converged();
}

void schedule_removal(ControlPlane& plane, const std::vector<ObjectKey>& keys, SimTime at) {
  plane.loop().schedule_at(at, [&plane, keys] {
    std::vector<WriteOp> batch;
    for (const auto& key : keys) {
      const StoredObject* pod = plane.store().find(key);
      if (pod == nullptr) continue;
      if (PodSpec::from_json(pod->spec).phase != PodPhase::Terminating) continue;
      batch.push_back(WriteOp::del(key));
    }
    if (!batch.empty()) {
      auto r = plane.submit(std::move(batch), plane.loop().now());
      (void)r;
    }
  });
}

}  // namespace

void install(ControlPlane& plane) {
  Controller& sched = plane.add_controller("scheduler", Kind::Pod, reconcile_scheduler);
  sched.make_singleton("scheduler");
  sched.watch_also(Kind::Node, [](const EventRecord&) { return std::vector<std::string>{}; });
}

StoredObject make_node(const std::string& name, std::map<std::string, std::string> labels,
                       ResourceVector capacity) {
  StoredObject o;
  o.kind = Kind::Node;
  o.meta.name = name;
  o.meta.phase = Phase::Established;
  NodeSpec spec;
  spec.labels = std::move(labels);
  spec.capacity = capacity;
  o.spec = spec.to_json();
  return o;
}

StoredObject make_pod(const std::string& ns, const std::string& name,
                      const std::string& runtime_class, ResourceVector request) {
  StoredObject o;
  o.kind = Kind::Pod;
  o.ns = ns;
  o.meta.name = name;
  o.meta.phase = Phase::Established;
  PodSpec spec;
  spec.runtime_class = runtime_class;
  spec.request = request;
  spec.phase = PodPhase::Pending;
  o.spec = spec.to_json();
  return o;
}

Result<std::vector<ObjectKey>> evict_nodes(ControlPlane& plane,
                                           const std::vector<std::string>& nodes,
                                           const PodPredicate& predicate, std::int64_t grace_ms,
                                           SimTime at) {
  Store& store = plane.store();
  for (const auto& n : nodes) {
    if (store.find({Kind::Node, "", n}) == nullptr) {
      return make_error(Errc::unknown_node, "node not found: " + n);
    }
  }
  if (at < 0) at = plane.loop().now();
  std::set<std::string> node_set(nodes.begin(), nodes.end());

  std::vector<ObjectKey> keys;
  std::vector<WriteOp> batch;
  for (const auto* p : store.list_refs(Kind::Pod)) {
    PodSpec spec = PodSpec::from_json(p->spec);
    if (!spec.node || node_set.count(*spec.node) == 0) continue;
    if (spec.phase == PodPhase::Terminating) continue;
    if (!predicate(*p)) continue;
    spec.phase = PodPhase::Terminating;
    StoredObject updated = *p;
    updated.spec = spec.to_json();
    batch.push_back(WriteOp::update(std::move(updated)));
    keys.push_back(p->key());
  }
  if (!batch.empty()) {
    auto r = plane.submit(std::move(batch), at);
    if (!r.ok()) return r.error();
    schedule_removal(plane, keys, at + sim_ms(grace_ms));
  }
  return keys;
}

Result<std::vector<ObjectKey>> evict(ControlPlane& plane, const std::string& node,
                                     const PodPredicate& predicate, std::int64_t grace_ms) {
  return evict_nodes(plane, {node}, predicate, grace_ms, -1);
}

}  // namespace tenancy::sim
