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

#include "tenancy/runtime/control_plane.hpp"

#include <filesystem>

#include "tenancy/admission/admission.hpp"
#include "tenancy/controllers/tenancy_controllers.hpp"
#include "tenancy/rbac/rbac.hpp"
#include "tenancy/sim/cluster.hpp"
#include "tenancy/slicing/slicing.hpp"

namespace tenancy::runtime {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ControlPlane::ControlPlane(PlaneOptions options)
    : options_(std::move(options)),
      channel_(options_.latency),
      digest_(options_.digest ? options_.digest : naming::DigestFn(naming::sha256)),
      cluster_uid_(Uid::from_words(splitmix(options_.seed), splitmix(options_.seed ^ 0x5a5aULL))),
      uid_gen_(splitmix(options_.seed ^ 0xc1d4ULL)) {
  store_ = std::make_unique<Store>(
      loop_, Store::Options{options_.namespace_threshold, options_.in_memory_log_limit});
  system_client_ = std::make_unique<Client>(*this, 1e9, 1e9, "system");

  if (!options_.event_log_path.empty()) {
    if (std::filesystem::exists(options_.event_log_path)) {
      auto replayed = replay_log(options_.event_log_path);
      (void)replayed;  // a fresh path is fine; errors surface via the CLI
    }
    log_writer_ = std::make_unique<EventLogWriter>(options_.event_log_path);
    store_->add_log_sink([this](const EventRecord& rec) { log_writer_->append(rec); });
  }

  if (options_.seed_provider_roles &&
      store_->find({Kind::Role, "", rbac::kClusterAdminRole}) == nullptr) {
    seed_provider_roles();
  }

  if (options_.install_controllers) {
    controllers::install(*this);
    slicing::install(*this);
    sim::install(*this);
    start();
  }
}

ControlPlane::~ControlPlane() = default;

Uid ControlPlane::fresh_uid() {
  Uid uid = uid_gen_.next();
  while (used_uids_.count(uid.value) > 0) uid = uid_gen_.next();
  used_uids_.insert(uid.value);
  return uid;
}

void ControlPlane::seed_provider_roles() {
  auto make_role = [&](const std::string& name, RoleSpec spec) {
    StoredObject o;
    o.kind = Kind::Role;
    o.meta.name = name;
    o.meta.phase = Phase::Established;
    o.spec = spec.to_json();
    auto r = submit({WriteOp::create(std::move(o))}, loop_.now());
    (void)r;
  };
  make_role(rbac::kClusterAdminRole, RoleSpec{{RoleRule{{"*"}, {"*"}}}});
  make_role(rbac::kAdminRole, RoleSpec{{RoleRule{{"*"}, {"*"}}}});
  make_role(rbac::kEditRole,
            RoleSpec{{RoleRule{{"get", "list", "create", "update", "delete"}, {"*"}}}});
  make_role(rbac::kViewRole, RoleSpec{{RoleRule{{"get", "list"}, {"*"}}}});

  // The cluster administration bootstrap identity.
  StoredObject binding;
  binding.kind = Kind::RoleBinding;
  binding.meta.name = "bootstrap-admin";
  binding.meta.phase = Phase::Established;
  RoleBindingSpec spec;
  spec.user = "admin";
  spec.role = rbac::kClusterAdminRole;
  spec.role_scope = RoleRefScope::Cluster;
  spec.origin = "bootstrap";
  binding.spec = spec.to_json();
  auto r = submit({WriteOp::create(std::move(binding))}, loop_.now());
  (void)r;
}

Controller& ControlPlane::add_controller(std::string name, Kind primary, ReconcileFn fn) {
  controllers_.push_back(std::make_unique<Controller>(*this, std::move(name), primary,
                                                      options_.controller, std::move(fn)));
  Controller& c = *controllers_.back();
  if (started_) c.start();
  return c;
}

Controller* ControlPlane::controller(const std::string& name) {
  for (auto& c : controllers_) {
    if (c->name() == name) return c.get();
  }
  return nullptr;
}

std::vector<Controller*> ControlPlane::controllers() {
  std::vector<Controller*> out;
  for (auto& c : controllers_) out.push_back(c.get());
  return out;
}

void ControlPlane::start() {
  if (started_) return;
  started_ = true;
  for (auto& c : controllers_) c->start();
}

Result<std::uint64_t> ControlPlane::submit(std::vector<WriteOp> batch, SimTime at) {
  // Mutate-then-validate admission for policy-bearing kinds.
  for (auto& op : batch) {
    if (op.type == WriteOp::Type::Delete) continue;
    if (!admission::policy_bearing(op.object.kind)) continue;
    ++admission_calls_[op.object.kind];
    auto decision =
        admission::admit(op.object, op.type == WriteOp::Type::Create, *store_);
    if (!decision.allow) {
      Error e = make_error(Errc::admission_denied, decision.detail);
      e.component = decision.reason;
      return e;
    }
    admission::apply_patches(op.object, decision.mutations);
  }

  // A subnamespace handle may not be deleted while its subtree is in use;
  // the teardown would otherwise strand charged usage.
  for (const auto& op : batch) {
    if (op.type != WriteOp::Type::Delete || op.key.kind != Kind::Subnamespace) continue;
    const StoredObject* handle = store_->find(op.key);
    if (handle == nullptr) continue;
    auto spec = SubnamespaceSpec::from_json(handle->spec);
    if (!spec.child_namespace) continue;
    NamespaceTree tree = load_tree();
    if (!tree.contains(*spec.child_namespace)) continue;
    auto names = tree.subtree_names(*spec.child_namespace);
    for (const auto& name : names.value()) {
      if (!tree.find(name)->usage.is_zero()) {
        return make_error(Errc::subtree_in_use, "namespace in use: " + name);
      }
    }
  }

  // Pod accounting companions: namespace usage and node occupancy follow
  // pod writes atomically.
  std::set<ObjectKey> removed_in_batch;
  for (const auto& op : batch) {
    if (op.type == WriteOp::Type::Delete) removed_in_batch.insert(op.key);
  }
  std::map<std::string, ResourceVector> usage_delta;
  struct NodeDelta {
    ResourceVector alloc;
    std::vector<std::pair<std::string, bool>> residents;  // pod key, add/remove
  };
  std::map<std::string, NodeDelta> node_delta;
  for (const auto& op : batch) {
    if (op.key.kind != Kind::Pod) continue;
    const std::string pod_key = op.key.ns + "/" + op.key.name;
    switch (op.type) {
      case WriteOp::Type::Create: {
        PodSpec spec = PodSpec::from_json(op.object.spec);
        usage_delta[op.key.ns] += spec.request;
        break;
      }
      case WriteOp::Type::Update: {
        const StoredObject* old = store_->find(op.key);
        if (old == nullptr) break;
        PodSpec before = PodSpec::from_json(old->spec);
        PodSpec after = PodSpec::from_json(op.object.spec);
        if (!before.node && after.node) {
          node_delta[*after.node].alloc += after.request;
          node_delta[*after.node].residents.emplace_back(pod_key, true);
        } else if (before.node && !after.node) {
          node_delta[*before.node].alloc -= before.request;
          node_delta[*before.node].residents.emplace_back(pod_key, false);
        }
        break;
      }
      case WriteOp::Type::Delete: {
        const StoredObject* old = store_->find(op.key);
        if (old == nullptr) break;
        PodSpec before = PodSpec::from_json(old->spec);
        usage_delta[op.key.ns] -= before.request;
        if (before.node) {
          node_delta[*before.node].alloc -= before.request;
          node_delta[*before.node].residents.emplace_back(pod_key, false);
        }
        break;
      }
    }
  }
  for (const auto& [ns, delta] : usage_delta) {
    if (delta.is_zero()) continue;
    ObjectKey key{Kind::NamespaceRecord, "", ns};
    if (removed_in_batch.count(key) > 0) continue;
    const StoredObject* rec = store_->find(key);
    if (rec == nullptr) continue;
    NamespaceNode node = namespace_node_from_record(*rec);
    node.usage += delta;
    for (int i = 0; i < ResourceVector::kComponents; ++i) {
      if (node.usage.component(i) < 0) node.usage.set_component(i, 0);
    }
    StoredObject updated = *rec;
    updated.spec = namespace_node_to_json(node);
    batch.push_back(WriteOp::update(std::move(updated)));
  }
  for (const auto& [name, delta] : node_delta) {
    ObjectKey key{Kind::Node, "", name};
    if (removed_in_batch.count(key) > 0) continue;
    const StoredObject* obj = store_->find(key);
    if (obj == nullptr) continue;
    NodeSpec spec = NodeSpec::from_json(obj->spec);
    spec.allocated += delta.alloc;
    for (int i = 0; i < ResourceVector::kComponents; ++i) {
      if (spec.allocated.component(i) < 0) spec.allocated.set_component(i, 0);
    }
    for (const auto& [pod, add] : delta.residents) {
      if (add) {
        spec.resident.insert(pod);
      } else {
        spec.resident.erase(pod);
      }
    }
    StoredObject updated = *obj;
    updated.spec = spec.to_json();
    batch.push_back(WriteOp::update(std::move(updated)));
  }

  // Fresh identities for new objects.
  for (auto& op : batch) {
    if (op.type == WriteOp::Type::Create && op.object.meta.uid.empty()) {
      op.object.meta.uid = fresh_uid();
    }
  }

  return store_->apply(std::move(batch), at);
}

NamespaceTree ControlPlane::load_tree() const {
  NamespaceTree tree(cluster_uid_);
  auto records = store_->list_refs(Kind::NamespaceRecord);
  std::vector<NamespaceNode> subs;
  for (const auto* rec : records) {
    NamespaceNode node = namespace_node_from_record(*rec);
    if (node.kind == NamespaceKind::Core) {
      (void)tree.add_core(std::move(node));
    } else {
      subs.push_back(std::move(node));
    }
  }
  // Parents may sort after children; insert until a fixed point.
  while (!subs.empty()) {
    std::size_t before = subs.size();
    std::erase_if(subs, [&](const NamespaceNode& n) {
      return n.parent && tree.contains(*n.parent) && tree.add_sub(n).ok();
    });
    if (subs.size() == before) break;  // orphans: ignore
  }
  return tree;
}

std::optional<NamespaceNode> ControlPlane::namespace_node(const std::string& ns) const {
  const StoredObject* rec = store_->find({Kind::NamespaceRecord, "", ns});
  if (rec == nullptr) return std::nullopt;
  return namespace_node_from_record(*rec);
}

std::optional<TenantSpec> ControlPlane::tenant_spec(const std::string& tenant) const {
  const StoredObject* obj = store_->find({Kind::Tenant, "", tenant});
  if (obj == nullptr) return std::nullopt;
  return TenantSpec::from_json(obj->spec);
}

std::uint64_t ControlPlane::admission_calls(Kind kind) const {
  auto it = admission_calls_.find(kind);
  return it == admission_calls_.end() ? 0 : it->second;
}

Result<std::size_t> ControlPlane::replay_log(const std::string& path) {
  auto records = read_event_log(path);
  if (!records.ok()) return records.error();
  SimTime latest = 0;
  for (const auto& rec : records.value()) {
    store_->restore(rec);
    used_uids_.insert(rec.object.meta.uid.value);
    latest = std::max(latest, rec.at);
  }
  loop_.fast_forward(latest);
  return records.value().size();
}

}  // namespace tenancy::runtime
