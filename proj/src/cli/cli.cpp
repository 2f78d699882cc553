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

#include "tenancy/cli/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "tenancy/bench/bench.hpp"
#include "tenancy/controllers/tenancy_controllers.hpp"
#include "tenancy/rbac/rbac.hpp"
#include "tenancy/sim/cluster.hpp"
#include "tenancy/slicing/slicing.hpp"

namespace tenancy::cli {

using namespace tenancy::runtime;

namespace {

constexpr int kOk = 0;
constexpr int kInternalError = 1;
constexpr int kUsageError = 2;

std::string format_ms(SimTime us) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%lld.%03lld", static_cast<long long>(us / 1000),
                static_cast<long long>(us % 1000));
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 42;
  int workers = 2;
  std::int64_t period_ms = 1000;
  double qps = 5;
  double burst = 10;
  std::string log_path;
  bool json = false;
};

struct QuotaFlags {
  std::int64_t uniform = -1;
  std::int64_t cpu = 0, memory = 0, local_storage = 0, ephemeral_storage = 0, bandwidth = 0;

  bool any() const {
    return uniform >= 0 || cpu || memory || local_storage || ephemeral_storage || bandwidth;
  }
  ResourceVector vector() const {
    if (uniform >= 0) return ResourceVector::uniform(uniform);
    return {cpu, memory, local_storage, ephemeral_storage, bandwidth};
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--quota", uniform, "uniform value for all five resource components");
    cmd->add_option("--cpu", cpu, "millicores");
    cmd->add_option("--memory", memory, "bytes");
    cmd->add_option("--local-storage", local_storage, "bytes");
    cmd->add_option("--ephemeral-storage", ephemeral_storage, "bytes");
    cmd->add_option("--bandwidth", bandwidth, "bits per second");
  }
};

std::string default_log_path() {
  if (const char* env = std::getenv("TENANCY_PLANE_LOG")) return env;
  return "tenancy-plane.events.jsonl";
}

class Session {
 public:
  Session(const GlobalOpts& g, bool persistent) {
    PlaneOptions opt;
    opt.seed = g.seed;
    opt.controller = {g.workers, g.period_ms, g.qps, g.burst};
    opt.latency.seed = g.seed;
    if (persistent) opt.event_log_path = g.log_path;
    plane_ = std::make_unique<ControlPlane>(std::move(opt));
    plane_->run_until_quiescent();  // settle replayed state
  }

  ControlPlane& plane() { return *plane_; }

  void settle() { plane_->run_until_quiescent(); }

  Result<StoredObject> submit_create(StoredObject o) {
    auto session = plane_->system_client().session(plane_->loop().now());
    auto r = session.create(std::move(o));
    settle();
    return r;
  }

 private:
  std::unique_ptr<ControlPlane> plane_;
};

int error_exit(const Error& e, std::ostream& err) {
  err << "error: " << e.to_string() << "\n";
  switch (e.code) {
    case Errc::admission_denied:
    case Errc::invalid_argument:
    case Errc::invalid_name:
    case Errc::name_too_long:
    case Errc::not_found:
    case Errc::unknown_namespace:
    case Errc::unknown_slice:
    case Errc::unknown_node:
    case Errc::unknown_role:
    case Errc::subtree_in_use:
    case Errc::duplicate_tenant_name:
      return kUsageError;
    default:
      return kInternalError;
  }
}

std::string phase_line(const StoredObject& o) {
  std::string line = std::string(kind_name(o.kind)) + "/" + o.meta.name + " " +
                     phase_name(o.meta.phase);
  if (o.meta.failure_reason) line += " (" + *o.meta.failure_reason + ")";
  return line;
}

Json quota_json(const ResourceVector& v) {
  bool uniform = true;
  for (int i = 1; i < ResourceVector::kComponents; ++i) {
    uniform &= v.component(i) == v.component(0);
  }
  Json j = Json::object();
  j["vector"] = to_json(v);
  if (uniform) {
    j["uniform"] = v.cpu;
  } else {
    j["uniform"] = nullptr;
  }
  return j;
}

std::string quota_text(const ResourceVector& v) {
  bool uniform = true;
  for (int i = 1; i < ResourceVector::kComponents; ++i) {
    uniform &= v.component(i) == v.component(0);
  }
  if (uniform) return std::to_string(v.cpu);
  return v.to_string();
}

// Display name of a namespace: cores show their own name, subnamespaces the
// name originally requested through their handle.
std::string display_name(const Store& store, const NamespaceNode& node) {
  if (node.kind == NamespaceKind::Core || !node.owner_handle) return node.name();
  auto [ns, handle_name] = Controller::split_key(*node.owner_handle);
  if (!ns) return node.name();
  const StoredObject* handle = store.find({Kind::Subnamespace, *ns, handle_name});
  if (handle == nullptr) return node.name();
  return SubnamespaceSpec::from_json(handle->spec).requested_name;
}

// --- command handlers -------------------------------------------------------

int cmd_tenant_request(Session& session, const std::string& name, const std::string& owner,
                       const QuotaFlags& quota, bool network_policy, std::ostream& out,
                       std::ostream& err) {
  TenantRequestSpec spec;
  spec.owner = owner;
  spec.cluster_network_policy = network_policy;
  if (quota.any()) spec.quota = quota.vector();
  auto r = session.submit_create(controllers::make_tenant_request(name, spec));
  if (!r.ok()) return error_exit(r.error(), err);
  out << phase_line(*session.plane().store().get(r.value().key())) << "\n";
  return kOk;
}

int cmd_tenant_decide(Session& session, const std::string& name, bool approve,
                      const std::string& as_user, std::ostream& out, std::ostream& err) {
  ControlPlane& plane = session.plane();
  if (!rbac::rbac_can(plane.store(), as_user, "approve", Kind::TenantRequest, std::nullopt)) {
    err << "error: " << as_user << " is not authorized to decide tenant requests\n";
    return kUsageError;
  }
  const StoredObject* req = plane.store().find({Kind::TenantRequest, "", name});
  if (req == nullptr) {
    err << "error: tenant request not found: " << name << "\n";
    return kUsageError;
  }
  auto spec = TenantRequestSpec::from_json(req->spec);
  spec.decision = approve ? Decision::Approved : Decision::Denied;
  spec.decided_by = as_user;
  StoredObject updated = *req;
  updated.spec = spec.to_json();
  auto client = plane.system_client().session(plane.loop().now());
  if (auto r = client.update(std::move(updated)); !r.ok()) return error_exit(r.error(), err);
  session.settle();
  const StoredObject* request_after = plane.store().find({Kind::TenantRequest, "", name});
  if (request_after != nullptr) out << phase_line(*request_after) << "\n";
  if (const StoredObject* tenant = plane.store().find({Kind::Tenant, "", name})) {
    out << phase_line(*tenant) << "\n";
  }
  return kOk;
}

int cmd_tenant_list(Session& session, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  if (json) {
    Json arr = Json::array();
    for (const auto* t : plane.store().list_refs(Kind::Tenant)) {
      auto spec = TenantSpec::from_json(t->spec);
      Json j = Json::object();
      j["name"] = t->meta.name;
      j["phase"] = phase_name(t->meta.phase);
      j["owner"] = spec.owner;
      j["cluster_network_policy"] = spec.cluster_network_policy;
      if (spec.quota) {
        j["quota"] = to_json(*spec.quota);
      } else {
        j["quota"] = nullptr;
      }
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  for (const auto* t : plane.store().list_refs(Kind::Tenant)) {
    auto spec = TenantSpec::from_json(t->spec);
    out << t->meta.name << "\t" << phase_name(t->meta.phase) << "\towner=" << spec.owner;
    if (spec.quota) out << "\tquota=" << quota_text(*spec.quota);
    out << "\n";
  }
  return kOk;
}

int cmd_subns_create(Session& session, const std::string& name, const std::string& parent,
                     const std::string& mode, const std::string& scope,
                     const std::vector<std::string>& inherit, bool sync,
                     const std::string& owner, const QuotaFlags& quota,
                     const std::string& as_user, const std::string& claim, std::ostream& out,
                     std::ostream& err) {
  SubnamespaceSpec spec;
  spec.requested_name = name;
  spec.parent = parent;
  spec.mode = mode == "subtenant" ? SubnamespaceMode::Subtenant : SubnamespaceMode::Workspace;
  spec.scope = scope == "federated" ? NameScope::Federated : NameScope::Local;
  for (const auto& token : inherit) {
    auto kind = kind_from_name(token);
    if (!kind || inheritable_kinds().count(*kind) == 0) {
      err << "error: not an inheritable kind: " << token
          << " (use Role, RoleBinding, NetworkPolicy, LimitRange, Secret, ConfigMap,"
             " ServiceAccount)\n";
      return kUsageError;
    }
    spec.inherit.insert(*kind);
  }
  spec.sync = sync;
  if (!owner.empty()) spec.owner = owner;
  if (quota.any()) spec.quota = quota.vector();
  if (!as_user.empty()) spec.requester = as_user;
  if (!claim.empty()) spec.slice_claim = claim;

  auto r = session.submit_create(controllers::make_subnamespace(parent, spec));
  if (!r.ok()) return error_exit(r.error(), err);
  const StoredObject* handle = session.plane().store().find(r.value().key());
  out << phase_line(*handle) << "\n";
  auto final_spec = SubnamespaceSpec::from_json(handle->spec);
  if (final_spec.child_namespace) out << "namespace: " << *final_spec.child_namespace << "\n";
  return kOk;
}

int cmd_subns_delete(Session& session, const std::string& name, const std::string& parent,
                     std::ostream& out, std::ostream& err) {
  ControlPlane& plane = session.plane();
  ObjectKey key{Kind::Subnamespace, parent, name};
  if (plane.store().find(key) == nullptr) {
    err << "error: subnamespace not found: " << parent << "/" << name << "\n";
    return kUsageError;
  }
  auto client = plane.system_client().session(plane.loop().now());
  if (auto r = client.remove(key); !r.ok()) return error_exit(r.error(), err);
  session.settle();
  out << "deleted " << parent << "/" << name << "\n";
  return kOk;
}

void print_tree(const Store& store, const NamespaceTree& tree, const std::string& node,
                int depth, std::ostream& out) {
  const NamespaceNode* n = tree.find(node);
  for (int i = 0; i < depth; ++i) out << "  ";
  out << display_name(store, *n) << " [" << node << "]"
      << " kind=" << namespace_kind_name(n->kind) << " mode=" << mode_name(n->mode)
      << " q=" << quota_text(n->quota) << " usage=" << quota_text(n->usage) << "\n";
  for (const auto& child : tree.children(node)) print_tree(store, tree, child, depth + 1, out);
}

int cmd_subns_list(Session& session, bool tree_view, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  NamespaceTree tree = plane.load_tree();
  if (json) {
    Json arr = Json::array();
    for (const auto& name : tree.names()) {
      const NamespaceNode* n = tree.find(name);
      Json j = Json::object();
      j["namespace"] = name;
      j["display"] = display_name(plane.store(), *n);
      j["kind"] = namespace_kind_name(n->kind);
      j["tenant"] = n->tenant;
      if (n->parent) {
        j["parent"] = *n->parent;
      } else {
        j["parent"] = nullptr;
      }
      j["mode"] = mode_name(n->mode);
      j["scope"] = scope_name(n->scope);
      j["quota"] = quota_json(n->quota);
      j["usage"] = quota_json(n->usage);
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  if (tree_view) {
    for (const auto& core : tree.core_names()) print_tree(plane.store(), tree, core, 0, out);
    return kOk;
  }
  for (const auto& name : tree.names()) {
    const NamespaceNode* n = tree.find(name);
    out << name << "\t" << namespace_kind_name(n->kind) << "\ttenant=" << n->tenant
        << "\tq=" << quota_text(n->quota) << "\n";
  }
  return kOk;
}

int cmd_quota_set(Session& session, const std::string& tenant, const QuotaFlags& amount,
                  std::int64_t expires_ms, const std::string& reason, std::ostream& out,
                  std::ostream& err) {
  ControlPlane& plane = session.plane();
  const StoredObject* tenant_obj = plane.store().find({Kind::Tenant, "", tenant});
  if (tenant_obj == nullptr) {
    err << "error: tenant not found: " << tenant << "\n";
    return kUsageError;
  }
  auto spec = TenantSpec::from_json(tenant_obj->spec);
  if (!spec.quota_enforced()) {
    err << "error: tenant " << tenant << " has no resource quota; quota set needs one\n";
    return kUsageError;
  }
  const StoredObject* rec = plane.store().find({Kind::NamespaceRecord, "", tenant});
  if (rec == nullptr) {
    err << "error: tenant core namespace is not established yet\n";
    return kUsageError;
  }
  QuotaDelta delta;
  delta.amount = amount.vector();
  if (expires_ms > 0) delta.expires_at = plane.loop().now() + sim_ms(expires_ms);
  delta.reason = reason;

  TenantQuotaLedger ledger = spec.ledger(tenant);
  if (auto ok = ledger.add_delta(delta, plane.loop().now()); !ok.ok()) {
    return error_exit(ok.error(), err);
  }
  NamespaceNode core = namespace_node_from_record(*rec);
  core.quota += delta.amount;
  if (!core.quota.non_negative()) {
    err << "error: the core namespace's own portion cannot absorb this delta; "
           "recoup children first\n";
    return kUsageError;
  }
  spec.quota_deltas.push_back(delta);
  StoredObject tenant_updated = *tenant_obj;
  tenant_updated.spec = spec.to_json();
  StoredObject rec_updated = *rec;
  rec_updated.spec = namespace_node_to_json(core);

  auto client = plane.system_client().session(plane.loop().now());
  auto r = client.apply(
      {WriteOp::update(std::move(tenant_updated)), WriteOp::update(std::move(rec_updated))});
  if (!r.ok()) return error_exit(r.error(), err);
  session.settle();
  out << "tenant " << tenant
      << " effective quota: " << quota_text(ledger.effective(plane.loop().now())) << "\n";
  return kOk;
}

int cmd_quota_show(Session& session, bool validate, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  NamespaceTree tree = plane.load_tree();
  bool all_ok = true;
  Json tenants = Json::array();

  for (const auto& core : tree.core_names()) {
    auto spec = plane.tenant_spec(core);
    if (!spec) continue;
    Json t = Json::object();
    t["tenant"] = core;
    t["enforced"] = spec->quota_enforced();
    std::string verdict = "UNENFORCED";
    if (spec->quota_enforced()) {
      TenantQuotaLedger ledger = spec->ledger(core);
      auto result = validate_partition(tree, ledger, plane.loop().now());
      verdict = result.ok ? "OK" : "VIOLATION";
      all_ok &= result.ok;
      if (validate && !result.ok) {
        Json violations = Json::array();
        for (const auto& v : result.violations) {
          Json jv = Json::object();
          jv["vertex"] = v.vertex;
          jv["imbalance"] = to_json(v.imbalance);
          jv["reason"] = v.reason;
          violations.push_back(std::move(jv));
        }
        t["violations"] = std::move(violations);
      }
    }
    t["validation"] = verdict;
    Json subtrees = Json::array();
    auto member_names = tree.subtree_names(core);
    for (const auto& name : member_names.value()) {
      const NamespaceNode* n = tree.find(name);
      Json s = Json::object();
      s["namespace"] = name;
      s["display"] = display_name(plane.store(), *n);
      s["subtree_total"] = quota_json(subtree_quota(tree, name).value());
      s["own"] = quota_json(n->quota);
      subtrees.push_back(std::move(s));
    }
    t["subtrees"] = std::move(subtrees);
    tenants.push_back(std::move(t));
  }

  if (json) {
    Json j = Json::object();
    j["ok"] = all_ok;
    j["tenants"] = std::move(tenants);
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (validate) out << (all_ok ? "OK" : "VIOLATION") << "\n";
  for (const auto& t : tenants) {
    out << "tenant " << t["tenant"].get<std::string>() << " ["
        << t["validation"].get<std::string>() << "]\n";
    for (const auto& s : t["subtrees"]) {
      const auto& total = s["subtree_total"];
      out << "  " << s["display"].get<std::string>() << " ("
          << s["namespace"].get<std::string>() << ") total=";
      if (total["uniform"].is_null()) {
        out << total["vector"].dump();
      } else {
        out << total["uniform"].get<std::int64_t>();
      }
      out << "\n";
    }
  }
  return kOk;
}

int cmd_slice_create(Session& session, const std::string& name, std::int64_t node_count,
                     const std::vector<std::string>& labels, const QuotaFlags& resources,
                     std::int64_t grace_ms, std::ostream& out, std::ostream& err) {
  SliceSelector selector;
  selector.node_count = node_count;
  selector.resources = resources.vector();
  for (const auto& kv : labels) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      err << "error: --label expects key=value, got: " << kv << "\n";
      return kUsageError;
    }
    selector.labels[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto r = session.submit_create(slicing::make_slice(name, selector, grace_ms));
  if (!r.ok()) return error_exit(r.error(), err);
  const StoredObject* slice = session.plane().store().find(r.value().key());
  auto spec = SliceSpec::from_json(slice->spec);
  out << "slice/" << name << " " << slice_phase_name(spec.phase);
  if (!spec.failure_reason.empty()) out << " (" << spec.failure_reason << ")";
  out << "\n";
  return kOk;
}

int cmd_slice_release(Session& session, const std::string& name, std::ostream& out,
                      std::ostream& err) {
  auto r = slicing::request_release(session.plane(), name);
  if (!r.ok()) return error_exit(r.error(), err);
  session.settle();
  out << "released " << name << "\n";
  return kOk;
}

int cmd_slice_list(Session& session, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  if (json) {
    Json arr = Json::array();
    for (const auto* s : plane.store().list_refs(Kind::Slice)) {
      auto spec = SliceSpec::from_json(s->spec);
      Json j = Json::object();
      j["name"] = s->meta.name;
      j["phase"] = slice_phase_name(spec.phase);
      Json nodes = Json::array();
      for (const auto& n : spec.nodes) nodes.push_back(n);
      j["nodes"] = std::move(nodes);
      if (spec.bound_namespace) {
        j["bound_namespace"] = *spec.bound_namespace;
      } else {
        j["bound_namespace"] = nullptr;
      }
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  for (const auto* s : plane.store().list_refs(Kind::Slice)) {
    auto spec = SliceSpec::from_json(s->spec);
    out << s->meta.name << "\t" << slice_phase_name(spec.phase) << "\tnodes=" << spec.nodes.size();
    if (spec.bound_namespace) out << "\tbound=" << *spec.bound_namespace;
    out << "\n";
  }
  return kOk;
}

int cmd_claim_create(Session& session, const std::string& name, const std::string& ns,
                     const std::string& slice, const std::string& mode, std::int64_t node_count,
                     const QuotaFlags& resources, std::ostream& out, std::ostream& err) {
  SliceClaimSpec spec;
  spec.mode = mode == "manual" ? ClaimMode::Manual : ClaimMode::Dynamic;
  spec.slice_name = slice;
  spec.requested.node_count = node_count;
  spec.requested.resources = resources.vector();
  auto r = session.submit_create(slicing::make_slice_claim(ns, name, spec));
  if (!r.ok()) return error_exit(r.error(), err);
  const StoredObject* claim = session.plane().store().find(r.value().key());
  auto final_spec = SliceClaimSpec::from_json(claim->spec);
  out << "claim/" << name << " " << claim_phase_name(final_spec.phase);
  if (!final_spec.reason.empty()) out << " (" << final_spec.reason << ")";
  out << "\n";
  return kOk;
}

int cmd_claim_list(Session& session, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  if (json) {
    Json arr = Json::array();
    for (const auto* c : plane.store().list_refs(Kind::SliceClaim)) {
      auto spec = SliceClaimSpec::from_json(c->spec);
      Json j = Json::object();
      j["name"] = c->meta.name;
      j["namespace"] = c->ns.value_or("");
      j["mode"] = claim_mode_name(spec.mode);
      j["slice"] = spec.slice_name;
      j["phase"] = claim_phase_name(spec.phase);
      j["reason"] = spec.reason;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  for (const auto* c : plane.store().list_refs(Kind::SliceClaim)) {
    auto spec = SliceClaimSpec::from_json(c->spec);
    out << c->ns.value_or("") << "/" << c->meta.name << "\t" << claim_mode_name(spec.mode)
        << "\t" << claim_phase_name(spec.phase);
    if (!spec.reason.empty()) out << "\t(" << spec.reason << ")";
    out << "\n";
  }
  return kOk;
}

int cmd_role_request_create(Session& session, const std::string& name, const std::string& ns,
                            const std::string& user, const std::string& role, bool cluster_role,
                            std::ostream& out, std::ostream& err) {
  RoleRequestSpec spec;
  spec.user = user;
  spec.role = role;
  spec.role_scope = cluster_role ? RoleRefScope::Cluster : RoleRefScope::Namespace;
  auto r = session.submit_create(controllers::make_role_request(ns, name, spec));
  if (!r.ok()) return error_exit(r.error(), err);
  out << phase_line(*session.plane().store().find(r.value().key())) << "\n";
  return kOk;
}

int cmd_role_request_approve(Session& session, const std::string& name, const std::string& ns,
                             const std::string& as_user, std::ostream& out, std::ostream& err) {
  ControlPlane& plane = session.plane();
  ObjectKey key{Kind::RoleRequest, ns, name};
  const StoredObject* req = plane.store().find(key);
  if (req == nullptr) {
    err << "error: role request not found: " << ns << "/" << name << "\n";
    return kUsageError;
  }
  auto spec = RoleRequestSpec::from_json(req->spec);
  spec.status = Decision::Approved;
  spec.decided_by = as_user;
  StoredObject updated = *req;
  updated.spec = spec.to_json();
  auto client = plane.system_client().session(plane.loop().now());
  if (auto r = client.update(std::move(updated)); !r.ok()) return error_exit(r.error(), err);
  session.settle();
  const StoredObject* after = plane.store().find(key);
  if (after != nullptr) {
    auto after_spec = RoleRequestSpec::from_json(after->spec);
    out << phase_line(*after);
    if (after_spec.status == Decision::Pending) out << " (approver not authorized)";
    out << "\n";
  }
  return kOk;
}

int cmd_node_add(Session& session, const std::string& name,
                 const std::vector<std::string>& labels, const QuotaFlags& capacity,
                 std::ostream& out, std::ostream& err) {
  std::map<std::string, std::string> label_map;
  for (const auto& kv : labels) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      err << "error: --label expects key=value, got: " << kv << "\n";
      return kUsageError;
    }
    label_map[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto r = session.submit_create(sim::make_node(name, label_map, capacity.vector()));
  if (!r.ok()) return error_exit(r.error(), err);
  out << "node/" << name << " added\n";
  return kOk;
}

int cmd_node_list(Session& session, bool json, std::ostream& out) {
  ControlPlane& plane = session.plane();
  if (json) {
    Json arr = Json::array();
    for (const auto* n : plane.store().list_refs(Kind::Node)) {
      auto spec = NodeSpec::from_json(n->spec);
      Json j = Json::object();
      j["name"] = n->meta.name;
      j["state"] = node_state_name(spec.state);
      j["slice"] = spec.slice;
      j["capacity"] = to_json(spec.capacity);
      j["allocated"] = to_json(spec.allocated);
      j["resident"] = static_cast<int>(spec.resident.size());
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  for (const auto* n : plane.store().list_refs(Kind::Node)) {
    auto spec = NodeSpec::from_json(n->spec);
    out << n->meta.name << "\t" << node_state_name(spec.state)
        << "\tpods=" << spec.resident.size();
    if (!spec.slice.empty()) out << "\tslice=" << spec.slice;
    out << "\n";
  }
  return kOk;
}

int run_bench(const GlobalOpts& g, bench::Experiment experiment, int count, int inter_arrival,
              int tenants, int reps, const std::string& csv_path, std::ostream& out,
              std::ostream& err) {
  bench::BenchSpec spec;
  spec.experiment = experiment;
  spec.count = count;
  spec.inter_arrival_s = inter_arrival;
  spec.tenants_for_pods = tenants;
  spec.controller = {g.workers, g.period_ms, g.qps, g.burst};
  spec.repetitions = reps;
  spec.seed = g.seed;

  auto report = experiment == bench::Experiment::TenantCreation ? bench::run_tenant_bench(spec)
                                                                : bench::run_pod_bench(spec);
  if (!report.ok()) return error_exit(report.error(), err);
  if (!csv_path.empty()) {
    if (auto r = bench::export_report(report.value(), bench::ExportFormat::Csv, csv_path);
        !r.ok()) {
      return error_exit(r.error(), err);
    }
  }
  if (g.json) {
    out << bench::report_json_text(report.value());
    return kOk;
  }
  const auto& agg = report.value().aggregates;
  out << "requests: " << report.value().records.size() << "\n";
  out << "success:  " << agg.success_count << "\n";
  if (agg.object_median_us) {
    out << "object creation ms (median/mean/max): " << format_ms(*agg.object_median_us) << "/"
        << format_ms(*agg.object_mean_us) << "/" << format_ms(*agg.object_max_us) << "\n";
  }
  if (agg.establish_median_us) {
    out << "establishment ms (median/mean/max): " << format_ms(*agg.establish_median_us) << "/"
        << format_ms(*agg.establish_mean_us) << "/" << format_ms(*agg.establish_max_us)
        << "\n";
  }
  out << "per-tenant resident objects: " << agg.per_tenant_resident_objects << "\n";
  out << "per-tenant dedicated processes: " << agg.per_tenant_dedicated_processes << "\n";
  return kOk;
}

int cmd_state_snapshot(Session& session, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
  auto r = write_snapshot(out_path, session.plane().store().snapshot());
  if (!r.ok()) return error_exit(r.error(), err);
  out << "snapshot written: " << out_path << "\n";
  return kOk;
}

int cmd_state_replay(const GlobalOpts& g, const std::string& log, std::ostream& out,
                     std::ostream& err) {
  PlaneOptions opt;
  opt.seed = g.seed;
  opt.install_controllers = false;
  opt.seed_provider_roles = false;
  ControlPlane plane(std::move(opt));
  auto r = plane.replay_log(log);
  if (!r.ok()) return error_exit(r.error(), err);
  if (g.json) {
    Json j = Json::object();
    j["records"] = r.value();
    j["objects"] = plane.store().size();
    j["last_seq"] = plane.store().last_seq();
    out << j.dump(2) << "\n";
  } else {
    out << "replayed " << r.value() << " records; " << plane.store().size()
        << " live objects; last seq " << plane.store().last_seq() << "\n";
  }
  return kOk;
}

int cmd_fed_check_names(const GlobalOpts& g, int clusters, int pairs, std::ostream& out,
                        std::ostream& err) {
  if (clusters < 1 || pairs < 1) {
    err << "error: --clusters and --pairs must be >= 1\n";
    return kUsageError;
  }
  UidGenerator gen(g.seed ^ 0xfedfedULL);
  std::vector<Uid> uids;
  for (int c = 0; c < clusters; ++c) uids.push_back(gen.next());
  std::set<std::string> names;
  std::uint64_t generated = 0;
  for (int i = 0; i < pairs; ++i) {
    const std::string parent = "parent-" + std::to_string(i / 97);
    const std::string requested = "req-" + std::to_string(i % 97) + "-" + std::to_string(i);
    for (const auto& uid : uids) {
      naming::NameRequest req{parent, requested, NameScope::Federated, uid};
      auto name = naming::object_name(req);
      if (!name.ok()) return error_exit(name.error(), err);
      names.insert(name.value());
      ++generated;
    }
  }
  const std::uint64_t collisions = generated - names.size();
  if (g.json) {
    Json j = Json::object();
    j["clusters"] = clusters;
    j["pairs"] = pairs;
    j["generated"] = generated;
    j["collisions"] = collisions;
    out << j.dump(2) << "\n";
  } else {
    out << "generated=" << generated << " collisions=" << collisions << "\n";
  }
  return collisions == 0 ? kOk : kInternalError;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tenancy-plane: single-instance multitenancy control plane"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.log_path = default_log_path();
  app.add_option("--seed", g.seed, "deterministic run seed");
  app.add_option("--workers", g.workers, "controller workers");
  app.add_option("--period-ms", g.period_ms, "controller resync period");
  app.add_option("--qps", g.qps, "client tokens per second");
  app.add_option("--burst", g.burst, "client token bucket capacity");
  app.add_option("--log", g.log_path, "event log path (state persistence)");
  app.add_flag("--json", g.json, "machine-readable output");

  int rc = kOk;
  auto run = [&rc](auto fn) {
    return [&rc, fn]() { rc = fn(); };
  };

  // tenant request|approve|deny|list
  auto* tenant = app.add_subcommand("tenant", "tenant registration and administration");
  tenant->require_subcommand(1);
  {
    auto* request = tenant->add_subcommand("request", "register a new tenant");
    auto name = std::make_shared<std::string>();
    auto owner = std::make_shared<std::string>();
    auto quota = std::make_shared<QuotaFlags>();
    auto netpol = std::make_shared<bool>(false);
    request->add_option("name", *name, "tenant name (DNS label)")->required();
    request->add_option("--owner", *owner, "owner user identity")->required();
    request->add_flag("--network-policy", *netpol, "apply a cluster-level network policy");
    quota->attach(request);
    request->callback(run([&, name, owner, quota, netpol] {
      Session session(g, true);
      return cmd_tenant_request(session, *name, *owner, *quota, *netpol, out, err);
    }));

    for (bool approve : {true, false}) {
      auto* decide = tenant->add_subcommand(approve ? "approve" : "deny",
                                            approve ? "approve a tenant request"
                                                    : "deny a tenant request");
      auto dname = std::make_shared<std::string>();
      auto as_user = std::make_shared<std::string>("admin");
      decide->add_option("name", *dname, "tenant request name")->required();
      decide->add_option("--as", *as_user, "acting user");
      decide->callback(run([&, dname, as_user, approve] {
        Session session(g, true);
        return cmd_tenant_decide(session, *dname, approve, *as_user, out, err);
      }));
    }

    auto* list = tenant->add_subcommand("list", "list tenants");
    list->callback(run([&] {
      Session session(g, true);
      return cmd_tenant_list(session, g.json, out);
    }));
  }

  // subns create|delete|list
  auto* subns = app.add_subcommand("subns", "subsidiary namespaces");
  subns->require_subcommand(1);
  {
    auto* create = subns->add_subcommand("create", "create a subnamespace");
    auto name = std::make_shared<std::string>();
    auto parent = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("workspace");
    auto scope = std::make_shared<std::string>("local");
    auto inherit = std::make_shared<std::vector<std::string>>();
    auto sync = std::make_shared<bool>(false);
    auto owner = std::make_shared<std::string>();
    auto as_user = std::make_shared<std::string>();
    auto claim = std::make_shared<std::string>();
    auto quota = std::make_shared<QuotaFlags>();
    create->add_option("name", *name, "requested name (<= 32 chars)")->required();
    create->add_option("--parent", *parent, "parent namespace")->required();
    create->add_option("--mode", *mode, "workspace|subtenant")
        ->check(CLI::IsMember({"workspace", "subtenant"}));
    create->add_option("--scope", *scope, "local|federated")
        ->check(CLI::IsMember({"local", "federated"}));
    create->add_option("--inherit", *inherit,
                       "kinds copied from the parent (comma separated)")
        ->delimiter(',');
    create->add_flag("--sync", *sync, "continuously re-sync inherited objects");
    create->add_option("--owner", *owner, "owner user identity");
    create->add_option("--as", *as_user, "requesting user");
    create->add_option("--claim", *claim, "slice claim to associate");
    quota->attach(create);
    create->callback(run([&, name, parent, mode, scope, inherit, sync, owner, as_user, claim,
                          quota] {
      Session session(g, true);
      return cmd_subns_create(session, *name, *parent, *mode, *scope, *inherit, *sync, *owner,
                              *quota, *as_user, *claim, out, err);
    }));

    auto* del = subns->add_subcommand("delete", "delete a subnamespace (and its subtree)");
    auto dname = std::make_shared<std::string>();
    auto dparent = std::make_shared<std::string>();
    del->add_option("name", *dname, "subnamespace handle name")->required();
    del->add_option("--parent", *dparent, "parent namespace")->required();
    del->callback(run([&, dname, dparent] {
      Session session(g, true);
      return cmd_subns_delete(session, *dname, *dparent, out, err);
    }));

    auto* list = subns->add_subcommand("list", "list the namespace hierarchy");
    auto tree = std::make_shared<bool>(false);
    list->add_flag("--tree", *tree, "indented tree view");
    list->callback(run([&, tree] {
      Session session(g, true);
      return cmd_subns_list(session, *tree, g.json, out);
    }));
  }

  // quota set|show
  auto* quota_cmd = app.add_subcommand("quota", "tenant resource quotas");
  quota_cmd->require_subcommand(1);
  {
    auto* set = quota_cmd->add_subcommand("set", "apply a quota delta to a tenant");
    auto tname = std::make_shared<std::string>();
    auto amount = std::make_shared<QuotaFlags>();
    auto expires = std::make_shared<std::int64_t>(0);
    auto reason = std::make_shared<std::string>("manual adjustment");
    set->add_option("tenant", *tname, "tenant name")->required();
    amount->attach(set);
    set->add_option("--expires-ms", *expires, "expiry, milliseconds from now (0 = permanent)");
    set->add_option("--reason", *reason, "why the grant changes");
    set->callback(run([&, tname, amount, expires, reason] {
      Session session(g, true);
      return cmd_quota_set(session, *tname, *amount, *expires, *reason, out, err);
    }));

    auto* show = quota_cmd->add_subcommand("show", "show per-subtree quota sums");
    auto validate = std::make_shared<bool>(false);
    show->add_flag("--validate", *validate, "check the partition invariant");
    show->callback(run([&, validate] {
      Session session(g, true);
      return cmd_quota_show(session, *validate, g.json, out);
    }));
  }

  // slice create|release|list
  auto* slice = app.add_subcommand("slice", "node-level slices");
  slice->require_subcommand(1);
  {
    auto* create = slice->add_subcommand("create", "create a slice");
    auto name = std::make_shared<std::string>();
    auto nodes = std::make_shared<std::int64_t>(1);
    auto labels = std::make_shared<std::vector<std::string>>();
    auto grace = std::make_shared<std::int64_t>(60000);
    auto resources = std::make_shared<QuotaFlags>();
    create->add_option("name", *name, "slice name")->required();
    create->add_option("--nodes", *nodes, "number of nodes to reserve");
    create->add_option("--label", *labels, "node selector label key=value (repeatable)");
    create->add_option("--grace-ms", *grace, "termination grace period");
    resources->attach(create);
    create->callback(run([&, name, nodes, labels, grace, resources] {
      Session session(g, true);
      return cmd_slice_create(session, *name, *nodes, *labels, *resources, *grace, out, err);
    }));

    auto* release = slice->add_subcommand("release", "release a slice back to the shared pool");
    auto rname = std::make_shared<std::string>();
    release->add_option("name", *rname, "slice name")->required();
    release->callback(run([&, rname] {
      Session session(g, true);
      return cmd_slice_release(session, *rname, out, err);
    }));

    auto* list = slice->add_subcommand("list", "list slices");
    list->callback(run([&] {
      Session session(g, true);
      return cmd_slice_list(session, g.json, out);
    }));
  }

  // claim create|list
  auto* claim = app.add_subcommand("claim", "slice claims");
  claim->require_subcommand(1);
  {
    auto* create = claim->add_subcommand("create", "create a slice claim");
    auto name = std::make_shared<std::string>();
    auto ns = std::make_shared<std::string>();
    auto slice_name = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("dynamic");
    auto nodes = std::make_shared<std::int64_t>(1);
    auto resources = std::make_shared<QuotaFlags>();
    create->add_option("name", *name, "claim name")->required();
    create->add_option("--namespace", *ns, "claiming namespace")->required();
    create->add_option("--slice", *slice_name, "slice to create or designate")->required();
    create->add_option("--mode", *mode, "dynamic|manual")
        ->check(CLI::IsMember({"dynamic", "manual"}));
    create->add_option("--nodes", *nodes, "number of nodes requested");
    resources->attach(create);
    create->callback(run([&, name, ns, slice_name, mode, nodes, resources] {
      Session session(g, true);
      return cmd_claim_create(session, *name, *ns, *slice_name, *mode, *nodes, *resources, out,
                              err);
    }));

    auto* list = claim->add_subcommand("list", "list slice claims");
    list->callback(run([&] {
      Session session(g, true);
      return cmd_claim_list(session, g.json, out);
    }));
  }

  // role-request create|approve
  auto* rr = app.add_subcommand("role-request", "namespace role requests");
  rr->require_subcommand(1);
  {
    auto* create = rr->add_subcommand("create", "request a role in a namespace");
    auto name = std::make_shared<std::string>();
    auto ns = std::make_shared<std::string>();
    auto user = std::make_shared<std::string>();
    auto role = std::make_shared<std::string>();
    auto cluster_role = std::make_shared<bool>(false);
    create->add_option("name", *name, "request name")->required();
    create->add_option("--namespace", *ns, "target namespace")->required();
    create->add_option("--user", *user, "requesting user")->required();
    create->add_option("--role", *role, "role name")->required();
    create->add_flag("--cluster-role", *cluster_role, "reference a provider cluster role");
    create->callback(run([&, name, ns, user, role, cluster_role] {
      Session session(g, true);
      return cmd_role_request_create(session, *name, *ns, *user, *role, *cluster_role, out,
                                     err);
    }));

    auto* approve = rr->add_subcommand("approve", "approve a role request");
    auto aname = std::make_shared<std::string>();
    auto ans = std::make_shared<std::string>();
    auto as_user = std::make_shared<std::string>("admin");
    approve->add_option("name", *aname, "request name")->required();
    approve->add_option("--namespace", *ans, "target namespace")->required();
    approve->add_option("--as", *as_user, "approving user");
    approve->callback(run([&, aname, ans, as_user] {
      Session session(g, true);
      return cmd_role_request_approve(session, *aname, *ans, *as_user, out, err);
    }));
  }

  // node add|list (simulated data plane provisioning)
  auto* node = app.add_subcommand("node", "simulated cluster nodes");
  node->require_subcommand(1);
  {
    auto* add = node->add_subcommand("add", "add a worker node");
    auto name = std::make_shared<std::string>();
    auto labels = std::make_shared<std::vector<std::string>>();
    auto capacity = std::make_shared<QuotaFlags>();
    add->add_option("name", *name, "node name")->required();
    add->add_option("--label", *labels, "node label key=value (repeatable)");
    capacity->attach(add);
    add->callback(run([&, name, labels, capacity] {
      Session session(g, true);
      return cmd_node_add(session, *name, *labels, *capacity, out, err);
    }));

    auto* list = node->add_subcommand("list", "list nodes");
    list->callback(run([&] {
      Session session(g, true);
      return cmd_node_list(session, g.json, out);
    }));
  }

  // bench tenants|pods
  auto* bench_cmd = app.add_subcommand("bench", "experiment harness");
  bench_cmd->require_subcommand(1);
  {
    auto* tenants_cmd = bench_cmd->add_subcommand("tenants", "tenant creation experiment");
    auto count = std::make_shared<int>(0);
    auto arrival = std::make_shared<int>(0);
    auto reps = std::make_shared<int>(3);
    auto csv = std::make_shared<std::string>();
    tenants_cmd->add_option("--count", *count, "number of tenant requests")->required();
    tenants_cmd->add_option("--inter-arrival", *arrival, "seconds between arrivals")
        ->check(CLI::IsMember({0, 2, 4, 8, 16, 32}));
    tenants_cmd->add_option("--reps", *reps, "repetitions (>= 3)");
    tenants_cmd->add_option("--csv", *csv, "export per-request records as CSV");
    tenants_cmd->callback(run([&, count, arrival, reps, csv] {
      return run_bench(g, bench::Experiment::TenantCreation, *count, *arrival, 0, *reps, *csv,
                       out, err);
    }));

    auto* pods_cmd = bench_cmd->add_subcommand("pods", "pod creation experiment");
    auto pcount = std::make_shared<int>(0);
    auto ptenants = std::make_shared<int>(32);
    auto preps = std::make_shared<int>(3);
    auto pcsv = std::make_shared<std::string>();
    pods_cmd->add_option("--count", *pcount, "number of pods")->required();
    pods_cmd->add_option("--tenants", *ptenants, "tenants sharing the load");
    pods_cmd->add_option("--reps", *preps, "repetitions (>= 3)");
    pods_cmd->add_option("--csv", *pcsv, "export per-request records as CSV");
    pods_cmd->callback(run([&, pcount, ptenants, preps, pcsv] {
      return run_bench(g, bench::Experiment::PodCreation, *pcount, 0, *ptenants, *preps, *pcsv,
                       out, err);
    }));
  }

  // state snapshot|replay
  auto* state = app.add_subcommand("state", "store snapshots and log replay");
  state->require_subcommand(1);
  {
    auto* snapshot = state->add_subcommand("snapshot", "write the live object set");
    auto out_path = std::make_shared<std::string>();
    snapshot->add_option("--out", *out_path, "snapshot file path")->required();
    snapshot->callback(run([&, out_path] {
      Session session(g, true);
      return cmd_state_snapshot(session, *out_path, out, err);
    }));

    auto* replay = state->add_subcommand("replay", "replay an event log and report the result");
    auto log = std::make_shared<std::string>();
    replay->add_option("log", *log, "event log path")->required();
    replay->callback(run([&, log] { return cmd_state_replay(g, *log, out, err); }));
  }

  // fed check-names
  auto* fed = app.add_subcommand("fed", "federation naming checks");
  fed->require_subcommand(1);
  {
    auto* check = fed->add_subcommand("check-names",
                                      "generate federated names across simulated clusters");
    auto clusters = std::make_shared<int>(3);
    auto pairs = std::make_shared<int>(10000);
    check->add_option("--clusters", *clusters, "number of simulated clusters")->required();
    check->add_option("--pairs", *pairs, "distinct (parent, requested) pairs per cluster");
    check->callback(run([&, clusters, pairs] {
      return cmd_fed_check_names(g, *clusters, *pairs, out, err);
    }));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 convention
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return rc;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace tenancy::cli
