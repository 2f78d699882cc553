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

#include "tenancy/rbac/rbac.hpp"

namespace tenancy::rbac {

using runtime::Kind;
using runtime::ObjectKey;
using runtime::RoleBindingSpec;
using runtime::RoleRefScope;
using runtime::RoleSpec;
using runtime::Store;
using runtime::StoredObject;

const std::set<std::string>& verbs() {
  static const std::set<std::string> kVerbs = {"get",    "list",   "create",
                                               "update", "delete", "approve"};
  return kVerbs;
}

namespace {

bool role_grants(const RoleSpec& role, const std::string& verb, Kind kind) {
  const std::string kind_str = runtime::kind_name(kind);
  for (const auto& rule : role.rules) {
    bool verb_ok = rule.verbs.count("*") > 0 || rule.verbs.count(verb) > 0;
    bool kind_ok = rule.kinds.count("*") > 0 || rule.kinds.count(kind_str) > 0;
    if (verb_ok && kind_ok) return true;
  }
  return false;
}

bool binding_grants(const Store& store, const StoredObject& binding, const std::string& verb,
                    Kind kind) {
  RoleBindingSpec spec = RoleBindingSpec::from_json(binding.spec);
  const StoredObject* role = nullptr;
  if (spec.role_scope == RoleRefScope::Cluster) {
    role = store.find({Kind::Role, "", spec.role});
  } else {
    role = store.find({Kind::Role, binding.ns.value_or(""), spec.role});
  }
  if (role == nullptr) return false;
  return role_grants(RoleSpec::from_json(role->spec), verb, kind);
}

}  // namespace

bool rbac_can(const Store& store, const std::string& user, const std::string& verb, Kind kind,
              const std::optional<std::string>& ns) {
  // Cluster-scoped bindings apply everywhere.
  for (const auto* binding : store.list_refs(Kind::RoleBinding)) {
    if (binding->ns.has_value()) continue;
    RoleBindingSpec spec = RoleBindingSpec::from_json(binding->spec);
    if (spec.user != user) continue;
    if (binding_grants(store, *binding, verb, kind)) return true;
  }
  if (!ns.has_value()) return false;

  // Path from the target namespace up to its core.
  std::vector<NamespaceNode> path;
  std::string cur = *ns;
  const std::size_t limit = store.count(Kind::NamespaceRecord) + 1;
  while (path.size() <= limit) {
    const StoredObject* rec = store.find({Kind::NamespaceRecord, "", cur});
    if (rec == nullptr) return false;
    path.push_back(runtime::namespace_node_from_record(*rec));
    if (!path.back().parent) break;
    cur = *path.back().parent;
  }

  // A binding at path[i] reaches the target iff the RBAC inheritance chain
  // through every namespace below it (path[0..i-1]) is unbroken; a
  // subtenant boundary always breaks it for ancestors' users.
  bool chain_ok = true;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) {
      const NamespaceNode& below = path[i - 1];
      if (!below.rbac_inherited || below.mode == SubnamespaceMode::Subtenant) chain_ok = false;
      if (!chain_ok) break;
    }
    for (const auto* binding : store.list_refs(Kind::RoleBinding, path[i].name())) {
      RoleBindingSpec spec = RoleBindingSpec::from_json(binding->spec);
      if (spec.user != user) continue;
      if (binding_grants(store, *binding, verb, kind)) return true;
    }
  }
  return false;
}

bool can_approve_in(const Store& store, const std::string& user, const std::string& ns) {
  return rbac_can(store, user, "approve", Kind::RoleRequest, ns);
}

}  // namespace tenancy::rbac
