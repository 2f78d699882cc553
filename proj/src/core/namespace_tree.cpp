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

#include "tenancy/core/namespace_tree.hpp"

#include <algorithm>

namespace tenancy {

const char* namespace_kind_name(NamespaceKind k) {
  return k == NamespaceKind::Core ? "core" : "sub";
}

const char* mode_name(SubnamespaceMode m) {
  return m == SubnamespaceMode::Workspace ? "Workspace" : "Subtenant";
}

const char* scope_name(NameScope s) { return s == NameScope::Local ? "Local" : "Federated"; }

Result<void> NamespaceTree::add_core(NamespaceNode node) {
  if (node.kind != NamespaceKind::Core || node.parent.has_value()) {
    return make_error(Errc::invalid_argument, "core node must have no parent");
  }
  if (node.name() != node.tenant) {
    return make_error(Errc::invalid_argument, "core namespace must share its tenant's name");
  }
  if (contains(node.name())) {
    return make_error(Errc::collision, "namespace exists: " + node.name());
  }
  root_children_.insert(node.name());
  nodes_.emplace(node.name(), std::move(node));
  return {};
}

Result<void> NamespaceTree::add_sub(NamespaceNode node) {
  if (node.kind != NamespaceKind::Sub || !node.parent.has_value()) {
    return make_error(Errc::invalid_argument, "sub node must have a parent");
  }
  if (!contains(*node.parent)) {
    return make_error(Errc::unknown_namespace, "parent not found: " + *node.parent);
  }
  if (contains(node.name())) {
    return make_error(Errc::collision, "namespace exists: " + node.name());
  }
  edges_[*node.parent].insert(node.name());
  nodes_.emplace(node.name(), std::move(node));
  return {};
}

const NamespaceNode* NamespaceTree::find(const std::string& name) const {
  auto it = nodes_.find(name);
  return it == nodes_.end() ? nullptr : &it->second;
}

NamespaceNode* NamespaceTree::find_mutable(const std::string& name) {
  auto it = nodes_.find(name);
  return it == nodes_.end() ? nullptr : &it->second;
}

const std::set<std::string>& NamespaceTree::children(const std::string& name) const {
  static const std::set<std::string> kEmpty;
  auto it = edges_.find(name);
  return it == edges_.end() ? kEmpty : it->second;
}

Result<std::vector<std::string>> NamespaceTree::subtree_names(const std::string& root) const {
  if (!contains(root)) {
    return make_error(Errc::unknown_namespace, "namespace not found: " + root);
  }
  std::vector<std::string> out;
  std::vector<std::string> stack{root};
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    const auto& kids = children(cur);
    // Push in reverse so preorder visits children in sorted order.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    out.push_back(std::move(cur));
  }
  return out;
}

Result<void> NamespaceTree::remove_subtree(const std::string& root) {
  const NamespaceNode* node = find(root);
  if (node == nullptr) {
    return make_error(Errc::unknown_namespace, "namespace not found: " + root);
  }
  if (node->kind == NamespaceKind::Core) {
    return make_error(Errc::invalid_argument, "cannot remove a core namespace subtree");
  }
  auto names = subtree_names(root);
  if (!names.ok()) return names.error();
  if (node->parent) edges_[*node->parent].erase(root);
  for (const auto& n : names.value()) {
    nodes_.erase(n);
    edges_.erase(n);
  }
  return {};
}

std::vector<std::string> NamespaceTree::names() const {
  std::vector<std::string> out;
  out.reserve(nodes_.size());
  for (const auto& [name, _] : nodes_) out.push_back(name);
  return out;
}

Result<ResourceVector> subtree_quota(const NamespaceTree& tree, const std::string& root) {
  const NamespaceNode* node = tree.find(root);
  if (node == nullptr) {
    return make_error(Errc::unknown_namespace, "namespace not found: " + root);
  }
  ResourceVector total = node->quota;
  for (const auto& child : tree.children(root)) {
    auto sub = subtree_quota(tree, child);
    if (!sub.ok()) return sub;
    total += sub.value();
  }
  return total;
}

ValidationResult validate_partition(const NamespaceTree& tree, const TenantQuotaLedger& ledger,
                                    SimTime now) {
  ValidationResult result;
  const NamespaceNode* core = tree.find(ledger.tenant);
  if (core == nullptr || core->kind != NamespaceKind::Core) {
    result.ok = false;
    result.violations.push_back({ledger.tenant, {}, "tenant has no core namespace"});
    return result;
  }
  auto names = tree.subtree_names(ledger.tenant);
  for (const auto& name : names.value()) {
    const NamespaceNode* node = tree.find(name);
    if (!node->quota.non_negative()) {
      result.ok = false;
      result.violations.push_back({name, node->quota, "negative quota component"});
    }
  }
  ResourceVector sum = subtree_quota(tree, ledger.tenant).value();
  ResourceVector expected = ledger.effective(now);
  if (sum != expected) {
    result.ok = false;
    result.violations.push_back({ledger.tenant, sum - expected, "subtree sum != tenant grant"});
  }
  return result;
}

Result<ResourceVector> allocate_child_quota(NamespaceTree& tree, const std::string& parent,
                                            const ResourceVector& amount) {
  NamespaceNode* node = tree.find_mutable(parent);
  if (node == nullptr) {
    return make_error(Errc::unknown_namespace, "namespace not found: " + parent);
  }
  if (auto i = amount.first_exceeding(node->quota)) {
    return quota_error(ResourceVector::component_name(*i), amount.component(*i),
                       node->quota.component(*i));
  }
  node->quota -= amount;
  return amount;
}

Result<ResourceVector> recoup_child_quota(NamespaceTree& tree, const std::string& child) {
  NamespaceNode* node = tree.find_mutable(child);
  if (node == nullptr) {
    return make_error(Errc::unknown_namespace, "namespace not found: " + child);
  }
  if (node->kind != NamespaceKind::Sub) {
    return make_error(Errc::invalid_argument, "cannot recoup a core namespace");
  }
  auto names = tree.subtree_names(child);
  for (const auto& n : names.value()) {
    if (!tree.find(n)->usage.is_zero()) {
      return make_error(Errc::subtree_in_use, "descendant has usage: " + n);
    }
  }
  ResourceVector recouped = subtree_quota(tree, child).value();
  NamespaceNode* parent = tree.find_mutable(*node->parent);
  auto removed = tree.remove_subtree(child);
  if (!removed.ok()) return removed.error();
  parent->quota += recouped;
  return recouped;
}

ChargeResult charge_usage(NamespaceNode& node, const ResourceVector& request) {
  ResourceVector next = node.usage + request;
  if (auto i = next.first_exceeding(node.quota)) {
    return {false, *i};
  }
  node.usage = next;
  return {true, -1};
}

void release_usage(NamespaceNode& node, const ResourceVector& request) {
  node.usage -= request;
  for (int i = 0; i < ResourceVector::kComponents; ++i) {
    if (node.usage.component(i) < 0) node.usage.set_component(i, 0);
  }
}

ResourceVector TenantQuotaLedger::effective(SimTime now) const {
  ResourceVector total = base;
  for (const auto& d : deltas) {
    if (d.expires_at && *d.expires_at <= now) continue;
    total += d.amount;
  }
  return total;
}

Result<void> TenantQuotaLedger::add_delta(QuotaDelta delta, SimTime now) {
  ResourceVector next = effective(now) + delta.amount;
  if (!next.non_negative()) {
    return make_error(Errc::invalid_argument, "delta would drive effective grant negative");
  }
  deltas.push_back(std::move(delta));
  return {};
}

}  // namespace tenancy
