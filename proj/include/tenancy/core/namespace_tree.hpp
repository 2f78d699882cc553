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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tenancy/core/object_meta.hpp"
#include "tenancy/core/quota_ledger.hpp"
#include "tenancy/core/resource_vector.hpp"
#include "tenancy/core/result.hpp"
#include "tenancy/core/uid.hpp"

namespace tenancy {

enum class NamespaceKind { Core, Sub };
enum class SubnamespaceMode { Workspace, Subtenant };
enum class NameScope { Local, Federated };

const char* namespace_kind_name(NamespaceKind k);
const char* mode_name(SubnamespaceMode m);
const char* scope_name(NameScope s);

// Names of the four tenancy labels every namespace carries.
inline constexpr const char* kLabelKind = "kind";
inline constexpr const char* kLabelTenant = "tenant";
inline constexpr const char* kLabelTenantUid = "tenant-uid";
inline constexpr const char* kLabelClusterUid = "cluster-uid";

/// One vertex of the namespace hierarchy: the per-namespace quota portion
/// q(v), the aggregate usage of resident pods, and the tenancy metadata that
/// policies consume.
struct NamespaceNode {
  ObjectMeta meta;
  NamespaceKind kind = NamespaceKind::Core;
  std::string tenant;
  std::optional<std::string> parent;  // absent iff kind == Core
  SubnamespaceMode mode = SubnamespaceMode::Workspace;
  NameScope scope = NameScope::Local;
  ResourceVector quota;  // q(v): the portion reserved for this namespace itself
  ResourceVector usage;  // aggregate requests of resident pods
  bool network_policy_confined = false;
  // Whether Role and RoleBinding were both inherited when this namespace was
  // created; an unbroken chain of these flags extends ancestor permissions
  // downward.
  bool rbac_inherited = false;
  // Backreference "parent-namespace/handle-name" to the subnamespace object
  // that created this namespace; absent for core namespaces.
  std::optional<std::string> owner_handle;

  const std::string& name() const { return meta.name; }
};

/// The tree T=(V,E) of a cluster's namespace hierarchy. Core namespaces hang
/// off a virtual root that is not itself a namespace; every Sub node has
/// exactly one parent.
class NamespaceTree {
 public:
  NamespaceTree() = default;
  explicit NamespaceTree(Uid cluster_uid) : cluster_uid_(std::move(cluster_uid)) {}

  const Uid& cluster_uid() const { return cluster_uid_; }
  void set_cluster_uid(Uid uid) { cluster_uid_ = std::move(uid); }

  Result<void> add_core(NamespaceNode node);
  Result<void> add_sub(NamespaceNode node);

  bool contains(const std::string& name) const { return nodes_.count(name) > 0; }
  const NamespaceNode* find(const std::string& name) const;
  NamespaceNode* find_mutable(const std::string& name);

  /// Children of `name`, sorted; empty set for leaves and unknown names.
  const std::set<std::string>& children(const std::string& name) const;
  const std::set<std::string>& core_names() const { return root_children_; }

  std::size_t size() const { return nodes_.size(); }

  /// Names of `root` and all its descendants (preorder, children sorted).
  Result<std::vector<std::string>> subtree_names(const std::string& root) const;

  /// Removes a subtree rooted at a Sub node. Quota accounting is the
  /// caller's concern (see recoup_child_quota).
  Result<void> remove_subtree(const std::string& root);

  /// All node names, sorted.
  std::vector<std::string> names() const;

 private:
  Uid cluster_uid_;
  std::map<std::string, NamespaceNode> nodes_;
  std::map<std::string, std::set<std::string>> edges_;  // parent -> children
  std::set<std::string> root_children_;                 // core namespace names
};

// --- Hierarchical quota operations ---------------------------------------

/// q(root) plus the quota of every descendant. Pure.
Result<ResourceVector> subtree_quota(const NamespaceTree& tree, const std::string& root);

struct PartitionViolation {
  std::string vertex;
  ResourceVector imbalance;  // subtree sum minus expected; signed
  std::string reason;
};

struct ValidationResult {
  bool ok = true;
  std::vector<PartitionViolation> violations;
};

/// Checks that the ledger's effective grant is partitioned exactly across
/// the tenant's subtree and that no vertex holds a negative quota.
ValidationResult validate_partition(const NamespaceTree& tree,
                                    const TenantQuotaLedger& ledger, SimTime now);

/// Moves `amount` out of q(parent); the returned grant becomes the new
/// child's q. Subtree totals of every ancestor are unchanged.
Result<ResourceVector> allocate_child_quota(NamespaceTree& tree, const std::string& parent,
                                            const ResourceVector& amount);

/// Returns the child's whole subtree quota to its parent and removes the
/// subtree. Refused while any descendant has nonzero usage.
Result<ResourceVector> recoup_child_quota(NamespaceTree& tree, const std::string& child);

struct ChargeResult {
  bool admitted = false;
  int rejected_component = -1;  // valid when !admitted
};

/// Admits `request` against the node's quota, incrementing usage on success.
/// Rejection is an outcome, not an error.
ChargeResult charge_usage(NamespaceNode& node, const ResourceVector& request);

/// Reverses a prior charge.
void release_usage(NamespaceNode& node, const ResourceVector& request);

}  // namespace tenancy
