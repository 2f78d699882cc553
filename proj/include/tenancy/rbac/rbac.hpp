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

#include <optional>
#include <set>
#include <string>

#include "tenancy/runtime/objects.hpp"
#include "tenancy/runtime/store.hpp"

namespace tenancy::rbac {

/// The fixed verb vocabulary.
const std::set<std::string>& verbs();

/// Names of the provider-defined cluster roles seeded into every store.
inline constexpr const char* kClusterAdminRole = "cluster-admin";
inline constexpr const char* kAdminRole = "admin";
inline constexpr const char* kEditRole = "edit";
inline constexpr const char* kViewRole = "view";

/// Permission evaluation over the live store. A user may act in a namespace
/// when a binding there grants the verb, or a binding in an ancestor grants
/// it and the RBAC inheritance chain down to the target is unbroken (every
/// hop inherited Role+RoleBinding and no hop is a subtenant boundary).
/// Cluster-scoped bindings apply everywhere; `ns` == nullopt evaluates
/// cluster-scoped access only.
bool rbac_can(const runtime::Store& store, const std::string& user, const std::string& verb,
              runtime::Kind kind, const std::optional<std::string>& ns);

/// Whether the user holds approval rights in the namespace (an admin-level
/// binding there or inherited into it).
bool can_approve_in(const runtime::Store& store, const std::string& user,
                    const std::string& ns);

}  // namespace tenancy::rbac
