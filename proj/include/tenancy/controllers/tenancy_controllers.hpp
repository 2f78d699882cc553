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
#include <string>

#include "tenancy/runtime/control_plane.hpp"
#include "tenancy/runtime/objects.hpp"

namespace tenancy::controllers {

/// Registers the tenancy reconcilers: tenant requests, tenants,
/// subnamespaces, continuous inheritance sync, role requests, and cluster
/// role requests.
void install(runtime::ControlPlane& plane);

// Object builders used by the CLI, the benchmark harness, and tests.

runtime::StoredObject make_tenant_request(const std::string& name,
                                          runtime::TenantRequestSpec spec);
runtime::StoredObject make_subnamespace(const std::string& parent_ns,
                                        runtime::SubnamespaceSpec spec);
runtime::StoredObject make_role_request(const std::string& ns, const std::string& name,
                                        runtime::RoleRequestSpec spec);
runtime::StoredObject make_cluster_role_request(const std::string& name,
                                                runtime::ClusterRoleRequestSpec spec);

/// Name of the binding that grants a tenant owner control of a namespace.
inline constexpr const char* kOwnerBindingName = "tenant-owner";
/// Name of the per-tenant confinement policy object.
inline constexpr const char* kConfinementPolicyName = "cluster-confinement";
/// Label carried by synced copies of inherited objects.
inline constexpr const char* kInheritedFromLabel = "inherited-from";

}  // namespace tenancy::controllers
