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

#include <string>
#include <vector>

#include "tenancy/runtime/objects.hpp"
#include "tenancy/runtime/store.hpp"

namespace tenancy::admission {

/// One field patch applied to the object's JSON form before persisting.
struct Patch {
  std::string field_path;  // JSON pointer, e.g. "/spec/runtime_class"
  runtime::Json value;
};

/// Mutate-then-validate verdict. Mutations apply atomically with the write
/// or not at all; `reason` is a stable machine token, `detail` human text.
struct AdmissionDecision {
  bool allow = true;
  std::vector<Patch> mutations;
  std::string reason;
  std::string detail;

  static AdmissionDecision allowed() { return {}; }
  static AdmissionDecision deny(std::string reason, std::string detail) {
    AdmissionDecision d;
    d.allow = false;
    d.reason = std::move(reason);
    d.detail = std::move(detail);
    return d;
  }
};

/// True for kinds whose writes pass through admission.
bool policy_bearing(runtime::Kind kind);

/// Entry point used by the write path for create/update of policy-bearing
/// kinds.
AdmissionDecision admit(const runtime::StoredObject& incoming, bool is_create,
                        const runtime::Store& store);

// Kind-specific checks, exposed for direct testing.
AdmissionDecision admit_pod(const runtime::StoredObject& pod, bool is_create,
                            const runtime::Store& store);
AdmissionDecision admit_subnamespace(const runtime::StoredObject& handle, bool is_create,
                                     const runtime::Store& store);
AdmissionDecision admit_slice(const runtime::StoredObject& slice, bool is_create,
                              const runtime::Store& store);
AdmissionDecision admit_slice_claim(const runtime::StoredObject& claim, bool is_create,
                                    const runtime::Store& store);
AdmissionDecision admit_role_request(const runtime::StoredObject& req, bool is_create,
                                     const runtime::Store& store);
AdmissionDecision admit_cluster_role_request(const runtime::StoredObject& req, bool is_create,
                                             const runtime::Store& store);
AdmissionDecision admit_tenant_request(const runtime::StoredObject& req, bool is_create,
                                       const runtime::Store& store);

void apply_patches(runtime::StoredObject& object, const std::vector<Patch>& patches);

}  // namespace tenancy::admission
