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

#include "tenancy/runtime/control_plane.hpp"
#include "tenancy/runtime/objects.hpp"

namespace tenancy::slicing {

/// Registers the slice and slice claim reconcilers.
void install(runtime::ControlPlane& plane);

runtime::StoredObject make_slice(const std::string& name, runtime::SliceSelector selector,
                                 std::int64_t grace_period_ms = 60000);
runtime::StoredObject make_slice_claim(const std::string& ns, const std::string& name,
                                       runtime::SliceClaimSpec spec);

/// Marks a Bound or PreReserved slice Terminating; the controller evicts
/// bound workloads, returns nodes to the shared pool, restores any charged
/// quota usage, and removes the slice and its claim.
Result<void> request_release(runtime::ControlPlane& plane, const std::string& slice_name);

}  // namespace tenancy::slicing
