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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tenancy/runtime/control_plane.hpp"
#include "tenancy/runtime/objects.hpp"

namespace tenancy::sim {

/// Registers the scheduler: a single-key worker that places Pending pods
/// first-fit in lexicographic node order onto shared nodes (or nodes
/// reserved for the pod's namespace).
void install(runtime::ControlPlane& plane);

runtime::StoredObject make_node(const std::string& name,
                                std::map<std::string, std::string> labels,
                                ResourceVector capacity);
runtime::StoredObject make_pod(const std::string& ns, const std::string& name,
                               const std::string& runtime_class, ResourceVector request);

using PodPredicate = std::function<bool(const runtime::StoredObject&)>;

/// Marks matching resident pods of `node` Terminating now; they are removed
/// (and their capacity released) once the clock advances `grace_ms`.
/// Returns the keys of newly terminating pods.
Result<std::vector<runtime::ObjectKey>> evict(runtime::ControlPlane& plane,
                                              const std::string& node,
                                              const PodPredicate& predicate,
                                              std::int64_t grace_ms);

/// Same, across a set of nodes in one atomic step (used at slice bind and
/// release). `at` stamps the terminations; -1 means the loop's current time.
Result<std::vector<runtime::ObjectKey>> evict_nodes(runtime::ControlPlane& plane,
                                                    const std::vector<std::string>& nodes,
                                                    const PodPredicate& predicate,
                                                    std::int64_t grace_ms,
                                                    SimTime at = -1);

}  // namespace tenancy::sim
