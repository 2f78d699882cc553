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
#include <string>
#include <string_view>

#include "tenancy/core/time.hpp"
#include "tenancy/core/uid.hpp"

namespace tenancy {

/// Object lifecycle. Transitions are monotone along
/// Pending -> Establishing -> {Established | Failed} -> Terminating;
/// Established and Failed sit at the same stage, and nothing leaves
/// Terminating.
enum class Phase { Pending, Establishing, Established, Failed, Terminating };

const char* phase_name(Phase p);
std::optional<Phase> phase_from_name(std::string_view name);
int phase_rank(Phase p);
bool phase_transition_allowed(Phase from, Phase to);

struct ObjectMeta {
  std::string name;
  Uid uid;
  std::map<std::string, std::string> labels;
  SimTime created_at = 0;
  Phase phase = Phase::Pending;
  std::optional<std::string> failure_reason;
};

/// Lowercase DNS label: [a-z0-9]([-a-z0-9]*[a-z0-9])?, at most 63 chars.
bool valid_dns_label(std::string_view name);

constexpr std::size_t kMaxNameLength = 63;

}  // namespace tenancy
