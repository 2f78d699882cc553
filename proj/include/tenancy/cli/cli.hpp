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

#include <iosfwd>
#include <string>
#include <vector>

namespace tenancy::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 2 usage/validation
/// error, 1 internal error. State persists across invocations through the
/// JSON Lines event log (default ./tenancy-plane.events.jsonl, overridden
/// by the TENANCY_PLANE_LOG environment variable or --log).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tenancy::cli
