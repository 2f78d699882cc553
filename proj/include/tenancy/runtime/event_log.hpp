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

#include <fstream>
#include <string>
#include <vector>

#include "tenancy/runtime/objects.hpp"

namespace tenancy::runtime {

/// Append-only JSON Lines sink: one EventRecord per line, UTF-8, fixed
/// field order, no trailing whitespace.
class EventLogWriter {
 public:
  explicit EventLogWriter(const std::string& path);
  bool ok() const { return out_.good(); }
  void append(const EventRecord& record);

 private:
  std::ofstream out_;
};

std::string event_record_to_line(const EventRecord& record);

/// Reads a JSON Lines event log. Fails on unparsable lines or seq gaps.
Result<std::vector<EventRecord>> read_event_log(const std::string& path);

/// Snapshot file: JSON array of live objects sorted by (kind, namespace,
/// name).
Result<void> write_snapshot(const std::string& path, const std::vector<StoredObject>& objects);
Result<std::vector<StoredObject>> read_snapshot(const std::string& path);

}  // namespace tenancy::runtime
