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

#include "tenancy/runtime/event_log.hpp"

namespace tenancy::runtime {

EventLogWriter::EventLogWriter(const std::string& path)
    : out_(path, std::ios::app | std::ios::binary) {}

std::string event_record_to_line(const EventRecord& record) {
  return to_json(record).dump();
}

void EventLogWriter::append(const EventRecord& record) {
  out_ << event_record_to_line(record) << '\n';
  out_.flush();
}

Result<std::vector<EventRecord>> read_event_log(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    return make_error(Errc::io_failure, "cannot open event log: " + path);
  }
  std::vector<EventRecord> records;
  std::string line;
  std::uint64_t expected = 1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      return make_error(Errc::io_failure,
                        "unparsable event log line " + std::to_string(line_no));
    }
    EventRecord rec = event_record_from_json(j);
    if (rec.seq != expected) {
      return make_error(Errc::io_failure, "event log gap at line " + std::to_string(line_no) +
                                              ": expected seq " + std::to_string(expected));
    }
    ++expected;
    records.push_back(std::move(rec));
  }
  return records;
}

Result<void> write_snapshot(const std::string& path, const std::vector<StoredObject>& objects) {
  std::vector<StoredObject> sorted = objects;
  std::sort(sorted.begin(), sorted.end(), [](const StoredObject& a, const StoredObject& b) {
    return a.key() < b.key();
  });
  Json arr = Json::array();
  for (const auto& o : sorted) arr.push_back(to_json(o));
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out.good()) {
    return make_error(Errc::io_failure, "cannot open snapshot for writing: " + path);
  }
  out << arr.dump(2) << '\n';
  return {};
}

Result<std::vector<StoredObject>> read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    return make_error(Errc::io_failure, "cannot open snapshot: " + path);
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    return make_error(Errc::io_failure, "snapshot is not a JSON array: " + path);
  }
  std::vector<StoredObject> out;
  for (const auto& e : j) out.push_back(stored_object_from_json(e));
  return out;
}

}  // namespace tenancy::runtime
