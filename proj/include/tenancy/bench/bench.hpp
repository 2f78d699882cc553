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
#include <vector>

#include "tenancy/runtime/control_plane.hpp"

namespace tenancy::bench {

enum class Experiment { TenantCreation, PodCreation };

/// One experiment cell: `count` requests spaced `inter_arrival_s` apart,
/// replayed `repetitions` times against a fresh control plane each time.
struct BenchSpec {
  Experiment experiment = Experiment::TenantCreation;
  int count = 0;
  int inter_arrival_s = 0;  // one of {0, 2, 4, 8, 16, 32}
  int tenants_for_pods = 32;
  runtime::ControllerConfig controller;
  runtime::LatencyModel latency;
  std::int64_t timeout_ms = 120000;
  int repetitions = 3;
  std::uint64_t seed = 42;
};

Result<void> validate_spec(const BenchSpec& spec);

struct RequestRecord {
  int req_id = 0;
  SimTime submitted_at = 0;
  std::optional<SimTime> object_created_at;
  std::optional<SimTime> established_at;
  bool success = false;
};

struct Aggregates {
  int success_count = 0;
  // Delays relative to submission, microseconds; lower median.
  std::optional<SimTime> object_median_us, object_mean_us, object_max_us;
  std::optional<SimTime> establish_median_us, establish_mean_us, establish_max_us;
  std::int64_t per_tenant_resident_objects = 0;
  int per_tenant_dedicated_processes = 0;  // 0 by construction
  std::uint64_t total_store_writes = 0;
};

struct BenchReport {
  BenchSpec spec;
  std::vector<RequestRecord> records;
  Aggregates aggregates;
};

Result<BenchReport> run_tenant_bench(const BenchSpec& spec);
Result<BenchReport> run_pod_bench(const BenchSpec& spec);

enum class ExportFormat { Csv, Json };

/// Csv: fixed columns req_id,submitted_ms,object_created_ms,established_ms,
/// success, plus an aggregates sidecar at "<path>.aggregates.json".
/// Json: the full report. Byte-stable for identical seeds.
Result<void> export_report(const BenchReport& report, ExportFormat format,
                           const std::string& path);
Result<BenchReport> load_report_json(const std::string& path);

std::string report_json_text(const BenchReport& report);
std::string report_csv_text(const BenchReport& report);

/// Emulated multi-instance baseline: a fixed per-tenant cost in dedicated
/// control plane components and memory units, against which the native
/// design's flat footprint is contrasted.
struct BaselineModel {
  int per_tenant_processes = 3;  // api server, datastore, controller manager
  std::int64_t per_tenant_memory_units = 285;
};

struct OverheadPoint {
  int tenants = 0;
  std::int64_t native_units = 0;
  std::int64_t multi_instance_units = 0;
};

std::vector<OverheadPoint> overhead_comparison(const std::vector<int>& tenant_counts,
                                               const BaselineModel& baseline = {});

}  // namespace tenancy::bench
