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

#include "tenancy/bench/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "tenancy/controllers/tenancy_controllers.hpp"
#include "tenancy/sim/cluster.hpp"

namespace tenancy::bench {

using namespace tenancy::runtime;

namespace {

constexpr int kInterArrivals[] = {0, 2, 4, 8, 16, 32};

std::string format_ms(SimTime us) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%lld.%03lld", static_cast<long long>(us / 1000),
                static_cast<long long>(us % 1000));
  return buf;
}

struct DelayStats {
  std::optional<SimTime> median, mean, max;
};

DelayStats delay_stats(std::vector<SimTime> delays) {
  DelayStats s;
  if (delays.empty()) return s;
  std::sort(delays.begin(), delays.end());
  s.median = delays[(delays.size() - 1) / 2];  // lower median: exact integer
  SimTime total = 0;
  for (SimTime d : delays) total += d;
  s.mean = total / static_cast<SimTime>(delays.size());
  s.max = delays.back();
  return s;
}

void fill_aggregates(BenchReport& report) {
  Aggregates& agg = report.aggregates;
  std::vector<SimTime> object_delays;
  std::vector<SimTime> establish_delays;
  agg.success_count = 0;
  for (const auto& rec : report.records) {
    if (rec.success) ++agg.success_count;
    if (rec.object_created_at) object_delays.push_back(*rec.object_created_at - rec.submitted_at);
    if (rec.established_at) establish_delays.push_back(*rec.established_at - rec.submitted_at);
  }
  DelayStats object = delay_stats(std::move(object_delays));
  agg.object_median_us = object.median;
  agg.object_mean_us = object.mean;
  agg.object_max_us = object.max;
  DelayStats establish = delay_stats(std::move(establish_delays));
  agg.establish_median_us = establish.median;
  agg.establish_mean_us = establish.mean;
  agg.establish_max_us = establish.max;
}

PlaneOptions plane_options(const BenchSpec& spec, int repetition) {
  PlaneOptions opt;
  opt.seed = spec.seed + static_cast<std::uint64_t>(repetition) * 1000003ULL;
  opt.controller = spec.controller;
  opt.latency = spec.latency;
  opt.latency.seed = opt.seed ^ 0x5eedULL;
  opt.in_memory_log_limit = 50000;
  return opt;
}

}  // namespace

Result<void> validate_spec(const BenchSpec& spec) {
  bool arrival_ok = false;
  for (int v : kInterArrivals) arrival_ok |= (v == spec.inter_arrival_s);
  if (!arrival_ok) {
    return make_error(Errc::invalid_argument,
                      "inter-arrival must be one of {0, 2, 4, 8, 16, 32} seconds");
  }
  if (spec.count < 0) return make_error(Errc::invalid_argument, "count must be >= 0");
  if (spec.repetitions < 3) {
    return make_error(Errc::invalid_argument, "repetitions must be >= 3");
  }
  if (spec.experiment == Experiment::PodCreation && spec.tenants_for_pods < 1) {
    return make_error(Errc::invalid_argument, "pod benches need at least one tenant");
  }
  return {};
}

Result<BenchReport> run_tenant_bench(const BenchSpec& spec) {
  if (auto v = validate_spec(spec); !v.ok()) return v.error();
  BenchReport report;
  report.spec = spec;
  report.records.reserve(static_cast<std::size_t>(spec.count) *
                         static_cast<std::size_t>(spec.repetitions));
  const SimTime timeout_us = sim_ms(spec.timeout_ms);

  for (int rep = 0; rep < spec.repetitions; ++rep) {
    ControlPlane plane(plane_options(spec, rep));
    const std::size_t baseline_objects = plane.store().size();

    struct Milestones {
      std::optional<SimTime> created, established;
    };
    std::vector<Milestones> milestones(static_cast<std::size_t>(spec.count));
    std::map<std::string, int> index_of;
    for (int i = 0; i < spec.count; ++i) index_of["t" + std::to_string(i)] = i;

    auto watch = plane.store().watch(
        {Kind::Tenant}, plane.store().last_seq(), [&](const EventRecord& rec) {
          auto it = index_of.find(rec.object.meta.name);
          if (it == index_of.end()) return;
          Milestones& m = milestones[static_cast<std::size_t>(it->second)];
          if (rec.op == EventOp::Create && !m.created) m.created = rec.at;
          if (rec.op != EventOp::Delete && rec.object.meta.phase == Phase::Established &&
              !m.established) {
            m.established = rec.at;
          }
        });
    if (!watch.ok()) return watch.error();

    for (int i = 0; i < spec.count; ++i) {
      const SimTime submit_at = sim_seconds(spec.inter_arrival_s) * i;
      const std::string name = "t" + std::to_string(i);
      plane.loop().schedule_at(submit_at, [&plane, name] {
        TenantRequestSpec rs;
        rs.owner = "owner-" + name;
        rs.decision = Decision::Approved;
        rs.decided_by = "admin";
        auto session = plane.system_client().session(plane.loop().now());
        auto r = session.create(controllers::make_tenant_request(name, rs));
        (void)r;  // failures surface as missing milestones
      });
    }
    plane.run_until_quiescent();

    for (int i = 0; i < spec.count; ++i) {
      RequestRecord rec;
      rec.req_id = rep * spec.count + i;
      rec.submitted_at = sim_seconds(spec.inter_arrival_s) * i;
      rec.object_created_at = milestones[static_cast<std::size_t>(i)].created;
      rec.established_at = milestones[static_cast<std::size_t>(i)].established;
      rec.success =
          rec.established_at && (*rec.established_at - rec.submitted_at) <= timeout_us;
      report.records.push_back(rec);
    }
    report.aggregates.total_store_writes += plane.store().last_seq();

    if (rep == spec.repetitions - 1 && spec.count > 0) {
      const std::size_t resident = plane.store().size() - baseline_objects;
      report.aggregates.per_tenant_resident_objects =
          static_cast<std::int64_t>(resident) / spec.count;
    }
  }
  report.aggregates.per_tenant_dedicated_processes = 0;
  fill_aggregates(report);
  return report;
}

Result<BenchReport> run_pod_bench(const BenchSpec& spec) {
  if (auto v = validate_spec(spec); !v.ok()) return v.error();
  BenchReport report;
  report.spec = spec;
  const SimTime timeout_us = sim_ms(spec.timeout_ms);

  for (int rep = 0; rep < spec.repetitions; ++rep) {
    ControlPlane plane(plane_options(spec, rep));

    // Pre-establish the tenant population.
    for (int t = 0; t < spec.tenants_for_pods; ++t) {
      const std::string name = "t" + std::to_string(t);
      TenantRequestSpec rs;
      rs.owner = "owner-" + name;
      rs.decision = Decision::Approved;
      rs.decided_by = "admin";
      auto session = plane.system_client().session(plane.loop().now());
      auto r = session.create(controllers::make_tenant_request(name, rs));
      if (!r.ok()) return r.error();
    }
    plane.run_until_quiescent();
    const SimTime start = plane.loop().now();
    const std::size_t baseline_objects = plane.store().size();

    std::vector<std::optional<SimTime>> created(static_cast<std::size_t>(spec.count));
    std::map<std::string, int> index_of;
    auto watch = plane.store().watch(
        {Kind::Pod}, plane.store().last_seq(), [&](const EventRecord& rec) {
          if (rec.op != EventOp::Create) return;
          auto it = index_of.find(rec.object.meta.name);
          if (it == index_of.end()) return;
          auto& slot = created[static_cast<std::size_t>(it->second)];
          if (!slot) slot = rec.at;
        });
    if (!watch.ok()) return watch.error();

    for (int i = 0; i < spec.count; ++i) {
      const std::string pod = "p" + std::to_string(i);
      index_of[pod] = i;
      const std::string ns = "t" + std::to_string(i % spec.tenants_for_pods);
      plane.loop().schedule_at(start, [&plane, ns, pod] {
        auto session = plane.system_client().session(plane.loop().now());
        auto r = session.create(sim::make_pod(ns, pod, "", ResourceVector{}));
        (void)r;
      });
    }
    plane.run_until_quiescent();

    for (int i = 0; i < spec.count; ++i) {
      RequestRecord rec;
      rec.req_id = rep * spec.count + i;
      rec.submitted_at = start;
      rec.object_created_at = created[static_cast<std::size_t>(i)];
      rec.established_at = rec.object_created_at;  // Pending in the store is the milestone
      rec.success = rec.established_at && (*rec.established_at - rec.submitted_at) <= timeout_us;
      report.records.push_back(rec);
    }
    report.aggregates.total_store_writes += plane.store().last_seq();
    if (rep == spec.repetitions - 1 && spec.tenants_for_pods > 0) {
      report.aggregates.per_tenant_resident_objects =
          static_cast<std::int64_t>(baseline_objects) / spec.tenants_for_pods;
    }
  }
  report.aggregates.per_tenant_dedicated_processes = 0;
  fill_aggregates(report);
  return report;
}

namespace {

Json spec_to_json(const BenchSpec& spec) {
  Json j = Json::object();
  j["experiment"] = spec.experiment == Experiment::TenantCreation ? "tenants" : "pods";
  j["count"] = spec.count;
  j["inter_arrival_s"] = spec.inter_arrival_s;
  j["tenants_for_pods"] = spec.tenants_for_pods;
  j["workers"] = spec.controller.workers;
  j["period_ms"] = spec.controller.period_ms;
  j["qps"] = spec.controller.qps;
  j["burst"] = spec.controller.burst;
  j["timeout_ms"] = spec.timeout_ms;
  j["repetitions"] = spec.repetitions;
  j["seed"] = spec.seed;
  return j;
}

BenchSpec spec_from_json(const Json& j) {
  BenchSpec spec;
  spec.experiment = j.value("experiment", std::string{"tenants"}) == "pods"
                        ? Experiment::PodCreation
                        : Experiment::TenantCreation;
  spec.count = j.value("count", 0);
  spec.inter_arrival_s = j.value("inter_arrival_s", 0);
  spec.tenants_for_pods = j.value("tenants_for_pods", 32);
  spec.controller.workers = j.value("workers", 2);
  spec.controller.period_ms = j.value("period_ms", std::int64_t{1000});
  spec.controller.qps = j.value("qps", 5.0);
  spec.controller.burst = j.value("burst", 10.0);
  spec.timeout_ms = j.value("timeout_ms", std::int64_t{120000});
  spec.repetitions = j.value("repetitions", 3);
  spec.seed = j.value("seed", std::uint64_t{42});
  return spec;
}

Json aggregates_to_json(const Aggregates& a) {
  Json j = Json::object();
  j["success_count"] = a.success_count;
  auto put = [&j](const char* field, const std::optional<SimTime>& v) {
    if (v) {
      j[field] = *v;
    } else {
      j[field] = nullptr;
    }
  };
  put("object_median_us", a.object_median_us);
  put("object_mean_us", a.object_mean_us);
  put("object_max_us", a.object_max_us);
  put("establish_median_us", a.establish_median_us);
  put("establish_mean_us", a.establish_mean_us);
  put("establish_max_us", a.establish_max_us);
  j["per_tenant_resident_objects"] = a.per_tenant_resident_objects;
  j["per_tenant_dedicated_processes"] = a.per_tenant_dedicated_processes;
  j["total_store_writes"] = a.total_store_writes;
  return j;
}

Aggregates aggregates_from_json(const Json& j) {
  Aggregates a;
  a.success_count = j.value("success_count", 0);
  auto get = [&j](const char* field) -> std::optional<SimTime> {
    if (!j.contains(field) || j[field].is_null()) return std::nullopt;
    return j[field].get<SimTime>();
  };
  a.object_median_us = get("object_median_us");
  a.object_mean_us = get("object_mean_us");
  a.object_max_us = get("object_max_us");
  a.establish_median_us = get("establish_median_us");
  a.establish_mean_us = get("establish_mean_us");
  a.establish_max_us = get("establish_max_us");
  a.per_tenant_resident_objects = j.value("per_tenant_resident_objects", std::int64_t{0});
  a.per_tenant_dedicated_processes = j.value("per_tenant_dedicated_processes", 0);
  a.total_store_writes = j.value("total_store_writes", std::uint64_t{0});
  return a;
}

}  // namespace

std::string report_json_text(const BenchReport& report) {
  Json j = Json::object();
  j["spec"] = spec_to_json(report.spec);
  Json records = Json::array();
  for (const auto& rec : report.records) {
    Json r = Json::object();
    r["req_id"] = rec.req_id;
    r["submitted_us"] = rec.submitted_at;
    if (rec.object_created_at) {
      r["object_created_us"] = *rec.object_created_at;
    } else {
      r["object_created_us"] = nullptr;
    }
    if (rec.established_at) {
      r["established_us"] = *rec.established_at;
    } else {
      r["established_us"] = nullptr;
    }
    r["success"] = rec.success;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  j["aggregates"] = aggregates_to_json(report.aggregates);
  return j.dump(2) + "\n";
}

std::string report_csv_text(const BenchReport& report) {
  std::string out = "req_id,submitted_ms,object_created_ms,established_ms,success\n";
  for (const auto& rec : report.records) {
    out += std::to_string(rec.req_id);
    out += ",";
    out += format_ms(rec.submitted_at);
    out += ",";
    if (rec.object_created_at) out += format_ms(*rec.object_created_at);
    out += ",";
    if (rec.established_at) out += format_ms(*rec.established_at);
    out += ",";
    out += rec.success ? "1" : "0";
    out += "\n";
  }
  return out;
}

Result<void> export_report(const BenchReport& report, ExportFormat format,
                           const std::string& path) {
  auto write_file = [](const std::string& p, const std::string& text) -> Result<void> {
    std::ofstream out(p, std::ios::trunc | std::ios::binary);
    if (!out.good()) return make_error(Errc::io_failure, "cannot open for writing: " + p);
    out << text;
    if (!out.good()) return make_error(Errc::io_failure, "write failed: " + p);
    return {};
  };
  if (format == ExportFormat::Json) {
    return write_file(path, report_json_text(report));
  }
  if (auto r = write_file(path, report_csv_text(report)); !r.ok()) return r;
  return write_file(path + ".aggregates.json",
                    aggregates_to_json(report.aggregates).dump(2) + "\n");
}

Result<BenchReport> load_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return make_error(Errc::io_failure, "cannot open report: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) return make_error(Errc::io_failure, "unparsable report: " + path);
  BenchReport report;
  report.spec = spec_from_json(j.value("spec", Json::object()));
  for (const auto& r : j.value("records", Json::array())) {
    RequestRecord rec;
    rec.req_id = r.value("req_id", 0);
    rec.submitted_at = r.value("submitted_us", std::int64_t{0});
    if (r.contains("object_created_us") && !r["object_created_us"].is_null()) {
      rec.object_created_at = r["object_created_us"].get<SimTime>();
    }
    if (r.contains("established_us") && !r["established_us"].is_null()) {
      rec.established_at = r["established_us"].get<SimTime>();
    }
    rec.success = r.value("success", false);
    report.records.push_back(rec);
  }
  report.aggregates = aggregates_from_json(j.value("aggregates", Json::object()));
  return report;
}

std::vector<OverheadPoint> overhead_comparison(const std::vector<int>& tenant_counts,
                                               const BaselineModel& baseline) {
  std::vector<OverheadPoint> out;
  for (int n : tenant_counts) {
    OverheadPoint p;
    p.tenants = n;
    p.native_units = 0;  // the shared control plane adds nothing per tenant
    p.multi_instance_units = baseline.per_tenant_memory_units * n;
    out.push_back(p);
  }
  return out;
}

}  // namespace tenancy::bench
