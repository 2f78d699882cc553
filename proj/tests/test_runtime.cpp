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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "tenancy/controllers/tenancy_controllers.hpp"
#include "tenancy/runtime/control_plane.hpp"
#include "tenancy/runtime/event_log.hpp"

using namespace tenancy;
using namespace tenancy::runtime;

namespace {

StoredObject cluster_role(const std::string& name) {
  StoredObject o;
  o.kind = Kind::Role;
  o.meta.name = name;
  o.meta.phase = Phase::Established;
  o.spec = RoleSpec{{RoleRule{{"*"}, {"*"}}}}.to_json();
  return o;
}

PlaneOptions bare_options(std::uint64_t seed = 7) {
  PlaneOptions opt;
  opt.seed = seed;
  opt.install_controllers = false;
  opt.seed_provider_roles = false;
  opt.latency = LatencyModel::constant_rate(100, 50);
  return opt;
}

std::string snapshot_text(const Store& store) {
  Json arr = Json::array();
  for (const auto& o : store.snapshot()) arr.push_back(to_json(o));
  return arr.dump();
}

}  // namespace

TEST_CASE("put then get returns the object with resource_version 1") {
  EventLoop loop;
  Store store(loop, {});
  auto created = store.create(cluster_role("alpha"), 5);
  REQUIRE(created.ok());
  CHECK(created.value().resource_version == 1);
  auto got = store.get({Kind::Role, "", "alpha"});
  REQUIRE(got.has_value());
  CHECK(to_json(*got) == to_json(created.value()));
  CHECK(got->meta.created_at == 5);
}

TEST_CASE("resource versions rise monotonically and CAS catches staleness") {
  EventLoop loop;
  Store store(loop, {});
  auto a = store.create(cluster_role("a"), 0);
  REQUIRE(a.ok());
  StoredObject stale = a.value();
  StoredObject fresh = a.value();
  auto u1 = store.update(fresh, 1);
  REQUIRE(u1.ok());
  CHECK(u1.value().resource_version > a.value().resource_version);

  auto u2 = store.update(stale, 2);  // stale CAS
  REQUIRE(!u2.ok());
  CHECK(u2.error().code == Errc::conflict);

  auto missing = store.remove({Kind::Role, "", "nope"}, 3);
  REQUIRE(!missing.ok());
  CHECK(missing.error().code == Errc::not_found);

  auto bad_name = store.create(cluster_role("Not-Valid"), 0);
  REQUIRE(!bad_name.ok());
  CHECK(bad_name.error().code == Errc::invalid_name);
}

TEST_CASE("phase transitions are validated on update") {
  EventLoop loop;
  Store store(loop, {});
  StoredObject o = cluster_role("r");
  o.meta.phase = Phase::Established;
  auto created = store.create(o, 0);
  REQUIRE(created.ok());
  StoredObject back = created.value();
  back.meta.phase = Phase::Pending;
  auto r = store.update(back, 1);
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::invalid_transition);

  StoredObject forward = created.value();
  forward.meta.phase = Phase::Terminating;
  CHECK(store.update(forward, 2).ok());
}

TEST_CASE("namespace threshold rejects the record that would exceed it") {
  EventLoop loop;
  Store store(loop, {.namespace_threshold = 5, .in_memory_log_limit = 0});
  for (int i = 0; i < 5; ++i) {
    NamespaceNode node;
    node.meta.name = "ns" + std::to_string(i);
    node.kind = NamespaceKind::Core;
    node.tenant = node.meta.name;
    REQUIRE(store.create(make_namespace_record(node), 0).ok());
  }
  NamespaceNode extra;
  extra.meta.name = "ns5";
  extra.kind = NamespaceKind::Core;
  extra.tenant = "ns5";
  auto r = store.create(make_namespace_record(extra), 0);
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::threshold_exceeded);
  CHECK(store.count(Kind::NamespaceRecord) == 5);
}

TEST_CASE("batches apply atomically or not at all") {
  EventLoop loop;
  Store store(loop, {});
  REQUIRE(store.create(cluster_role("a"), 0).ok());
  std::vector<WriteOp> batch;
  batch.push_back(WriteOp::create(cluster_role("b")));
  batch.push_back(WriteOp::create(cluster_role("a")));  // conflict
  auto r = store.apply(std::move(batch), 1);
  REQUIRE(!r.ok());
  CHECK(!store.get({Kind::Role, "", "b"}).has_value());
  CHECK(store.last_seq() == 1);
}

TEST_CASE("event log line format is fixed") {
  EventLoop loop;
  Store store(loop, {});
  StoredObject o;
  o.kind = Kind::Secret;
  o.ns = "a";
  o.meta.name = "s";
  o.meta.uid = Uid{"00000000-0000-4000-8000-000000000001"};
  o.meta.phase = Phase::Established;
  o.spec = Json::object();
  o.spec["data"] = "v";
  REQUIRE(store.create(o, 42).ok());
  std::string line = event_record_to_line(store.log().back());
  CHECK(line ==
        R"({"seq":1,"at":42,"op":"create","object":{"kind":"Secret","meta":{"name":"s",)"
        R"("uid":"00000000-0000-4000-8000-000000000001","labels":{},"created_at":42,)"
        R"("phase":"Established"},"namespace":"a","spec":{"data":"v"},"resource_version":1}})");
}

TEST_CASE("watch delivers backlog and live records in seq order without gaps") {
  EventLoop loop;
  Store store(loop, {});
  for (int i = 0; i < 3; ++i) {
    REQUIRE(store.create(cluster_role("r" + std::to_string(i)), i).ok());
  }
  std::vector<std::uint64_t> seen_a, seen_b;
  REQUIRE(store.watch({}, 0, [&](const EventRecord& rec) { seen_a.push_back(rec.seq); }).ok());
  REQUIRE(store.watch({}, 0, [&](const EventRecord& rec) { seen_b.push_back(rec.seq); }).ok());
  loop.run_until_quiescent();
  CHECK(seen_a == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(seen_a == seen_b);

  // Live continuation.
  REQUIRE(store.create(cluster_role("r3"), 9).ok());
  loop.run_until_quiescent();
  CHECK(seen_a == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(seen_a == seen_b);

  auto ahead = store.watch({}, 99, [](const EventRecord&) {});
  REQUIRE(!ahead.ok());
}

TEST_CASE("a thousand interleaved writes reach every subscriber exactly once") {
  EventLoop loop;
  Store store(loop, {});
  std::set<std::uint64_t> seen;
  std::uint64_t duplicates = 0;
  REQUIRE(store
              .watch({}, 0,
                     [&](const EventRecord& rec) {
                       if (!seen.insert(rec.seq).second) ++duplicates;
                     })
              .ok());
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    if (i % 3 == 0 && i > 0) {
      auto got = store.get({Kind::Role, "", "r" + std::to_string(rng() % i)});
      if (got) {
        auto r = store.update(*got, i);
        REQUIRE(r.ok());
        continue;
      }
    }
    REQUIRE(store.create(cluster_role("r" + std::to_string(i)), i).ok());
  }
  loop.run_until_quiescent();
  CHECK(duplicates == 0);
  std::set<std::uint64_t> expected;
  for (const auto& rec : store.log()) expected.insert(rec.seq);
  CHECK(seen == expected);
}

TEST_CASE("compaction bounds memory and old watches report SeqCompacted") {
  EventLoop loop;
  Store store(loop, {.namespace_threshold = 10000, .in_memory_log_limit = 10});
  for (int i = 0; i < 40; ++i) {
    REQUIRE(store.create(cluster_role("r" + std::to_string(i)), i).ok());
  }
  CHECK(store.log().size() <= 20);
  CHECK(store.oldest_retained_seq() > 1);
  auto stale = store.watch({}, 0, [](const EventRecord&) {});
  REQUIRE(!stale.ok());
  CHECK(stale.error().code == Errc::seq_compacted);
  CHECK(store.watch({}, store.last_seq(), [](const EventRecord&) {}).ok());
}

TEST_CASE("crash replay at any event boundary reproduces the committed prefix") {
  const std::string path = "/tmp/tenancy_crash_test.jsonl";
  std::remove(path.c_str());
  {
    EventLoop loop;
    Store store(loop, {});
    EventLogWriter writer(path);
    store.add_log_sink([&writer](const EventRecord& rec) { writer.append(rec); });
    std::mt19937 rng(11);
    for (int i = 0; i < 30; ++i) {
      switch (rng() % 3) {
        case 0:
          (void)store.create(cluster_role("r" + std::to_string(i)), i);
          break;
        case 1: {
          auto objs = store.list(Kind::Role);
          if (!objs.empty()) (void)store.update(objs[rng() % objs.size()], i);
          break;
        }
        default: {
          auto objs = store.list(Kind::Role);
          if (!objs.empty()) (void)store.remove(objs[rng() % objs.size()].key(), i);
          break;
        }
      }
    }
  }
  auto full = read_event_log(path);
  REQUIRE(full.ok());
  const auto& records = full.value();
  REQUIRE(!records.empty());

  for (std::size_t cut = 0; cut <= records.size(); ++cut) {
    // Shadow state from first principles.
    std::map<ObjectKey, StoredObject> shadow;
    for (std::size_t i = 0; i < cut; ++i) {
      const auto& rec = records[i];
      if (rec.op == EventOp::Delete) {
        shadow.erase(rec.object.key());
      } else {
        shadow[rec.object.key()] = rec.object;
      }
    }
    EventLoop loop;
    Store replayed(loop, {});
    for (std::size_t i = 0; i < cut; ++i) replayed.restore(records[i]);
    REQUIRE(replayed.size() == shadow.size());
    for (const auto& [key, obj] : shadow) {
      auto got = replayed.get(key);
      REQUIRE(got.has_value());
      CHECK(to_json(*got) == to_json(obj));
    }
    CHECK(replayed.last_seq() == cut);
  }
  std::remove(path.c_str());
}

TEST_CASE("linearizable writes: per-client responses agree with the log order") {
  ControlPlane plane(bare_options());
  auto s1 = plane.system_client().session(0);
  Client other(plane, 1e9, 1e9, "other");
  auto s2 = other.session(0);

  std::vector<std::uint64_t> seqs1, seqs2;
  for (int i = 0; i < 20; ++i) {
    auto a = s1.apply({WriteOp::create(cluster_role("a" + std::to_string(i)))});
    REQUIRE(a.ok());
    seqs1.push_back(a.value());
    auto b = s2.apply({WriteOp::create(cluster_role("b" + std::to_string(i)))});
    REQUIRE(b.ok());
    seqs2.push_back(b.value());
    // Read your writes.
    auto got = s1.get({Kind::Role, "", "a" + std::to_string(i)});
    REQUIRE(got.ok());
  }
  for (std::size_t i = 1; i < seqs1.size(); ++i) CHECK(seqs1[i] > seqs1[i - 1]);
  for (std::size_t i = 1; i < seqs2.size(); ++i) CHECK(seqs2[i] > seqs2[i - 1]);
  // The log is a gapless total order covering both clients' writes.
  std::uint64_t expected = 1;
  for (const auto& rec : plane.store().log()) CHECK(rec.seq == expected++);
}

TEST_CASE("token bucket pacing: burst immediately, then qps") {
  ControlPlane plane(bare_options());
  Controller& ctrl = plane.add_controller(
      "writer", Kind::Role, [](const std::string& key, ReconcileContext& ctx) {
        if (key.rfind("copy-", 0) == 0) return converged();
        StoredObject copy = cluster_role("copy-" + key);
        if (ctx.plane.store().find(copy.key()) != nullptr) return converged();
        (void)ctx.client.create(std::move(copy));
        return converged();
      });
  plane.start();

  // 20 objects enqueued at once; each reconcile makes one write.
  for (int i = 0; i < 20; ++i) {
    REQUIRE(plane.store().create(cluster_role("k" + std::to_string(i)), 0).ok());
  }
  plane.run_until_quiescent();

  const auto& grants = ctrl.client().grant_times();
  REQUIRE(grants.size() == 20);
  for (int i = 0; i < 10; ++i) CHECK(grants[i] <= grants[0] + 1000);  // burst is immediate
  for (int i = 10; i < 20; ++i) {
    // Paced at 5/s: 200 ms per token beyond the burst.
    CHECK(grants[i] >= grants[0] + (i - 9) * 200000 - 1000);
  }

  // Conservation: calls within any window <= burst + qps * window.
  for (std::size_t a = 0; a < grants.size(); ++a) {
    for (std::size_t b = a; b < grants.size(); ++b) {
      double window_s = static_cast<double>(grants[b] - grants[a]) / 1e6;
      double allowed = 10 + 5 * window_s;
      CHECK(static_cast<double>(b - a + 1) <= allowed + 1.001);
    }
  }
}

TEST_CASE("duplicate enqueues coalesce into one reconcile per batch") {
  PlaneOptions opt = bare_options();
  opt.controller.workers = 1;
  ControlPlane plane(std::move(opt));
  int invocations = 0;
  Controller& ctrl = plane.add_controller(
      "counter", Kind::Role, [&invocations](const std::string&, ReconcileContext&) {
        ++invocations;
        return converged();
      });
  plane.start();

  auto obj = plane.store().create(cluster_role("hot"), 0);
  REQUIRE(obj.ok());
  // A burst of updates lands before delivery; the queue coalesces them.
  StoredObject current = obj.value();
  for (int i = 0; i < 8; ++i) {
    auto updated = plane.store().update(current, 0);
    REQUIRE(updated.ok());
    current = updated.value();
  }
  plane.run_until_quiescent();
  CHECK(invocations >= 1);
  CHECK(invocations <= 3);  // far fewer than the 9 events
  CHECK(ctrl.stats().same_key_overlaps == 0);
}

TEST_CASE("no two workers ever hold the same key") {
  PlaneOptions opt = bare_options();
  opt.controller.workers = 8;
  ControlPlane plane(std::move(opt));
  Controller& ctrl = plane.add_controller(
      "busy", Kind::Role, [](const std::string& key, ReconcileContext& ctx) {
        if (key.rfind("out-", 0) == 0) return converged();
        // A paced write occupies simulated time, keeping the worker busy.
        StoredObject o = cluster_role("out-" + key);
        if (ctx.plane.store().find(o.key()) == nullptr) {
          (void)ctx.client.create(std::move(o));
        }
        return converged();
      });
  plane.start();
  for (int i = 0; i < 5; ++i) {
    REQUIRE(plane.store().create(cluster_role("k" + std::to_string(i)), 0).ok());
  }
  // Update the five keys repeatedly to force re-enqueues.
  for (int round = 1; round <= 10; ++round) {
    for (int i = 0; i < 5; ++i) {
      auto got = plane.store().get({Kind::Role, "", "k" + std::to_string(i)});
      REQUIRE(got.has_value());
      REQUIRE(plane.store().update(*got, round).ok());
    }
  }
  plane.run_until_quiescent();
  CHECK(ctrl.stats().same_key_overlaps == 0);
  CHECK(ctrl.stats().max_busy <= 8);
  CHECK(ctrl.stats().reconciles >= 5);
}

TEST_CASE("failed reconciles back off exponentially and recover") {
  ControlPlane plane(bare_options());
  int attempts = 0;
  plane.add_controller("flaky", Kind::Role, [&attempts](const std::string&, ReconcileContext&) {
    ++attempts;
    if (attempts < 4) return requeue("transient");
    return converged();
  });
  plane.start();
  SimTime start = plane.loop().now();
  REQUIRE(plane.store().create(cluster_role("x"), start).ok());
  plane.run_until_quiescent();
  CHECK(attempts == 4);
  // Backoff sums to 5 + 10 + 20 = 35 ms of simulated delay.
  CHECK(plane.loop().now() >= start + sim_ms(35));
}

TEST_CASE("idempotent convergence: reconciling N times equals reconciling once") {
  std::string once;
  for (int rounds : {1, 4}) {
    PlaneOptions opt = bare_options(99);
    ControlPlane plane(std::move(opt));
    plane.add_controller("ensure", Kind::Role,
                         [](const std::string& key, ReconcileContext& ctx) {
                           if (key.rfind("derived-", 0) == 0) return converged();
                           StoredObject o = cluster_role("derived-" + key);
                           if (ctx.plane.store().find(o.key()) == nullptr) {
                             (void)ctx.client.create(std::move(o));
                           }
                           return converged();
                         });
    plane.start();
    auto created = plane.store().create(cluster_role("seed"), 0);
    REQUIRE(created.ok());
    plane.run_until_quiescent();
    for (int i = 1; i < rounds; ++i) {
      StoredObject current = *plane.store().get({Kind::Role, "", "seed"});
      auto updated = plane.store().update(current, plane.loop().now());
      REQUIRE(updated.ok());
      plane.run_until_quiescent();
    }
    CHECK(plane.store().find({Kind::Role, "", "derived-seed"}) != nullptr);
    CHECK(plane.store().count(Kind::Role) == 2);
    // Stored objects (ignoring resource versions) are identical across
    // round counts.
    Json arr = Json::array();
    for (auto o : plane.store().snapshot()) {
      o.resource_version = 0;
      arr.push_back(to_json(o));
    }
    if (rounds == 1) {
      once = arr.dump();
    } else {
      CHECK(arr.dump() == once);
    }
  }
}

TEST_CASE("optimized controller config beats the default on 128 simultaneous tenants") {
  auto run = [](ControllerConfig config) {
    PlaneOptions opt;
    opt.seed = 1;
    opt.controller = config;
    ControlPlane plane(std::move(opt));
    for (int i = 0; i < 128; ++i) {
      TenantRequestSpec rs;
      rs.owner = "o";
      rs.decision = Decision::Approved;
      rs.decided_by = "admin";
      auto session = plane.system_client().session(0);
      REQUIRE(
          session.create(controllers::make_tenant_request("t" + std::to_string(i), rs)).ok());
    }
    plane.run_until_quiescent();
    SimTime last_established = 0;
    for (const auto* t : plane.store().list_refs(Kind::Tenant)) {
      CHECK(t->meta.phase == Phase::Established);
    }
    for (const auto& rec : plane.store().log()) {
      if (rec.object.kind == Kind::Tenant && rec.object.meta.phase == Phase::Established) {
        last_established = std::max(last_established, rec.at);
      }
    }
    return last_established;
  };
  SimTime default_total = run(ControllerConfig{});
  SimTime optimized_total = run(ControllerConfig{10, 500, 1e6, 1e6});
  CHECK(optimized_total < default_total);
}

TEST_CASE("wall clock adapter replays events in order") {
  runtime::EventLoop loop;
  std::vector<int> order;
  loop.schedule_after(sim_ms(2), [&] { order.push_back(2); });
  loop.schedule_after(sim_ms(1), [&] { order.push_back(1); });
  loop.schedule_after(sim_ms(3), [&] { order.push_back(3); });
  loop.run_realtime(/*speedup=*/1000.0);
  CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("session persistence: replaying the log reproduces live state") {
  const std::string path = "/tmp/tenancy_session_test.jsonl";
  std::remove(path.c_str());
  std::string before;
  {
    PlaneOptions opt;
    opt.seed = 3;
    opt.event_log_path = path;
    ControlPlane plane(std::move(opt));
    TenantRequestSpec rs;
    rs.owner = "owner-a";
    rs.decision = Decision::Approved;
    rs.decided_by = "admin";
    auto session = plane.system_client().session(plane.loop().now());
    REQUIRE(session.create(controllers::make_tenant_request("acme", rs)).ok());
    plane.run_until_quiescent();
    before = snapshot_text(plane.store());
  }
  {
    PlaneOptions opt;
    opt.seed = 3;
    opt.event_log_path = path;
    ControlPlane plane(std::move(opt));
    plane.run_until_quiescent();
    CHECK(snapshot_text(plane.store()) == before);
    CHECK(plane.store().find({Kind::Tenant, "", "acme"}) != nullptr);
  }
  std::remove(path.c_str());
}
