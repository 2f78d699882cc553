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
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tenancy/cli/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = tenancy::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempLog {
  std::string path;
  explicit TempLog(const std::string& name) : path("/tmp/tenancy_cli_" + name + ".jsonl") {
    std::remove(path.c_str());
  }
  ~TempLog() { std::remove(path.c_str()); }
  std::vector<std::string> with(std::vector<std::string> args) const {
    args.insert(args.begin(), {"--log", path});
    return args;
  }
};

// Builds the 100-unit example hierarchy through ordinary commands and
// returns the generated name of the "ab" namespace.
std::string build_quota_fixture(const TempLog& log) {
  REQUIRE(run(log.with({"tenant", "request", "a", "--owner", "alice", "--quota", "60"})).code ==
          0);
  REQUIRE(run(log.with({"tenant", "approve", "a"})).code == 0);
  REQUIRE(run(log.with({"tenant", "request", "b", "--owner", "bob", "--quota", "40"})).code ==
          0);
  REQUIRE(run(log.with({"tenant", "approve", "b"})).code == 0);
  REQUIRE(run(log.with({"subns", "create", "aa", "--parent", "a", "--quota", "25", "--inherit",
                        "Role,RoleBinding"}))
              .code == 0);
  auto ab = run(log.with({"subns", "create", "ab", "--parent", "a", "--quota", "15",
                          "--inherit", "Role,RoleBinding"}));
  REQUIRE(ab.code == 0);
  auto pos = ab.out.find("namespace: ");
  REQUIRE(pos != std::string::npos);
  std::string ab_ns = ab.out.substr(pos + 11);
  ab_ns.erase(ab_ns.find_first_of('\n'));
  REQUIRE(run(log.with({"subns", "create", "aba", "--parent", ab_ns, "--quota", "8",
                        "--inherit", "Role,RoleBinding"}))
              .code == 0);
  REQUIRE(run(log.with({"subns", "create", "abb", "--parent", ab_ns, "--quota", "4",
                        "--inherit", "Role,RoleBinding"}))
              .code == 0);
  return ab_ns;
}

}  // namespace

TEST_CASE("unknown flags exit with code 2 and a remedy") {
  auto r = run({"--no-such-flag"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--help") != std::string::npos);

  auto empty = run({});
  CHECK(empty.code == 2);

  auto bad_arrival = run({"bench", "tenants", "--count", "4", "--inter-arrival", "3"});
  CHECK(bad_arrival.code == 2);
}

TEST_CASE("help exits cleanly") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("tenant") != std::string::npos);
}

TEST_CASE("tenant lifecycle persists across invocations") {
  TempLog log("tenant_flow");
  auto request = run(log.with({"tenant", "request", "acme", "--owner", "alice"}));
  CHECK(request.code == 0);
  CHECK(request.out.find("Pending") != std::string::npos);

  auto approve = run(log.with({"tenant", "approve", "acme"}));
  CHECK(approve.code == 0);
  CHECK(approve.out.find("Tenant/acme Established") != std::string::npos);

  auto list = run(log.with({"--json", "tenant", "list"}));
  CHECK(list.code == 0);
  json parsed = json::parse(list.out);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["name"] == "acme");
  CHECK(parsed[0]["phase"] == "Established");
  CHECK(parsed[0]["owner"] == "alice");

  // Unauthorized approval attempts are refused up front.
  REQUIRE(run(log.with({"tenant", "request", "two", "--owner", "o"})).code == 0);
  auto bad = run(log.with({"tenant", "approve", "two", "--as", "mallory"}));
  CHECK(bad.code == 2);

  auto deny = run(log.with({"tenant", "deny", "two"}));
  CHECK(deny.code == 0);
  CHECK(deny.out.find("Failed") != std::string::npos);
}

TEST_CASE("quota show --validate prints OK and the example's subtree sums") {
  TempLog log("fig_fixture");
  std::string ab_ns = build_quota_fixture(log);

  auto human = run(log.with({"quota", "show", "--validate"}));
  CHECK(human.code == 0);
  CHECK(human.out.rfind("OK\n", 0) == 0);
  CHECK(human.out.find("aa (") != std::string::npos);

  auto machine = run(log.with({"--json", "quota", "show", "--validate"}));
  REQUIRE(machine.code == 0);
  json parsed = json::parse(machine.out);
  CHECK(parsed["ok"] == true);
  std::map<std::string, std::int64_t> sums;
  for (const auto& tenant : parsed["tenants"]) {
    CHECK(tenant["validation"] == "OK");
    for (const auto& s : tenant["subtrees"]) {
      sums[s["display"].get<std::string>()] = s["subtree_total"]["uniform"].get<std::int64_t>();
    }
  }
  CHECK(sums.at("a") == 60);
  CHECK(sums.at("aa") == 25);
  CHECK(sums.at("ab") == 15);
  CHECK(sums.at("aba") == 8);
  CHECK(sums.at("abb") == 4);
  CHECK(sums.at("b") == 40);

  // Deleting ab recoups its whole subtree into a.
  REQUIRE(run(log.with({"subns", "delete", "ab", "--parent", "a"})).code == 0);
  auto after = run(log.with({"--json", "quota", "show", "--validate"}));
  json reparsed = json::parse(after.out);
  CHECK(reparsed["ok"] == true);
  for (const auto& tenant : reparsed["tenants"]) {
    for (const auto& s : tenant["subtrees"]) {
      if (s["display"] == "a") CHECK(s["own"]["uniform"].get<std::int64_t>() == 35);
      CHECK(s["display"] != "ab");
    }
  }
}

TEST_CASE("quota set applies a delta to the ledger and the core namespace") {
  TempLog log("quota_set");
  REQUIRE(run(log.with({"tenant", "request", "a", "--owner", "o", "--quota", "10"})).code == 0);
  REQUIRE(run(log.with({"tenant", "approve", "a"})).code == 0);
  auto r = run(log.with({"quota", "set", "a", "--quota", "5", "--reason", "expansion"}));
  CHECK(r.code == 0);
  CHECK(r.out.find("15") != std::string::npos);
  auto check = run(log.with({"--json", "quota", "show", "--validate"}));
  json parsed = json::parse(check.out);
  CHECK(parsed["ok"] == true);
  CHECK(parsed["tenants"][0]["subtrees"][0]["subtree_total"]["uniform"] == 15);

  // Tenants without quotas cannot receive deltas.
  REQUIRE(run(log.with({"tenant", "request", "free", "--owner", "o"})).code == 0);
  REQUIRE(run(log.with({"tenant", "approve", "free"})).code == 0);
  CHECK(run(log.with({"quota", "set", "free", "--quota", "5"})).code == 2);
}

TEST_CASE("subns list --tree shows the hierarchy") {
  TempLog log("tree");
  build_quota_fixture(log);
  auto tree = run(log.with({"subns", "list", "--tree"}));
  CHECK(tree.code == 0);
  CHECK(tree.out.find("a [a]") != std::string::npos);
  CHECK(tree.out.find("  aa") != std::string::npos);
  CHECK(tree.out.find("    aba") != std::string::npos);

  // Validation failures surface as exit code 2.
  auto missing_parent =
      run(log.with({"subns", "create", "x", "--parent", "ghost", "--owner", "o"}));
  CHECK(missing_parent.code == 2);
}

TEST_CASE("slice workflow over CLI-provisioned nodes") {
  TempLog log("slice_flow");
  REQUIRE(run(log.with({"tenant", "request", "a", "--owner", "o", "--quota", "9000"})).code ==
          0);
  REQUIRE(run(log.with({"tenant", "approve", "a"})).code == 0);
  REQUIRE(run(log.with({"node", "add", "n1", "--cpu", "8000"})).code == 0);
  REQUIRE(run(log.with({"node", "add", "n2", "--cpu", "8000"})).code == 0);

  auto claim = run(log.with({"claim", "create", "cl", "--namespace", "a", "--slice", "sl",
                             "--nodes", "2", "--cpu", "4000"}));
  CHECK(claim.code == 0);
  CHECK(claim.out.find("Bound") != std::string::npos);

  auto slices = run(log.with({"--json", "slice", "list"}));
  json parsed = json::parse(slices.out);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["phase"] == "Bound");
  CHECK(parsed[0]["bound_namespace"] == "a");

  auto nodes = run(log.with({"--json", "node", "list"}));
  json nodes_parsed = json::parse(nodes.out);
  for (const auto& n : nodes_parsed) CHECK(n["state"] == "Reserved");

  REQUIRE(run(log.with({"slice", "release", "sl"})).code == 0);
  nodes = run(log.with({"--json", "node", "list"}));
  nodes_parsed = json::parse(nodes.out);
  for (const auto& n : nodes_parsed) CHECK(n["state"] == "Shared");
  CHECK(run(log.with({"slice", "release", "ghost"})).code == 2);
}

TEST_CASE("role request approval flows through the CLI") {
  TempLog log("role_flow");
  REQUIRE(run(log.with({"tenant", "request", "a", "--owner", "alice"})).code == 0);
  REQUIRE(run(log.with({"tenant", "approve", "a"})).code == 0);
  REQUIRE(run(log.with({"role-request", "create", "lead", "--namespace", "a", "--user", "bob",
                        "--role", "edit", "--cluster-role"}))
              .code == 0);

  // A non-admin approver leaves the request pending.
  auto pending = run(log.with({"role-request", "approve", "lead", "--namespace", "a", "--as",
                               "stranger"}));
  CHECK(pending.code == 0);
  CHECK(pending.out.find("not authorized") != std::string::npos);

  auto approved =
      run(log.with({"role-request", "approve", "lead", "--namespace", "a", "--as", "alice"}));
  CHECK(approved.code == 0);
  CHECK(approved.out.find("Established") != std::string::npos);
}

TEST_CASE("bench subcommand reports success counts and exports CSV") {
  const std::string csv = "/tmp/tenancy_cli_bench.csv";
  std::remove(csv.c_str());
  auto r = run({"--json", "--workers", "10", "--period-ms", "500", "--qps", "1000000",
                "--burst", "1000000", "bench", "tenants", "--count", "16", "--inter-arrival",
                "0", "--csv", csv});
  REQUIRE(r.code == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["aggregates"]["success_count"] == 48);  // 16 x 3 repetitions
  CHECK(parsed["aggregates"]["per_tenant_dedicated_processes"] == 0);
  std::ifstream in(csv);
  CHECK(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "req_id,submitted_ms,object_created_ms,established_ms,success");
  std::remove(csv.c_str());
  std::remove((csv + ".aggregates.json").c_str());

  auto pods = run({"--json", "bench", "pods", "--count", "30", "--tenants", "3"});
  REQUIRE(pods.code == 0);
  json pods_parsed = json::parse(pods.out);
  CHECK(pods_parsed["aggregates"]["success_count"] == 90);
}

TEST_CASE("json output is stable across identical fresh sessions") {
  std::string first, second;
  for (int round = 0; round < 2; ++round) {
    TempLog log("golden_" + std::to_string(round));
    build_quota_fixture(log);
    auto r = run(log.with({"--json", "subns", "list"}));
    REQUIRE(r.code == 0);
    (round == 0 ? first : second) = r.out;
  }
  CHECK(first == second);
  // Shape spot checks for the documented schema.
  json parsed = json::parse(first);
  for (const auto& entry : parsed) {
    CHECK(entry.contains("namespace"));
    CHECK(entry.contains("display"));
    CHECK(entry.contains("kind"));
    CHECK(entry.contains("quota"));
    CHECK(entry["quota"].contains("uniform"));
  }
}

TEST_CASE("state snapshot and replay agree with the session log") {
  TempLog log("snapshot");
  build_quota_fixture(log);
  const std::string snap = "/tmp/tenancy_cli_snapshot.json";
  std::remove(snap.c_str());
  REQUIRE(run(log.with({"state", "snapshot", "--out", snap})).code == 0);
  json snapshot = json::parse(std::ifstream(snap));

  auto replay = run({"--json", "state", "replay", log.path});
  REQUIRE(replay.code == 0);
  json replay_parsed = json::parse(replay.out);
  CHECK(replay_parsed["objects"].get<std::size_t>() == snapshot.size());
  CHECK(replay_parsed["records"].get<std::uint64_t>() >=
        replay_parsed["objects"].get<std::uint64_t>());
  std::remove(snap.c_str());

  auto bad = run({"state", "replay", "/tmp/does-not-exist.jsonl"});
  CHECK(bad.code == 1);
}

TEST_CASE("fed check-names generates collision-free names deterministically") {
  auto a = run({"--json", "fed", "check-names", "--clusters", "3", "--pairs", "1000"});
  REQUIRE(a.code == 0);
  json parsed = json::parse(a.out);
  CHECK(parsed["generated"] == 3000);
  CHECK(parsed["collisions"] == 0);

  auto b = run({"--json", "fed", "check-names", "--clusters", "3", "--pairs", "1000"});
  CHECK(a.out == b.out);

  auto human = run({"fed", "check-names", "--clusters", "2", "--pairs", "10"});
  CHECK(human.code == 0);
  CHECK(human.out == "generated=20 collisions=0\n");
}
