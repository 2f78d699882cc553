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
#include <vector>

#include "tenancy/runtime/objects.hpp"
#include "tenancy/runtime/store.hpp"
#include "tenancy/runtime/token_bucket.hpp"

namespace tenancy::runtime {

class ControlPlane;

/// A control plane client: every request consumes a token from the client's
/// bucket (qps/burst) and then queues on the shared service channel. One
/// Client is shared by all workers of a controller; Sessions carry the
/// virtual time cursor of a single actor invocation.
class Client {
 public:
  Client(ControlPlane& plane, double qps, double burst, std::string actor);

  class Session;
  Session session(SimTime start);

  ControlPlane& plane() { return plane_; }
  const std::string& actor() const { return actor_; }

  /// Times at which tokens were granted, in call order (instrumentation).
  const std::vector<SimTime>& grant_times() const { return grants_; }

 private:
  friend class Session;
  ControlPlane& plane_;
  TokenBucket bucket_;
  std::string actor_;
  std::vector<SimTime> grants_;
};

class Client::Session {
 public:
  Session(Client& client, SimTime start) : client_(client), cursor_(start) {}

  SimTime now() const { return cursor_; }
  ControlPlane& plane() { return client_.plane_; }

  Result<StoredObject> create(StoredObject o);
  Result<StoredObject> update(StoredObject o);
  Result<void> remove(const ObjectKey& key);
  Result<StoredObject> get(const ObjectKey& key);
  std::vector<StoredObject> list(Kind kind, const std::optional<std::string>& ns = {});

  /// One API call applying several writes atomically.
  Result<std::uint64_t> apply(std::vector<WriteOp> batch);

  std::uint64_t calls() const { return calls_; }

 private:
  SimTime pace(bool is_write);

  Client& client_;
  SimTime cursor_;
  std::uint64_t calls_ = 0;
};

}  // namespace tenancy::runtime
