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

#include "tenancy/runtime/client.hpp"

#include "tenancy/runtime/control_plane.hpp"

namespace tenancy::runtime {

Client::Client(ControlPlane& plane, double qps, double burst, std::string actor)
    : plane_(plane), bucket_(qps, burst), actor_(std::move(actor)) {}

Client::Session Client::session(SimTime start) { return Session(*this, start); }

SimTime Client::Session::pace(bool is_write) {
  SimTime granted = client_.bucket_.reserve(cursor_);
  client_.grants_.push_back(granted);
  cursor_ = client_.plane_.channel().admit(granted, is_write);
  ++calls_;
  return cursor_;
}

Result<StoredObject> Client::Session::create(StoredObject o) {
  ObjectKey key = o.key();
  SimTime done = pace(true);
  auto r = client_.plane_.submit({WriteOp::create(std::move(o))}, done);
  if (!r.ok()) return r.error();
  return *client_.plane_.store().get(key);
}

Result<StoredObject> Client::Session::update(StoredObject o) {
  ObjectKey key = o.key();
  SimTime done = pace(true);
  auto r = client_.plane_.submit({WriteOp::update(std::move(o))}, done);
  if (!r.ok()) return r.error();
  return *client_.plane_.store().get(key);
}

Result<void> Client::Session::remove(const ObjectKey& key) {
  SimTime done = pace(true);
  auto r = client_.plane_.submit({WriteOp::del(key)}, done);
  if (!r.ok()) return r.error();
  return {};
}

Result<StoredObject> Client::Session::get(const ObjectKey& key) {
  pace(false);
  auto o = client_.plane_.store().get(key);
  if (!o) return make_error(Errc::not_found, "object not found: " + key.to_string());
  return *o;
}

std::vector<StoredObject> Client::Session::list(Kind kind, const std::optional<std::string>& ns) {
  pace(false);
  return client_.plane_.store().list(kind, ns);
}

Result<std::uint64_t> Client::Session::apply(std::vector<WriteOp> batch) {
  SimTime done = pace(true);
  return client_.plane_.submit(std::move(batch), done);
}

}  // namespace tenancy::runtime
