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

#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace tenancy {

enum class Errc {
  unknown_namespace,
  insufficient_quota,
  subtree_in_use,
  not_found,
  conflict,
  threshold_exceeded,
  seq_compacted,
  already_bound,
  unknown_slice,
  unknown_node,
  unknown_role,
  name_too_long,
  collision,
  invalid_name,
  invalid_transition,
  duplicate_tenant_name,
  missing_owner,
  admission_denied,
  invalid_argument,
  io_failure,
};

const char* errc_name(Errc code);

/// Failure descriptor carried by Result. `component`, `requested` and
/// `available` are populated for quota errors so callers can report which
/// resource ran out and by how much.
struct Error {
  Errc code = Errc::invalid_argument;
  std::string message;
  std::string component;
  std::int64_t requested = 0;
  std::int64_t available = 0;

  std::string to_string() const;
};

inline Error make_error(Errc code, std::string message) {
  return Error{code, std::move(message), {}, 0, 0};
}

inline Error quota_error(std::string component, std::int64_t requested,
                         std::int64_t available) {
  Error e;
  e.code = Errc::insufficient_quota;
  e.component = std::move(component);
  e.requested = requested;
  e.available = available;
  e.message = "insufficient quota: " + e.component;
  return e;
}

/// Minimal expected-style value-or-error holder. The standard equivalent is
/// not available on the toolchains this project targets.
template <typename T>
class Result {
 public:
  Result(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Error error) : error_(std::move(error)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return *value_;
  }
  T& value() & {
    assert(ok());
    return *value_;
  }
  T take() && {
    assert(ok());
    return std::move(*value_);
  }

  const Error& error() const {
    assert(!ok());
    return *error_;
  }

 private:
  std::optional<T> value_;
  std::optional<Error> error_;
};

template <>
class Result<void> {
 public:
  Result() = default;
  Result(Error error) : error_(std::move(error)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return !error_.has_value(); }
  explicit operator bool() const { return ok(); }

  const Error& error() const {
    assert(!ok());
    return *error_;
  }

 private:
  std::optional<Error> error_;
};

}  // namespace tenancy
