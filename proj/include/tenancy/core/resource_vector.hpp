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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace tenancy {

/// Five resource quantities accounted for individually: CPU (millicores),
/// memory (bytes), local storage (bytes), ephemeral storage (bytes), and
/// bandwidth (bits per second). Components are integers so that hierarchical
/// partitioning stays exact; quotas and usages must be non-negative, while
/// ledger deltas may carry negative components.
struct ResourceVector {
  std::int64_t cpu = 0;
  std::int64_t memory = 0;
  std::int64_t local_storage = 0;
  std::int64_t ephemeral_storage = 0;
  std::int64_t bandwidth = 0;

  static constexpr int kComponents = 5;

  static ResourceVector uniform(std::int64_t v) { return {v, v, v, v, v}; }

  std::int64_t component(int i) const {
    const std::array<std::int64_t, kComponents> c{cpu, memory, local_storage,
                                                  ephemeral_storage, bandwidth};
    return c[static_cast<std::size_t>(i)];
  }

  void set_component(int i, std::int64_t v) {
    switch (i) {
      case 0: cpu = v; break;
      case 1: memory = v; break;
      case 2: local_storage = v; break;
      case 3: ephemeral_storage = v; break;
      case 4: bandwidth = v; break;
      default: break;
    }
  }

  static const char* component_name(int i) {
    static constexpr const char* kNames[kComponents] = {
        "cpu", "memory", "local_storage", "ephemeral_storage", "bandwidth"};
    return kNames[i];
  }

  bool non_negative() const {
    for (int i = 0; i < kComponents; ++i) {
      if (component(i) < 0) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (int i = 0; i < kComponents; ++i) {
      if (component(i) != 0) return false;
    }
    return true;
  }

  /// Component-wise a <= b (a partial order; !(a<=b) does not imply b<=a).
  bool fits_within(const ResourceVector& limit) const {
    for (int i = 0; i < kComponents; ++i) {
      if (component(i) > limit.component(i)) return false;
    }
    return true;
  }

  /// First component index where this vector exceeds `limit`, if any.
  std::optional<int> first_exceeding(const ResourceVector& limit) const {
    for (int i = 0; i < kComponents; ++i) {
      if (component(i) > limit.component(i)) return i;
    }
    return std::nullopt;
  }

  ResourceVector& operator+=(const ResourceVector& o) {
    for (int i = 0; i < kComponents; ++i) set_component(i, component(i) + o.component(i));
    return *this;
  }
  ResourceVector& operator-=(const ResourceVector& o) {
    for (int i = 0; i < kComponents; ++i) set_component(i, component(i) - o.component(i));
    return *this;
  }

  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) { return a -= b; }
  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

  ResourceVector scaled(std::int64_t k) const {
    ResourceVector r = *this;
    for (int i = 0; i < kComponents; ++i) r.set_component(i, r.component(i) * k);
    return r;
  }

  std::string to_string() const;
};

}  // namespace tenancy
