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

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace tenancy {

/// 128-bit universally unique identifier in canonical lowercase hyphenated
/// form (8-4-4-4-12 hex digits).
struct Uid {
  std::string value;

  static std::optional<Uid> parse(std::string_view text);
  static Uid from_words(std::uint64_t hi, std::uint64_t lo);

  /// The 32 hex digits with hyphens removed.
  std::string compact() const;

  bool empty() const { return value.empty(); }

  friend bool operator==(const Uid&, const Uid&) = default;
  friend auto operator<=>(const Uid&, const Uid&) = default;
};

/// Deterministic UID source. Seeded per run so that repeated runs of the
/// same experiment produce identical identifiers.
class UidGenerator {
 public:
  explicit UidGenerator(std::uint64_t seed) : rng_(seed) {}

  Uid next();

 private:
  std::mt19937_64 rng_;
};

}  // namespace tenancy
