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
#include <functional>
#include <string>
#include <string_view>

#include "tenancy/core/namespace_tree.hpp"
#include "tenancy/core/result.hpp"
#include "tenancy/core/uid.hpp"

namespace tenancy::naming {

/// 256-bit digest primitive. Injectable so tests can force collisions;
/// defaults to SHA-256.
using DigestFn = std::function<std::array<std::uint8_t, 32>(std::string_view)>;

std::array<std::uint8_t, 32> sha256(std::string_view data);

struct NameRequest {
  std::string parent_namespace;
  std::string requested_name;  // DNS-label alphabet, <= 32 chars
  NameScope scope = NameScope::Local;
  Uid cluster_uid;
};

inline constexpr std::size_t kMaxRequestedNameLength = 32;
inline constexpr std::size_t kHashHexLength = 12;       // first 6 digest bytes
inline constexpr std::size_t kClusterPrefixLength = 12; // compact UID prefix

Result<void> validate_request(const NameRequest& req);

/// First 6 bytes of the digest as 12 lowercase hex chars. Local scope hashes
/// `parent "/" requested`; Federated scope hashes
/// `cluster_uid "/" parent "/" requested`.
std::string derive_hash(const std::string& parent, const std::string& requested,
                        const Uid& cluster_uid, NameScope scope,
                        const DigestFn& digest = sha256);

/// Local:     <requested>-<hash>
/// Federated: <cluster-uid-compact-12>-<requested>-<hash>
Result<std::string> object_name(const NameRequest& req, const DigestFn& digest = sha256);

/// True iff the candidate equals an existing namespace name.
bool detect_collision(const NamespaceTree& tree, const std::string& candidate);

}  // namespace tenancy::naming
