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

#include "tenancy/naming/naming.hpp"

#include <openssl/evp.h>

namespace tenancy::naming {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

Result<void> validate_request(const NameRequest& req) {
  if (req.requested_name.empty() || req.requested_name.size() > kMaxRequestedNameLength ||
      !valid_dns_label(req.requested_name)) {
    return make_error(Errc::invalid_name, "requested name must be a DNS label of at most 32 chars");
  }
  if (!valid_dns_label(req.parent_namespace)) {
    return make_error(Errc::invalid_name, "parent namespace is not a valid DNS label");
  }
  if (req.scope == NameScope::Federated && req.cluster_uid.empty()) {
    return make_error(Errc::invalid_argument, "federated scope requires a cluster UID");
  }
  return {};
}

static std::string hex_prefix(const std::array<std::uint8_t, 32>& digest, std::size_t chars) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(chars);
  for (std::size_t i = 0; i < chars / 2; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string derive_hash(const std::string& parent, const std::string& requested,
                        const Uid& cluster_uid, NameScope scope, const DigestFn& digest) {
  std::string input;
  if (scope == NameScope::Federated) {
    input = cluster_uid.value + "/" + parent + "/" + requested;
  } else {
    input = parent + "/" + requested;
  }
  return hex_prefix(digest(input), kHashHexLength);
}

Result<std::string> object_name(const NameRequest& req, const DigestFn& digest) {
  if (auto v = validate_request(req); !v.ok()) return v.error();
  std::string hash =
      derive_hash(req.parent_namespace, req.requested_name, req.cluster_uid, req.scope, digest);
  std::string name;
  if (req.scope == NameScope::Federated) {
    name = req.cluster_uid.compact().substr(0, kClusterPrefixLength) + "-";
  }
  name += req.requested_name;
  name += "-";
  name += hash;
  if (name.size() > kMaxNameLength) {
    return make_error(Errc::name_too_long, "composed name exceeds 63 characters: " + name);
  }
  if (!valid_dns_label(name)) {
    return make_error(Errc::invalid_name, "composed name is not a valid DNS label: " + name);
  }
  return name;
}

bool detect_collision(const NamespaceTree& tree, const std::string& candidate) {
  return tree.contains(candidate);
}

}  // namespace tenancy::naming
