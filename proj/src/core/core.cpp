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

#include <cctype>
#include <cinttypes>
#include <cstdio>

#include "tenancy/core/object_meta.hpp"
#include "tenancy/core/resource_vector.hpp"
#include "tenancy/core/result.hpp"
#include "tenancy/core/uid.hpp"

namespace tenancy {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::unknown_namespace: return "UnknownNamespace";
    case Errc::insufficient_quota: return "InsufficientQuota";
    case Errc::subtree_in_use: return "SubtreeInUse";
    case Errc::not_found: return "NotFound";
    case Errc::conflict: return "Conflict";
    case Errc::threshold_exceeded: return "ThresholdExceeded";
    case Errc::seq_compacted: return "SeqCompacted";
    case Errc::already_bound: return "AlreadyBound";
    case Errc::unknown_slice: return "UnknownSlice";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::unknown_role: return "UnknownRole";
    case Errc::name_too_long: return "NameTooLong";
    case Errc::collision: return "Collision";
    case Errc::invalid_name: return "InvalidName";
    case Errc::invalid_transition: return "InvalidTransition";
    case Errc::duplicate_tenant_name: return "DuplicateTenantName";
    case Errc::missing_owner: return "MissingOwner";
    case Errc::admission_denied: return "AdmissionDenied";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_failure: return "IoFailure";
  }
  return "Unknown";
}

std::string Error::to_string() const {
  std::string s = errc_name(code);
  if (!message.empty()) {
    s += ": ";
    s += message;
  }
  if (!component.empty()) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), " (%s requested=%" PRId64 " available=%" PRId64 ")",
                  component.c_str(), requested, available);
    s += buf;
  }
  return s;
}

std::string ResourceVector::to_string() const {
  std::string s = "{";
  for (int i = 0; i < kComponents; ++i) {
    if (i) s += ", ";
    s += component_name(i);
    s += "=";
    s += std::to_string(component(i));
  }
  s += "}";
  return s;
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Pending: return "Pending";
    case Phase::Establishing: return "Establishing";
    case Phase::Established: return "Established";
    case Phase::Failed: return "Failed";
    case Phase::Terminating: return "Terminating";
  }
  return "Pending";
}

std::optional<Phase> phase_from_name(std::string_view name) {
  for (Phase p : {Phase::Pending, Phase::Establishing, Phase::Established, Phase::Failed,
                  Phase::Terminating}) {
    if (name == phase_name(p)) return p;
  }
  return std::nullopt;
}

int phase_rank(Phase p) {
  switch (p) {
    case Phase::Pending: return 0;
    case Phase::Establishing: return 1;
    case Phase::Established:
    case Phase::Failed: return 2;
    case Phase::Terminating: return 3;
  }
  return 0;
}

bool phase_transition_allowed(Phase from, Phase to) {
  if (from == to) return true;
  return phase_rank(to) > phase_rank(from);
}

bool valid_dns_label(std::string_view name) {
  if (name.empty() || name.size() > kMaxNameLength) return false;
  auto alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!alnum(name.front()) || !alnum(name.back())) return false;
  for (char c : name) {
    if (!alnum(c) && c != '-') return false;
  }
  return true;
}

std::optional<Uid> Uid::parse(std::string_view text) {
  // 8-4-4-4-12 lowercase hex groups.
  static constexpr int kGroups[5] = {8, 4, 4, 4, 12};
  if (text.size() != 36) return std::nullopt;
  std::size_t pos = 0;
  for (int g = 0; g < 5; ++g) {
    if (g > 0) {
      if (text[pos] != '-') return std::nullopt;
      ++pos;
    }
    for (int i = 0; i < kGroups[g]; ++i, ++pos) {
      char c = text[pos];
      bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
      if (!hex) return std::nullopt;
    }
  }
  return Uid{std::string(text)};
}

Uid Uid::from_words(std::uint64_t hi, std::uint64_t lo) {
  // RFC 4122 version 4, variant 1 layout.
  hi = (hi & 0xffffffffffff0fffULL) | 0x0000000000004000ULL;
  lo = (lo & 0x3fffffffffffffffULL) | 0x8000000000000000ULL;
  char buf[37];
  std::snprintf(buf, sizeof(buf), "%08llx-%04llx-%04llx-%04llx-%012llx",
                static_cast<unsigned long long>(hi >> 32),
                static_cast<unsigned long long>((hi >> 16) & 0xffff),
                static_cast<unsigned long long>(hi & 0xffff),
                static_cast<unsigned long long>(lo >> 48),
                static_cast<unsigned long long>(lo & 0xffffffffffffULL));
  return Uid{std::string(buf)};
}

std::string Uid::compact() const {
  std::string out;
  out.reserve(32);
  for (char c : value) {
    if (c != '-') out.push_back(c);
  }
  return out;
}

Uid UidGenerator::next() { return Uid::from_words(rng_(), rng_()); }

}  // namespace tenancy
