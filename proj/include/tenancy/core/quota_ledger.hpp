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

#include <optional>
#include <string>
#include <vector>

#include "tenancy/core/resource_vector.hpp"
#include "tenancy/core/result.hpp"
#include "tenancy/core/time.hpp"

namespace tenancy {

/// A temporary addition to (or removal from) a tenant's total grant.
/// Components may be negative. Expiry is processed at read time; the ledger
/// itself is never mutated by the clock.
struct QuotaDelta {
  ResourceVector amount;
  std::optional<SimTime> expires_at;
  std::string reason;
};

/// The total resource grant q(T_v) of a tenant: a base amount fixed at
/// admission plus any temporary deltas.
struct TenantQuotaLedger {
  std::string tenant;
  ResourceVector base;
  std::vector<QuotaDelta> deltas;

  ResourceVector effective(SimTime now) const;

  /// Appends a delta; rejected if it would drive effective(now) negative.
  Result<void> add_delta(QuotaDelta delta, SimTime now);
};

}  // namespace tenancy
