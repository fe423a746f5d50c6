// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVCLUSTER_CLAIMS_H
#define CVCLUSTER_CLAIMS_H

#include <optional>
#include <string>
#include <vector>

namespace cvcluster {

struct Claim {
    std::string id;
    std::string group;
    /// Acceptance criterion this row belongs to (1-12), or 0 for supporting checks.
    int criterion = 0;
    std::string description;
    std::string anchor;
    bool passed = false;
    std::string value;
    std::string tolerance;
};

/// Group names in execution order.
const std::vector<std::string> &claim_groups();

/// Runs the built-in suite. With `only`, emits that group's rows; the aggregate groups
/// (cross-engine, hygiene, runtime) still run everything they summarize.
/// Throws Error(Domain) for an unknown group.
std::vector<Claim> run_claims(const std::optional<std::string> &only = std::nullopt);

/// "id,description,anchor,status,value,tolerance" plus one line per claim.
std::string claims_csv(const std::vector<Claim> &claims);

}  // namespace cvcluster

#endif
