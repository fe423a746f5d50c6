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

// Prints one PASS/FAIL line per acceptance criterion, aggregated from the claims suite.

#include <algorithm>
#include <array>
#include <cstdio>

#include "cvcluster/claims.h"

int main() {
    using cvcluster::Claim;
    const std::array<const char *, 12> titles{
        "chain ledger rows for N <= 100 within 1e-12, built in < 1 s",
        "rotated correlation sets for N = 2, 3, 4",
        "graph-nullifier law on 200 random graphs, |V| <= 50",
        "floor(N/2) persistency strategy and {X,Y} oracle minimum",
        "pair extraction, next-neighbour and two custom outer strategies",
        "path reduction on 50 random connected graphs, |V| <= 20",
        "star GHZ extraction and ring-star parity law",
        "beamsplitter chain correlations to 1e-12 and weighted nullifiers",
        "cross-engine variance agreement within 1e-9",
        "finite-squeezing entanglement after tracing one GHZ party",
        "commutator, symplectic and uncertainty invariants",
        "whole claims suite in < 10 s with every claim passing",
    };

    std::vector<Claim> claims = cvcluster::run_claims();
    bool all_claims = std::all_of(claims.begin(), claims.end(), [](const Claim &c) {
        return c.passed;
    });

    bool all = true;
    for (int k = 1; k <= 12; k++) {
        std::size_t count = 0;
        std::string failed;
        for (const Claim &c : claims) {
            if (c.criterion != k) {
                continue;
            }
            count++;
            if (!c.passed) {
                failed += " " + c.id + "=" + c.value;
            }
        }
        bool pass = count > 0 && failed.empty() && (k != 12 || all_claims);
        all = all && pass;
        std::printf("criterion %2d: %s  %s (%zu checks)%s\n", k, pass ? "PASS" : "FAIL", titles[k - 1], count,
                    failed.empty() ? "" : ("; failing:" + failed).c_str());
    }
    for (const Claim &c : claims) {
        if (c.criterion == 0) {
            std::printf("supporting  : %s  %s\n", c.passed ? "PASS" : "FAIL", c.description.c_str());
        }
    }
    return all ? 0 : 1;
}
