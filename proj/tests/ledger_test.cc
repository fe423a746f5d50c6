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

#include "cvcluster/ledger.h"

#include <gtest/gtest.h>

#include <cmath>

#include "cvcluster/graph.h"
#include "cvcluster/protocols.h"

namespace cvcluster {
namespace {

using Q = Quadrature;

TEST(LedgerTest, VacuumHoldsInitialQuadratures) {
    Register reg = Register::vacuum(2);
    EXPECT_EQ(reg.x(1).coeff(1, Q::X, 0), 1.0);
    EXPECT_EQ(reg.y(2).coeff(2, Q::Y, 0), 1.0);
    EXPECT_EQ(commutator(reg.x(1), reg.y(1)), 1.0);
    EXPECT_EQ(commutator(reg.x(1), reg.y(2)), 0.0);
}

TEST(LedgerTest, SqueezeTagsExponents) {
    Register reg = Register::vacuum(2);
    reg.squeeze(1);
    reg.squeeze(2, SqueezeDirection::PositionSqueezed);
    EXPECT_EQ(reg.x(1).coeff(1, Q::X, 1), 1.0);
    EXPECT_EQ(reg.y(1).coeff(1, Q::Y, -1), 1.0);
    EXPECT_EQ(reg.x(2).coeff(2, Q::X, -1), 1.0);
    EXPECT_DOUBLE_EQ(variance_formula(reg.y(1), 1.0), 0.5 * std::exp(-2.0));
    EXPECT_DOUBLE_EQ(variance_formula(reg.x(1), 1.0), 0.5 * std::exp(2.0));
}

TEST(LedgerTest, KerrCouplingAddsNeighbourPositions) {
    Register reg = Register::vacuum(3);
    for (std::size_t m = 1; m <= 3; m++) {
        reg.squeeze(m);
    }
    reg.kerr_couple(1, 2);
    reg.kerr_couple(2, 3, 2.0);
    QuadExpr n2 = reg.combine({{1, 2, Q::Y}, {-1, 1, Q::X}, {-2, 3, Q::X}});
    EXPECT_TRUE(is_nullifier(n2));
    EXPECT_FALSE(is_nullifier(reg.y(2)));
}

TEST(LedgerTest, RotationsComposeToIdentity) {
    Register reg = build_graph_state(Graph::chain(3));
    Register copy = reg;
    reg.rotate_minus_90(2);
    EXPECT_TRUE(reg.x(2).approx_equal(-1.0 * copy.y(2)));
    EXPECT_TRUE(reg.y(2).approx_equal(copy.x(2)));
    reg.rotate_quarter_turns(2, 1);
    reg.rotate(1, M_PI);
    reg.rotate(1, M_PI);
    EXPECT_TRUE(reg.x(2).approx_equal(copy.x(2)));
    EXPECT_TRUE(reg.x(1).approx_equal(copy.x(1)));
}

TEST(LedgerTest, BeamsplitterPreservesCommutators) {
    Register reg = Register::vacuum(3);
    reg.squeeze(1);
    reg.squeeze(2, SqueezeDirection::PositionSqueezed);
    reg.beamsplit(1, 2, 0.3);
    reg.beamsplit(2, 3);
    reg.kerr_couple(1, 3, -0.7);
    reg.rotate(2, 0.4);
    EXPECT_LE(commutator_defect(reg), 1e-12);
}

TEST(LedgerTest, MeasurementConsumesTheMode) {
    Register reg = build_graph_state(Graph::chain(2));
    const MeasurementRecord &rec = reg.measure(2, Q::X);
    EXPECT_EQ(rec.mode, 2u);
    EXPECT_FALSE(reg.is_active(2));
    EXPECT_EQ(reg.active_modes(), std::vector<std::size_t>{1});
    try {
        reg.squeeze(2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ConsumedMode);
    }
}

TEST(LedgerTest, FeedForwardCancelsTheRecordedQuadrature) {
    Register reg = build_graph_state(Graph::chain(2));
    RecordId id = reg.measure(2, Q::X).id;
    reg.displace_with(1, Q::Y, -1.0, id);
    EXPECT_TRUE(is_nullifier(reg.y(1)));
    EXPECT_LE(commutator_defect(reg), 1e-12);
}

TEST(LedgerTest, RejectsForeignRecordsAndBadArguments) {
    Register a = build_graph_state(Graph::chain(2));
    Register b = build_graph_state(Graph::chain(2));
    RecordId foreign = b.measure(2, Q::X).id;
    auto code_of = [](auto &&fn) {
        try {
            fn();
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::InternalConsistency;
    };
    EXPECT_EQ(code_of([&] { a.displace_with(1, Q::Y, 1.0, foreign); }), ErrorCode::RecordOwnership);
    EXPECT_EQ(code_of([&] { a.kerr_couple(1, 1); }), ErrorCode::SelfInteraction);
    EXPECT_EQ(code_of([&] { a.beamsplit(1, 2, 1.5); }), ErrorCode::Domain);
    EXPECT_EQ(code_of([&] { a.squeeze(3); }), ErrorCode::InvalidIndex);
    EXPECT_EQ(code_of([] { Register::vacuum(0); }), ErrorCode::InvalidSize);
}

TEST(LedgerTest, ProductPartitionSplitsDisentangledChain) {
    Register reg = build_graph_state(Graph::chain(4));
    EXPECT_EQ(product_partition(reg).size(), 1u);
    disentangle_even(reg);
    EXPECT_EQ(product_partition(reg), (std::vector<std::vector<std::size_t>>{{1}, {3}}));
}

TEST(LedgerTest, VarianceFormulaMatchesClosedForm) {
    Register reg = build_graph_state(Graph::chain(2));
    QuadExpr n = reg.combine({{1, 1, Q::Y}, {-1, 2, Q::X}});
    for (double r : {0.0, 0.5, 1.0, 2.0}) {
        EXPECT_NEAR(variance_formula(n, r), 0.5 * std::exp(-2 * r), 1e-15);
    }
    EXPECT_NEAR(variance_formula(n, 0.5), 0.183939720586, 1e-12);
}

TEST(LedgerTest, VarianceFormulaIsMonotoneInR) {
    Register reg = build_graph_state(Graph::chain(3));
    QuadExpr decaying = reg.combine({{1, 2, Q::Y}, {-1, 1, Q::X}, {-1, 3, Q::X}});
    QuadExpr growing = reg.x(2);
    double prev_d = INFINITY, prev_g = 0;
    for (double r = 0; r <= 3; r += 0.25) {
        EXPECT_LE(variance_formula(decaying, r), prev_d);
        EXPECT_GE(variance_formula(growing, r), prev_g);
        prev_d = variance_formula(decaying, r);
        prev_g = variance_formula(growing, r);
    }
}

}  // namespace
}  // namespace cvcluster
