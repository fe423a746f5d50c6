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

#include "cvcluster/protocols.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace cvcluster {
namespace {

using Q = Quadrature;

bool holds(const Register &reg, const Combo &c) {
    return is_nullifier(reg.combine(c));
}

TEST(ProtocolsTest, GraphStateNullifiers) {
    Graph g = Graph::ring(5);
    Register reg = build_graph_state(g);
    EXPECT_TRUE(is_graph_state_of(reg, g));
    EXPECT_FALSE(is_graph_state_of(reg, Graph::chain(5)));
    EXPECT_TRUE(holds(reg, {{1, 1, Q::Y}, {-1, 2, Q::X}, {-1, 5, Q::X}}));
}

TEST(ProtocolsTest, DisentangleEvenUsesHalfTheModes) {
    for (std::size_t n = 2; n <= 9; n++) {
        Register reg = build_graph_state(Graph::chain(n));
        ProtocolReport rep = disentangle_even(reg);
        EXPECT_TRUE(rep.success) << n;
        EXPECT_EQ(rep.measurements.size(), n / 2);
        EXPECT_EQ(rep.blocks.size(), n - n / 2);
    }
}

TEST(ProtocolsTest, PersistencyOracleMinimum) {
    for (std::size_t n = 2; n <= 5; n++) {
        EXPECT_EQ(persistency_oracle(n, 1.0).min_count, n / 2) << n;
    }
}

TEST(ProtocolsTest, DisconnectSplitsChain) {
    Register reg = build_graph_state(Graph::chain(6));
    ProtocolReport rep = disconnect(reg, ChainContext::of(6), 3);
    EXPECT_TRUE(rep.success);
    EXPECT_EQ(rep.blocks, (std::vector<std::vector<std::size_t>>{{1, 2}, {4, 5, 6}}));
}

TEST(ProtocolsTest, ExtractPairNextNeighbour) {
    Register reg = build_graph_state(Graph::chain(7));
    ProtocolReport rep = extract_pair(reg, ChainContext::of(7), 2, 5, OuterStrategy::NextNeighbor());
    EXPECT_TRUE(rep.success);
    EXPECT_NE(std::find(rep.blocks.begin(), rep.blocks.end(), std::vector<std::size_t>{2, 5}), rep.blocks.end());
}

TEST(ProtocolsTest, OffsetStrategyRespectsChainEnds) {
    EXPECT_FALSE(offset_strategy(8, 2, 5, {2, 3}).has_value());
    auto s = offset_strategy(9, 4, 6, {2, 3});
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->left, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(s->right, (std::vector<std::size_t>{8, 9}));
}

TEST(ProtocolsTest, ReduceGridToPath) {
    Graph g = Graph::grid(3, 3);
    Register reg = build_graph_state(g);
    ProtocolReport rep = reduce_graph_to_path(reg, g, 1, 9);
    EXPECT_TRUE(rep.success);
    EXPECT_EQ(rep.measurements.size(), 3u);
}

TEST(ProtocolsTest, ReducePathRandomGraphs) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; i++) {
        Graph g = Graph::random_connected(3 + i % 10, 0.3, rng);
        Register reg = build_graph_state(g);
        EXPECT_TRUE(reduce_graph_to_path(reg, g, 1, static_cast<int>(g.num_vertices())).success);
    }
}

TEST(ProtocolsTest, StarToGhz) {
    Graph g = Graph::star(5);
    Register reg = build_graph_state(g);
    ProtocolReport rep = star_to_ghz(reg, g);
    EXPECT_TRUE(rep.success);
    EXPECT_EQ(rep.flavor, GhzFlavor::XSum);
    EXPECT_EQ(rep.label_base, 0);
    EXPECT_THROW(star_to_ghz(reg, Graph::chain(4)), Error);
}

TEST(ProtocolsTest, RingStarParity) {
    for (std::size_t m : {3u, 4u, 5u, 6u}) {
        Graph g = Graph::ring_star(2 * m);
        Register reg = build_graph_state(g);
        ProtocolReport rep = ring_star_to_ghz(reg, g, ring_star_default_measured(g));
        EXPECT_EQ(rep.success, m % 2 == 1) << m;
        ASSERT_TRUE(rep.rank_info.has_value());
        EXPECT_EQ(rep.rank_info->first - rep.rank_info->second, m % 2 == 1 ? 0u : 1u);
    }
}

TEST(ProtocolsTest, FeedforwardSolverReportsInfeasibility) {
    Register reg = build_graph_state(Graph::chain(3));
    std::size_t rec = reg.measure(2, Q::Y).id.index;
    FeedforwardSolution sol = solve_feedforward(reg, {{1, Q::Y, {}, {}}}, {rec});
    EXPECT_FALSE(sol.feasible);
    EXPECT_GT(sol.residual, 1e-9);
}

TEST(ProtocolsTest, BeamsplitterChain) {
    EXPECT_TRUE(bs_chain_n4_holds(build_bs_chain(4)));
    EXPECT_EQ(reconstruct_bs_layout().size(), 1u);
    Register reg = build_bs_chain(3);
    EXPECT_TRUE(bs_chain_weighted_nullifiers(reg).feasible);
}

TEST(ProtocolsTest, LocalEquivalenceAndTracing) {
    Register chain4 = build_graph_state(Graph::chain(4));
    Register ghz4 = build_ghz(4);
    EXPECT_FALSE(locally_equivalent(chain4, {1, 2, 3, 4}, ghz4, {1, 2, 3, 4}, true));
    EXPECT_TRUE(locally_equivalent(chain4, {1, 2, 3, 4}, chain4, {4, 3, 2, 1}, true));
    EXPECT_TRUE(tracing_witness(chain4, 2));
    EXPECT_FALSE(tracing_witness(ghz4, 2));
}

TEST(ProtocolsTest, CrossEngineAndHygiene) {
    Register reg = build_graph_state(Graph::chain(5));
    ProtocolReport rep = disentangle_even(reg);
    EXPECT_LE(cross_engine_gap(reg, rep.final_combos, {0.0, 0.25, 0.5, 1.0, 2.0}), 1e-9);
    EXPECT_LE(symplectic_defect(reg, 2.0), 1e-12);
    EXPECT_LE(commutator_defect(reg), 1e-12);
}

TEST(ProtocolsTest, RenderUsesVertexLabels) {
    Graph g = Graph::ring_star(10);
    Register reg = build_graph_state(g);
    std::string text = render_report(ring_star_to_ghz(reg, g, ring_star_default_measured(g)));
    EXPECT_NE(text.find("measure y 0 -> m0"), std::string::npos) << text;
    EXPECT_NE(text.find("displace y 1 += -2*m0"), std::string::npos) << text;
    EXPECT_NE(text.find("reconstructed topology"), std::string::npos);
}

}  // namespace
}  // namespace cvcluster
