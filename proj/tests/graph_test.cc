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

#include "cvcluster/graph.h"

#include <gtest/gtest.h>

namespace cvcluster {
namespace {

TEST(GraphTest, ChainHasConsecutiveEdges) {
    Graph g = Graph::chain(4);
    EXPECT_EQ(g.edges(), (std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 4}}));
    EXPECT_TRUE(g.is_chain());
    EXPECT_TRUE(g.is_connected());
    EXPECT_EQ(g.neighborhood(2), (std::vector<int>{1, 3}));
}

TEST(GraphTest, StarAndRingStarUseCenterZero) {
    Graph s = Graph::star(3);
    EXPECT_EQ(s.base(), 0);
    EXPECT_EQ(s.degree(0), 3u);
    EXPECT_EQ(s.mode_of(0), 1u);
    EXPECT_EQ(s.label_of(4), 3);

    Graph rs = Graph::ring_star(8);
    EXPECT_EQ(rs.num_vertices(), 9u);
    EXPECT_EQ(rs.neighborhood(0), (std::vector<int>{2, 4, 6, 8}));
    EXPECT_TRUE(rs.adjacent(1, 8));
}

TEST(GraphTest, GridIsRowMajor) {
    Graph g = Graph::grid(3, 3);
    EXPECT_EQ(g.num_edges(), 12u);
    EXPECT_EQ(g.neighborhood(5), (std::vector<int>{2, 4, 6, 8}));
}

TEST(GraphTest, RejectsLoopsDuplicatesAndUnknownVertices) {
    Graph g(3);
    g.add_edge(1, 2);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {2, 1}, {1, 4}, {0, 1}}) {
        try {
            g.add_edge(a, b);
            ADD_FAILURE() << a << "-" << b;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidGraph);
        }
    }
}

TEST(GraphTest, ShortestPathBreaksTiesLexicographically) {
    Graph g = Graph::grid(3, 3);
    EXPECT_EQ(*g.shortest_path(1, 9), (std::vector<int>{1, 2, 3, 6, 9}));
    EXPECT_EQ(*g.shortest_path(4, 4), (std::vector<int>{4}));
    Graph split(4);
    split.add_edge(1, 2);
    split.add_edge(3, 4);
    EXPECT_FALSE(split.shortest_path(1, 4).has_value());
    EXPECT_FALSE(split.is_connected());
}

TEST(GraphTest, EdgeListRoundTrip) {
    for (const Graph &g : {Graph::chain(5), Graph::star(4), Graph::grid(2, 3), Graph::ring_star(6)}) {
        EXPECT_EQ(Graph::parse_edge_list(g.to_edge_list()), g);
    }
}

TEST(GraphTest, EdgeListAcceptsCommentsAndReportsLines) {
    Graph g = Graph::parse_edge_list("# triangle\nvertices 3\n1 2  # first\n\n2 3\n1 3\n");
    EXPECT_EQ(g.num_edges(), 3u);
    try {
        Graph::parse_edge_list("vertices 2\n1 2\n1 1\n");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidGraph);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(GraphTest, RandomConnectedIsConnected) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; i++) {
        Graph g = Graph::random_connected(2 + i % 15, 0.1, rng);
        EXPECT_TRUE(g.is_connected());
    }
}

}  // namespace
}  // namespace cvcluster
