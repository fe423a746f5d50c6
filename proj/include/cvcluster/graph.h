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

#ifndef CVCLUSTER_GRAPH_H
#define CVCLUSTER_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvcluster/quadrature.h"

namespace cvcluster {

/// Simple undirected graph. Vertices carry integer labels base, base+1, ..., base+n-1;
/// vertex `label` drives ledger mode `label - base + 1`.
class Graph {
   public:
    explicit Graph(std::size_t n, int base = 1);

    /// Throws InvalidGraph on loops, duplicates or out-of-range labels.
    static Graph from_edges(std::size_t n, const std::vector<std::pair<int, int>> &edges, int base = 1);
    /// Vertices 1..n, edges i-(i+1).
    static Graph chain(std::size_t n);
    /// Vertices 1..n, chain plus n-1.
    static Graph ring(std::size_t n);
    /// Center 0 adjacent to leaves 1..leaves.
    static Graph star(std::size_t leaves);
    /// Ring 1..ring_size plus center 0 joined to every ring vertex divisible by spoke_stride.
    static Graph ring_star(std::size_t ring_size, std::size_t spoke_stride = 2);
    /// rows x cols lattice, row-major labels from 1.
    static Graph grid(std::size_t rows, std::size_t cols);

    /// Erdos-Renyi G(n, p).
    static Graph random(std::size_t n, double p, std::mt19937_64 &rng);
    /// A random spanning tree plus G(n, p) extras; always connected.
    static Graph random_connected(std::size_t n, double p, std::mt19937_64 &rng);

    std::size_t num_vertices() const {
        return adj_.size();
    }
    int base() const {
        return base_;
    }
    bool valid(int label) const;
    std::size_t mode_of(int label) const;
    int label_of(std::size_t mode) const;
    std::vector<int> vertices() const;

    void add_edge(int a, int b);
    bool adjacent(int a, int b) const;
    std::size_t degree(int a) const;
    /// N_a, sorted.
    std::vector<int> neighborhood(int a) const;
    /// Sorted pairs with first < second.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t num_edges() const;

    bool is_connected() const;
    /// True iff the graph is chain(n) under its labels.
    bool is_chain() const;

    /// Minimum-length path from a to b, ties broken by the lexicographically smallest
    /// vertex sequence; nullopt when b is unreachable.
    std::optional<std::vector<int>> shortest_path(int a, int b) const;

    /// "vertices N" header, optional "base 0", then one "a b" line per edge.
    std::string to_edge_list() const;
    static Graph parse_edge_list(std::string_view text);

    bool operator==(const Graph &other) const = default;

   private:
    std::size_t index(int label) const;

    int base_;
    std::vector<std::set<std::size_t>> adj_;
};

}  // namespace cvcluster

#endif
