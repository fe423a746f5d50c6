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

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <tuple>

#include "cvcluster/quadrature.h"

namespace cvcluster {

Graph::Graph(std::size_t n, int base) : base_(base), adj_(n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
    }
}

bool Graph::valid(int label) const {
    return label >= base_ && label < base_ + static_cast<int>(adj_.size());
}

std::size_t Graph::index(int label) const {
    if (!valid(label)) {
        throw Error(
            ErrorCode::InvalidIndex,
            "vertex " + std::to_string(label) + " outside " + std::to_string(base_) + ".." +
                std::to_string(base_ + static_cast<int>(adj_.size()) - 1));
    }
    return static_cast<std::size_t>(label - base_);
}

std::size_t Graph::mode_of(int label) const {
    return index(label) + 1;
}

int Graph::label_of(std::size_t mode) const {
    return static_cast<int>(mode) - 1 + base_;
}

std::vector<int> Graph::vertices() const {
    std::vector<int> v(adj_.size());
    std::iota(v.begin(), v.end(), base_);
    return v;
}

void Graph::add_edge(int a, int b) {
    if (!valid(a) || !valid(b)) {
        throw Error(
            ErrorCode::InvalidGraph, "edge " + std::to_string(a) + "-" + std::to_string(b) + " has an unknown vertex");
    }
    if (a == b) {
        throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(a));
    }
    std::size_t i = index(a), j = index(b);
    if (adj_[i].contains(j)) {
        throw Error(
            ErrorCode::InvalidGraph, "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    adj_[i].insert(j);
    adj_[j].insert(i);
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<int, int>> &edges, int base) {
    Graph g(n, base);
    for (auto [a, b] : edges) {
        g.add_edge(a, b);
    }
    return g;
}

Graph Graph::chain(std::size_t n) {
    Graph g(n);
    for (int v = 1; v < static_cast<int>(n); v++) {
        g.add_edge(v, v + 1);
    }
    return g;
}

Graph Graph::ring(std::size_t n) {
    if (n < 3) {
        throw Error(ErrorCode::InvalidGraph, "a simple ring needs at least 3 vertices");
    }
    Graph g = chain(n);
    g.add_edge(static_cast<int>(n), 1);
    return g;
}

Graph Graph::star(std::size_t leaves) {
    if (leaves == 0) {
        throw Error(ErrorCode::InvalidGraph, "star needs at least one leaf");
    }
    Graph g(leaves + 1, 0);
    for (int v = 1; v <= static_cast<int>(leaves); v++) {
        g.add_edge(0, v);
    }
    return g;
}

Graph Graph::ring_star(std::size_t ring_size, std::size_t spoke_stride) {
    if (ring_size < 3 || spoke_stride == 0) {
        throw Error(ErrorCode::InvalidGraph, "ring_star needs ring_size >= 3 and a positive spoke stride");
    }
    Graph g(ring_size + 1, 0);
    int n = static_cast<int>(ring_size);
    for (int v = 1; v <= n; v++) {
        g.add_edge(v, v == n ? 1 : v + 1);
        if (v % static_cast<int>(spoke_stride) == 0) {
            g.add_edge(0, v);
        }
    }
    return g;
}

Graph Graph::grid(std::size_t rows, std::size_t cols) {
    Graph g(rows * cols);
    auto label = [cols](std::size_t r, std::size_t c) {
        return static_cast<int>(r * cols + c + 1);
    };
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            if (c + 1 < cols) {
                g.add_edge(label(r, c), label(r, c + 1));
            }
            if (r + 1 < rows) {
                g.add_edge(label(r, c), label(r + 1, c));
            }
        }
    }
    return g;
}

Graph Graph::random(std::size_t n, double p, std::mt19937_64 &rng) {
    Graph g(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int a = 1; a <= static_cast<int>(n); a++) {
        for (int b = a + 1; b <= static_cast<int>(n); b++) {
            if (u(rng) < p) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

Graph Graph::random_connected(std::size_t n, double p, std::mt19937_64 &rng) {
    Graph g(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int v = 2; v <= static_cast<int>(n); v++) {
        std::uniform_int_distribution<int> parent(1, v - 1);
        g.add_edge(parent(rng), v);
    }
    for (int a = 1; a <= static_cast<int>(n); a++) {
        for (int b = a + 1; b <= static_cast<int>(n); b++) {
            if (!g.adjacent(a, b) && u(rng) < p) {
                g.add_edge(a, b);
            }
        }
    }
    return g;
}

bool Graph::adjacent(int a, int b) const {
    return adj_[index(a)].contains(index(b));
}

std::size_t Graph::degree(int a) const {
    return adj_[index(a)].size();
}

std::vector<int> Graph::neighborhood(int a) const {
    std::vector<int> out;
    for (std::size_t j : adj_[index(a)]) {
        out.push_back(static_cast<int>(j) + base_);
    }
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < adj_.size(); i++) {
        for (std::size_t j : adj_[i]) {
            if (i < j) {
                out.emplace_back(static_cast<int>(i) + base_, static_cast<int>(j) + base_);
            }
        }
    }
    return out;
}

std::size_t Graph::num_edges() const {
    std::size_t total = 0;
    for (const auto &s : adj_) {
        total += s.size();
    }
    return total / 2;
}

bool Graph::is_connected() const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                count++;
                queue.push_back(w);
            }
        }
    }
    return count == adj_.size();
}

bool Graph::is_chain() const {
    if (num_edges() + 1 != adj_.size()) {
        return false;
    }
    for (std::size_t i = 0; i + 1 < adj_.size(); i++) {
        if (!adj_[i].contains(i + 1)) {
            return false;
        }
    }
    return true;
}

std::optional<std::vector<int>> Graph::shortest_path(int a, int b) const {
    std::size_t src = index(a), dst = index(b);
    // Distances to the destination; walking greedily from the source through the
    // smallest admissible neighbor then yields the lexicographically first shortest path.
    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(adj_.size(), kUnseen);
    std::deque<std::size_t> queue{dst};
    dist[dst] = 0;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : adj_[v]) {
            if (dist[w] == kUnseen) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if (dist[src] == kUnseen) {
        return std::nullopt;
    }
    std::vector<int> path{a};
    std::size_t cur = src;
    while (cur != dst) {
        for (std::size_t w : adj_[cur]) {
            if (dist[w] + 1 == dist[cur]) {
                cur = w;
                break;
            }
        }
        path.push_back(static_cast<int>(cur) + base_);
    }
    return path;
}

std::string Graph::to_edge_list() const {
    std::ostringstream out;
    out << "vertices " << adj_.size() << "\n";
    if (base_ != 1) {
        out << "base " << base_ << "\n";
    }
    for (auto [a, b] : edges()) {
        out << a << " " << b << "\n";
    }
    return out.str();
}

Graph Graph::parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<std::size_t> n;
    int base = 1;
    bool edges_started = false;
    std::vector<std::tuple<int, int, std::size_t>> edges;
    std::size_t line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        if (first == "vertices") {
            long long count;
            if (n || !(fields >> count) || count <= 0) {
                fail("expected a single 'vertices N' header with N >= 1");
            }
            n = static_cast<std::size_t>(count);
        } else if (first == "base") {
            if (!n || edges_started || !(fields >> base) || (base != 0 && base != 1)) {
                fail("expected 'base 0' or 'base 1' right after the header");
            }
        } else {
            if (!n) {
                fail("missing 'vertices N' header");
            }
            edges_started = true;
            int a, b;
            try {
                std::size_t used;
                a = std::stoi(first, &used);
                if (used != first.size()) {
                    fail("expected vertex label, found '" + first + "'");
                }
            } catch (const std::logic_error &) {
                fail("expected vertex label, found '" + first + "'");
            }
            if (!(fields >> b)) {
                fail("expected two vertex labels");
            }
            std::string extra;
            if (fields >> extra) {
                fail("unexpected trailing text '" + extra + "'");
            }
            edges.emplace_back(a, b, line_no);
        }
    }
    if (!n) {
        throw Error(ErrorCode::InvalidGraph, "missing 'vertices N' header");
    }
    Graph g(*n, base);
    for (auto [a, b, at] : edges) {
        try {
            g.add_edge(a, b);
        } catch (const Error &e) {
            throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(at) + ": " + e.what());
        }
    }
    return g;
}

}  // namespace cvcluster
