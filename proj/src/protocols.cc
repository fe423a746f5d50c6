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

#include <algorithm>
#include <map>
#include <set>

#include "cvcluster/protocols.h"

namespace cvcluster {

namespace {

using Q = Quadrature;

/// Applies operations to the register while recording them in the report.
class Transcript {
   public:
    Transcript(Register &reg, ProtocolReport &report) : reg_(reg), report_(report) {
    }

    std::size_t measure(std::size_t mode, Quadrature kind) {
        std::size_t index = reg_.measure(mode, kind).id.index;
        report_.measurements.push_back({mode, kind, index});
        own_.push_back(index);
        return index;
    }

    void displace(std::size_t mode, Quadrature kind, double coeff, std::size_t record_index) {
        if (std::abs(coeff) <= kPruneTolerance) {
            return;
        }
        reg_.displace_with(mode, kind, coeff, RecordId{reg_.id(), record_index});
        report_.displacements.push_back({mode, kind, coeff, record_index});
    }

    void rotate(std::size_t mode, int quarter_turns) {
        reg_.rotate_quarter_turns(mode, quarter_turns);
        report_.rotations.push_back({mode, quarter_turns});
    }

    const std::vector<std::size_t> &records() const {
        return own_;
    }

   private:
    Register &reg_;
    ProtocolReport &report_;
    std::vector<std::size_t> own_;
};

void finalize(ProtocolReport &report, const Register &reg, std::vector<Combo> combos, bool structural_ok) {
    report.final_combos = std::move(combos);
    report.final_nullifiers.clear();
    bool all = true;
    for (const Combo &c : report.final_combos) {
        report.final_nullifiers.push_back(reg.combine(c));
        all = all && is_nullifier(report.final_nullifiers.back());
    }
    report.blocks = product_partition(reg);
    report.success = structural_ok && all;
}

/// Applies the record part of a solved target as displacements on the target quadrature.
void apply_solution(
    Transcript &tr,
    const std::vector<FeedforwardTarget> &targets,
    const FeedforwardSolution &sol,
    const std::vector<std::size_t> &records) {
    for (std::size_t t = 0; t < targets.size(); t++) {
        for (std::size_t i = 0; i < records.size(); i++) {
            tr.displace(targets[t].mode, targets[t].kind, sol.record_coeffs[t][i], records[i]);
        }
    }
}

Combo pair_x_sum(std::size_t a, std::size_t b) {
    return {{1, a, Q::X}, {1, b, Q::X}};
}
Combo pair_y_diff(std::size_t a, std::size_t b) {
    return {{1, a, Q::Y}, {-1, b, Q::Y}};
}

/// First pair of quarter turns (j unrotated preferred) making (j, k) an EPR pair with
/// nullifiers X_j + X_k and Y_j - Y_k.
std::optional<std::pair<int, int>> find_epr_turns(const Register &reg, std::size_t j, std::size_t k) {
    for (int qj : {0, 3, 1, 2}) {
        for (int qk : {0, 3, 1, 2}) {
            Register copy = reg;
            copy.rotate_quarter_turns(j, qj);
            copy.rotate_quarter_turns(k, qk);
            if (is_nullifier(copy.combine(pair_x_sum(j, k))) && is_nullifier(copy.combine(pair_y_diff(j, k)))) {
                return std::pair{qj, qk};
            }
        }
    }
    return std::nullopt;
}

int signed_turns(int q) {
    return q == 3 ? -1 : q;
}

void require_active(const Register &reg, std::size_t mode, const char *what) {
    if (mode < 1 || mode > reg.num_modes()) {
        throw Error(ErrorCode::InvalidIndex, std::string(what) + ": mode " + std::to_string(mode) + " out of range");
    }
    if (!reg.is_active(mode)) {
        throw Error(ErrorCode::ProtocolPrecondition, std::string(what) + ": mode " + std::to_string(mode) + " already measured");
    }
}

}  // namespace

std::string_view flavor_name(GhzFlavor f) {
    return f == GhzFlavor::XSum ? "x-sum" : "y-sum";
}

ChainContext ChainContext::of(std::size_t n) {
    ChainContext ctx;
    for (std::size_t m = 1; m <= n; m++) {
        ctx.order.push_back(m);
    }
    return ctx;
}

std::size_t ChainContext::mode(std::size_t position) const {
    if (position < 1 || position > order.size()) {
        throw Error(
            ErrorCode::InvalidIndex,
            "chain position " + std::to_string(position) + " outside 1.." + std::to_string(order.size()));
    }
    return order[position - 1];
}

ProtocolReport disentangle_even(Register &reg) {
    std::size_t n = reg.num_modes();
    if (!is_graph_state_of(reg, Graph::chain(n))) {
        throw Error(ErrorCode::ProtocolPrecondition, "disentangle_even needs an untouched chain graph state");
    }
    ProtocolReport report;
    report.protocol = "disentangle-even";
    Transcript tr(reg, report);
    std::vector<std::size_t> record_of(n + 1);
    for (std::size_t p = 2; p <= n; p += 2) {
        record_of[p] = tr.measure(p, Q::X);
    }
    std::vector<Combo> combos;
    for (std::size_t p = 1; p <= n; p += 2) {
        for (std::size_t q : {p - 1, p + 1}) {
            if (q >= 1 && q <= n) {
                tr.displace(p, Q::Y, -1.0, record_of[q]);
            }
        }
        combos.push_back({{1, p, Q::Y}});
    }
    auto blocks = product_partition(reg);
    bool singletons = std::all_of(blocks.begin(), blocks.end(), [](const auto &b) {
        return b.size() == 1;
    });
    finalize(report, reg, std::move(combos), singletons);
    return report;
}

ProtocolReport disconnect(Register &reg, const ChainContext &ctx, std::size_t j) {
    std::size_t len = ctx.length();
    if (j < 2 || j + 1 > len) {
        throw Error(
            ErrorCode::Domain, "disconnect needs an interior chain position, got " + std::to_string(j) + " of " +
                                   std::to_string(len));
    }
    for (std::size_t p : {j - 1, j, j + 1}) {
        require_active(reg, ctx.mode(p), "disconnect");
    }
    ProtocolReport report;
    report.protocol = "disconnect";
    Transcript tr(reg, report);
    std::size_t rec = tr.measure(ctx.mode(j), Q::X);
    tr.displace(ctx.mode(j - 1), Q::Y, -1.0, rec);
    tr.displace(ctx.mode(j + 1), Q::Y, -1.0, rec);

    // Expected blocks: maximal runs of still-active chain positions.
    std::vector<std::vector<std::size_t>> runs;
    std::vector<Combo> combos;
    std::vector<std::size_t> current;
    for (std::size_t p = 1; p <= len; p++) {
        std::size_t m = ctx.mode(p);
        if (reg.is_active(m)) {
            current.push_back(m);
            Combo c{{1, m, Q::Y}};
            for (std::size_t q : {p - 1, p + 1}) {
                if (q >= 1 && q <= len && reg.is_active(ctx.mode(q))) {
                    c.push_back({-1, ctx.mode(q), Q::X});
                }
            }
            combos.push_back(std::move(c));
        } else if (!current.empty()) {
            std::sort(current.begin(), current.end());
            runs.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        std::sort(current.begin(), current.end());
        runs.push_back(std::move(current));
    }
    std::set<std::size_t> chain_modes(ctx.order.begin(), ctx.order.end());
    std::vector<std::vector<std::size_t>> blocks;
    for (auto &b : product_partition(reg)) {
        if (chain_modes.contains(b.front())) {
            blocks.push_back(b);
        }
    }
    std::sort(runs.begin(), runs.end());
    finalize(report, reg, std::move(combos), blocks == runs);
    return report;
}

std::optional<OuterStrategy> offset_strategy(
    std::size_t n, std::size_t j, std::size_t k, const std::vector<std::size_t> &offsets) {
    OuterStrategy s = OuterStrategy::Custom({}, {});
    if (j > 1) {
        for (std::size_t o : offsets) {
            if (o >= j) {
                return std::nullopt;
            }
            s.left.push_back(j - o);
        }
    }
    if (k < n) {
        for (std::size_t o : offsets) {
            if (k + o > n) {
                return std::nullopt;
            }
            s.right.push_back(k + o);
        }
    }
    return s;
}

ProtocolReport extract_pair(
    Register &reg, const ChainContext &ctx, std::size_t j, std::size_t k, const OuterStrategy &strategy) {
    std::size_t len = ctx.length();
    if (j == k) {
        throw Error(ErrorCode::Domain, "extract_pair needs two distinct parties");
    }
    if (j < 1 || k > len || j > k) {
        throw Error(
            ErrorCode::InvalidIndex, "extract_pair needs 1 <= j < k <= " + std::to_string(len) + ", got (" +
                                         std::to_string(j) + ", " + std::to_string(k) + ")");
    }
    std::size_t mj = ctx.mode(j), mk = ctx.mode(k);
    for (std::size_t p = j; p <= k; p++) {
        require_active(reg, ctx.mode(p), "extract_pair");
    }

    if (strategy.next_neighbor) {
        ProtocolReport report;
        report.protocol = "extract-pair";
        Transcript tr(reg, report);
        if (j > 1) {
            require_active(reg, ctx.mode(j - 1), "extract_pair");
            tr.displace(mj, Q::Y, -1.0, tr.measure(ctx.mode(j - 1), Q::X));
        }
        if (k < len) {
            require_active(reg, ctx.mode(k + 1), "extract_pair");
            tr.displace(mk, Q::Y, -1.0, tr.measure(ctx.mode(k + 1), Q::X));
        }
        // Each inner measurement shortens the chain by one, with j taking the measured
        // party's place after the displacement and rotation.
        for (std::size_t p = j + 1; p < k; p++) {
            std::size_t rec = tr.measure(ctx.mode(p), Q::Y);
            tr.displace(mj, Q::X, -1.0, rec);
            tr.rotate(mj, 1);
        }
        auto turns = find_epr_turns(reg, mj, mk);
        if (turns) {
            if (turns->first != 0) {
                tr.rotate(mj, signed_turns(turns->first));
            }
            if (turns->second != 0) {
                tr.rotate(mk, signed_turns(turns->second));
            }
        }
        finalize(report, reg, {pair_x_sum(mj, mk), pair_y_diff(mj, mk)}, turns.has_value());
        return report;
    }

    for (std::size_t p : strategy.left) {
        if (p < 1 || p >= j) {
            throw Error(ErrorCode::Domain, "left outer party " + std::to_string(p) + " must lie before j");
        }
    }
    for (std::size_t p : strategy.right) {
        if (p <= k || p > len) {
            throw Error(ErrorCode::Domain, "right outer party " + std::to_string(p) + " must lie after k");
        }
    }
    std::vector<std::size_t> outer = strategy.left;
    outer.insert(outer.end(), strategy.right.begin(), strategy.right.end());
    for (std::size_t p : outer) {
        require_active(reg, ctx.mode(p), "extract_pair");
    }

    // Basis assignments: the telescoping guess first (the party farthest from the pair in
    // X, the others in Y), then every assignment in binary order.
    std::vector<std::vector<Quadrature>> assignments;
    {
        std::vector<Quadrature> guess(outer.size(), Q::Y);
        if (!strategy.left.empty()) {
            auto it = std::min_element(outer.begin(), outer.begin() + static_cast<long>(strategy.left.size()));
            guess[static_cast<std::size_t>(it - outer.begin())] = Q::X;
        }
        if (!strategy.right.empty()) {
            auto it = std::max_element(outer.begin() + static_cast<long>(strategy.left.size()), outer.end());
            guess[static_cast<std::size_t>(it - outer.begin())] = Q::X;
        }
        assignments.push_back(guess);
        for (std::size_t bits = 0; bits < (std::size_t{1} << outer.size()); bits++) {
            std::vector<Quadrature> a(outer.size());
            for (std::size_t i = 0; i < outer.size(); i++) {
                a[i] = (bits >> i) & 1 ? Q::Y : Q::X;
            }
            if (a != guess) {
                assignments.push_back(std::move(a));
            }
        }
    }

    ProtocolReport last;
    for (const auto &assignment : assignments) {
        Register trial = reg;
        ProtocolReport report;
        report.protocol = "extract-pair";
        Transcript tr(trial, report);
        for (std::size_t i = 0; i < outer.size(); i++) {
            tr.measure(ctx.mode(outer[i]), assignment[i]);
        }
        for (std::size_t p = j + 1; p < k; p++) {
            tr.measure(ctx.mode(p), Q::Y);
        }
        std::vector<FeedforwardTarget> targets{
            {mj, Q::X, {}, {{{1, mk, Q::X}}, {{1, mk, Q::Y}}}},
            {mj, Q::Y, {}, {{{1, mk, Q::X}}, {{1, mk, Q::Y}}}},
        };
        std::vector<std::size_t> records = tr.records();
        FeedforwardSolution sol = solve_feedforward(trial, targets, records);
        report.rank_info = std::pair{sol.rows, sol.rank};
        std::optional<std::pair<int, int>> turns;
        if (sol.feasible) {
            apply_solution(tr, targets, sol, records);
            turns = find_epr_turns(trial, mj, mk);
            if (turns) {
                if (turns->first != 0) {
                    tr.rotate(mj, signed_turns(turns->first));
                }
                if (turns->second != 0) {
                    tr.rotate(mk, signed_turns(turns->second));
                }
            }
        }
        finalize(report, trial, {pair_x_sum(mj, mk), pair_y_diff(mj, mk)}, turns.has_value());
        if (report.success) {
            reg = std::move(trial);
            return report;
        }
        last = std::move(report);
    }
    last.notes.push_back("no basis assignment of the outer parties succeeded; register left unchanged");
    last.measurements.clear();
    last.displacements.clear();
    last.rotations.clear();
    last.final_nullifiers.clear();
    for (const Combo &c : last.final_combos) {
        last.final_nullifiers.push_back(reg.combine(c));
    }
    last.blocks = product_partition(reg);
    return last;
}

ProtocolReport reduce_graph_to_path(Register &reg, const Graph &g, int a, int b) {
    if (a == b) {
        throw Error(ErrorCode::Domain, "reduce_graph_to_path needs two distinct vertices");
    }
    auto path = g.shortest_path(a, b);
    if (!path) {
        throw Error(
            ErrorCode::ProtocolPrecondition,
            "vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not connected");
    }
    if (!is_graph_state_of(reg, g)) {
        throw Error(ErrorCode::ProtocolPrecondition, "reduce_graph_to_path needs the untouched graph state of g");
    }
    ProtocolReport report;
    report.protocol = "reduce-path";
    report.label_base = g.base();
    Transcript tr(reg, report);

    std::set<int> on_path(path->begin(), path->end());
    std::set<int> off;
    for (int p : *path) {
        for (int v : g.neighborhood(p)) {
            if (!on_path.contains(v)) {
                off.insert(v);
            }
        }
    }
    for (int v : off) {
        tr.measure(g.mode_of(v), Q::X);
    }

    // Every surviving vertex that lost a neighbour is re-expressed without it.
    std::vector<FeedforwardTarget> targets;
    for (int u : g.vertices()) {
        if (off.contains(u)) {
            continue;
        }
        auto nbrs = g.neighborhood(u);
        if (std::none_of(nbrs.begin(), nbrs.end(), [&](int v) {
                return off.contains(v);
            })) {
            continue;
        }
        FeedforwardTarget t{g.mode_of(u), Q::Y, {}, {}};
        for (int v : nbrs) {
            if (!off.contains(v)) {
                t.extras.push_back({{1, g.mode_of(v), Q::X}});
            }
        }
        targets.push_back(std::move(t));
    }
    std::vector<std::size_t> records = tr.records();
    FeedforwardSolution sol = solve_feedforward(reg, targets, records);
    report.rank_info = std::pair{sol.rows, sol.rank};
    if (sol.feasible) {
        apply_solution(tr, targets, sol, records);
    }

    std::vector<Combo> combos;
    std::vector<std::size_t> path_modes;
    for (std::size_t i = 0; i < path->size(); i++) {
        std::size_t m = g.mode_of((*path)[i]);
        path_modes.push_back(m);
        Combo c{{1, m, Q::Y}};
        if (i > 0) {
            c.push_back({-1, g.mode_of((*path)[i - 1]), Q::X});
        }
        if (i + 1 < path->size()) {
            c.push_back({-1, g.mode_of((*path)[i + 1]), Q::X});
        }
        combos.push_back(std::move(c));
    }
    std::sort(path_modes.begin(), path_modes.end());
    auto blocks = product_partition(reg);
    bool isolated = std::find(blocks.begin(), blocks.end(), path_modes) != blocks.end();
    std::string walk;
    for (int v : *path) {
        walk += (walk.empty() ? "" : "-") + std::to_string(v);
    }
    report.notes.push_back("path " + walk);
    finalize(report, reg, std::move(combos), sol.feasible && isolated);
    return report;
}

namespace {

bool is_star(const Graph &g) {
    if (g.base() != 0 || g.num_vertices() < 3 || g.num_edges() + 1 != g.num_vertices()) {
        return false;
    }
    return g.degree(0) + 1 == g.num_vertices();
}

bool is_ring_star(const Graph &g) {
    if (g.base() != 0 || g.num_vertices() < 4) {
        return false;
    }
    int ring = static_cast<int>(g.num_vertices()) - 1;
    std::size_t ring_edges = 0;
    for (auto [a, b] : g.edges()) {
        if (a == 0) {
            continue;
        }
        bool cyclic = b == a + 1 || (a == 1 && b == ring);
        if (!cyclic) {
            return false;
        }
        ring_edges++;
    }
    return ring_edges == static_cast<std::size_t>(ring);
}

}  // namespace

ProtocolReport star_to_ghz(Register &reg, const Graph &g) {
    if (!is_star(g) || !is_graph_state_of(reg, g)) {
        throw Error(ErrorCode::ProtocolPrecondition, "star_to_ghz needs the untouched graph state of a star");
    }
    ProtocolReport report;
    report.protocol = "star-ghz";
    report.label_base = g.base();
    report.flavor = GhzFlavor::XSum;
    Transcript tr(reg, report);
    std::size_t center = g.mode_of(0);
    std::size_t rec = tr.measure(center, Q::Y);
    auto leaves = g.neighborhood(0);
    tr.displace(g.mode_of(leaves.front()), Q::X, -1.0, rec);

    std::vector<Combo> combos;
    Combo sum;
    for (int v : leaves) {
        sum.push_back({1, g.mode_of(v), Q::X});
    }
    combos.push_back(std::move(sum));
    for (std::size_t i = 0; i < leaves.size(); i++) {
        for (std::size_t k = i + 1; k < leaves.size(); k++) {
            combos.push_back(pair_y_diff(g.mode_of(leaves[i]), g.mode_of(leaves[k])));
        }
    }
    finalize(report, reg, std::move(combos), true);
    return report;
}

std::vector<int> ring_star_default_measured(const Graph &g) {
    std::vector<int> out{0};
    for (int v : g.neighborhood(0)) {
        out.push_back(v);
    }
    return out;
}

ProtocolReport ring_star_to_ghz(Register &reg, const Graph &g, const std::vector<int> &measured) {
    if (!is_ring_star(g) || !is_graph_state_of(reg, g)) {
        throw Error(ErrorCode::ProtocolPrecondition, "ring_star_to_ghz needs the untouched graph state of a ring+star graph");
    }
    std::set<int> chosen;
    for (int v : measured) {
        if (!g.valid(v)) {
            throw Error(ErrorCode::InvalidIndex, "measured vertex " + std::to_string(v) + " is not in the graph");
        }
        if (!chosen.insert(v).second) {
            throw Error(ErrorCode::Domain, "vertex " + std::to_string(v) + " listed twice");
        }
    }
    std::vector<int> remaining;
    for (int v : g.vertices()) {
        if (!chosen.contains(v)) {
            remaining.push_back(v);
        }
    }
    if (remaining.size() < 2) {
        throw Error(ErrorCode::Domain, "at least two parties must remain unmeasured");
    }

    ProtocolReport report;
    report.protocol = "ring-star-ghz";
    report.label_base = g.base();
    report.flavor = GhzFlavor::YSum;
    report.notes.push_back("reconstructed topology");
    Transcript tr(reg, report);
    for (int v : chosen) {
        tr.measure(g.mode_of(v), Q::Y);
    }
    std::size_t ring_count = chosen.size() - (chosen.contains(0) ? 1 : 0);
    report.notes.push_back("measured ring parties: " + std::to_string(ring_count));

    std::size_t anchor = g.mode_of(remaining.front());
    std::vector<FeedforwardTarget> targets;
    Combo total{{1, anchor, Q::Y}};
    FeedforwardTarget sum_target{anchor, Q::Y, {}, {}};
    for (std::size_t i = 1; i < remaining.size(); i++) {
        std::size_t m = g.mode_of(remaining[i]);
        sum_target.fixed.push_back({1, m, Q::Y});
        total.push_back({1, m, Q::Y});
    }
    targets.push_back(std::move(sum_target));
    for (std::size_t i = 1; i < remaining.size(); i++) {
        targets.push_back({g.mode_of(remaining[i]), Q::X, {{-1, anchor, Q::X}}, {}});
    }
    std::vector<std::size_t> records = tr.records();
    FeedforwardSolution sol = solve_feedforward(reg, targets, records);
    report.rank_info = std::pair{sol.rows, sol.rank};
    if (sol.feasible) {
        apply_solution(tr, targets, sol, records);
    } else {
        report.notes.push_back(
            "feed-forward infeasible: rank deficiency " + std::to_string(sol.rows - sol.rank));
    }

    std::vector<Combo> combos{std::move(total)};
    for (std::size_t i = 0; i < remaining.size(); i++) {
        for (std::size_t k = i + 1; k < remaining.size(); k++) {
            combos.push_back({{1, g.mode_of(remaining[i]), Q::X}, {-1, g.mode_of(remaining[k]), Q::X}});
        }
    }
    finalize(report, reg, std::move(combos), sol.feasible);
    return report;
}

Graph ring_with_spokes(const std::vector<int> &spokes) {
    Graph g(11, 0);
    for (int v = 1; v <= 10; v++) {
        g.add_edge(v, v == 10 ? 1 : v + 1);
    }
    for (int v : spokes) {
        g.add_edge(0, v);
    }
    return g;
}

std::vector<std::vector<int>> reconstruct_ring_star_spokes() {
    // (target vertex, kind, coefficient, measured vertex)
    struct Step {
        int target;
        Quadrature kind;
        double coeff;
        int source;
    };
    static const std::vector<Step> kSteps{
        {1, Q::Y, -2, 0},
        {3, Q::X, -1, 4}, {3, Q::X, 1, 6}, {3, Q::X, -1, 8}, {3, Q::X, 1, 10},
        {5, Q::X, 1, 2}, {5, Q::X, -1, 4},
        {7, Q::X, -1, 8}, {7, Q::X, 1, 10},
        {9, Q::X, 1, 2}, {9, Q::X, -1, 4}, {9, Q::X, 1, 6}, {9, Q::X, -1, 8},
    };
    const std::vector<int> odd{1, 3, 5, 7, 9};
    std::vector<std::vector<int>> survivors;
    for (unsigned mask = 0; mask < (1u << 10); mask++) {
        std::vector<int> spokes;
        for (int v = 1; v <= 10; v++) {
            if (mask & (1u << (v - 1))) {
                spokes.push_back(v);
            }
        }
        Graph g = ring_with_spokes(spokes);
        Register reg = build_graph_state(g);
        std::map<int, RecordId> rec;
        for (int v : {0, 2, 4, 6, 8, 10}) {
            rec[v] = reg.measure(g.mode_of(v), Q::Y).id;
        }
        for (const Step &s : kSteps) {
            reg.displace_with(g.mode_of(s.target), s.kind, s.coeff, rec.at(s.source));
        }
        Combo total;
        for (int v : odd) {
            total.push_back({1, g.mode_of(v), Q::Y});
        }
        bool ghz = is_nullifier(reg.combine(total));
        for (std::size_t i = 1; ghz && i < odd.size(); i++) {
            ghz = is_nullifier(reg.combine({{1, g.mode_of(odd[0]), Q::X}, {-1, g.mode_of(odd[i]), Q::X}}));
        }
        if (ghz) {
            survivors.push_back(spokes);
        }
    }
    return survivors;
}

}  // namespace cvcluster
