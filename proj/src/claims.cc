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

#include "cvcluster/claims.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>

#include "cvcluster/protocols.h"

namespace cvcluster {

namespace {

using Clock = std::chrono::steady_clock;
using Q = Quadrature;

const std::vector<double> kCrossEngineRs{0.0, 0.25, 0.5, 1.0, 2.0};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

/// Largest coefficient that does not decay with squeezing.
double residual(const QuadExpr &e) {
    double worst = 0;
    for (const auto &t : e.terms()) {
        if (t.exponent >= 0) {
            worst = std::max(worst, std::abs(t.coeff));
        }
    }
    return worst;
}

Combo graph_nullifier(const Graph &g, int a) {
    Combo c{{1, g.mode_of(a), Q::Y}};
    for (int b : g.neighborhood(a)) {
        c.push_back({-1, g.mode_of(b), Q::X});
    }
    return c;
}

struct Sample {
    std::string group;
    Register reg;
    std::vector<Combo> combos;
};

class Suite {
   public:
    void add(
        const std::string &group,
        int criterion,
        const std::string &id,
        const std::string &description,
        const std::string &anchor,
        bool passed,
        const std::string &value,
        const std::string &tolerance) {
        claims.push_back({id, group, criterion, description, anchor, passed, value, tolerance});
    }

    void sample(const std::string &group, const Register &reg, std::vector<Combo> combos) {
        samples.push_back({group, reg, std::move(combos)});
    }

    std::vector<Claim> claims;
    std::vector<Sample> samples;
};

void group_chain_rows(Suite &s) {
    const std::string anchor = "squeezed chain with nearest-neighbour quadrature coupling";
    auto t0 = Clock::now();
    double worst = 0;
    std::vector<Register> built;
    for (std::size_t n = 2; n <= 100; n++) {
        Register reg = build_graph_state(Graph::chain(n));
        for (std::size_t i = 1; i <= n; i++) {
            QuadExpr x, y;
            x.add_term(i, Q::X, 1, 1.0);
            y.add_term(i, Q::Y, -1, 1.0);
            if (i > 1) {
                y.add_term(i - 1, Q::X, 1, 1.0);
            }
            if (i < n) {
                y.add_term(i + 1, Q::X, 1, 1.0);
            }
            worst = std::max({worst, reg.x(i).distance(x), reg.y(i).distance(y)});
        }
        built.push_back(std::move(reg));
    }
    double elapsed = seconds_since(t0);
    s.add(
        "chain-rows", 1, "chain-rows", "chain(N) ledger rows equal the closed-form chain quadratures for N=2..100", anchor,
        worst <= 1e-12, num(worst), "1e-12");
    s.add("chain-rows", 1, "chain-rows-runtime", "building and checking N=2..100 finishes quickly", anchor, elapsed < 1.0,
          num(elapsed) + " s", "< 1 s");
    for (Register &reg : built) {
        std::vector<Combo> combos;
        for (std::size_t i = 1; i <= reg.num_modes(); i++) {
            combos.push_back({{1, i, Q::X}});
            combos.push_back({{1, i, Q::Y}});
        }
        s.sample("chain-rows", reg, std::move(combos));
    }
}

void group_rotated(Suite &s) {
    const std::string anchor = "local -90 degree rotations turn chain correlations into nullifiers";
    struct Case {
        std::size_t n;
        std::vector<std::size_t> rotated;
        std::vector<Combo> combos;
    };
    std::vector<Case> cases{
        {2, {2}, {{{1, 1, Q::X}, {1, 2, Q::X}}, {{1, 1, Q::Y}, {-1, 2, Q::Y}}}},
        {3,
         {2},
         {{{1, 1, Q::X}, {1, 2, Q::X}, {1, 3, Q::X}},
          {{1, 1, Q::Y}, {-1, 2, Q::Y}},
          {{1, 2, Q::Y}, {-1, 3, Q::Y}},
          {{1, 1, Q::Y}, {-1, 3, Q::Y}}}},
        {4,
         {2, 4},
         {{{1, 1, Q::X}, {1, 2, Q::X}, {1, 3, Q::X}},
          {{1, 3, Q::X}, {1, 4, Q::X}},
          {{1, 1, Q::Y}, {-1, 2, Q::Y}},
          {{1, 2, Q::Y}, {-1, 3, Q::Y}, {1, 4, Q::Y}}}},
    };
    for (const Case &c : cases) {
        Register reg = build_graph_state(Graph::chain(c.n));
        for (std::size_t m : c.rotated) {
            reg.rotate_minus_90(m);
        }
        bool all = true;
        double worst = 0;
        for (const Combo &combo : c.combos) {
            QuadExpr e = reg.combine(combo);
            all = all && is_nullifier(e);
            worst = std::max(worst, residual(e));
        }
        s.add(
            "rotated", 2, "rotated-n" + std::to_string(c.n),
            "N=" + std::to_string(c.n) + " correlation set is nullified after -90 degree rotations", anchor,
            all && worst <= 1e-12, num(worst), "1e-12");
        s.sample("rotated", reg, c.combos);
    }
}

void group_graph_law(Suite &s) {
    const std::string anchor = "graph-state nullifier Y_a - sum of neighbour positions";
    std::mt19937_64 rng(20261015);
    std::uniform_int_distribution<std::size_t> size(1, 50);
    std::uniform_real_distribution<double> density(0.0, 0.3);
    std::size_t checked = 0, failed = 0;
    double worst = 0;
    for (int i = 0; i < 200; i++) {
        std::size_t n = size(rng);
        Graph g = Graph::random(n, density(rng), rng);
        Register reg = build_graph_state(g);
        std::vector<Combo> combos;
        for (int a : g.vertices()) {
            combos.push_back(graph_nullifier(g, a));
            QuadExpr e = reg.combine(combos.back());
            checked++;
            failed += !is_nullifier(e);
            worst = std::max(worst, residual(e));
        }
        s.sample("graph-law", reg, std::move(combos));
    }
    s.add(
        "graph-law", 3, "graph-law-random", "every vertex nullifier holds on 200 random simple graphs, |V| <= 50", anchor,
        failed == 0, std::to_string(checked) + " nullifiers, " + std::to_string(failed) + " failures, residual " + num(worst),
        "1e-9");
}

void group_persistency(Suite &s) {
    const std::string anchor = "position measurement of every even party disentangles the chain";
    bool ok = true;
    for (std::size_t n = 2; n <= 40; n++) {
        Register reg = build_graph_state(Graph::chain(n));
        ProtocolReport rep = disentangle_even(reg);
        ok = ok && rep.success && rep.measurements.size() == n / 2;
        s.sample("persistency", reg, rep.final_combos);
    }
    s.add(
        "persistency", 4, "persistency-strategy", "floor(N/2) even-party measurements leave chains N=2..40 fully product",
        anchor, ok, ok ? "all product" : "failure", "exact");
    for (std::size_t n = 2; n <= 6; n++) {
        auto r1 = persistency_oracle(n, 1.0);
        auto r2 = persistency_oracle(n, 2.0);
        bool pass = r1.min_count == n / 2 && r2.min_count == n / 2;
        s.add(
            "persistency", 4, "persistency-oracle-n" + std::to_string(n),
            "no {X,Y} pattern with fewer than floor(N/2) measurements disentangles chain(" + std::to_string(n) + ")",
            "minimum number of measurements is the integer part of N/2", pass,
            "min " + std::to_string(r1.min_count) + " over " + std::to_string(r1.patterns) + " patterns",
            "block covariance 1e-9");
    }
    // Solver view of the same feed-forward: every nonzero coefficient is -1.
    Register reg = build_graph_state(Graph::chain(4));
    std::size_t a = reg.measure(2, Q::X).id.index;
    std::size_t b = reg.measure(4, Q::X).id.index;
    auto sol = solve_feedforward(reg, {{1, Q::Y, {}, {}}, {3, Q::Y, {}, {}}}, {a, b});
    bool minus_one = sol.feasible;
    for (const auto &row : sol.record_coeffs) {
        for (double c : row) {
            minus_one = minus_one && (c == 0.0 || std::abs(c + 1.0) < 1e-12);
        }
    }
    s.add(
        "persistency", 4, "persistency-coefficients", "solved feed-forward for chain(4) uses coefficients -1",
        "momentum displacement by the neighbouring position records", minus_one,
        "Y1:" + num(sol.record_coeffs[0][0]) + " Y3:" + num(sol.record_coeffs[1][0]) + "," +
            num(sol.record_coeffs[1][1]),
        "1e-12");
}

void group_pairs(Suite &s) {
    const std::string anchor = "outer position and inner momentum measurements isolate a pair";
    std::size_t nn_runs = 0, nn_fail = 0;
    std::vector<std::vector<std::size_t>> offsets{{2, 3}, {2, 4, 5}};
    std::vector<std::size_t> custom_runs(offsets.size()), custom_fail(offsets.size());
    for (std::size_t n = 2; n <= 20; n++) {
        ChainContext ctx = ChainContext::of(n);
        for (std::size_t j = 1; j <= n; j++) {
            for (std::size_t k = j + 1; k <= n; k++) {
                Register reg = build_graph_state(Graph::chain(n));
                ProtocolReport rep = extract_pair(reg, ctx, j, k, OuterStrategy::NextNeighbor());
                nn_runs++;
                nn_fail += !rep.success;
                s.sample("pairs", reg, rep.final_combos);
                for (std::size_t o = 0; o < offsets.size(); o++) {
                    auto strategy = offset_strategy(n, j, k, offsets[o]);
                    if (!strategy) {
                        continue;
                    }
                    Register creg = build_graph_state(Graph::chain(n));
                    ProtocolReport crep = extract_pair(creg, ctx, j, k, *strategy);
                    custom_runs[o]++;
                    custom_fail[o] += !crep.success;
                    s.sample("pairs", creg, crep.final_combos);
                }
            }
        }
    }
    s.add(
        "pairs", 5, "pairs-next-neighbor", "next-neighbour strategy isolates every pair (j,k) of chains N=2..20", anchor,
        nn_fail == 0, std::to_string(nn_runs) + " pairs, " + std::to_string(nn_fail) + " failures", "1e-9");
    const char *names[] = {"{j-2,j-3}/{k+2,k+3}", "{j-2,j-4,j-5}/{k+2,k+4,k+5}"};
    for (std::size_t o = 0; o < offsets.size(); o++) {
        s.add(
            "pairs", 5, "pairs-custom-" + std::to_string(o + 1),
            std::string("outer strategy ") + names[o] + " isolates every pair where the chain permits it", anchor,
            custom_runs[o] > 0 && custom_fail[o] == 0,
            std::to_string(custom_runs[o]) + " pairs, " + std::to_string(custom_fail[o]) + " failures", "1e-9");
    }
    Register reg = build_graph_state(Graph::chain(8));
    ProtocolReport rep = extract_pair(reg, ChainContext::of(8), 3, 6, OuterStrategy::Custom({1, 2}, {7, 8}));
    s.add(
        "pairs", 5, "pairs-custom-example", "chain(8), pair (3,6) with outer sets {1,2} and {7,8}", anchor, rep.success,
        std::to_string(rep.measurements.size()) + " measurements", "1e-9");
    s.sample("pairs", reg, rep.final_combos);
}

void group_paths(Suite &s) {
    const std::string anchor = "measuring the positions around a path leaves a linear chain";
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size(2, 20);
    std::uniform_real_distribution<double> density(0.05, 0.35);
    std::size_t fails = 0;
    for (int i = 0; i < 50; i++) {
        std::size_t n = size(rng);
        Graph g = Graph::random_connected(n, density(rng), rng);
        std::uniform_int_distribution<int> pick(1, static_cast<int>(n));
        int a = pick(rng), b = pick(rng);
        while (b == a) {
            b = pick(rng);
        }
        Register reg = build_graph_state(g);
        ProtocolReport rep = reduce_graph_to_path(reg, g, a, b);
        fails += !rep.success;
        s.sample("paths", reg, rep.final_combos);
    }
    s.add(
        "paths", 6, "paths-random", "50 random connected graphs, |V| <= 20, reduce to chain-shaped paths", anchor,
        fails == 0, std::to_string(fails) + " failures", "1e-9");

    Graph grid = Graph::grid(3, 3);
    Register reg = build_graph_state(grid);
    ProtocolReport rep = reduce_graph_to_path(reg, grid, 1, 9);
    s.add(
        "paths", 6, "paths-grid", "3x3 grid corner to corner leaves a 5-chain", anchor,
        rep.success && rep.final_combos.size() == 5, std::to_string(rep.measurements.size()) + " measurements", "1e-9");
    s.sample("paths", reg, rep.final_combos);
}

void group_ghz(Suite &s) {
    const std::string anchor = "momentum measurement of the central party of a star";
    for (std::size_t m = 2; m <= 12; m++) {
        Graph g = Graph::star(m);
        Register reg = build_graph_state(g);
        ProtocolReport rep = star_to_ghz(reg, g);
        s.add(
            "ghz", 7, "ghz-star-" + std::to_string(m), "star(" + std::to_string(m) + ") yields an x-sum GHZ state",
            anchor, rep.success && rep.flavor == GhzFlavor::XSum,
            std::to_string(rep.final_combos.size()) + " nullifiers", "1e-9");
        s.sample("ghz", reg, rep.final_combos);
    }

    Graph g = Graph::ring_star(10);
    Register reg = build_graph_state(g);
    ProtocolReport rep = ring_star_to_ghz(reg, g, ring_star_default_measured(g));
    double center_coeff = 0;
    for (const auto &d : rep.displacements) {
        if (d.mode == g.mode_of(1) && d.kind == Q::Y && reg.records()[d.record_index].mode == g.mode_of(0)) {
            center_coeff = d.coeff;
        }
    }
    s.add(
        "ghz", 7, "ghz-ring-star-10", "ten-vertex ring plus center: y-sum GHZ with Y_1 displaced by -2x the center record",
        "ring plus star with momentum measurements of the marked parties",
        rep.success && std::abs(center_coeff + 2.0) < 1e-12, "coefficient " + num(center_coeff), "1e-12");
    s.sample("ghz", reg, rep.final_combos);

    auto survivors = reconstruct_ring_star_spokes();
    bool unique = survivors.size() == 1 && survivors[0] == std::vector<int>{2, 4, 6, 8, 10};
    s.add(
        "ghz", 0, "ghz-ring-topology", "only spokes to the even ring vertices reproduce the reference displacement table",
        "ring plus star with momentum measurements of the marked parties", unique,
        std::to_string(survivors.size()) + " of 1024 spoke sets", "exact");

    Register star3 = build_graph_state(Graph::star(3));
    star_to_ghz(star3, Graph::star(3));
    Register chain3 = build_graph_state(Graph::chain(3));
    s.add(
        "ghz", 0, "ghz-star3-chain3", "three-leaf star GHZ is locally equivalent to chain(3)", anchor,
        locally_equivalent(star3, {2, 3, 4}, chain3, {1, 2, 3}, true), "quarter-turn search", "1e-9");

    Register chain4 = build_graph_state(Graph::chain(4));
    Register ghz4 = build_ghz(4);
    s.add(
        "ghz", 0, "ghz-chain4-inequivalent", "no permutation and quarter turns map chain(4) nullifiers onto GHZ(4)",
        "four-party cluster state differs from a GHZ state",
        !locally_equivalent(chain4, {1, 2, 3, 4}, ghz4, {1, 2, 3, 4}, true), "24 x 256 candidates", "1e-9");

    bool chain_robust = true, ghz_fragile = true;
    for (std::size_t n = 4; n <= 8; n++) {
        Register c = build_graph_state(Graph::chain(n));
        Register gz = build_ghz(n);
        for (std::size_t d = 1; d <= n; d++) {
            chain_robust = chain_robust && tracing_witness(c, d);
            ghz_fragile = ghz_fragile && !tracing_witness(gz, d);
        }
    }
    s.add(
        "ghz", 0, "ghz-tracing", "discarding one party keeps chain entanglement (N=4..8) but not GHZ entanglement",
        "robustness of cluster entanglement against loss of a party", chain_robust && ghz_fragile,
        std::string(chain_robust ? "chain keeps" : "chain loses") + ", " + (ghz_fragile ? "GHZ loses" : "GHZ keeps"),
        "exact");
}

void group_parity(Suite &s) {
    const std::string anchor = "odd number of measured ring parties avoids the degeneracy";
    for (std::size_t m = 3; m <= 12; m++) {
        Graph g = Graph::ring_star(2 * m);
        Register reg = build_graph_state(g);
        ProtocolReport rep = ring_star_to_ghz(reg, g, ring_star_default_measured(g));
        std::size_t deficiency = rep.rank_info->first - rep.rank_info->second;
        bool odd = m % 2 == 1;
        bool pass = rep.success == odd && (odd ? deficiency == 0 : deficiency == 1);
        char id[32];
        std::snprintf(id, sizeof(id), "parity-m%02zu", m);
        s.add(
            "parity", 7, id,
            std::to_string(m) + " measured ring parties: GHZ " + (odd ? "reachable" : "unreachable"), anchor, pass,
            std::string(rep.success ? "solved" : "infeasible") + ", deficiency " + std::to_string(deficiency),
            "residual 1e-9");
        if (rep.success) {
            s.sample("parity", reg, rep.final_combos);
        }
    }
}

void group_bs_chain(Suite &s) {
    const std::string anchor = "cascade of 50% beamsplitters and -90 degree rotations";
    auto layouts = reconstruct_bs_layout();
    s.add(
        "bs-chain", 8, "bs-layout", "exactly one cascade layout reproduces the N=4 correlations", anchor,
        layouts.size() == 1 && layouts[0] == frozen_bs_layout(),
        layouts.empty() ? "none" : layouts[0].describe(), "exact");

    Register reg = build_bs_chain(4);
    reg.rotate_minus_90(2);
    reg.rotate_minus_90(4);
    auto combos = bs_chain_n4_correlations();
    for (std::size_t i = 0; i < combos.size(); i++) {
        double r = residual(reg.combine(combos[i]));
        s.add(
            "bs-chain", 8, "bs-n4-" + std::to_string(i + 1), "N=4 correlation " + combo_to_string(combos[i]), anchor,
            r <= 1e-12, num(r), "1e-12");
    }
    s.sample("bs-chain", reg, combos);

    bool ok = true;
    for (std::size_t n = 2; n <= 10; n++) {
        Register chain = build_bs_chain(n);
        FeedforwardSolution sol = bs_chain_weighted_nullifiers(chain);
        std::size_t nonzero = 0;
        std::vector<Combo> weighted;
        for (std::size_t a = 1; a <= n; a++) {
            Combo c{{1, a, Q::Y}};
            std::size_t e = 0;
            for (std::size_t b : {a - 1, a + 1}) {
                if (b >= 1 && b <= n) {
                    double w = sol.extra_coeffs[a - 1][e++];
                    nonzero += std::abs(w) > 1e-9;
                    c.push_back({-w, b, Q::X});
                }
            }
            weighted.push_back(std::move(c));
        }
        ok = ok && sol.feasible && nonzero == 2 * (n - 1);
        s.sample("bs-chain", chain, std::move(weighted));
    }
    s.add(
        "bs-chain", 8, "bs-weighted", "weighted chain nullifiers with 2(N-1) nonzero weights exist for N=2..10", anchor,
        ok, ok ? "all solved" : "failure", "residual 1e-9");
}

void group_finite(Suite &s) {
    const std::string anchor = "weakly squeezed tripartite GHZ stays entangled after losing a party";
    double worst = 0, flat = 0;
    for (std::size_t traced = 1; traced <= 3; traced++) {
        std::vector<std::size_t> keep;
        for (std::size_t m = 1; m <= 3; m++) {
            if (m != traced) {
                keep.push_back(m);
            }
        }
        worst = std::max(worst, ppt_min_symplectic_eig(reduce(build_ghz(3, 0.3), keep), 1, 2));
        flat = std::max(flat, std::abs(ppt_min_symplectic_eig(reduce(build_ghz(3, 0.0), keep), 1, 2) - 0.5));
    }
    s.add(
        "finite-squeezing", 10, "finite-r03", "GHZ(3) at r=0.3 with one party traced: partial transpose entangled",
        anchor, worst < 0.5, num(worst), "< 0.5");
    s.add(
        "finite-squeezing", 10, "finite-r0", "GHZ(3) at r=0 with one party traced sits at the vacuum bound", anchor,
        flat <= 1e-9, num(flat), "1e-9");
}

void group_cross_engine(Suite &s) {
    const std::string anchor = "closed-form variance agrees with the covariance engine";
    std::vector<std::string> order;
    std::map<std::string, std::pair<double, std::size_t>> gaps;
    for (const Sample &sm : s.samples) {
        if (!gaps.contains(sm.group)) {
            order.push_back(sm.group);
        }
        auto &[gap, count] = gaps[sm.group];
        gap = std::max(gap, cross_engine_gap(sm.reg, sm.combos, kCrossEngineRs));
        count += sm.combos.size();
    }
    for (const std::string &g : order) {
        auto [gap, count] = gaps[g];
        s.add(
            "cross-engine", 9, "cross-" + g,
            "variance_of matches variance_formula for the " + g + " combinations at r in {0,0.25,0.5,1,2}", anchor,
            gap <= 1e-9, num(gap) + " over " + std::to_string(count) + " combos", "1e-9");
    }
}

void group_hygiene(Suite &s) {
    const std::string anchor = "canonical commutation relations and physical covariances";
    double comm = 0, symp = 0;
    std::size_t unphysical = 0;
    for (const Sample &sm : s.samples) {
        comm = std::max(comm, commutator_defect(sm.reg));
        for (double r : kCrossEngineRs) {
            symp = std::max(symp, symplectic_defect(sm.reg, r));
        }
        auto active = sm.reg.active_modes();
        if (!active.empty()) {
            GaussianState st = reduce(mirror_to_covariance(sm.reg, 1.0), active);
            unphysical += !satisfies_uncertainty(st);
        }
    }
    for (double r : {0.0, 0.3}) {
        unphysical += !satisfies_uncertainty(build_ghz(3, r));
    }
    s.add(
        "hygiene", 11, "hygiene-commutators", "commutators of every claims register stay canonical", anchor,
        comm <= 1e-12, num(comm), "1e-12");
    s.add(
        "hygiene", 11, "hygiene-symplectic", "every gate used by the claims is symplectic", anchor, symp <= 1e-12,
        num(symp), "1e-12");
    s.add(
        "hygiene", 11, "hygiene-uncertainty", "every mirrored covariance satisfies the uncertainty relation", anchor,
        unphysical == 0, std::to_string(unphysical) + " violations", "1e-9");
}

struct Group {
    std::string name;
    std::function<void(Suite &)> run;
    bool aggregate;
};

const std::vector<Group> &groups() {
    static const std::vector<Group> g{
        {"chain-rows", group_chain_rows, false},
        {"rotated", group_rotated, false},
        {"graph-law", group_graph_law, false},
        {"persistency", group_persistency, false},
        {"pairs", group_pairs, false},
        {"paths", group_paths, false},
        {"ghz", group_ghz, false},
        {"parity", group_parity, false},
        {"bs-chain", group_bs_chain, false},
        {"finite-squeezing", group_finite, false},
        {"cross-engine", group_cross_engine, true},
        {"hygiene", group_hygiene, true},
        {"runtime", [](Suite &) {}, true},
    };
    return g;
}

std::string csv_field(const std::string &v) {
    if (v.find_first_of(",\"\n") == std::string::npos) {
        return v;
    }
    std::string out = "\"";
    for (char c : v) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace

const std::vector<std::string> &claim_groups() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const Group &g : groups()) {
            out.push_back(g.name);
        }
        return out;
    }();
    return names;
}

std::vector<Claim> run_claims(const std::optional<std::string> &only) {
    const Group *selected = nullptr;
    if (only) {
        for (const Group &g : groups()) {
            if (g.name == *only) {
                selected = &g;
            }
        }
        if (!selected) {
            throw Error(ErrorCode::Domain, "unknown claim group '" + *only + "'");
        }
    }
    auto t0 = Clock::now();
    Suite suite;
    for (const Group &g : groups()) {
        if (!selected || selected->aggregate || selected == &g) {
            g.run(suite);
        }
    }
    if (!selected || selected->name == "runtime") {
        double elapsed = seconds_since(t0);
        suite.add(
            "runtime", 12, "runtime-suite", "whole claims suite completes quickly", "desk-scale reproducibility",
            elapsed < 10.0, num(elapsed) + " s", "< 10 s");
    }
    if (!selected) {
        return suite.claims;
    }
    std::vector<Claim> out;
    for (Claim &c : suite.claims) {
        if (c.group == selected->name) {
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::string claims_csv(const std::vector<Claim> &claims) {
    std::string out = "id,description,anchor,status,value,tolerance\n";
    for (const Claim &c : claims) {
        out += csv_field(c.id) + "," + csv_field(c.description) + "," + csv_field(c.anchor) + "," +
               (c.passed ? "PASS" : "FAIL") + "," + csv_field(c.value) + "," + csv_field(c.tolerance) + "\n";
    }
    return out;
}

}  // namespace cvcluster
