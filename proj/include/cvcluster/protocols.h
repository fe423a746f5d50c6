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

#ifndef CVCLUSTER_PROTOCOLS_H
#define CVCLUSTER_PROTOCOLS_H

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cvcluster/covariance.h"
#include "cvcluster/graph.h"
#include "cvcluster/ledger.h"

namespace cvcluster {

// ---------------------------------------------------------------------------
// State builders.

/// Every mode momentum squeezed, then one unit-gain Kerr coupling per edge.
Register build_graph_state(const Graph &g);
GaussianState build_graph_state(const Graph &g, double r);
/// True iff every mode of `reg` equals the freshly built graph state of `g` exactly.
bool is_graph_state_of(const Register &reg, const Graph &g);

/// One step of the beamsplitter cascade: a 50% splitter between chain neighbours i and
/// i+1, optionally with quarter-turn rotations on one of the two modes before/after.
struct BsStepRotation {
    /// 0 rotates mode i, 1 rotates mode i+1.
    int which;
    int quarter_turns;
    bool operator==(const BsStepRotation &) const = default;
};
struct BsLayout {
    bool reverse_order = false;
    /// bs(i+1, i) instead of bs(i, i+1).
    bool swapped = false;
    std::optional<BsStepRotation> before;
    std::optional<BsStepRotation> after;

    std::string describe() const;
    bool operator==(const BsLayout &) const = default;
};

/// Forward cascade of bs(i, i+1) each followed by the -90 degree rotation of mode i+1.
BsLayout frozen_bs_layout();
/// Mode 1 momentum squeezed, modes 2..n position squeezed, then the cascade.
Register build_bs_chain(std::size_t n, const BsLayout &layout = frozen_bs_layout());
GaussianState build_bs_chain(std::size_t n, double r);
/// The four sqrt2-weighted N=4 correlations, in the frame reached by a further -90
/// degree rotation on modes 2 and 4.
std::vector<Combo> bs_chain_n4_correlations();
/// Applies the -90 degree rotations on modes 2 and 4 to a copy and checks the correlations.
bool bs_chain_n4_holds(const Register &reg);
/// Every uniform layout in the search space that reproduces the N=4 correlation set.
std::vector<BsLayout> reconstruct_bs_layout();

/// n-party GHZ state from squeezed vacua and a splitter cascade with
/// transmittances 1/n, 1/(n-1), ..., 1/2: nullifiers sum X and Y_i - Y_j.
Register build_ghz(std::size_t n);
GaussianState build_ghz(std::size_t n, double r);

// ---------------------------------------------------------------------------
// Cross-engine plumbing.

/// Replays the register's operation log on the covariance engine at squeezing r.
/// Measurements are kept in place (their mode is never touched again) and displacements
/// become outcome-averaged feed-forward maps, so unconditional variances agree.
GaussianState mirror_to_covariance(const Register &reg, double r);

/// Largest |variance_of - variance_formula| over the combos and squeezing values.
double cross_engine_gap(const Register &reg, const std::vector<Combo> &combos, const std::vector<double> &rs);

/// Largest |S Omega S^T - Omega| over the gates in the register's log.
double symplectic_defect(const Register &reg, double r);

// ---------------------------------------------------------------------------
// Reports and the feed-forward solver.

enum class GhzFlavor { XSum, YSum };
std::string_view flavor_name(GhzFlavor f);

struct MeasurementStep {
    std::size_t mode;
    Quadrature kind;
    std::size_t record_index;
};
struct DisplacementStep {
    std::size_t mode;
    Quadrature kind;
    double coeff;
    std::size_t record_index;
};
struct RotationStep {
    std::size_t mode;
    int quarter_turns;
};

struct ProtocolReport {
    std::string protocol;
    std::vector<MeasurementStep> measurements;
    std::vector<DisplacementStep> displacements;
    std::vector<RotationStep> rotations;
    /// The checked correlations, over current quadratures.
    std::vector<Combo> final_combos;
    std::vector<QuadExpr> final_nullifiers;
    bool success = false;
    /// (rows, rank) of the records' cancellable content for solver-backed protocols.
    std::optional<std::pair<std::size_t, std::size_t>> rank_info;
    std::optional<GhzFlavor> flavor;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::string> notes;
    /// Rendering shows mode m as vertex label m - 1 + label_base.
    int label_base = 1;
};

/// Displace quad(mode, kind) so that it plus `fixed` plus free multiples of `extras`
/// loses every term of exponent >= 0.
struct FeedforwardTarget {
    std::size_t mode;
    Quadrature kind;
    Combo fixed;
    std::vector<Combo> extras;
};

struct FeedforwardSolution {
    bool feasible = false;
    /// record_coeffs[t][i] multiplies records[i] for target t.
    std::vector<std::vector<double>> record_coeffs;
    std::vector<std::vector<double>> extra_coeffs;
    std::size_t rows = 0;
    std::size_t rank = 0;
    double residual = 0.0;
};

/// Least-squares solve of the exponent >= 0 cancellation equations; feasible iff the
/// residual of every target is below 1e-9. rows/rank describe the records alone.
FeedforwardSolution solve_feedforward(
    const Register &reg, const std::vector<FeedforwardTarget> &targets, const std::vector<std::size_t> &records);

/// For every chain position a, weights w with Y_a - sum_b w_ab X_b a nullifier (b ranging
/// over chain neighbours), solved without measurements.
FeedforwardSolution bs_chain_weighted_nullifiers(const Register &reg);

// ---------------------------------------------------------------------------
// Protocols. Each mutates `reg` in place and returns its transcript.

/// Chain order: position p of the chain lives on mode order[p - 1].
struct ChainContext {
    std::vector<std::size_t> order;
    static ChainContext of(std::size_t n);
    std::size_t length() const {
        return order.size();
    }
    std::size_t mode(std::size_t position) const;
};

ProtocolReport disentangle_even(Register &reg);
ProtocolReport disconnect(Register &reg, const ChainContext &ctx, std::size_t j);

struct OuterStrategy {
    bool next_neighbor = true;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;

    static OuterStrategy NextNeighbor() {
        return {};
    }
    static OuterStrategy Custom(std::vector<std::size_t> left, std::vector<std::size_t> right) {
        return {false, std::move(left), std::move(right)};
    }
};
/// The outer sets {j-2, j-3}/{k+2, k+3} (offsets {2, 3}) and {j-2, j-4, j-5}/... (offsets
/// {2, 4, 5}); nullopt when a side would leave the chain without reaching its end.
std::optional<OuterStrategy> offset_strategy(
    std::size_t n, std::size_t j, std::size_t k, const std::vector<std::size_t> &offsets);

ProtocolReport extract_pair(
    Register &reg, const ChainContext &ctx, std::size_t j, std::size_t k, const OuterStrategy &strategy);

ProtocolReport reduce_graph_to_path(Register &reg, const Graph &g, int a, int b);

ProtocolReport star_to_ghz(Register &reg, const Graph &g);

/// Measures Y of the listed vertices (the center is label 0) and solves for GHZ feed-forward
/// with total momentum and relative positions on the remaining parties.
ProtocolReport ring_star_to_ghz(Register &reg, const Graph &g, const std::vector<int> &measured);
/// Center plus every spoked ring vertex.
std::vector<int> ring_star_default_measured(const Graph &g);

/// Ten-vertex ring plus center, spokes to `spokes`.
Graph ring_with_spokes(const std::vector<int> &spokes);
/// Enumerates every spoke subset of the ten-vertex ring and keeps those on which measuring
/// Y of the center and of ring vertices 2, 4, ..., 10, followed by the fixed displacements
///   Y_1 -= 2 Y_0,  X_3 += -Y_4 + Y_6 - Y_8 + Y_10,  X_5 += Y_2 - Y_4,
///   X_7 += -Y_8 + Y_10,  X_9 += Y_2 - Y_4 + Y_6 - Y_8,
/// leaves a GHZ state (total momentum, relative positions) on the odd ring vertices.
std::vector<std::vector<int>> reconstruct_ring_star_spokes();

// ---------------------------------------------------------------------------
// Structural checks.

/// Minimal number of {X, Y} homodyne measurements leaving chain(n) fully product, over all
/// 3^n patterns, decided on the covariance engine at squeezing r.
struct PersistencyOracleResult {
    std::size_t min_count;
    std::size_t patterns;
    std::vector<std::size_t> witness;
};
PersistencyOracleResult persistency_oracle(std::size_t n, double r);

/// Columns span the nullifiers over the listed modes' quadratures, ordered (X, Y) per mode.
Eigen::MatrixXd nullifier_basis(const Register &reg, const std::vector<std::size_t> &modes);

/// After discarding `discarded`, some remaining party still has both quadratures pinned by
/// nullifiers that avoid the discarded mode.
bool tracing_witness(const Register &reg, std::size_t discarded);

/// Searches per-mode quarter turns (and mode permutations if allowed) mapping the
/// nullifier space of `a` on modes_a onto that of `b` on modes_b.
bool locally_equivalent(
    const Register &a,
    const std::vector<std::size_t> &modes_a,
    const Register &b,
    const std::vector<std::size_t> &modes_b,
    bool permute);

/// Human-readable transcript.
std::string render_report(const ProtocolReport &report);

}  // namespace cvcluster

#endif
