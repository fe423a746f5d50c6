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

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvcluster/protocols.h"

namespace cvcluster {

Register build_graph_state(const Graph &g) {
    Register reg = Register::vacuum(g.num_vertices());
    for (std::size_t m = 1; m <= g.num_vertices(); m++) {
        reg.squeeze(m, SqueezeDirection::MomentumSqueezed);
    }
    for (auto [a, b] : g.edges()) {
        reg.kerr_couple(g.mode_of(a), g.mode_of(b), 1.0);
    }
    return reg;
}

GaussianState build_graph_state(const Graph &g, double r) {
    GaussianState s = GaussianState::vacuum(g.num_vertices());
    for (std::size_t m = 1; m <= g.num_vertices(); m++) {
        apply_gate_in_place(s, gate::Squeeze{m, r, SqueezeDirection::MomentumSqueezed});
    }
    for (auto [a, b] : g.edges()) {
        apply_gate_in_place(s, gate::Kerr{g.mode_of(a), g.mode_of(b), 1.0});
    }
    return s;
}

bool is_graph_state_of(const Register &reg, const Graph &g) {
    if (reg.num_modes() != g.num_vertices()) {
        return false;
    }
    Register expected = build_graph_state(g);
    for (std::size_t m = 1; m <= reg.num_modes(); m++) {
        if (!reg.is_active(m) || !reg.x(m).approx_equal(expected.x(m)) || !reg.y(m).approx_equal(expected.y(m))) {
            return false;
        }
    }
    return true;
}

std::string BsLayout::describe() const {
    std::ostringstream out;
    out << (reverse_order ? "reverse" : "forward") << " cascade of " << (swapped ? "bs(i+1,i)" : "bs(i,i+1)");
    auto rot = [&](const char *when, const std::optional<BsStepRotation> &r) {
        if (r) {
            out << ", " << when << ": " << (r->quarter_turns > 0 ? "+" : "") << 90 * r->quarter_turns << " deg on mode "
                << (r->which == 0 ? "i" : "i+1");
        }
    };
    rot("before", before);
    rot("after", after);
    return out.str();
}

BsLayout frozen_bs_layout() {
    return BsLayout{false, false, std::nullopt, BsStepRotation{1, -1}};
}

namespace {

template <typename Fn>
void for_each_bs_step(std::size_t n, const BsLayout &layout, Fn &&fn) {
    for (std::size_t step = 0; step + 1 < n; step++) {
        std::size_t i = layout.reverse_order ? n - 1 - step : step + 1;
        fn(i);
    }
}

}  // namespace

Register build_bs_chain(std::size_t n, const BsLayout &layout) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidSize, "beamsplitter chain needs n >= 2");
    }
    Register reg = Register::vacuum(n);
    reg.squeeze(1, SqueezeDirection::MomentumSqueezed);
    for (std::size_t m = 2; m <= n; m++) {
        reg.squeeze(m, SqueezeDirection::PositionSqueezed);
    }
    for_each_bs_step(n, layout, [&](std::size_t i) {
        if (layout.before) {
            reg.rotate_quarter_turns(i + layout.before->which, layout.before->quarter_turns);
        }
        if (layout.swapped) {
            reg.beamsplit(i + 1, i, 0.5);
        } else {
            reg.beamsplit(i, i + 1, 0.5);
        }
        if (layout.after) {
            reg.rotate_quarter_turns(i + layout.after->which, layout.after->quarter_turns);
        }
    });
    return reg;
}

GaussianState build_bs_chain(std::size_t n, double r) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidSize, "beamsplitter chain needs n >= 2");
    }
    GaussianState s = GaussianState::vacuum(n);
    apply_gate_in_place(s, gate::Squeeze{1, r, SqueezeDirection::MomentumSqueezed});
    for (std::size_t m = 2; m <= n; m++) {
        apply_gate_in_place(s, gate::Squeeze{m, r, SqueezeDirection::PositionSqueezed});
    }
    for (std::size_t i = 1; i < n; i++) {
        apply_gate_in_place(s, gate::Beamsplit{i, i + 1, 0.5});
        apply_gate_in_place(s, gate::Rotate{i + 1, -std::numbers::pi / 2});
    }
    return s;
}

std::vector<Combo> bs_chain_n4_correlations() {
    const double r2 = std::numbers::sqrt2;
    using Q = Quadrature;
    return {
        {{r2, 1, Q::X}, {1, 2, Q::X}, {r2, 3, Q::X}},
        {{1, 3, Q::X}, {1, 4, Q::X}},
        {{1, 1, Q::Y}, {-r2, 2, Q::Y}},
        {{r2, 2, Q::Y}, {-1, 3, Q::Y}, {1, 4, Q::Y}},
    };
}

bool bs_chain_n4_holds(const Register &reg) {
    if (reg.num_modes() != 4) {
        return false;
    }
    Register copy = reg;
    copy.rotate_minus_90(2);
    copy.rotate_minus_90(4);
    for (const Combo &c : bs_chain_n4_correlations()) {
        if (!is_nullifier(copy.combine(c))) {
            return false;
        }
    }
    return true;
}

std::vector<BsLayout> reconstruct_bs_layout() {
    std::vector<std::optional<BsStepRotation>> rotations{std::nullopt};
    for (int which : {0, 1}) {
        for (int q : {-1, 1}) {
            rotations.push_back(BsStepRotation{which, q});
        }
    }
    std::vector<BsLayout> hits;
    for (bool reverse : {false, true}) {
        for (bool swapped : {false, true}) {
            for (const auto &before : rotations) {
                for (const auto &after : rotations) {
                    BsLayout layout{reverse, swapped, before, after};
                    if (bs_chain_n4_holds(build_bs_chain(4, layout))) {
                        hits.push_back(layout);
                    }
                }
            }
        }
    }
    return hits;
}

FeedforwardSolution bs_chain_weighted_nullifiers(const Register &reg) {
    std::vector<FeedforwardTarget> targets;
    std::size_t n = reg.num_modes();
    for (std::size_t a = 1; a <= n; a++) {
        FeedforwardTarget t{a, Quadrature::Y, {}, {}};
        for (std::size_t b : {a - 1, a + 1}) {
            if (b >= 1 && b <= n) {
                t.extras.push_back({{-1.0, b, Quadrature::X}});
            }
        }
        targets.push_back(std::move(t));
    }
    return solve_feedforward(reg, targets, {});
}

Register build_ghz(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidSize, "GHZ state needs n >= 2");
    }
    Register reg = Register::vacuum(n);
    reg.squeeze(1, SqueezeDirection::PositionSqueezed);
    for (std::size_t m = 2; m <= n; m++) {
        reg.squeeze(m, SqueezeDirection::MomentumSqueezed);
    }
    for (std::size_t k = 1; k < n; k++) {
        reg.beamsplit(k, k + 1, 1.0 / static_cast<double>(n - k + 1));
    }
    return reg;
}

GaussianState build_ghz(std::size_t n, double r) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidSize, "GHZ state needs n >= 2");
    }
    GaussianState s = GaussianState::vacuum(n);
    apply_gate_in_place(s, gate::Squeeze{1, r, SqueezeDirection::PositionSqueezed});
    for (std::size_t m = 2; m <= n; m++) {
        apply_gate_in_place(s, gate::Squeeze{m, r, SqueezeDirection::MomentumSqueezed});
    }
    for (std::size_t k = 1; k < n; k++) {
        apply_gate_in_place(s, gate::Beamsplit{k, k + 1, 1.0 / static_cast<double>(n - k + 1)});
    }
    return s;
}

GaussianState mirror_to_covariance(const Register &reg, double r) {
    GaussianState s = GaussianState::vacuum(reg.num_modes());
    std::vector<op::Measure> measured;
    for (const Operation &o : reg.history()) {
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, op::Squeeze>) {
                    apply_gate_in_place(s, gate::Squeeze{v.mode, r, v.direction});
                } else if constexpr (std::is_same_v<T, op::Kerr>) {
                    apply_gate_in_place(s, gate::Kerr{v.l, v.k, v.gain});
                } else if constexpr (std::is_same_v<T, op::Rotate>) {
                    apply_gate_in_place(s, gate::Rotate{v.mode, v.theta});
                } else if constexpr (std::is_same_v<T, op::Beamsplit>) {
                    apply_gate_in_place(s, gate::Beamsplit{v.l, v.k, v.transmittance});
                } else if constexpr (std::is_same_v<T, op::Measure>) {
                    measured.push_back(v);
                } else {
                    const op::Measure &src = measured.at(v.record_index);
                    feed_forward_in_place(s, v.mode, v.kind, v.coeff, src.mode, src.kind);
                }
            },
            o);
    }
    return s;
}

double cross_engine_gap(const Register &reg, const std::vector<Combo> &combos, const std::vector<double> &rs) {
    std::vector<QuadExpr> exprs;
    exprs.reserve(combos.size());
    for (const Combo &c : combos) {
        exprs.push_back(reg.combine(c));
    }
    double worst = 0;
    for (double r : rs) {
        GaussianState s = mirror_to_covariance(reg, r);
        for (std::size_t i = 0; i < combos.size(); i++) {
            worst = std::max(worst, std::abs(variance_of(s, combos[i]) - variance_formula(exprs[i], r)));
        }
    }
    return worst;
}

double symplectic_defect(const Register &reg, double r) {
    double worst = 0;
    auto check = [&](const Gate &g, std::size_t n) {
        Eigen::MatrixXd S = gate_matrix(g, n);
        Eigen::MatrixXd omega = symplectic_form(n);
        worst = std::max(worst, (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff());
    };
    // Gates are local, so each is checked on the one or two modes it touches.
    for (const Operation &o : reg.history()) {
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, op::Squeeze>) {
                    check(gate::Squeeze{1, r, v.direction}, 1);
                } else if constexpr (std::is_same_v<T, op::Kerr>) {
                    check(gate::Kerr{1, 2, v.gain}, 2);
                } else if constexpr (std::is_same_v<T, op::Rotate>) {
                    check(gate::Rotate{1, v.theta}, 1);
                } else if constexpr (std::is_same_v<T, op::Beamsplit>) {
                    check(gate::Beamsplit{1, 2, v.transmittance}, 2);
                }
            },
            o);
    }
    return worst;
}

}  // namespace cvcluster
