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

#include "cvcluster/covariance.h"

#include <gtest/gtest.h>

#include <cmath>

#include "cvcluster/graph.h"
#include "cvcluster/protocols.h"

namespace cvcluster {
namespace {

using Q = Quadrature;

TEST(CovarianceTest, VacuumIsHalfIdentity) {
    GaussianState s = GaussianState::vacuum(3);
    EXPECT_TRUE(s.cov().isApprox(0.5 * Eigen::MatrixXd::Identity(6, 6)));
    EXPECT_TRUE(satisfies_uncertainty(s));
    EXPECT_NEAR(symplectic_eigenvalues(s.cov()).minCoeff(), 0.5, 1e-14);
}

TEST(CovarianceTest, SqueezedVariances) {
    GaussianState s = apply_gate(GaussianState::vacuum(1), gate::Squeeze{1, 1.0});
    EXPECT_NEAR(variance_of(s, {{1, 1, Q::X}}), 0.5 * std::exp(2.0), 1e-12);
    EXPECT_NEAR(variance_of(s, {{1, 1, Q::Y}}), 0.5 * std::exp(-2.0), 1e-12);
    EXPECT_NEAR(symplectic_eigenvalues(s.cov())(0), 0.5, 1e-12);
}

TEST(CovarianceTest, GatesAreSymplectic) {
    const std::size_t n = 3;
    Eigen::MatrixXd omega = symplectic_form(n);
    std::vector<Gate> gates{
        gate::Squeeze{1, 0.7}, gate::Squeeze{2, 1.3, SqueezeDirection::PositionSqueezed}, gate::Kerr{1, 3, -0.4},
        gate::Rotate{2, 0.9},  gate::Beamsplit{2, 3, 0.2},
    };
    for (const Gate &g : gates) {
        Eigen::MatrixXd S = gate_matrix(g, n);
        EXPECT_LE((S * omega * S.transpose() - omega).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(CovarianceTest, InPlaceMatchesDenseMatrix) {
    GaussianState s = build_graph_state(Graph::chain(3), 0.6);
    Gate g = gate::Beamsplit{1, 3, 0.35};
    Eigen::MatrixXd S = gate_matrix(g, 3);
    GaussianState t = apply_gate(s, g);
    EXPECT_LE((t.cov() - S * s.cov() * S.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CovarianceTest, HomodyneIsSchurComplement) {
    GaussianState s = build_graph_state(Graph::chain(2), 1.0);
    HomodyneResult h = homodyne(s, 2, Q::X, 0.3);
    EXPECT_EQ(h.state.num_modes(), 1u);
    EXPECT_FALSE(h.index_map[1].has_value());
    const Eigen::MatrixXd &c = s.cov();
    std::size_t xi = s.index(2, Q::X);
    double expected = c(1, 1) - c(1, xi) * c(1, xi) / c(xi, xi);
    EXPECT_NEAR(h.state.cov()(1, 1), expected, 1e-12);
    EXPECT_NEAR(h.state.mean()(1), c(1, xi) / c(xi, xi) * 0.3, 1e-12);
    EXPECT_DOUBLE_EQ(h.outcome, 0.3);
}

TEST(CovarianceTest, SeededHomodyneIsDeterministic) {
    GaussianState s = build_graph_state(Graph::chain(3), 0.5);
    double a = homodyne(s, 2, Q::X, std::nullopt, 11).outcome;
    double b = homodyne(s, 2, Q::X, std::nullopt, 11).outcome;
    EXPECT_EQ(a, b);
    EXPECT_THROW(homodyne(s, 2, Q::X, std::nullopt), Error);
}

TEST(CovarianceTest, FeedForwardMatchesLedgerAverages) {
    Register reg = build_graph_state(Graph::chain(3));
    RecordId id = reg.measure(2, Q::X).id;
    reg.displace_with(1, Q::Y, -1.0, id);
    reg.displace_with(3, Q::Y, -1.0, id);
    EXPECT_LE(cross_engine_gap(reg, {{{1, 1, Q::Y}}, {{1, 3, Q::Y}}, {{1, 1, Q::X}}}, {0.0, 0.5, 1.0, 2.0}), 1e-12);
}

TEST(CovarianceTest, ReduceKeepsRequestedOrder) {
    GaussianState s = build_graph_state(Graph::chain(3), 0.4);
    GaussianState r = reduce(s, {3, 1});
    EXPECT_DOUBLE_EQ(r.cov()(0, 0), s.cov()(4, 4));
    EXPECT_DOUBLE_EQ(r.cov()(0, 2), s.cov()(4, 0));
}

TEST(CovarianceTest, EntanglementWitnesses) {
    GaussianState epr = build_ghz(2, 1.0);
    EXPECT_LT(ppt_min_symplectic_eig(epr, 1, 2), 0.5);
    EXPECT_LT(duan_sum(epr, 1, 2, 1.0, 1.0), 2.0);
    GaussianState vac = GaussianState::vacuum(2);
    EXPECT_NEAR(ppt_min_symplectic_eig(vac, 1, 2), 0.5, 1e-12);
    EXPECT_NEAR(duan_sum(vac, 1, 2, 1.0, 1.0), 2.0, 1e-12);
}

TEST(CovarianceTest, DetectsUnphysicalCovariance) {
    Eigen::MatrixXd cov = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    cov(0, 0) = 0.1;
    EXPECT_FALSE(satisfies_uncertainty(GaussianState(Eigen::VectorXd::Zero(2), cov)));
}

TEST(CovarianceTest, Errors) {
    GaussianState s = GaussianState::vacuum(2);
    EXPECT_THROW(apply_gate(s, gate::Kerr{1, 1}), Error);
    EXPECT_THROW(apply_gate(s, gate::Beamsplit{1, 2, 0.0}), Error);
    EXPECT_THROW(apply_gate(s, gate::Squeeze{3, 1.0}), Error);
    EXPECT_THROW(GaussianState(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3)), Error);
}

}  // namespace
}  // namespace cvcluster
