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

#ifndef CVCLUSTER_COVARIANCE_H
#define CVCLUSTER_COVARIANCE_H

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cvcluster/quadrature.h"

namespace cvcluster {

/// Gaussian state over quadratures ordered (X_1, Y_1, ..., X_n, Y_n), vacuum variance 1/2.
/// Modes are 1-based in every public call.
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);
    static GaussianState vacuum(std::size_t n);

    std::size_t num_modes() const {
        return static_cast<std::size_t>(mean_.size() / 2);
    }
    const Eigen::VectorXd &mean() const {
        return mean_;
    }
    const Eigen::MatrixXd &cov() const {
        return cov_;
    }
    Eigen::VectorXd &mutable_mean() {
        return mean_;
    }
    Eigen::MatrixXd &mutable_cov() {
        return cov_;
    }

    /// Row/column of a quadrature; throws InvalidIndex.
    std::size_t index(std::size_t mode, Quadrature kind) const;

   private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
};

namespace gate {
struct Squeeze {
    std::size_t mode;
    double r;
    SqueezeDirection direction = SqueezeDirection::MomentumSqueezed;
};
struct Kerr {
    std::size_t l, k;
    double gain = 1.0;
};
struct Rotate {
    std::size_t mode;
    double theta;
};
struct Beamsplit {
    std::size_t l, k;
    double transmittance = 0.5;
};
}  // namespace gate
using Gate = std::variant<gate::Squeeze, gate::Kerr, gate::Rotate, gate::Beamsplit>;

/// Block-diagonal symplectic form for n modes.
Eigen::MatrixXd symplectic_form(std::size_t n);

/// Dense 2n x 2n matrix of a gate.
Eigen::MatrixXd gate_matrix(const Gate &g, std::size_t n);

/// mean <- S mean, cov <- S cov S^T. Touches only the affected rows and columns.
GaussianState apply_gate(const GaussianState &s, const Gate &g);
void apply_gate_in_place(GaussianState &s, const Gate &g);

struct HomodyneResult {
    GaussianState state;
    double outcome;
    double prior_mean;
    double prior_var;
    /// index_map[old_mode - 1] = new mode, or nullopt for the measured mode.
    std::vector<std::optional<std::size_t>> index_map;
};

/// Conditions on a quadrature measurement and drops the mode. The conditional
/// covariance is the Schur complement A - b b^T / v. Without an outcome one is drawn
/// from N(prior_mean, prior_var) using `seed`; supplying neither is an error.
HomodyneResult homodyne(
    const GaussianState &s,
    std::size_t mode,
    Quadrature kind,
    std::optional<double> outcome,
    std::optional<std::uint64_t> seed = std::nullopt);

/// Outcome-averaged classical feed-forward: target += coeff * source, applied as the linear
/// map I + coeff e_t e_s^T. Matches the ledger's displace_with on unconditional statistics
/// when `source` is a measured quadrature that no later gate touches.
GaussianState feed_forward(
    const GaussianState &s,
    std::size_t target_mode,
    Quadrature target_kind,
    double coeff,
    std::size_t source_mode,
    Quadrature source_kind);

void feed_forward_in_place(
    GaussianState &s,
    std::size_t target_mode,
    Quadrature target_kind,
    double coeff,
    std::size_t source_mode,
    Quadrature source_kind);

/// Partial trace onto the listed modes (in the given order).
GaussianState reduce(const GaussianState &s, const std::vector<std::size_t> &modes);

double variance_of(const GaussianState &s, const Combo &combo);

/// Symplectic eigenvalues (each listed once, ascending) of a positive-definite covariance.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov);

/// True iff min symplectic eigenvalue >= 1/2 - tol and cov is symmetric to 1e-12.
bool satisfies_uncertainty(const GaussianState &s, double tol = 1e-9);

/// Minimum symplectic eigenvalue of the partially transposed two-mode reduction
/// (Y of `b` sign-flipped). Values below 1/2 certify entanglement.
double ppt_min_symplectic_eig(const GaussianState &s, std::size_t a, std::size_t b);

/// Var(X_a + gx X_b) + Var(Y_a - gy Y_b); separable states give >= 2 at gains (1, 1).
double duan_sum(const GaussianState &s, std::size_t a, std::size_t b, double gx, double gy);

}  // namespace cvcluster

#endif
