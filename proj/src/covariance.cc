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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace cvcluster {

namespace {

/// A gate acts as new[idx] = local * old[idx] on a few quadrature indices.
struct LocalAction {
    std::vector<std::size_t> idx;
    Eigen::MatrixXd local;
};

void require_mode(std::size_t mode, std::size_t n) {
    if (mode == 0 || mode > n) {
        throw Error(ErrorCode::InvalidIndex, "mode " + std::to_string(mode) + " outside 1.." + std::to_string(n));
    }
}

std::size_t qi(std::size_t mode, Quadrature kind) {
    return 2 * (mode - 1) + (kind == Quadrature::Y ? 1 : 0);
}

LocalAction local_action(const Gate &g, std::size_t n) {
    return std::visit(
        [n](const auto &v) -> LocalAction {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, gate::Squeeze>) {
                require_mode(v.mode, n);
                double d = v.direction == SqueezeDirection::MomentumSqueezed ? v.r : -v.r;
                Eigen::MatrixXd L(2, 2);
                L << std::exp(d), 0, 0, std::exp(-d);
                return {{qi(v.mode, Quadrature::X), qi(v.mode, Quadrature::Y)}, L};
            } else if constexpr (std::is_same_v<T, gate::Rotate>) {
                require_mode(v.mode, n);
                double c = std::cos(v.theta), s = std::sin(v.theta);
                Eigen::MatrixXd L(2, 2);
                L << c, s, -s, c;
                return {{qi(v.mode, Quadrature::X), qi(v.mode, Quadrature::Y)}, L};
            } else {
                require_mode(v.l, n);
                require_mode(v.k, n);
                if (v.l == v.k) {
                    throw Error(ErrorCode::SelfInteraction, "two-mode gate needs distinct modes");
                }
                // Local order: x_l, y_l, x_k, y_k.
                Eigen::MatrixXd L = Eigen::MatrixXd::Identity(4, 4);
                if constexpr (std::is_same_v<T, gate::Kerr>) {
                    L(1, 2) = v.gain;
                    L(3, 0) = v.gain;
                } else {
                    if (!(v.transmittance > 0.0 && v.transmittance < 1.0)) {
                        throw Error(ErrorCode::Domain, "beamsplitter transmittance must lie in (0, 1)");
                    }
                    double s = std::sqrt(v.transmittance), c = std::sqrt(1.0 - v.transmittance);
                    L << s, 0, c, 0,
                         0, s, 0, c,
                         c, 0, -s, 0,
                         0, c, 0, -s;
                }
                return {
                    {qi(v.l, Quadrature::X), qi(v.l, Quadrature::Y), qi(v.k, Quadrature::X), qi(v.k, Quadrature::Y)},
                    L};
            }
        },
        g);
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() % 2 != 0 || cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
        throw Error(ErrorCode::InvalidSize, "mean/covariance dimensions must be 2n and 2n x 2n");
    }
}

GaussianState GaussianState::vacuum(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidSize, "state needs at least one mode");
    }
    auto dim = static_cast<Eigen::Index>(2 * n);
    return GaussianState(Eigen::VectorXd::Zero(dim), 0.5 * Eigen::MatrixXd::Identity(dim, dim));
}

std::size_t GaussianState::index(std::size_t mode, Quadrature kind) const {
    require_mode(mode, num_modes());
    return qi(mode, kind);
}

Eigen::MatrixXd symplectic_form(std::size_t n) {
    auto dim = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index m = 0; m < dim; m += 2) {
        omega(m, m + 1) = 1;
        omega(m + 1, m) = -1;
    }
    return omega;
}

Eigen::MatrixXd gate_matrix(const Gate &g, std::size_t n) {
    LocalAction a = local_action(g, n);
    auto dim = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(dim, dim);
    for (std::size_t i = 0; i < a.idx.size(); i++) {
        for (std::size_t j = 0; j < a.idx.size(); j++) {
            S(a.idx[i], a.idx[j]) = a.local(i, j);
        }
    }
    return S;
}

void apply_gate_in_place(GaussianState &s, const Gate &g) {
    LocalAction a = local_action(g, s.num_modes());
    auto k = static_cast<Eigen::Index>(a.idx.size());
    Eigen::MatrixXd &cov = s.mutable_cov();
    Eigen::VectorXd &mean = s.mutable_mean();
    Eigen::VectorXd m(k);
    Eigen::MatrixXd rows(k, cov.cols());
    for (Eigen::Index i = 0; i < k; i++) {
        m(i) = mean(a.idx[i]);
        rows.row(i) = cov.row(a.idx[i]);
    }
    Eigen::VectorXd new_m = a.local * m;
    Eigen::MatrixXd new_rows = a.local * rows;
    for (Eigen::Index i = 0; i < k; i++) {
        mean(a.idx[i]) = new_m(i);
        cov.row(a.idx[i]) = new_rows.row(i);
    }
    Eigen::MatrixXd cols(cov.rows(), k);
    for (Eigen::Index i = 0; i < k; i++) {
        cols.col(i) = cov.col(a.idx[i]);
    }
    Eigen::MatrixXd new_cols = cols * a.local.transpose();
    for (Eigen::Index i = 0; i < k; i++) {
        cov.col(a.idx[i]) = new_cols.col(i);
    }
}

GaussianState apply_gate(const GaussianState &s, const Gate &g) {
    GaussianState out = s;
    apply_gate_in_place(out, g);
    return out;
}

HomodyneResult homodyne(
    const GaussianState &s,
    std::size_t mode,
    Quadrature kind,
    std::optional<double> outcome,
    std::optional<std::uint64_t> seed) {
    std::size_t i = s.index(mode, kind);
    double v = s.cov()(i, i);
    if (v <= 1e-15) {
        throw Error(ErrorCode::SingularMeasurement, "measured quadrature has vanishing variance");
    }
    double mu = s.mean()(i);
    double value;
    if (outcome) {
        value = *outcome;
    } else if (seed) {
        std::mt19937_64 rng(*seed);
        std::normal_distribution<double> dist(mu, std::sqrt(v));
        value = dist(rng);
    } else {
        throw Error(ErrorCode::Domain, "homodyne needs an outcome or a seed to sample one");
    }

    std::size_t n = s.num_modes();
    std::vector<Eigen::Index> keep;
    HomodyneResult result{GaussianState(Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)), value, mu, v, {}};
    result.index_map.resize(n);
    std::size_t next = 1;
    for (std::size_t m = 1; m <= n; m++) {
        if (m == mode) {
            continue;
        }
        result.index_map[m - 1] = next++;
        keep.push_back(static_cast<Eigen::Index>(qi(m, Quadrature::X)));
        keep.push_back(static_cast<Eigen::Index>(qi(m, Quadrature::Y)));
    }
    auto r = static_cast<Eigen::Index>(keep.size());
    Eigen::VectorXd b(r), mean(r);
    Eigen::MatrixXd A(r, r);
    for (Eigen::Index p = 0; p < r; p++) {
        b(p) = s.cov()(keep[p], i);
        mean(p) = s.mean()(keep[p]);
        for (Eigen::Index q = 0; q < r; q++) {
            A(p, q) = s.cov()(keep[p], keep[q]);
        }
    }
    if (r == 0) {
        return result;
    }
    A -= b * b.transpose() / v;
    A = 0.5 * (A + A.transpose());
    mean += b * ((value - mu) / v);
    result.state = GaussianState(std::move(mean), std::move(A));
    return result;
}

void feed_forward_in_place(
    GaussianState &s,
    std::size_t target_mode,
    Quadrature target_kind,
    double coeff,
    std::size_t source_mode,
    Quadrature source_kind) {
    std::size_t t = s.index(target_mode, target_kind);
    std::size_t src = s.index(source_mode, source_kind);
    if (t == src) {
        throw Error(ErrorCode::Domain, "feed-forward source and target coincide");
    }
    Eigen::MatrixXd &c = s.mutable_cov();
    s.mutable_mean()(t) += coeff * s.mean()(src);
    c.row(t) += coeff * c.row(src);
    c.col(t) += coeff * c.col(src);
}

GaussianState feed_forward(
    const GaussianState &s,
    std::size_t target_mode,
    Quadrature target_kind,
    double coeff,
    std::size_t source_mode,
    Quadrature source_kind) {
    GaussianState out = s;
    feed_forward_in_place(out, target_mode, target_kind, coeff, source_mode, source_kind);
    return out;
}

GaussianState reduce(const GaussianState &s, const std::vector<std::size_t> &modes) {
    if (modes.empty()) {
        throw Error(ErrorCode::InvalidSize, "reduce needs at least one mode");
    }
    std::vector<Eigen::Index> idx;
    for (std::size_t m : modes) {
        idx.push_back(static_cast<Eigen::Index>(s.index(m, Quadrature::X)));
        idx.push_back(static_cast<Eigen::Index>(s.index(m, Quadrature::Y)));
    }
    auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXd mean(k);
    Eigen::MatrixXd cov(k, k);
    for (Eigen::Index p = 0; p < k; p++) {
        mean(p) = s.mean()(idx[p]);
        for (Eigen::Index q = 0; q < k; q++) {
            cov(p, q) = s.cov()(idx[p], idx[q]);
        }
    }
    return GaussianState(std::move(mean), std::move(cov));
}

double variance_of(const GaussianState &s, const Combo &combo) {
    std::vector<std::pair<std::size_t, double>> w;
    for (const auto &t : combo) {
        w.emplace_back(s.index(t.mode, t.kind), t.coeff);
    }
    double v = 0;
    for (const auto &[i, a] : w) {
        for (const auto &[j, b] : w) {
            v += a * b * s.cov()(i, j);
        }
    }
    return v;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::Domain, "covariance matrix is not positive definite");
    }
    Eigen::MatrixXd L = llt.matrixL();
    std::size_t n = static_cast<std::size_t>(cov.rows() / 2);
    // L^T Omega L is antisymmetric with eigenvalues +-i nu.
    Eigen::MatrixXd M = L.transpose() * symplectic_form(n) * L;
    // -M^2 = M^T M is symmetric positive semidefinite with eigenvalues nu^2, twice each.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M.transpose() * M, Eigen::EigenvaluesOnly);
    std::vector<double> vals;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); i++) {
        vals.push_back(std::sqrt(std::max(0.0, eig.eigenvalues()(i))));
    }
    std::sort(vals.begin(), vals.end());
    Eigen::VectorXd nu(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; i++) {
        nu(static_cast<Eigen::Index>(i)) = 0.5 * (vals[2 * i] + vals[2 * i + 1]);
    }
    return nu;
}

bool satisfies_uncertainty(const GaussianState &s, double tol) {
    const Eigen::MatrixXd &c = s.cov();
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff())) {
        return false;
    }
    try {
        return symplectic_eigenvalues(c).minCoeff() >= 0.5 - tol;
    } catch (const Error &) {
        return false;
    }
}

double ppt_min_symplectic_eig(const GaussianState &s, std::size_t a, std::size_t b) {
    if (a == b) {
        throw Error(ErrorCode::Domain, "partial transpose needs two distinct modes");
    }
    GaussianState two = reduce(s, {a, b});
    Eigen::MatrixXd c = two.cov();
    c.row(3) *= -1;
    c.col(3) *= -1;
    return symplectic_eigenvalues(c).minCoeff();
}

double duan_sum(const GaussianState &s, std::size_t a, std::size_t b, double gx, double gy) {
    if (a == b) {
        throw Error(ErrorCode::Domain, "duan_sum needs two distinct modes");
    }
    return variance_of(s, {{1.0, a, Quadrature::X}, {gx, b, Quadrature::X}}) +
           variance_of(s, {{1.0, a, Quadrature::Y}, {-gy, b, Quadrature::Y}});
}

}  // namespace cvcluster
