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

#include <map>

#include "cvcluster/protocols.h"

namespace cvcluster {

namespace {

using Key = QuadExpr::Key;

void collect_keys(const QuadExpr &e, std::map<Key, std::size_t> &rows) {
    for (const auto &[key, c] : e.raw()) {
        if (std::get<2>(key) >= 0 && !rows.contains(key)) {
            rows.emplace(key, rows.size());
        }
    }
}

void fill_column(const QuadExpr &e, const std::map<Key, std::size_t> &rows, Eigen::MatrixXd &m, Eigen::Index col) {
    for (const auto &[key, c] : e.raw()) {
        if (std::get<2>(key) >= 0) {
            m(static_cast<Eigen::Index>(rows.at(key)), col) = c;
        }
    }
}

std::size_t numeric_rank(const Eigen::MatrixXd &m) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
    cod.setThreshold(1e-10);
    return static_cast<std::size_t>(cod.rank());
}

}  // namespace

FeedforwardSolution solve_feedforward(
    const Register &reg, const std::vector<FeedforwardTarget> &targets, const std::vector<std::size_t> &records) {
    FeedforwardSolution out;
    std::vector<const QuadExpr *> observables;
    for (std::size_t i : records) {
        observables.push_back(&reg.record(RecordId{reg.id(), i}).observable);
    }

    {
        std::map<Key, std::size_t> rows;
        for (const QuadExpr *o : observables) {
            collect_keys(*o, rows);
        }
        Eigen::MatrixXd content = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(observables.size()));
        for (std::size_t i = 0; i < observables.size(); i++) {
            fill_column(*observables[i], rows, content, static_cast<Eigen::Index>(i));
        }
        out.rows = observables.size();
        out.rank = numeric_rank(content);
    }

    out.feasible = true;
    for (const FeedforwardTarget &t : targets) {
        QuadExpr base = reg.quad(t.mode, t.kind) + reg.combine(t.fixed);
        std::vector<QuadExpr> extras;
        for (const Combo &c : t.extras) {
            extras.push_back(reg.combine(c));
        }

        std::map<Key, std::size_t> rows;
        collect_keys(base, rows);
        for (const QuadExpr &e : extras) {
            collect_keys(e, rows);
        }
        for (const QuadExpr *o : observables) {
            collect_keys(*o, rows);
        }
        auto n_rows = static_cast<Eigen::Index>(rows.size());
        auto n_rec = static_cast<Eigen::Index>(observables.size());
        auto n_cols = n_rec + static_cast<Eigen::Index>(extras.size());
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_rows, n_cols);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n_rows);
        for (Eigen::Index i = 0; i < n_rec; i++) {
            fill_column(*observables[static_cast<std::size_t>(i)], rows, a, i);
        }
        for (std::size_t i = 0; i < extras.size(); i++) {
            fill_column(extras[i], rows, a, n_rec + static_cast<Eigen::Index>(i));
        }
        for (const auto &[key, c] : base.raw()) {
            if (std::get<2>(key) >= 0) {
                b(static_cast<Eigen::Index>(rows.at(key))) = -c;
            }
        }

        Eigen::VectorXd z = Eigen::VectorXd::Zero(n_cols);
        double residual = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
        if (n_cols > 0 && n_rows > 0) {
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
            cod.setThreshold(1e-10);
            z = cod.solve(b);
            residual = (a * z - b).cwiseAbs().maxCoeff();
        }
        // Clean round-off so coefficients print as the exact values they represent.
        for (Eigen::Index i = 0; i < z.size(); i++) {
            if (std::abs(z(i)) < kPruneTolerance) {
                z(i) = 0.0;
            }
        }
        out.residual = std::max(out.residual, residual);
        if (residual > kNullifierTolerance) {
            out.feasible = false;
        }
        out.record_coeffs.emplace_back(z.data(), z.data() + n_rec);
        out.extra_coeffs.emplace_back(z.data() + n_rec, z.data() + n_cols);
    }
    return out;
}

}  // namespace cvcluster
