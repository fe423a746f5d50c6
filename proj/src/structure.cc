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
#include <numeric>
#include <sstream>

#include "cvcluster/protocols.h"

namespace cvcluster {

namespace {

bool is_block_diagonal(const Eigen::MatrixXd &cov, double tol) {
    Eigen::Index n = cov.rows() / 2;
    for (Eigen::Index a = 0; a < n; a++) {
        for (Eigen::Index b = a + 1; b < n; b++) {
            if (cov.block(2 * a, 2 * b, 2, 2).cwiseAbs().maxCoeff() > tol) {
                return false;
            }
        }
    }
    return true;
}

std::size_t rank_of(const Eigen::MatrixXd &m) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto &sv = svd.singularValues();
    return static_cast<std::size_t>((sv.array() > 1e-9).count());
}

}  // namespace

PersistencyOracleResult persistency_oracle(std::size_t n, double r) {
    if (n < 1 || n > 10) {
        throw Error(ErrorCode::InvalidSize, "persistency oracle runs for 1 <= n <= 10");
    }
    GaussianState base = build_graph_state(Graph::chain(n), r);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; i++) {
        total *= 3;
    }
    // Patterns are digit strings over {none, X, Y}; walk them by measurement count.
    std::vector<std::vector<std::size_t>> by_count(n + 1);
    for (std::size_t code = 0; code < total; code++) {
        std::size_t c = code, count = 0;
        for (std::size_t i = 0; i < n; i++, c /= 3) {
            count += c % 3 != 0;
        }
        by_count[count].push_back(code);
    }
    PersistencyOracleResult out{0, 0, {}};
    for (std::size_t count = 0; count <= n; count++) {
        for (std::size_t code : by_count[count]) {
            out.patterns++;
            std::vector<std::size_t> digits(n);
            std::size_t c = code;
            for (std::size_t i = 0; i < n; i++, c /= 3) {
                digits[i] = c % 3;
            }
            GaussianState s = base;
            // Highest modes first, so the remaining indices never shift.
            for (std::size_t m = n; m >= 1; m--) {
                if (digits[m - 1] != 0) {
                    s = homodyne(s, m, digits[m - 1] == 1 ? Quadrature::X : Quadrature::Y, 0.0).state;
                }
            }
            if (is_block_diagonal(s.cov(), 1e-9)) {
                out.min_count = count;
                out.witness = digits;
                return out;
            }
        }
    }
    return out;
}

Eigen::MatrixXd nullifier_basis(const Register &reg, const std::vector<std::size_t> &modes) {
    std::map<QuadExpr::Key, Eigen::Index> rows;
    std::vector<const QuadExpr *> cols;
    for (std::size_t m : modes) {
        cols.push_back(&reg.x(m));
        cols.push_back(&reg.y(m));
    }
    for (const QuadExpr *e : cols) {
        for (const auto &[key, c] : e->raw()) {
            if (std::get<2>(key) >= 0 && !rows.contains(key)) {
                rows.emplace(key, static_cast<Eigen::Index>(rows.size()));
            }
        }
    }
    auto n_cols = static_cast<Eigen::Index>(cols.size());
    if (rows.empty()) {
        return Eigen::MatrixXd::Identity(n_cols, n_cols);
    }
    Eigen::MatrixXd content = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), n_cols);
    for (Eigen::Index j = 0; j < n_cols; j++) {
        for (const auto &[key, c] : cols[static_cast<std::size_t>(j)]->raw()) {
            if (std::get<2>(key) >= 0) {
                content(rows.at(key), j) = c;
            }
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(content, Eigen::ComputeFullV);
    auto rank = static_cast<Eigen::Index>((svd.singularValues().array() > 1e-9).count());
    return svd.matrixV().rightCols(n_cols - rank);
}

bool tracing_witness(const Register &reg, std::size_t discarded) {
    std::vector<std::size_t> kept;
    for (std::size_t m : reg.active_modes()) {
        if (m != discarded) {
            kept.push_back(m);
        }
    }
    Eigen::MatrixXd basis = nullifier_basis(reg, kept);
    for (std::size_t i = 0; i < kept.size(); i++) {
        if (rank_of(basis.middleRows(static_cast<Eigen::Index>(2 * i), 2)) == 2) {
            return true;
        }
    }
    return false;
}

bool locally_equivalent(
    const Register &a,
    const std::vector<std::size_t> &modes_a,
    const Register &b,
    const std::vector<std::size_t> &modes_b,
    bool permute) {
    if (modes_a.size() != modes_b.size()) {
        return false;
    }
    std::size_t n = modes_a.size();
    Eigen::MatrixXd na = nullifier_basis(a, modes_a);
    Eigen::MatrixXd nb = nullifier_basis(b, modes_b);
    if (na.cols() != nb.cols()) {
        return false;
    }
    std::size_t rank_b = rank_of(nb);
    // Rotating mode i by q quarter turns maps a nullifier's (x, y) coefficients by R(q).
    static const double kTurn[4][2][2] = {
        {{1, 0}, {0, 1}},
        {{0, 1}, {-1, 0}},
        {{-1, 0}, {0, -1}},
        {{0, -1}, {1, 0}},
    };
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t turn_codes = std::size_t{1} << (2 * n);
    Eigen::MatrixXd joined(static_cast<Eigen::Index>(2 * n), na.cols() + nb.cols());
    joined.rightCols(nb.cols()) = nb;
    do {
        for (std::size_t code = 0; code < turn_codes; code++) {
            for (std::size_t i = 0; i < n; i++) {
                std::size_t q = (code >> (2 * i)) & 3;
                auto src = static_cast<Eigen::Index>(2 * i);
                auto dst = static_cast<Eigen::Index>(2 * perm[i]);
                for (int row = 0; row < 2; row++) {
                    joined.row(dst + row).head(na.cols()) =
                        kTurn[q][row][0] * na.row(src) + kTurn[q][row][1] * na.row(src + 1);
                }
            }
            if (rank_of(joined) == rank_b) {
                return true;
            }
        }
    } while (permute && std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::string render_report(const ProtocolReport &report) {
    auto label = [&](std::size_t mode) {
        return static_cast<int>(mode) - 1 + report.label_base;
    };
    auto relabel = [&](Combo c) {
        for (auto &t : c) {
            t.mode = static_cast<std::size_t>(label(t.mode));
        }
        return combo_to_string(c);
    };
    std::ostringstream out;
    out << "protocol: " << report.protocol << "\n";
    out << "success: " << (report.success ? "yes" : "no") << "\n";
    if (report.flavor) {
        out << "ghz flavor: " << flavor_name(*report.flavor) << "\n";
    }
    if (report.rank_info) {
        out << "records: " << report.rank_info->first << ", rank " << report.rank_info->second << ", deficiency "
            << report.rank_info->first - report.rank_info->second << "\n";
    }
    for (const auto &m : report.measurements) {
        out << "measure " << quadrature_char(m.kind) << " " << label(m.mode) << " -> m" << m.record_index << "\n";
    }
    for (const auto &d : report.displacements) {
        out << "displace " << quadrature_char(d.kind) << " " << label(d.mode) << " += " << d.coeff << "*m"
            << d.record_index << "\n";
    }
    for (const auto &r : report.rotations) {
        out << "rotate " << label(r.mode) << " " << 90 * r.quarter_turns << "\n";
    }
    for (std::size_t i = 0; i < report.final_combos.size(); i++) {
        bool ok = i < report.final_nullifiers.size() && is_nullifier(report.final_nullifiers[i]);
        out << "nullifier " << relabel(report.final_combos[i]) << " : " << (ok ? "holds" : "fails") << "\n";
    }
    out << "blocks:";
    for (const auto &b : report.blocks) {
        out << " {";
        for (std::size_t i = 0; i < b.size(); i++) {
            out << (i ? "," : "") << label(b[i]);
        }
        out << "}";
    }
    out << "\n";
    for (const auto &note : report.notes) {
        out << "note: " << note << "\n";
    }
    return out.str();
}

}  // namespace cvcluster
