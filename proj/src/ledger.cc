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

#include "cvcluster/ledger.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <limits>
#include <numeric>

namespace cvcluster {

namespace {

std::atomic<std::uint64_t> next_register_id{1};

std::string exponent_factor(int k) {
    if (k == 0) {
        return "";
    }
    std::string s = "e^{";
    s += k > 0 ? "+" : "-";
    if (std::abs(k) != 1) {
        s += std::to_string(std::abs(k));
    }
    s += "r}";
    return s;
}

}  // namespace

QuadExpr QuadExpr::initial(std::size_t mode, Quadrature kind) {
    QuadExpr e;
    e.add_term(mode, kind, 0, 1.0);
    return e;
}

void QuadExpr::add_term(std::size_t mode, Quadrature kind, int exponent, double coeff) {
    if (coeff == 0.0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Key{mode, kind, exponent}, coeff);
    if (!inserted) {
        it->second += coeff;
    }
    if (std::abs(it->second) <= kPruneTolerance) {
        terms_.erase(it);
    }
}

QuadExpr &QuadExpr::operator+=(const QuadExpr &other) {
    for (const auto &[key, c] : other.terms_) {
        add_term(std::get<0>(key), std::get<1>(key), std::get<2>(key), c);
    }
    return *this;
}

QuadExpr &QuadExpr::operator-=(const QuadExpr &other) {
    for (const auto &[key, c] : other.terms_) {
        add_term(std::get<0>(key), std::get<1>(key), std::get<2>(key), -c);
    }
    return *this;
}

QuadExpr &QuadExpr::operator*=(double scale) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= scale;
        if (std::abs(it->second) <= kPruneTolerance) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

void QuadExpr::shift_exponents(int delta_x, int delta_y) {
    std::map<Key, double> shifted;
    for (const auto &[key, c] : terms_) {
        auto [mode, kind, k] = key;
        shifted[Key{mode, kind, k + (kind == Quadrature::X ? delta_x : delta_y)}] = c;
    }
    terms_ = std::move(shifted);
}

double QuadExpr::coeff(std::size_t mode, Quadrature kind, int exponent) const {
    auto it = terms_.find(Key{mode, kind, exponent});
    return it == terms_.end() ? 0.0 : it->second;
}

std::vector<Term> QuadExpr::terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &[key, c] : terms_) {
        out.push_back(Term{std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    }
    return out;
}

double QuadExpr::distance(const QuadExpr &other) const {
    double worst = 0;
    for (const auto &[key, c] : terms_) {
        auto it = other.terms_.find(key);
        worst = std::max(worst, std::abs(c - (it == other.terms_.end() ? 0.0 : it->second)));
    }
    for (const auto &[key, c] : other.terms_) {
        if (!terms_.contains(key)) {
            worst = std::max(worst, std::abs(c));
        }
    }
    return worst;
}

bool QuadExpr::approx_equal(const QuadExpr &other, double tol) const {
    return distance(other) <= tol;
}

std::string QuadExpr::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[key, c] : terms_) {
        auto [mode, kind, k] = key;
        double v = c;
        if (!first) {
            out += v < 0 ? " - " : " + ";
            v = std::abs(v);
        }
        if (std::abs(v - 1.0) > 1e-12) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            out += buf;
            out += '*';
        }
        out += exponent_factor(k);
        out += kind == Quadrature::X ? "X0_" : "Y0_";
        out += std::to_string(mode);
        first = false;
    }
    return out;
}

bool is_nullifier(const QuadExpr &e, double tol) {
    for (const auto &[key, c] : e.raw()) {
        if (std::get<2>(key) >= 0 && std::abs(c) > tol) {
            return false;
        }
    }
    return true;
}

double commutator(const QuadExpr &e1, const QuadExpr &e2) {
    // [X0_m, Y0_m] = i; each pairing contributes at exponent k1 + k2.
    std::map<int, double> by_exponent;
    std::map<int, double> magnitude;
    for (const auto &[key2, c2] : e2.raw()) {
        auto [mode, kind2, k2] = key2;
        Quadrature partner = conjugate(kind2);
        double sign = kind2 == Quadrature::Y ? 1.0 : -1.0;
        auto lo = e1.raw().lower_bound(QuadExpr::Key{mode, partner, std::numeric_limits<int>::min()});
        for (auto it = lo; it != e1.raw().end(); ++it) {
            auto [m1, kind1, k1] = it->first;
            if (m1 != mode || kind1 != partner) {
                break;
            }
            by_exponent[k1 + k2] += sign * it->second * c2;
            magnitude[k1 + k2] += std::abs(it->second * c2);
        }
    }
    double result = 0;
    for (const auto &[s, v] : by_exponent) {
        if (s == 0) {
            result = v;
        } else if (std::abs(v) > kNullifierTolerance * std::max(1.0, magnitude[s])) {
            throw Error(
                ErrorCode::InternalConsistency,
                "commutator carries e^{" + std::to_string(s) + "r} weight " + std::to_string(v) +
                    ": not a c-number");
        }
    }
    return result;
}

double variance_formula(const QuadExpr &e, double r) {
    std::map<std::pair<std::size_t, Quadrature>, double> grouped;
    for (const auto &[key, c] : e.raw()) {
        auto [mode, kind, k] = key;
        grouped[{mode, kind}] += c * std::exp(k * r);
    }
    double v = 0;
    for (const auto &[_, a] : grouped) {
        v += a * a;
    }
    return 0.5 * v;
}

Register::Register(std::size_t n) : id_(next_register_id++), modes_(n) {
    for (std::size_t m = 1; m <= n; m++) {
        modes_[m - 1].x = QuadExpr::initial(m, Quadrature::X);
        modes_[m - 1].y = QuadExpr::initial(m, Quadrature::Y);
    }
}

Register Register::vacuum(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidSize, "register needs at least one mode");
    }
    return Register(n);
}

const Register::ModeState &Register::checked(std::size_t mode) const {
    if (mode == 0 || mode > modes_.size()) {
        throw Error(
            ErrorCode::InvalidIndex,
            "mode " + std::to_string(mode) + " outside 1.." + std::to_string(modes_.size()));
    }
    return modes_[mode - 1];
}

Register::ModeState &Register::active(std::size_t mode, const char *op) {
    const ModeState &s = checked(mode);
    if (s.status != ModeStatus::Active) {
        throw Error(
            ErrorCode::ConsumedMode, std::string(op) + ": mode " + std::to_string(mode) + " was already measured");
    }
    return modes_[mode - 1];
}

ModeStatus Register::status(std::size_t mode) const {
    return checked(mode).status;
}

bool Register::is_active(std::size_t mode) const {
    return checked(mode).status == ModeStatus::Active;
}

std::vector<std::size_t> Register::active_modes() const {
    std::vector<std::size_t> out;
    for (std::size_t m = 1; m <= modes_.size(); m++) {
        if (modes_[m - 1].status == ModeStatus::Active) {
            out.push_back(m);
        }
    }
    return out;
}

const QuadExpr &Register::quad(std::size_t mode, Quadrature kind) const {
    const ModeState &s = checked(mode);
    if (s.status != ModeStatus::Active) {
        throw Error(
            ErrorCode::ConsumedMode,
            std::string("read of ") + quadrature_char(kind) + std::to_string(mode) + ": mode was already measured");
    }
    return kind == Quadrature::X ? s.x : s.y;
}

void Register::squeeze(std::size_t mode, SqueezeDirection direction) {
    ModeState &s = active(mode, "squeeze");
    int d = direction == SqueezeDirection::MomentumSqueezed ? 1 : -1;
    // X -> e^{dr} X multiplies every term of the current X expression by e^{dr}.
    s.x.shift_exponents(d, d);
    s.y.shift_exponents(-d, -d);
    history_.push_back(op::Squeeze{mode, direction});
}

void Register::kerr_couple(std::size_t l, std::size_t k, double gain) {
    if (l == k) {
        throw Error(ErrorCode::SelfInteraction, "kerr_couple needs two distinct modes");
    }
    ModeState &a = active(l, "kerr_couple");
    ModeState &b = active(k, "kerr_couple");
    QuadExpr xa = a.x;
    QuadExpr xb = b.x;
    a.y += gain * xb;
    b.y += gain * xa;
    history_.push_back(op::Kerr{l, k, gain});
}

void Register::rotate(std::size_t mode, double theta) {
    ModeState &s = active(mode, "rotate");
    double c = std::cos(theta);
    double sn = std::sin(theta);
    QuadExpr x = s.x;
    QuadExpr y = s.y;
    s.x = c * x + sn * y;
    s.y = (-sn) * x + c * y;
    history_.push_back(op::Rotate{mode, theta});
}

void Register::rotate_quarter_turns(std::size_t mode, int quarter_turns) {
    ModeState &s = active(mode, "rotate");
    int q = ((quarter_turns % 4) + 4) % 4;
    QuadExpr x = s.x;
    QuadExpr y = s.y;
    switch (q) {
        case 1:
            s.x = y;
            s.y = -1.0 * x;
            break;
        case 2:
            s.x = -1.0 * x;
            s.y = -1.0 * y;
            break;
        case 3:
            s.x = -1.0 * y;
            s.y = x;
            break;
        default:
            break;
    }
    history_.push_back(op::Rotate{mode, quarter_turns * std::numbers::pi / 2});
}

void Register::rotate_minus_90(std::size_t mode) {
    rotate_quarter_turns(mode, -1);
}

void Register::beamsplit(std::size_t l, std::size_t k, double transmittance) {
    if (!(transmittance > 0.0 && transmittance < 1.0)) {
        throw Error(ErrorCode::Domain, "beamsplitter transmittance must lie in (0, 1)");
    }
    if (l == k) {
        throw Error(ErrorCode::SelfInteraction, "beamsplit needs two distinct modes");
    }
    ModeState &a = active(l, "beamsplit");
    ModeState &b = active(k, "beamsplit");
    double s = std::sqrt(transmittance);
    double c = std::sqrt(1.0 - transmittance);
    QuadExpr xa = a.x, ya = a.y, xb = b.x, yb = b.y;
    a.x = s * xa + c * xb;
    b.x = c * xa - s * xb;
    a.y = s * ya + c * yb;
    b.y = c * ya - s * yb;
    history_.push_back(op::Beamsplit{l, k, transmittance});
}

const MeasurementRecord &Register::measure(std::size_t mode, Quadrature kind) {
    ModeState &s = active(mode, "measure");
    MeasurementRecord rec{
        RecordId{id_, records_.size()},
        mode,
        kind,
        kind == Quadrature::X ? s.x : s.y,
    };
    s.status = ModeStatus::Consumed;
    s.record_index = records_.size();
    records_.push_back(std::move(rec));
    history_.push_back(op::Measure{mode, kind});
    return records_.back();
}

const MeasurementRecord &Register::record(const RecordId &id) const {
    if (id.owner != id_ || id.index >= records_.size()) {
        throw Error(ErrorCode::RecordOwnership, "measurement record does not belong to this register");
    }
    return records_[id.index];
}

void Register::displace_with(std::size_t mode, Quadrature kind, double coeff, const RecordId &id) {
    const MeasurementRecord &rec = record(id);
    ModeState &s = active(mode, "displace");
    if (coeff == 0.0) {
        return;
    }
    (kind == Quadrature::X ? s.x : s.y) += coeff * rec.observable;
    history_.push_back(op::Displace{mode, kind, coeff, id.index});
}

void Register::displace_with(std::size_t mode, Quadrature kind, double coeff, const MeasurementRecord &record) {
    displace_with(mode, kind, coeff, record.id);
}

QuadExpr Register::combine(const Combo &parts) const {
    QuadExpr out;
    for (const auto &p : parts) {
        out += p.coeff * quad(p.mode, p.kind);
    }
    return out;
}

std::vector<std::vector<std::size_t>> product_partition(const Register &reg) {
    std::size_t n = reg.num_modes();
    std::vector<std::size_t> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    auto active = reg.active_modes();
    std::vector<std::size_t> anchor(n + 1, 0);
    for (std::size_t m : active) {
        std::size_t first = 0;
        for (Quadrature q : {Quadrature::X, Quadrature::Y}) {
            for (const auto &[key, c] : reg.quad(m, q).raw()) {
                std::size_t init = std::get<0>(key);
                if (first == 0) {
                    first = init;
                } else {
                    parent[find(init)] = find(first);
                }
            }
        }
        anchor[m] = first;
    }
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t m : active) {
        // A mode with no support at all is trivially its own block.
        std::size_t key = anchor[m] == 0 ? n + 1 + m : find(anchor[m]);
        blocks[key].push_back(m);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto &[_, b] : blocks) {
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double commutator_defect(const Register &reg) {
    auto active = reg.active_modes();
    double worst = 0;
    for (std::size_t i : active) {
        for (std::size_t j : active) {
            worst = std::max(worst, std::abs(commutator(reg.x(i), reg.y(j)) - (i == j ? 1.0 : 0.0)));
            if (i < j) {
                worst = std::max(worst, std::abs(commutator(reg.x(i), reg.x(j))));
                worst = std::max(worst, std::abs(commutator(reg.y(i), reg.y(j))));
            }
        }
    }
    for (const auto &rec : reg.records()) {
        for (std::size_t m : active) {
            worst = std::max(worst, std::abs(commutator(rec.observable, reg.x(m))));
            worst = std::max(worst, std::abs(commutator(rec.observable, reg.y(m))));
        }
    }
    return worst;
}

}  // namespace cvcluster
