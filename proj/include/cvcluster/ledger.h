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

#ifndef CVCLUSTER_LEDGER_H
#define CVCLUSTER_LEDGER_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "cvcluster/quadrature.h"

namespace cvcluster {

/// Coefficients below this magnitude are dropped from expressions.
constexpr double kPruneTolerance = 1e-12;
/// Terms below this magnitude are ignored when deciding nullifiers.
constexpr double kNullifierTolerance = 1e-9;

/// coeff * e^{exponent * r} * (X0_mode or Y0_mode), an initial vacuum quadrature.
struct Term {
    std::size_t mode;
    Quadrature kind;
    int exponent;
    double coeff;
};

/// Exact linear combination of initial vacuum quadratures, each term carrying a
/// squeezing exponent. At most one term per (mode, kind, exponent).
class QuadExpr {
   public:
    using Key = std::tuple<std::size_t, Quadrature, int>;

    QuadExpr() = default;
    static QuadExpr initial(std::size_t mode, Quadrature kind);

    void add_term(std::size_t mode, Quadrature kind, int exponent, double coeff);

    QuadExpr &operator+=(const QuadExpr &other);
    QuadExpr &operator-=(const QuadExpr &other);
    QuadExpr &operator*=(double scale);
    friend QuadExpr operator+(QuadExpr a, const QuadExpr &b) {
        return a += b;
    }
    friend QuadExpr operator-(QuadExpr a, const QuadExpr &b) {
        return a -= b;
    }
    friend QuadExpr operator*(double s, QuadExpr a) {
        return a *= s;
    }

    /// Adds `delta` to every exponent attached to initial quadratures of the given kind.
    void shift_exponents(int delta_x, int delta_y);

    bool empty() const {
        return terms_.empty();
    }
    std::size_t size() const {
        return terms_.size();
    }
    double coeff(std::size_t mode, Quadrature kind, int exponent) const;
    std::vector<Term> terms() const;
    const std::map<Key, double> &raw() const {
        return terms_;
    }

    /// Largest |difference| of coefficients against another expression.
    double distance(const QuadExpr &other) const;
    bool approx_equal(const QuadExpr &other, double tol = kPruneTolerance) const;

    /// e.g. "e^{-r}Y0_1 + e^{+r}X0_2".
    std::string str() const;

   private:
    std::map<Key, double> terms_;
};

/// True iff every term with |coeff| > tol carries exponent <= -1. Zero is a nullifier.
bool is_nullifier(const QuadExpr &e, double tol = kNullifierTolerance);

/// Real part of -i[e1, e2]; throws InternalConsistency when the commutator is not a c-number.
double commutator(const QuadExpr &e1, const QuadExpr &e2);

/// Variance at squeezing r with vacuum variance 1/2 per initial quadrature.
double variance_formula(const QuadExpr &e, double r);

struct RecordId {
    std::uint64_t owner = 0;
    std::size_t index = 0;

    bool operator==(const RecordId &) const = default;
};

struct MeasurementRecord {
    RecordId id;
    std::size_t mode;
    Quadrature kind;
    QuadExpr observable;
};

enum class ModeStatus { Active, Consumed };

/// Operation log entries; replayable on the covariance engine.
namespace op {
struct Squeeze {
    std::size_t mode;
    SqueezeDirection direction;
};
struct Kerr {
    std::size_t l, k;
    double gain;
};
struct Rotate {
    std::size_t mode;
    double theta;
};
struct Beamsplit {
    std::size_t l, k;
    double transmittance;
};
struct Measure {
    std::size_t mode;
    Quadrature kind;
};
struct Displace {
    std::size_t mode;
    Quadrature kind;
    double coeff;
    std::size_t record_index;
};
}  // namespace op
using Operation = std::variant<op::Squeeze, op::Kerr, op::Rotate, op::Beamsplit, op::Measure, op::Displace>;

/// Heisenberg-picture ledger of every mode's current X/Y expression.
///
/// The squeezing parameter r stays symbolic: expressions carry exponents of e^{r}.
/// Measuring a mode consumes it; both of its quadratures become unreadable and the
/// measured observable lives on in the returned record for feed-forward.
class Register {
   public:
    /// vacuum_register(n): X_i = X0_i, Y_i = Y0_i, all active.
    static Register vacuum(std::size_t n);

    std::size_t num_modes() const {
        return modes_.size();
    }
    ModeStatus status(std::size_t mode) const;
    bool is_active(std::size_t mode) const;
    std::vector<std::size_t> active_modes() const;

    const QuadExpr &quad(std::size_t mode, Quadrature kind) const;
    const QuadExpr &x(std::size_t mode) const {
        return quad(mode, Quadrature::X);
    }
    const QuadExpr &y(std::size_t mode) const {
        return quad(mode, Quadrature::Y);
    }

    void squeeze(std::size_t mode, SqueezeDirection direction = SqueezeDirection::MomentumSqueezed);
    /// Y_l += g X_k and Y_k += g X_l, using the pre-gate values.
    void kerr_couple(std::size_t l, std::size_t k, double gain = 1.0);
    /// X' = cos(t) X + sin(t) Y, Y' = -sin(t) X + cos(t) Y.
    void rotate(std::size_t mode, double theta);
    /// The -90 degree map X' = -Y, Y' = X, i.e. rotate(-pi/2).
    void rotate_minus_90(std::size_t mode);
    /// Exact quarter turns (multiples of pi/2), without trigonometric round-off.
    void rotate_quarter_turns(std::size_t mode, int quarter_turns);
    /// X_l' = s X_l + c X_k, X_k' = c X_l - s X_k (same for Y), s = sqrt(t), c = sqrt(1 - t).
    void beamsplit(std::size_t l, std::size_t k, double transmittance = 0.5);

    const MeasurementRecord &measure(std::size_t mode, Quadrature kind);
    /// Feed-forward: quad(mode, kind) += coeff * record.observable.
    void displace_with(std::size_t mode, Quadrature kind, double coeff, const MeasurementRecord &record);
    void displace_with(std::size_t mode, Quadrature kind, double coeff, const RecordId &record);

    /// Sum of weighted quadratures of active modes; does not mutate.
    QuadExpr combine(const Combo &parts) const;

    const std::vector<MeasurementRecord> &records() const {
        return records_;
    }
    const MeasurementRecord &record(const RecordId &id) const;
    const std::vector<Operation> &history() const {
        return history_;
    }
    std::uint64_t id() const {
        return id_;
    }

   private:
    struct ModeState {
        QuadExpr x;
        QuadExpr y;
        ModeStatus status = ModeStatus::Active;
        std::size_t record_index = 0;
    };

    explicit Register(std::size_t n);
    ModeState &active(std::size_t mode, const char *op);
    const ModeState &checked(std::size_t mode) const;

    std::uint64_t id_;
    std::vector<ModeState> modes_;
    std::vector<MeasurementRecord> records_;
    std::vector<Operation> history_;
};

/// Groups active modes into minimal blocks with pairwise disjoint initial-mode support.
std::vector<std::vector<std::size_t>> product_partition(const Register &reg);

/// Largest deviation of commutator(X_i, Y_j) from delta_ij (and of the X/X, Y/Y
/// commutators from 0) over all active pairs, plus that of every record against
/// every retained quadrature.
double commutator_defect(const Register &reg);

}  // namespace cvcluster

#endif
