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

#ifndef CVCLUSTER_SCENARIO_H
#define CVCLUSTER_SCENARIO_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cvcluster/covariance.h"
#include "cvcluster/ledger.h"

namespace cvcluster {

namespace stmt {
struct RegisterDecl {
    std::size_t n;
    bool operator==(const RegisterDecl &) const = default;
};
struct Squeeze {
    std::size_t mode;
    SqueezeDirection direction;
    bool operator==(const Squeeze &) const = default;
};
struct Kerr {
    std::size_t l, k;
    double gain = 1.0;
    bool operator==(const Kerr &) const = default;
};
/// Either an exact number of quarter turns (from -90/90/180) or radians.
struct Rotate {
    std::size_t mode;
    std::optional<int> quarter_turns;
    double radians = 0.0;
    bool operator==(const Rotate &) const = default;
};
struct Beamsplit {
    std::size_t l, k;
    double transmittance = 0.5;
    bool operator==(const Beamsplit &) const = default;
};
struct Measure {
    Quadrature kind;
    std::size_t mode;
    std::string name;
    bool operator==(const Measure &) const = default;
};
struct Displace {
    Quadrature kind;
    std::size_t mode;
    double coeff;
    std::string name;
    bool operator==(const Displace &) const = default;
};
struct AssertNullifier {
    Combo combo;
    bool operator==(const AssertNullifier &) const = default;
};
struct AssertProduct {
    bool operator==(const AssertProduct &) const = default;
};
struct PrintVariance {
    Combo combo;
    std::vector<double> rs;
    bool operator==(const PrintVariance &) const = default;
};
}  // namespace stmt

using StatementBody = std::variant<
    stmt::RegisterDecl,
    stmt::Squeeze,
    stmt::Kerr,
    stmt::Rotate,
    stmt::Beamsplit,
    stmt::Measure,
    stmt::Displace,
    stmt::AssertNullifier,
    stmt::AssertProduct,
    stmt::PrintVariance>;

struct Statement {
    StatementBody body;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Scenario {
    std::vector<Statement> statements;
    std::size_t num_modes() const;
};

class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found);

    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }
    const std::string &expected() const {
        return expected_;
    }
    const std::string &found() const {
        return found_;
    }
    /// "file:line:col: expected X, found 'y'".
    std::string render(std::string_view file) const;

   private:
    std::size_t line_, column_;
    std::string expected_, found_;
};

/// Raised while executing; carries the statement position.
class ScenarioError : public Error {
   public:
    ScenarioError(ErrorCode code, std::size_t line, std::size_t column, const std::string &message);
    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }
    std::string render(std::string_view file) const;

   private:
    std::size_t line_, column_;
    std::string detail_;
};

/// Throws ParseError at the first problem.
Scenario parse_scenario(std::string_view text);
/// A standalone combination such as "sqrt2*x1 + 1*x2"; throws ParseError (line 1).
Combo parse_combo(std::string_view text);

/// Canonical text; parsing it reproduces the same statements.
std::string pretty_print(const Scenario &s);
std::string format_combo(const Combo &c);
std::string format_number(double v);

enum class Engine { Ledger, Covariance };
std::string_view engine_name(Engine e);

struct RunOptions {
    Engine engine = Engine::Ledger;
    /// Required by the covariance engine.
    std::optional<double> r;
    std::optional<std::uint64_t> seed;
};

struct AssertionOutcome {
    std::size_t line;
    std::string text;
    bool passed;
    std::string detail;
};

struct VarianceRow {
    std::string combo;
    double r;
    double variance;
};

struct RunReport {
    Engine engine = Engine::Ledger;
    std::optional<double> r;
    std::vector<AssertionOutcome> assertions;
    std::vector<VarianceRow> rows;
    /// "name = value" for every covariance-engine homodyne outcome.
    std::vector<std::string> outcomes;

    std::optional<Register> ledger;
    std::optional<GaussianState> gaussian;
    /// gaussian-state index of each original mode, nullopt once measured.
    std::vector<std::optional<std::size_t>> mode_index;

    bool passed() const;
    std::string render() const;
    /// Header "combo,r,variance" plus one line per row.
    std::string csv() const;
};

/// Applies the statements in order. Throws ScenarioError on runtime failures.
RunReport execute(const Scenario &s, const RunOptions &options);

/// Variance of a combination of the final state; modes refer to the original numbering.
double final_variance(const RunReport &report, const Combo &combo, double r);

std::string csv_number(double v);

}  // namespace cvcluster

#endif
