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

#include "cvcluster/scenario.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace cvcluster {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<fs::path> corpus() {
    std::vector<fs::path> out;
    for (const auto &entry : fs::directory_iterator(fs::path(CVCLUSTER_SOURCE_DIR) / "scripts")) {
        if (entry.path().extension() == ".cvq") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StatementBody> bodies(const Scenario &s) {
    std::vector<StatementBody> out;
    for (const auto &st : s.statements) {
        out.push_back(st.body);
    }
    return out;
}

TEST(ScenarioTest, ParsesMinimalScript) {
    Scenario s = parse_scenario("register 2\nkerr 1 2\n");
    ASSERT_EQ(s.statements.size(), 2u);
    EXPECT_EQ(std::get<stmt::Kerr>(s.statements[1].body), (stmt::Kerr{1, 2, 1.0}));
    EXPECT_EQ(s.statements[1].line, 2u);
}

TEST(ScenarioTest, ReportsBadBasisPosition) {
    try {
        parse_scenario(slurp(fs::path(CVCLUSTER_SOURCE_DIR) / "tests/data/bad.cvq"));
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 9u);
        EXPECT_EQ(e.found(), "z");
        EXPECT_EQ(e.render("bad.cvq"), "bad.cvq:3:9: expected basis, found 'z'");
    }
}

TEST(ScenarioTest, RejectsStructuralErrors) {
    EXPECT_THROW(parse_scenario("kerr 1 2\n"), ParseError);
    EXPECT_THROW(parse_scenario("register 2\nregister 2\n"), ParseError);
    EXPECT_THROW(parse_scenario("register 2\nsqueeze 3 momentum\n"), ParseError);
    EXPECT_THROW(parse_scenario("register 2\ndisplace y 1 += 1*a\n"), ParseError);
    EXPECT_THROW(parse_scenario("register 2\nmeasure x 1 -> a\nmeasure x 2 -> a\n"), ParseError);
    EXPECT_THROW(parse_scenario("register 2\nbs 1 2 t=\n"), ParseError);
}

TEST(ScenarioTest, AcceptsCrlfAndComments) {
    Scenario a = parse_scenario("register 2\r\n# note\r\nkerr 1 2 g=0.5  # gain\r\n");
    Scenario b = parse_scenario("register 2\nkerr 1 2 g=0.5\n");
    EXPECT_EQ(bodies(a), bodies(b));
}

TEST(ScenarioTest, ShippedChainScriptHasFourteenStatements) {
    Scenario s = parse_scenario(slurp(fs::path(CVCLUSTER_SOURCE_DIR) / "scripts/chain_n4.cvq"));
    EXPECT_EQ(s.statements.size(), 14u);
}

TEST(ScenarioTest, PrettyPrintRoundTrip) {
    for (const auto &path : corpus()) {
        Scenario first = parse_scenario(slurp(path));
        std::string printed = pretty_print(first);
        Scenario second = parse_scenario(printed);
        EXPECT_EQ(bodies(first), bodies(second)) << path;
        EXPECT_EQ(pretty_print(second), printed) << path;
    }
}

TEST(ScenarioTest, CorpusCoversEveryProduction) {
    std::set<std::string> seen;
    for (const auto &path : corpus()) {
        for (const auto &st : parse_scenario(slurp(path)).statements) {
            std::visit(
                [&](const auto &b) {
                    using T = std::decay_t<decltype(b)>;
                    if constexpr (std::is_same_v<T, stmt::RegisterDecl>) {
                        seen.insert("register");
                    } else if constexpr (std::is_same_v<T, stmt::Squeeze>) {
                        seen.insert(std::string("squeeze ") + std::string(direction_name(b.direction)));
                    } else if constexpr (std::is_same_v<T, stmt::Kerr>) {
                        seen.insert(b.gain == 1.0 ? "kerr" : "kerr g");
                        seen.insert("kerr");
                    } else if constexpr (std::is_same_v<T, stmt::Rotate>) {
                        if (b.quarter_turns) {
                            seen.insert("rotate " + std::to_string(*b.quarter_turns));
                        } else {
                            seen.insert("rotate rad");
                        }
                    } else if constexpr (std::is_same_v<T, stmt::Beamsplit>) {
                        seen.insert("bs");
                    } else if constexpr (std::is_same_v<T, stmt::Measure>) {
                        seen.insert(std::string("measure ") + quadrature_char(b.kind));
                    } else if constexpr (std::is_same_v<T, stmt::Displace>) {
                        seen.insert(std::string("displace ") + quadrature_char(b.kind));
                    } else if constexpr (std::is_same_v<T, stmt::AssertNullifier>) {
                        seen.insert("assert nullifier");
                    } else if constexpr (std::is_same_v<T, stmt::AssertProduct>) {
                        seen.insert("assert product");
                    } else {
                        seen.insert("print variance");
                    }
                },
                st.body);
        }
    }
    for (const char *p : {"register", "squeeze momentum", "squeeze position", "kerr", "rotate -1", "rotate 1",
                          "rotate 2", "rotate rad", "bs", "measure x", "measure y", "displace x", "displace y",
                          "assert nullifier", "assert product", "print variance"}) {
        EXPECT_TRUE(seen.count(p)) << p;
    }
}

TEST(ScenarioTest, LedgerRunsCorpus) {
    for (const auto &path : corpus()) {
        RunReport report = execute(parse_scenario(slurp(path)), {});
        EXPECT_TRUE(report.passed()) << path << "\n" << report.render();
    }
}

TEST(ScenarioTest, CovarianceRunsCorpus) {
    for (const auto &path : corpus()) {
        RunReport report = execute(parse_scenario(slurp(path)), {Engine::Covariance, 1.0, 7});
        EXPECT_TRUE(report.passed()) << path << "\n" << report.render();
    }
}

TEST(ScenarioTest, CovarianceNeedsR) {
    Scenario s = parse_scenario("register 1\nsqueeze 1 momentum\n");
    EXPECT_THROW(execute(s, {Engine::Covariance, std::nullopt, std::nullopt}), Error);
}

TEST(ScenarioTest, PersistencyVarianceRow) {
    Scenario s = parse_scenario(slurp(fs::path(CVCLUSTER_SOURCE_DIR) / "scripts/persistency_n4.cvq"));
    RunReport report = execute(s, {Engine::Covariance, 1.0, 7});
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_NEAR(report.rows[0].variance, 0.5 * std::exp(-2.0), 1e-12);
    EXPECT_EQ(report.csv().substr(0, 17), "combo,r,variance\n");
}

TEST(ScenarioTest, RunsAreDeterministic) {
    for (const auto &path : corpus()) {
        Scenario s = parse_scenario(slurp(path));
        for (Engine e : {Engine::Ledger, Engine::Covariance}) {
            RunOptions opts{e, 0.8, 42};
            EXPECT_EQ(execute(s, opts).render(), execute(s, opts).render()) << path;
        }
    }
}

TEST(ScenarioTest, RuntimeErrorsCarryPositions) {
    Scenario s = parse_scenario("register 2\nmeasure x 1 -> a\nkerr 1 2\n");
    try {
        execute(s, {});
        FAIL();
    } catch (const ScenarioError &e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.code(), ErrorCode::ConsumedMode);
        EXPECT_EQ(e.render("f.cvq").rfind("f.cvq:3:", 0), 0u) << e.render("f.cvq");
    }
}

TEST(ScenarioTest, FailingAssertionIsReported) {
    Scenario s = parse_scenario("register 2\nsqueeze 1 momentum\nsqueeze 2 momentum\nkerr 1 2\nassert nullifier 1*x1\n");
    RunReport report = execute(s, {});
    ASSERT_EQ(report.assertions.size(), 1u);
    EXPECT_FALSE(report.passed());
    EXPECT_EQ(report.assertions[0].line, 5u);
}

TEST(ScenarioTest, ExactSqrtTwoLiterals) {
    Combo c = parse_combo("sqrt2*x1 - sqrt2*y2 + 0.25*x3");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].coeff, std::sqrt(2.0));
    EXPECT_EQ(c[1].coeff, -std::sqrt(2.0));
    EXPECT_EQ(format_combo(c), "sqrt2*x1 - sqrt2*y2 + 0.25*x3");
}

}  // namespace
}  // namespace cvcluster
