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

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvcluster/claims.h"
#include "cvcluster/protocols.h"
#include "cvcluster/scenario.h"

namespace {

using namespace cvcluster;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Runtime, "cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

template <typename T>
T parse_number(const std::string &text, const std::string &what) {
    T value{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw Error(ErrorCode::Domain, "invalid " + what + " '" + text + "'");
    }
    return value;
}

std::vector<double> parse_reals(const std::string &text) {
    std::vector<double> out;
    for (const auto &item : split(text, ',')) {
        out.push_back(parse_number<double>(item, "r value"));
    }
    return out;
}

template <typename T>
std::vector<T> parse_ints(const std::string &text) {
    std::vector<T> out;
    for (const auto &item : split(text, ',')) {
        out.push_back(parse_number<T>(item, "integer"));
    }
    return out;
}

Engine parse_engine(const std::string &name) {
    if (name == "ledger") {
        return Engine::Ledger;
    }
    if (name == "covariance") {
        return Engine::Covariance;
    }
    throw Error(ErrorCode::Domain, "unknown engine '" + name + "'");
}

/// Output sink: standard output or the file given by --output.
class Sink {
   public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw Error(ErrorCode::Runtime, "cannot write '" + path + "'");
            }
        }
    }
    std::ostream &out() {
        return file_.is_open() ? file_ : std::cout;
    }

   private:
    std::ofstream file_;
};

struct RunArgs {
    std::string script;
    std::string engine = "ledger";
    std::optional<double> r;
    std::optional<std::uint64_t> seed;
};

int cmd_run(const RunArgs &a, std::ostream &out) {
    Scenario s;
    try {
        s = parse_scenario(read_file(a.script));
    } catch (const ParseError &e) {
        std::cerr << e.render(a.script) << "\n";
        return kError;
    }
    try {
        RunReport report = execute(s, {parse_engine(a.engine), a.r, a.seed});
        out << report.render();
        return report.passed() ? kPass : kFail;
    } catch (const ScenarioError &e) {
        std::cerr << e.render(a.script) << "\n";
        return kError;
    }
}

int cmd_claims(const std::optional<std::string> &only, std::ostream &out) {
    auto claims = run_claims(only);
    out << claims_csv(claims);
    bool ok = std::all_of(claims.begin(), claims.end(), [](const Claim &c) {
        return c.passed;
    });
    return ok ? kPass : kFail;
}

struct SweepArgs {
    std::string script;
    std::string state;
    std::vector<std::string> combos;
    std::string rs;
    std::string engine = "ledger";
    std::optional<std::uint64_t> seed;
};

struct BuiltinState {
    std::string family;
    std::size_t size;

    Register ledger() const {
        if (family == "chain") {
            return build_graph_state(Graph::chain(size));
        }
        if (family == "ghz") {
            return build_ghz(size);
        }
        if (family == "bs-chain") {
            return build_bs_chain(size);
        }
        return build_graph_state(Graph::star(size));
    }
    GaussianState gaussian(double r) const {
        if (family == "chain") {
            return build_graph_state(Graph::chain(size), r);
        }
        if (family == "ghz") {
            return build_ghz(size, r);
        }
        if (family == "bs-chain") {
            return build_bs_chain(size, r);
        }
        return build_graph_state(Graph::star(size), r);
    }
};

BuiltinState parse_state(const std::string &text) {
    auto colon = text.find(':');
    std::string family = text.substr(0, colon);
    if (colon == std::string::npos ||
        (family != "chain" && family != "ghz" && family != "bs-chain" && family != "star")) {
        throw Error(ErrorCode::Domain, "state must be chain:N, ghz:N, bs-chain:N or star:M, got '" + text + "'");
    }
    auto n = parse_number<std::size_t>(text.substr(colon + 1), "state size");
    if (n < (family == "star" ? 1u : 2u)) {
        throw Error(ErrorCode::InvalidSize, "state '" + text + "' is too small");
    }
    return {family, n};
}

int cmd_sweep(const SweepArgs &a, std::ostream &out) {
    if (a.script.empty() == a.state.empty()) {
        throw Error(ErrorCode::Domain, "sweep needs exactly one of --script or --state");
    }
    std::vector<double> rs = parse_reals(a.rs);
    Engine engine = parse_engine(a.engine);
    std::vector<std::pair<std::string, Combo>> combos;
    for (const auto &text : a.combos) {
        Combo c = parse_combo(text);
        combos.emplace_back(format_combo(c), c);
    }

    std::vector<VarianceRow> rows;
    auto emit = [&](double r, auto &&variance) {
        for (const auto &[name, c] : combos) {
            rows.push_back({name, r, variance(c)});
        }
    };
    if (!a.state.empty()) {
        BuiltinState st = parse_state(a.state);
        if (engine == Engine::Ledger) {
            Register reg = st.ledger();
            for (double r : rs) {
                emit(r, [&](const Combo &c) {
                    return variance_formula(reg.combine(c), r);
                });
            }
        } else {
            for (double r : rs) {
                GaussianState g = st.gaussian(r);
                emit(r, [&](const Combo &c) {
                    return variance_of(g, c);
                });
            }
        }
    } else {
        Scenario s;
        try {
            s = parse_scenario(read_file(a.script));
        } catch (const ParseError &e) {
            std::cerr << e.render(a.script) << "\n";
            return kError;
        }
        try {
            std::optional<RunReport> ledger;
            for (double r : rs) {
                if (engine == Engine::Ledger) {
                    if (!ledger) {
                        ledger = execute(s, {engine, std::nullopt, a.seed});
                    }
                    emit(r, [&](const Combo &c) {
                        return final_variance(*ledger, c, r);
                    });
                } else {
                    RunReport report = execute(s, {engine, r, a.seed});
                    emit(r, [&](const Combo &c) {
                        return final_variance(report, c, r);
                    });
                }
            }
        } catch (const ScenarioError &e) {
            std::cerr << e.render(a.script) << "\n";
            return kError;
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const VarianceRow &x, const VarianceRow &y) {
        return std::tie(x.combo, x.r) < std::tie(y.combo, y.r);
    });
    out << "combo,r,variance\n";
    for (const auto &row : rows) {
        out << row.combo << "," << csv_number(row.r) << "," << csv_number(row.variance) << "\n";
    }
    return kPass;
}

struct GraphArgs {
    std::string file;
    std::string protocol;
    std::optional<int> from, to;
    std::string pair;
    std::string left, right;
    std::optional<std::size_t> cut;
    std::string measured;
};

/// Modes of a chain-shaped graph walked from its smallest-label endpoint.
ChainContext chain_context(const Graph &g) {
    if (!g.is_chain()) {
        throw Error(ErrorCode::ProtocolPrecondition, "protocol needs a chain-shaped graph");
    }
    std::vector<int> labels = g.vertices();
    int start = labels.front();
    for (int v : labels) {
        if (g.degree(v) <= 1) {
            start = v;
            break;
        }
    }
    ChainContext ctx;
    int prev = start, cur = start;
    ctx.order.push_back(g.mode_of(cur));
    while (ctx.order.size() < labels.size()) {
        for (int v : g.neighborhood(cur)) {
            if (v != prev) {
                prev = cur;
                cur = v;
                break;
            }
        }
        ctx.order.push_back(g.mode_of(cur));
    }
    return ctx;
}

int cmd_graph(const GraphArgs &a, std::ostream &out) {
    Graph g = Graph::parse_edge_list(read_file(a.file));
    Register reg = build_graph_state(g);
    ProtocolReport report;
    const std::string &p = a.protocol;
    if (p == "reduce-path") {
        if (!a.from || !a.to) {
            throw Error(ErrorCode::Domain, "reduce-path needs --from and --to");
        }
        report = reduce_graph_to_path(reg, g, *a.from, *a.to);
    } else if (p == "star-ghz") {
        report = star_to_ghz(reg, g);
    } else if (p == "ring-star-ghz") {
        std::vector<int> measured =
            a.measured.empty() ? ring_star_default_measured(g) : parse_ints<int>(a.measured);
        report = ring_star_to_ghz(reg, g, measured);
    } else if (p == "extract-pair") {
        auto pair = parse_ints<std::size_t>(a.pair);
        if (pair.size() != 2) {
            throw Error(ErrorCode::Domain, "extract-pair needs --pair j,k");
        }
        OuterStrategy strategy = OuterStrategy::NextNeighbor();
        if (!a.left.empty() || !a.right.empty()) {
            strategy = OuterStrategy::Custom(parse_ints<std::size_t>(a.left), parse_ints<std::size_t>(a.right));
        }
        report = extract_pair(reg, chain_context(g), pair[0], pair[1], strategy);
    } else if (p == "disconnect") {
        if (!a.cut) {
            throw Error(ErrorCode::Domain, "disconnect needs --cut j");
        }
        report = disconnect(reg, chain_context(g), *a.cut);
    } else if (p == "disentangle") {
        if (!(g == Graph::chain(g.num_vertices()))) {
            throw Error(ErrorCode::ProtocolPrecondition, "disentangle needs the chain 1-2-...-N");
        }
        report = disentangle_even(reg);
    } else {
        throw Error(ErrorCode::Domain, "unknown protocol '" + p + "'");
    }
    out << render_report(report);
    return report.success ? kPass : kFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heisenberg-picture laboratory for continuous-variable cluster and graph states"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("-o,--output", output, "Write results to this file instead of standard output");

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Execute a .cvq scenario script");
    run_cmd->add_option("script", run.script, "Scenario file")->required();
    run_cmd->add_option("--engine", run.engine, "ledger or covariance")->check(CLI::IsMember({"ledger", "covariance"}));
    run_cmd->add_option("--r", run.r, "Squeezing parameter (covariance engine)");
    run_cmd->add_option("--seed", run.seed, "Seed for sampled homodyne outcomes");

    std::optional<std::string> only;
    auto *claims_cmd = app.add_subcommand("claims", "Run the built-in claims suite and print CSV");
    claims_cmd->add_option("--only", only, "Restrict to one claim group")->check(CLI::IsMember(claim_groups()));

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Tabulate combination variances against r");
    sweep_cmd->add_option("--script", sweep.script, "Scenario file");
    sweep_cmd->add_option("--state", sweep.state, "chain:N, ghz:N, bs-chain:N or star:M");
    sweep_cmd->add_option("--combo", sweep.combos, "Combination such as '1*y1 - 1*x2' (repeatable)");
    sweep_cmd->add_option("--r", sweep.rs, "Comma-separated squeezing values");
    sweep_cmd->add_option("--engine", sweep.engine, "ledger or covariance")
        ->check(CLI::IsMember({"ledger", "covariance"}));
    sweep_cmd->add_option("--seed", sweep.seed, "Seed for sampled homodyne outcomes");

    GraphArgs graph;
    auto *graph_cmd = app.add_subcommand("graph", "Run a protocol on the graph state of an edge-list file");
    graph_cmd->add_option("edges", graph.file, "Edge-list file")->required();
    graph_cmd->add_option("--protocol", graph.protocol, "Protocol name")
        ->required()
        ->check(CLI::IsMember(
            {"reduce-path", "star-ghz", "ring-star-ghz", "extract-pair", "disconnect", "disentangle"}));
    graph_cmd->add_option("--from", graph.from, "reduce-path: first endpoint label");
    graph_cmd->add_option("--to", graph.to, "reduce-path: second endpoint label");
    graph_cmd->add_option("--pair", graph.pair, "extract-pair: chain positions j,k");
    graph_cmd->add_option("--left", graph.left, "extract-pair: custom outer set left of j");
    graph_cmd->add_option("--right", graph.right, "extract-pair: custom outer set right of k");
    graph_cmd->add_option("--cut", graph.cut, "disconnect: chain position j");
    graph_cmd->add_option("--measured", graph.measured, "ring-star-ghz: labels measured in Y");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kError;
    }

    try {
        Sink sink(output);
        if (*run_cmd) {
            return cmd_run(run, sink.out());
        }
        if (*claims_cmd) {
            return cmd_claims(only, sink.out());
        }
        if (*sweep_cmd) {
            return cmd_sweep(sweep, sink.out());
        }
        return cmd_graph(graph, sink.out());
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
