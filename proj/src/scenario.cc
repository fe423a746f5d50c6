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

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace cvcluster {

namespace {

enum class TokKind { Word, Sym, End };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t column;
};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

bool numeric_start(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t') {
            i++;
            continue;
        }
        std::size_t start = i;
        if (word_char(c)) {
            while (i < line.size()) {
                if (word_char(line[i])) {
                    i++;
                } else if (
                    // Keep the sign of an exponent inside numbers like 1e-3.
                    (line[i] == '-' || line[i] == '+') && numeric_start(line[start]) &&
                    (line[i - 1] == 'e' || line[i - 1] == 'E') && i + 1 < line.size() &&
                    std::isdigit(static_cast<unsigned char>(line[i + 1]))) {
                    i++;
                } else {
                    break;
                }
            }
            out.push_back({TokKind::Word, std::string(line.substr(start, i - start)), start + 1});
            continue;
        }
        if ((c == '-' && i + 1 < line.size() && line[i + 1] == '>') ||
            (c == '+' && i + 1 < line.size() && line[i + 1] == '=')) {
            out.push_back({TokKind::Sym, std::string(line.substr(i, 2)), start + 1});
            i += 2;
            continue;
        }
        out.push_back({TokKind::Sym, std::string(1, c), start + 1});
        i++;
    }
    out.push_back({TokKind::End, "", line.size() + 1});
    return out;
}

std::optional<double> to_real(const std::string &text) {
    if (text == "sqrt2") {
        return std::numbers::sqrt2;
    }
    if (text.empty() || !numeric_start(text[0])) {
        return std::nullopt;
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

class LineParser {
   public:
    LineParser(std::string_view line, std::size_t line_no) : toks_(tokenize(line)), line_(line_no) {
    }

    const Token &peek() const {
        return toks_[pos_];
    }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (t.kind != TokKind::End) {
            pos_++;
        }
        return t;
    }
    bool at_end() const {
        return peek().kind == TokKind::End;
    }
    bool peek_sym(std::string_view s) const {
        return peek().kind == TokKind::Sym && peek().text == s;
    }
    bool peek_word(std::string_view s) const {
        return peek().kind == TokKind::Word && peek().text == s;
    }

    [[noreturn]] void fail(const Token &at, const std::string &expected) const {
        throw ParseError(line_, at.column, expected, at.kind == TokKind::End ? "end of line" : at.text);
    }

    void expect_sym(std::string_view s) {
        if (!peek_sym(s)) {
            fail(peek(), "'" + std::string(s) + "'");
        }
        next();
    }
    void expect_word(std::string_view s) {
        if (!peek_word(s)) {
            fail(peek(), "'" + std::string(s) + "'");
        }
        next();
    }
    void expect_end() {
        if (!at_end()) {
            fail(peek(), "end of line");
        }
    }

    std::size_t uint(const std::string &what) {
        const Token &t = peek();
        if (t.kind != TokKind::Word || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(t, what);
        }
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc()) {
            fail(t, what);
        }
        next();
        return v;
    }

    std::size_t mode(std::size_t n) {
        const Token &t = peek();
        std::size_t m = uint("mode index");
        if (m < 1 || m > n) {
            fail(t, "mode in 1.." + std::to_string(n));
        }
        return m;
    }

    /// Optional sign followed by a number or sqrt2.
    double real(const std::string &what) {
        double sign = 1.0;
        if (peek_sym("-") || peek_sym("+")) {
            sign = next().text == "-" ? -1.0 : 1.0;
        }
        const Token &t = peek();
        auto v = t.kind == TokKind::Word ? to_real(t.text) : std::nullopt;
        if (!v) {
            fail(t, what);
        }
        next();
        return sign * *v;
    }

    Quadrature basis() {
        const Token &t = peek();
        if (!peek_word("x") && !peek_word("y")) {
            fail(t, "basis");
        }
        next();
        return t.text == "x" ? Quadrature::X : Quadrature::Y;
    }

    std::string name() {
        const Token &t = peek();
        bool ok = t.kind == TokKind::Word && !t.text.empty() &&
                  (std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_') &&
                  t.text.find('.') == std::string::npos;
        if (!ok) {
            fail(t, "record name");
        }
        next();
        return t.text;
    }

    /// term (('+'|'-') term)*, term = [coeff '*'] (x|y)<mode>.
    Combo combo(std::size_t n) {
        Combo out;
        double sign = 1.0;
        if (peek_sym("-") || peek_sym("+")) {
            sign = next().text == "-" ? -1.0 : 1.0;
        }
        while (true) {
            out.push_back(term(n, sign));
            if (peek_sym("+") || peek_sym("-")) {
                sign = next().text == "-" ? -1.0 : 1.0;
            } else {
                break;
            }
        }
        return out;
    }

    std::size_t line() const {
        return line_;
    }

   private:
    ComboTerm term(std::size_t n, double sign) {
        double coeff = 1.0;
        if (!quad_ref_ahead()) {
            coeff = real("coefficient");
            expect_sym("*");
        }
        const Token &t = peek();
        if (!quad_ref_ahead()) {
            fail(t, "quadrature such as x1 or y2");
        }
        next();
        Quadrature kind = t.text[0] == 'x' ? Quadrature::X : Quadrature::Y;
        std::size_t m = 0;
        std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), m);
        if (m < 1 || m > n) {
            throw ParseError(line_, t.column + 1, "mode in 1.." + std::to_string(n), t.text.substr(1));
        }
        return {sign * coeff, m, kind};
    }

    bool quad_ref_ahead() const {
        const Token &t = peek();
        return t.kind == TokKind::Word && t.text.size() >= 2 && (t.text[0] == 'x' || t.text[0] == 'y') &&
               t.text.find_first_not_of("0123456789", 1) == std::string::npos;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : Error(
          ErrorCode::Parse,
          std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected + ", found '" + found + "'"),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {
}

std::string ParseError::render(std::string_view file) const {
    return std::string(file) + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": expected " + expected_ +
           ", found '" + found_ + "'";
}

ScenarioError::ScenarioError(ErrorCode code, std::size_t line, std::size_t column, const std::string &message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {
}

std::string ScenarioError::render(std::string_view file) const {
    return std::string(file) + ":" + std::to_string(line_) + ":" + std::to_string(column_) + ": " + detail_;
}

std::size_t Scenario::num_modes() const {
    if (statements.empty()) {
        return 0;
    }
    if (const auto *r = std::get_if<stmt::RegisterDecl>(&statements.front().body)) {
        return r->n;
    }
    return 0;
}

Scenario parse_scenario(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    Scenario out;
    std::size_t n = 0;
    std::map<std::string, std::size_t> names;
    std::size_t line_no = 0;
    while (!text.empty() || line_no == 0) {
        line_no++;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        LineParser p(line, line_no);
        if (p.at_end()) {
            if (text.empty()) {
                break;
            }
            continue;
        }
        const Token kw = p.next();
        Statement st;
        st.line = line_no;
        st.column = kw.column;
        if (kw.kind != TokKind::Word) {
            p.fail(kw, "statement keyword");
        }
        if (kw.text == "register") {
            if (!out.statements.empty()) {
                p.fail(kw, "a single register statement before any other");
            }
            const Token &at = p.peek();
            n = p.uint("register size");
            if (n == 0) {
                p.fail(at, "register size >= 1");
            }
            st.body = stmt::RegisterDecl{n};
        } else {
            if (out.statements.empty()) {
                p.fail(kw, "'register' as the first statement");
            }
            if (kw.text == "squeeze") {
                std::size_t m = p.mode(n);
                const Token &d = p.peek();
                SqueezeDirection dir;
                if (p.peek_word("momentum")) {
                    dir = SqueezeDirection::MomentumSqueezed;
                } else if (p.peek_word("position")) {
                    dir = SqueezeDirection::PositionSqueezed;
                } else {
                    p.fail(d, "momentum or position");
                }
                p.next();
                st.body = stmt::Squeeze{m, dir};
            } else if (kw.text == "kerr") {
                stmt::Kerr k{p.mode(n), p.mode(n), 1.0};
                if (p.peek_word("g")) {
                    p.next();
                    p.expect_sym("=");
                    k.gain = p.real("gain");
                }
                st.body = k;
            } else if (kw.text == "rotate") {
                stmt::Rotate r{p.mode(n), std::nullopt, 0.0};
                const Token &at = p.peek();
                bool negative = false;
                if (p.peek_sym("-") || p.peek_sym("+")) {
                    negative = p.next().text == "-";
                }
                const Token &t = p.peek();
                std::string word = t.kind == TokKind::Word ? t.text : "";
                if (word.size() > 3 && word.ends_with("rad")) {
                    auto v = to_real(word.substr(0, word.size() - 3));
                    if (!v) {
                        p.fail(t, "angle -90, 90, 180 or <real>rad");
                    }
                    r.radians = negative ? -*v : *v;
                } else if (word == "90" || word == "180") {
                    int deg = std::stoi(word) * (negative ? -1 : 1);
                    r.quarter_turns = deg / 90;
                    r.radians = deg * std::numbers::pi / 180;
                } else {
                    p.fail(negative ? at : t, "angle -90, 90, 180 or <real>rad");
                }
                p.next();
                st.body = r;
            } else if (kw.text == "bs") {
                stmt::Beamsplit b{p.mode(n), p.mode(n), 0.5};
                if (p.peek_word("t")) {
                    p.next();
                    p.expect_sym("=");
                    const Token &at = p.peek();
                    b.transmittance = p.real("transmittance");
                    if (!(b.transmittance > 0 && b.transmittance < 1)) {
                        p.fail(at, "transmittance in (0, 1)");
                    }
                }
                st.body = b;
            } else if (kw.text == "measure") {
                Quadrature q = p.basis();
                std::size_t m = p.mode(n);
                p.expect_sym("->");
                const Token &at = p.peek();
                std::string name = p.name();
                if (names.contains(name)) {
                    p.fail(at, "a new record name");
                }
                names[name] = line_no;
                st.body = stmt::Measure{q, m, name};
            } else if (kw.text == "displace") {
                Quadrature q = p.basis();
                std::size_t m = p.mode(n);
                p.expect_sym("+=");
                double c = p.real("coefficient");
                p.expect_sym("*");
                const Token &at = p.peek();
                std::string name = p.name();
                if (!names.contains(name)) {
                    p.fail(at, "a bound record name");
                }
                st.body = stmt::Displace{q, m, c, name};
            } else if (kw.text == "assert") {
                if (p.peek_word("nullifier")) {
                    p.next();
                    st.body = stmt::AssertNullifier{p.combo(n)};
                } else if (p.peek_word("product")) {
                    p.next();
                    st.body = stmt::AssertProduct{};
                } else {
                    p.fail(p.peek(), "nullifier or product");
                }
            } else if (kw.text == "print") {
                p.expect_word("variance");
                stmt::PrintVariance pv{p.combo(n), {}};
                p.expect_word("at");
                p.expect_word("r");
                p.expect_sym("=");
                while (true) {
                    const Token &at = p.peek();
                    double r = p.real("squeezing value");
                    if (r < 0) {
                        p.fail(at, "nonnegative squeezing value");
                    }
                    pv.rs.push_back(r);
                    if (!p.peek_sym(",")) {
                        break;
                    }
                    p.next();
                }
                st.body = pv;
            } else {
                p.fail(kw, "statement keyword");
            }
        }
        p.expect_end();
        out.statements.push_back(std::move(st));
    }
    return out;
}

Combo parse_combo(std::string_view text) {
    LineParser p(text, 1);
    Combo c = p.combo(static_cast<std::size_t>(-1));
    p.expect_end();
    return c;
}

std::string format_number(double v) {
    if (v == std::numbers::sqrt2) {
        return "sqrt2";
    }
    if (v == -std::numbers::sqrt2) {
        return "-sqrt2";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_combo(const Combo &c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); i++) {
        double coeff = c[i].coeff;
        if (i > 0) {
            out += coeff < 0 || std::signbit(coeff) ? " - " : " + ";
            coeff = std::abs(coeff);
        }
        out += format_number(coeff) + "*" + quadrature_char(c[i].kind) + std::to_string(c[i].mode);
    }
    return out;
}

std::string pretty_print(const Scenario &s) {
    std::ostringstream out;
    for (const Statement &st : s.statements) {
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, stmt::RegisterDecl>) {
                    out << "register " << v.n;
                } else if constexpr (std::is_same_v<T, stmt::Squeeze>) {
                    out << "squeeze " << v.mode << " " << direction_name(v.direction);
                } else if constexpr (std::is_same_v<T, stmt::Kerr>) {
                    out << "kerr " << v.l << " " << v.k;
                    if (v.gain != 1.0) {
                        out << " g=" << format_number(v.gain);
                    }
                } else if constexpr (std::is_same_v<T, stmt::Rotate>) {
                    out << "rotate " << v.mode << " ";
                    if (v.quarter_turns) {
                        out << 90 * *v.quarter_turns;
                    } else {
                        out << format_number(v.radians) << "rad";
                    }
                } else if constexpr (std::is_same_v<T, stmt::Beamsplit>) {
                    out << "bs " << v.l << " " << v.k;
                    if (v.transmittance != 0.5) {
                        out << " t=" << format_number(v.transmittance);
                    }
                } else if constexpr (std::is_same_v<T, stmt::Measure>) {
                    out << "measure " << quadrature_char(v.kind) << " " << v.mode << " -> " << v.name;
                } else if constexpr (std::is_same_v<T, stmt::Displace>) {
                    out << "displace " << quadrature_char(v.kind) << " " << v.mode << " += " << format_number(v.coeff)
                        << "*" << v.name;
                } else if constexpr (std::is_same_v<T, stmt::AssertNullifier>) {
                    out << "assert nullifier " << format_combo(v.combo);
                } else if constexpr (std::is_same_v<T, stmt::AssertProduct>) {
                    out << "assert product";
                } else {
                    out << "print variance " << format_combo(v.combo) << " at r=";
                    for (std::size_t i = 0; i < v.rs.size(); i++) {
                        out << (i ? "," : "") << format_number(v.rs[i]);
                    }
                }
            },
            st.body);
        out << "\n";
    }
    return out.str();
}

std::string_view engine_name(Engine e) {
    return e == Engine::Ledger ? "ledger" : "covariance";
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

bool block_diagonal(const Eigen::MatrixXd &cov, double tol) {
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

Combo remap(const Combo &c, const std::vector<std::optional<std::size_t>> &index) {
    Combo out = c;
    for (auto &t : out) {
        if (t.mode < 1 || t.mode > index.size() || !index[t.mode - 1]) {
            throw Error(ErrorCode::ConsumedMode, "mode " + std::to_string(t.mode) + " has been measured");
        }
        t.mode = *index[t.mode - 1];
    }
    return out;
}

double shot_noise(const Combo &c) {
    double s = 0;
    for (const auto &t : c) {
        s += t.coeff * t.coeff;
    }
    return 0.5 * s;
}

class Executor {
   public:
    Executor(const RunOptions &options, RunReport &report) : opt_(options), rep_(report) {
    }

    void run(const Statement &st) {
        std::visit([&](const auto &v) {
            apply(st, v);
        }, st.body);
    }

   private:
    bool ledger() const {
        return opt_.engine == Engine::Ledger;
    }

    std::size_t idx(std::size_t mode) const {
        if (mode < 1 || mode > rep_.mode_index.size()) {
            throw Error(ErrorCode::InvalidIndex, "mode " + std::to_string(mode) + " out of range");
        }
        if (!rep_.mode_index[mode - 1]) {
            throw Error(ErrorCode::ConsumedMode, "mode " + std::to_string(mode) + " has been measured");
        }
        return *rep_.mode_index[mode - 1];
    }

    void gate(const Gate &g) {
        apply_gate_in_place(*rep_.gaussian, g);
    }

    void apply(const Statement &, const stmt::RegisterDecl &v) {
        if (ledger()) {
            rep_.ledger = Register::vacuum(v.n);
        } else {
            rep_.gaussian = GaussianState::vacuum(v.n);
        }
        rep_.mode_index.clear();
        for (std::size_t m = 1; m <= v.n; m++) {
            rep_.mode_index.push_back(m);
        }
    }
    void apply(const Statement &, const stmt::Squeeze &v) {
        if (ledger()) {
            rep_.ledger->squeeze(v.mode, v.direction);
        } else {
            gate(gate::Squeeze{idx(v.mode), *opt_.r, v.direction});
        }
    }
    void apply(const Statement &, const stmt::Kerr &v) {
        if (ledger()) {
            rep_.ledger->kerr_couple(v.l, v.k, v.gain);
        } else {
            if (v.l == v.k) {
                throw Error(ErrorCode::SelfInteraction, "kerr needs two distinct modes");
            }
            gate(gate::Kerr{idx(v.l), idx(v.k), v.gain});
        }
    }
    void apply(const Statement &, const stmt::Rotate &v) {
        if (ledger()) {
            if (v.quarter_turns) {
                rep_.ledger->rotate_quarter_turns(v.mode, *v.quarter_turns);
            } else {
                rep_.ledger->rotate(v.mode, v.radians);
            }
        } else {
            gate(gate::Rotate{idx(v.mode), v.radians});
        }
    }
    void apply(const Statement &, const stmt::Beamsplit &v) {
        if (ledger()) {
            rep_.ledger->beamsplit(v.l, v.k, v.transmittance);
        } else {
            if (v.l == v.k) {
                throw Error(ErrorCode::SelfInteraction, "bs needs two distinct modes");
            }
            gate(gate::Beamsplit{idx(v.l), idx(v.k), v.transmittance});
        }
    }
    void apply(const Statement &, const stmt::Measure &v) {
        if (ledger()) {
            records_[v.name] = rep_.ledger->measure(v.mode, v.kind).id;
            return;
        }
        std::uint64_t seed = opt_.seed.value_or(0) + measurements_++;
        HomodyneResult h = homodyne(*rep_.gaussian, idx(v.mode), v.kind, std::nullopt, seed);
        rep_.gaussian = h.state;
        for (auto &slot : rep_.mode_index) {
            if (slot) {
                slot = h.index_map[*slot - 1];
            }
        }
        outcomes_[v.name] = h.outcome;
        rep_.outcomes.push_back(v.name + " = " + csv_number(h.outcome));
    }
    void apply(const Statement &, const stmt::Displace &v) {
        if (ledger()) {
            auto it = records_.find(v.name);
            if (it == records_.end()) {
                throw Error(ErrorCode::Runtime, "unbound record name '" + v.name + "'");
            }
            rep_.ledger->displace_with(v.mode, v.kind, v.coeff, it->second);
            return;
        }
        auto it = outcomes_.find(v.name);
        if (it == outcomes_.end()) {
            throw Error(ErrorCode::Runtime, "unbound record name '" + v.name + "'");
        }
        std::size_t i = rep_.gaussian->index(idx(v.mode), v.kind);
        rep_.gaussian->mutable_mean()(static_cast<Eigen::Index>(i)) += v.coeff * it->second;
    }
    void apply(const Statement &st, const stmt::AssertNullifier &v) {
        AssertionOutcome a{st.line, "assert nullifier " + format_combo(v.combo), false, ""};
        if (ledger()) {
            QuadExpr e = rep_.ledger->combine(v.combo);
            a.passed = is_nullifier(e);
            a.detail = e.empty() ? "0" : e.str();
        } else {
            double var = variance_of(*rep_.gaussian, remap(v.combo, rep_.mode_index));
            double noise = shot_noise(v.combo);
            a.passed = var < noise;
            a.detail = "variance " + csv_number(var) + " vs shot noise " + csv_number(noise);
        }
        rep_.assertions.push_back(std::move(a));
    }
    void apply(const Statement &st, const stmt::AssertProduct &) {
        AssertionOutcome a{st.line, "assert product", false, ""};
        if (ledger()) {
            auto blocks = product_partition(*rep_.ledger);
            a.passed = std::all_of(blocks.begin(), blocks.end(), [](const auto &b) {
                return b.size() == 1;
            });
            a.detail = std::to_string(blocks.size()) + " blocks";
        } else {
            a.passed = block_diagonal(rep_.gaussian->cov(), 1e-9);
            a.detail = a.passed ? "block-diagonal covariance" : "cross-mode covariance present";
        }
        rep_.assertions.push_back(std::move(a));
    }
    void apply(const Statement &, const stmt::PrintVariance &v) {
        std::string text = format_combo(v.combo);
        if (ledger()) {
            QuadExpr e = rep_.ledger->combine(v.combo);
            for (double r : v.rs) {
                rep_.rows.push_back({text, r, variance_formula(e, r)});
            }
        } else {
            // The covariance state exists at one squeezing value only.
            rep_.rows.push_back({text, *opt_.r, variance_of(*rep_.gaussian, remap(v.combo, rep_.mode_index))});
        }
    }

    const RunOptions &opt_;
    RunReport &rep_;
    std::map<std::string, RecordId> records_;
    std::map<std::string, double> outcomes_;
    std::uint64_t measurements_ = 0;
};

}  // namespace

RunReport execute(const Scenario &s, const RunOptions &options) {
    if (options.engine == Engine::Covariance && !options.r) {
        throw Error(ErrorCode::Domain, "the covariance engine needs a numeric squeezing value r");
    }
    if (options.r && *options.r < 0) {
        throw Error(ErrorCode::Domain, "squeezing value r must be nonnegative");
    }
    if (s.statements.empty() || !std::holds_alternative<stmt::RegisterDecl>(s.statements.front().body)) {
        throw ScenarioError(ErrorCode::Runtime, 1, 1, "scenario must start with a register statement");
    }
    RunReport report;
    report.engine = options.engine;
    report.r = options.r;
    Executor ex(options, report);
    for (const Statement &st : s.statements) {
        try {
            ex.run(st);
        } catch (const ScenarioError &) {
            throw;
        } catch (const Error &e) {
            throw ScenarioError(e.code(), st.line, st.column, e.what());
        }
    }
    return report;
}

double final_variance(const RunReport &report, const Combo &combo, double r) {
    if (report.ledger) {
        return variance_formula(report.ledger->combine(combo), r);
    }
    if (report.gaussian) {
        return variance_of(*report.gaussian, remap(combo, report.mode_index));
    }
    throw Error(ErrorCode::Runtime, "scenario produced no state");
}

bool RunReport::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const AssertionOutcome &a) {
        return a.passed;
    });
}

std::string RunReport::csv() const {
    std::string out = "combo,r,variance\n";
    for (const auto &row : rows) {
        out += row.combo + "," + csv_number(row.r) + "," + csv_number(row.variance) + "\n";
    }
    return out;
}

std::string RunReport::render() const {
    std::ostringstream out;
    out << "engine: " << engine_name(engine);
    if (engine == Engine::Covariance && r) {
        out << " (r=" << csv_number(*r) << ")";
    }
    out << "\n";
    for (const auto &o : outcomes) {
        out << "outcome " << o << "\n";
    }
    std::size_t ok = 0;
    for (const auto &a : assertions) {
        ok += a.passed;
        out << "line " << a.line << ": " << a.text << " : " << (a.passed ? "PASS" : "FAIL") << " (" << a.detail
            << ")\n";
    }
    if (!rows.empty()) {
        out << csv();
    }
    out << "result: " << (passed() ? "PASS" : "FAIL") << " (" << ok << "/" << assertions.size()
        << " assertions)\n";
    return out.str();
}

}  // namespace cvcluster
