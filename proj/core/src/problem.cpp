#include "detsolve/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace detsolve {

namespace {

struct ExprParser {
    const std::string& text;
    size_t line, col0;  // position of text[0] in the source
    size_t pos = 0;
    SlpBuilder& b;
    const std::vector<std::string>& vars;

    ExprParser(const std::string& t, size_t line_, size_t col0_, SlpBuilder& b_,
               const std::vector<std::string>& vars_)
        : text(t), line(line_), col0(col0_), b(b_), vars(vars_) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(line, col0 + pos, what);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    uint32_t parse_expr() {
        skip_ws();
        uint32_t acc;
        if (eat('-')) {
            acc = b.sub(b.constant(0), parse_term());
        } else {
            eat('+');
            acc = parse_term();
        }
        while (true) {
            if (eat('+')) {
                acc = b.add(acc, parse_term());
            } else if (eat('-')) {
                acc = b.sub(acc, parse_term());
            } else {
                return acc;
            }
        }
    }
    uint32_t parse_term() {
        uint32_t acc = parse_factor();
        while (eat('*')) acc = b.mul(acc, parse_factor());
        return acc;
    }
    uint32_t parse_factor() {
        uint32_t base = parse_atom();
        if (eat('^')) {
            skip_ws();
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                fail("exponent must be a nonnegative integer");
            uint64_t e = parse_nat();
            return b.pow(base, e);
        }
        return base;
    }
    uint64_t parse_nat() {
        size_t start = pos;
        uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (pos - start > 17) fail("integer literal too long");
            v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
            ++pos;
        }
        return v;
    }
    uint32_t parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            uint32_t e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            ++pos;
            return b.sub(b.constant(0), parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return b.constant(static_cast<int64_t>(parse_nat()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                    text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return b.input(static_cast<uint32_t>(i));
            pos = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    uint32_t run() {
        uint32_t slot = parse_expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input in expression");
        return slot;
    }
};

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Slp parse_expression(const std::string& text, const std::vector<std::string>& vars) {
    SlpBuilder b(static_cast<uint32_t>(vars.size()));
    ExprParser p(text, 1, 1, b, vars);
    b.output(p.run());
    return b.take();
}

ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    bool have_vars = false, have_matrix = false;
    size_t rows_read = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        if (trim(line).empty()) continue;

        std::istringstream ls(line);
        std::string kw;
        if (!have_vars) {
            ls >> kw;
            if (kw != "vars") throw ParseError(lineno, 1, "expected 'vars'");
            std::string name;
            while (ls >> name) {
                if (std::find(spec.var_names.begin(), spec.var_names.end(), name) !=
                    spec.var_names.end())
                    throw ParseError(lineno, 1, "duplicate variable '" + name + "'");
                spec.var_names.push_back(name);
            }
            if (spec.var_names.empty())
                throw ParseError(lineno, 1, "at least one variable is required");
            have_vars = true;
            continue;
        }
        if (!have_matrix) {
            ls >> kw;
            if (kw != "matrix")
                throw ParseError(lineno, 1, "expected 'matrix p q' after vars");
            long long pp = -1, qq = -1;
            ls >> pp >> qq;
            if (pp < 1 || qq < 1)
                throw ParseError(lineno, 1, "matrix dimensions must be positive");
            spec.p = static_cast<size_t>(pp);
            spec.q = static_cast<size_t>(qq);
            have_matrix = true;
            continue;
        }
        if (rows_read < spec.p) {
            // one matrix row: q entries separated by '|'
            ++rows_read;
            std::vector<std::string> cells;
            size_t start = 0;
            for (size_t i = 0; i <= line.size(); ++i) {
                if (i == line.size() || line[i] == '|') {
                    cells.push_back(trim(line.substr(start, i - start)));
                    start = i + 1;
                }
            }
            if (cells.size() != spec.q)
                throw ParseError(lineno, 1,
                                 "matrix row has " + std::to_string(cells.size()) +
                                     " entries, expected " + std::to_string(spec.q));
            for (auto& c : cells) {
                if (c.empty()) throw ParseError(lineno, 1, "empty matrix entry");
                spec.f_text.push_back(c);
            }
            continue;
        }
        ls >> kw;
        if (kw == "eq") {
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            if (rest.empty()) throw ParseError(lineno, 1, "empty 'eq' expression");
            spec.g_text.push_back(rest);
            continue;
        }
        throw ParseError(lineno, 1, "unexpected line '" + trim(line) + "'");
    }
    if (!have_vars || !have_matrix || rows_read < spec.p)
        throw ParseError(lineno, 1, "incomplete problem description");
    spec.s = spec.g_text.size();

    const size_t n = spec.var_names.size();
    int64_t expect = static_cast<int64_t>(spec.q) - static_cast<int64_t>(spec.p) +
                     static_cast<int64_t>(spec.s) + 1;
    if (expect < 1 || n != static_cast<size_t>(expect))
        throw DimensionMismatchError("got " + std::to_string(n) +
                                     " variables, but q - p + s + 1 = " +
                                     std::to_string(expect));

    // build the combined programs and the degree profile
    SlpBuilder fb(static_cast<uint32_t>(n));
    std::vector<int64_t> fdeg;
    {
        std::vector<uint32_t> xs(n);
        for (size_t i = 0; i < n; ++i) xs[i] = fb.input(static_cast<uint32_t>(i));
        for (const std::string& cell : spec.f_text) {
            Slp one = parse_expression(cell, spec.var_names);
            fdeg.push_back(slp_output_degrees(one)[0]);
            fb.output(fb.splice(one, xs)[0]);
        }
    }
    spec.F = fb.take();

    SlpBuilder gb(static_cast<uint32_t>(n));
    std::vector<int64_t> gdeg;
    {
        std::vector<uint32_t> xs(n);
        for (size_t i = 0; i < n; ++i) xs[i] = gb.input(static_cast<uint32_t>(i));
        for (const std::string& e : spec.g_text) {
            Slp one = parse_expression(e, spec.var_names);
            gdeg.push_back(slp_output_degrees(one)[0]);
            gb.output(gb.splice(one, xs)[0]);
        }
    }
    spec.G = gb.take();

    spec.profile.p = spec.p;
    spec.profile.q = spec.q;
    spec.profile.s = spec.s;
    spec.profile.n = n;
    spec.profile.cdeg.assign(spec.q, 0);
    spec.profile.rdeg.assign(spec.p, 0);
    for (size_t i = 0; i < spec.p; ++i)
        for (size_t j = 0; j < spec.q; ++j) {
            uint64_t d = static_cast<uint64_t>(std::max<int64_t>(fdeg[i * spec.q + j], 0));
            spec.profile.cdeg[j] = std::max(spec.profile.cdeg[j], d);
            spec.profile.rdeg[i] = std::max(spec.profile.rdeg[i], d);
        }
    spec.profile.gdeg.assign(gdeg.begin(), gdeg.end());
    return spec;
}

std::string print_problem(const ProblemSpec& spec) {
    std::ostringstream out;
    out << "vars";
    for (const auto& v : spec.var_names) out << ' ' << v;
    out << "\nmatrix " << spec.p << ' ' << spec.q << '\n';
    for (size_t i = 0; i < spec.p; ++i) {
        for (size_t j = 0; j < spec.q; ++j) {
            if (j) out << " | ";
            out << spec.f_text[i * spec.q + j];
        }
        out << '\n';
    }
    for (const auto& g : spec.g_text) out << "eq " << g << '\n';
    return out.str();
}

}  // namespace detsolve
