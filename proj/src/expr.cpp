#include "wgeo/expr.hpp"

#include <cctype>

namespace wgeo {

namespace {

struct Parser {
    const std::string& s;
    const Vars& vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void bad(const std::string& what) {
        fail("BadExpression", what + " at offset " + std::to_string(pos) + " in '" + s + "'");
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        while (true) {
            if (eat('*')) acc *= unary();
            else if (eat('/')) acc /= unary();
            else return acc;
        }
    }

    RatFunc unary() {
        if (eat('-')) return -unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        if (eat('^')) {
            bool neg = eat('-');
            if (!std::isdigit(static_cast<unsigned char>(peek()))) bad("expected integer exponent");
            long e = integer();
            return base.pow(static_cast<int>(neg ? -e : e));
        }
        return base;
    }

    long integer() {
        skip_ws();
        long v = 0;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            require(v >= 0 && v < (1L << 40), "BadExpression", "integer literal too large");
            ++pos;
        }
        if (pos == start) bad("expected integer");
        return v;
    }

    RatFunc primary() {
        char c = peek();
        if (c == '(') {
            ++pos;
            RatFunc e = expr();
            if (!eat(')')) bad("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            // large literals go through GMP
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Rational r = Rational::from_string(s.substr(start, pos - start));
            return RatFunc::constant(vars.arity(), r);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string id = s.substr(start, pos - start);
            int idx = vars.index_of(id);
            if (idx < 0)
                fail("UnknownVariable", "'" + id + "' is not a variable of this chart (n=" +
                                            std::to_string(vars.n()) + ")");
            return RatFunc::variable(vars.arity(), idx);
        }
        bad("unexpected character");
    }
};

void append_mono(std::string& out, const Mono& m, const Vars& vars, bool lead_coeff_one) {
    bool first = lead_coeff_one;
    for (int k = 0; k < vars.arity(); ++k) {
        if (m.e[k] == 0) continue;
        if (!first) out += '*';
        first = false;
        out += vars.name(k);
        if (m.e[k] > 1) {
            out += '^';
            out += std::to_string(static_cast<int>(m.e[k]));
        }
    }
}

} // namespace

RatFunc parse_expr(const std::string& src, const Vars& vars) {
    Parser p{src, vars};
    RatFunc e = p.expr();
    p.skip_ws();
    if (p.pos != src.size()) p.bad("trailing input");
    return e;
}

std::string to_string(const Polynomial& p, const Vars& vars) {
    require(p.arity() == vars.arity(), "ArityMismatch", "printing with wrong variable universe");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) out += '-';
            first = false;
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        bool mono_empty = m.total_degree() == 0;
        if (!a.is_one() || mono_empty) {
            out += a.str();
            if (!mono_empty) out += '*';
            append_mono(out, m, vars, true);
        } else {
            append_mono(out, m, vars, true);
        }
    }
    return out;
}

std::string to_string(const RatFunc& f, const Vars& vars) {
    if (f.is_polynomial()) return to_string(f.num(), vars);
    return "(" + to_string(f.num(), vars) + ")/(" + to_string(f.den(), vars) + ")";
}

} // namespace wgeo
