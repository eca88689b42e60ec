#include "cartan/expr.hpp"

#include <cctype>
#include <cstdlib>

namespace cartan {
namespace {

struct Parser {
    const std::string& s;
    const Chart& chart;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("expression parse error at offset " + std::to_string(pos) +
                    ": " + what + " in '" + s + "'");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    ScalarField parse() {
        ScalarField e = expr();
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return e;
    }

    ScalarField expr() {
        ScalarField acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    ScalarField term() {
        ScalarField acc = unary();
        for (;;) {
            if (eat('*'))
                acc = acc * unary();
            else if (eat('/'))
                acc = acc / unary();
            else
                return acc;
        }
    }

    ScalarField unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    ScalarField power() {
        ScalarField base = atom();
        if (eat('^')) {
            ScalarField e = unary();
            double c;
            if (!e.node()->constant_value(&c)) fail("exponent must be constant");
            return pow(base, c);
        }
        return base;
    }

    ScalarField atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos;
            ScalarField e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    ScalarField number() {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                s[pos] == 'e' || s[pos] == 'E' ||
                ((s[pos] == '+' || s[pos] == '-') && pos > start &&
                 (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
            ++pos;
        char* end = nullptr;
        const double v = std::strtod(s.c_str() + start, &end);
        if (end != s.c_str() + pos) fail("bad numeric literal");
        return ScalarField::constant(v);
    }

    ScalarField ident() {
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        const std::string name = s.substr(start, pos - start);
        if (peek() == '(') {
            ++pos;  // consume '('
            if (name == "pow") {
                ScalarField a = expr();
                if (!eat(',')) fail("pow expects two arguments");
                ScalarField b = expr();
                if (!eat(')')) fail("expected ')'");
                double c;
                if (!b.node()->constant_value(&c))
                    fail("pow exponent must be constant");
                return pow(a, c);
            }
            ScalarField a = expr();
            if (!eat(')')) fail("expected ')'");
            if (name == "exp") return exp(a);
            if (name == "log") return log(a);
            if (name == "sin") return sin(a);
            if (name == "cos") return cos(a);
            if (name == "sqrt") return sqrt(a);
            fail("unknown function '" + name + "'");
        }
        if (name == "pi") return ScalarField::constant(3.14159265358979323846);
        for (int i = 0; i < chart.dim(); ++i)
            if (chart.coord_names()[static_cast<size_t>(i)] == name)
                return ScalarField::coord(i);
        fail("unknown identifier '" + name + "'");
    }
};

}  // namespace

ScalarField parse_expression(const std::string& src, const Chart& chart) {
    Parser p{src, chart};
    return p.parse();
}

}  // namespace cartan
