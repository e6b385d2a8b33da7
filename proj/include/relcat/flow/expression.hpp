// Analytic expressions in the chart coordinates u, v, evaluated either as plain
// doubles or as second-order jets (value, gradient, Hessian).
//
// Grammar: sums and products of numbers, u, v, pi, e, parenthesized terms,
// unary minus, right-associative ^, and the functions
// sin cos tan exp log sqrt tanh sinh cosh abs.
#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcat::flow {

class ExpressionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// f with its first and second partials in (u, v).
struct Jet {
    double f = 0;
    double du = 0, dv = 0;
    double duu = 0, duv = 0, dvv = 0;

    static Jet constant(double c) { return Jet{c}; }
    static Jet u(double x) { return Jet{x, 1, 0}; }
    static Jet v(double y) { return Jet{y, 0, 1}; }

    // chain rule for x -> g(x) with g' = d1, g'' = d2
    Jet apply(double g, double d1, double d2) const
    {
        return Jet{g,
                   d1 * du,
                   d1 * dv,
                   d1 * duu + d2 * du * du,
                   d1 * duv + d2 * du * dv,
                   d1 * dvv + d2 * dv * dv};
    }
};

inline Jet operator+(const Jet& a, const Jet& b)
{
    return {a.f + b.f, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
}
inline Jet operator-(const Jet& a) { return {-a.f, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }
inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
inline Jet operator*(const Jet& a, const Jet& b)
{
    return {a.f * b.f,
            a.du * b.f + a.f * b.du,
            a.dv * b.f + a.f * b.dv,
            a.duu * b.f + 2 * a.du * b.du + a.f * b.duu,
            a.duv * b.f + a.du * b.dv + a.dv * b.du + a.f * b.duv,
            a.dvv * b.f + 2 * a.dv * b.dv + a.f * b.dvv};
}
inline Jet reciprocal(const Jet& a) { return a.apply(1 / a.f, -1 / (a.f * a.f), 2 / (a.f * a.f * a.f)); }
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet sin(const Jet& a) { return a.apply(std::sin(a.f), std::cos(a.f), -std::sin(a.f)); }
inline Jet cos(const Jet& a) { return a.apply(std::cos(a.f), -std::sin(a.f), -std::cos(a.f)); }
inline Jet tan(const Jet& a)
{
    double t = std::tan(a.f), s = 1 + t * t;
    return a.apply(t, s, 2 * t * s);
}
inline Jet exp(const Jet& a)
{
    double e = std::exp(a.f);
    return a.apply(e, e, e);
}
inline Jet log(const Jet& a) { return a.apply(std::log(a.f), 1 / a.f, -1 / (a.f * a.f)); }
inline Jet sqrt(const Jet& a)
{
    double s = std::sqrt(a.f);
    return a.apply(s, 0.5 / s, -0.25 / (s * a.f));
}
inline Jet tanh(const Jet& a)
{
    double t = std::tanh(a.f), s = 1 - t * t;
    return a.apply(t, s, -2 * t * s);
}
inline Jet sinh(const Jet& a) { return a.apply(std::sinh(a.f), std::cosh(a.f), std::sinh(a.f)); }
inline Jet cosh(const Jet& a) { return a.apply(std::cosh(a.f), std::sinh(a.f), std::cosh(a.f)); }
inline Jet abs(const Jet& a) { return a.f < 0 ? -a : a; }

inline Jet pow(const Jet& a, const Jet& b)
{
    bool const_exponent = b.du == 0 && b.dv == 0 && b.duu == 0 && b.duv == 0 && b.dvv == 0;
    if (const_exponent) {
        double n = b.f;
        if (n == 0)
            return Jet::constant(1);
        double p2 = std::pow(a.f, n - 2);
        return a.apply(std::pow(a.f, n), n * std::pow(a.f, n - 1), n * (n - 1) * p2);
    }
    return exp(b * log(a));
}

class Expression {
public:
    Expression() = default;
    explicit Expression(std::string text) : text_(std::move(text))
    {
        Parser p{text_, 0};
        root_ = p.parse_sum();
        p.skip();
        if (p.pos != text_.size())
            throw ExpressionError("unexpected '" + text_.substr(p.pos) + "' in expression \"" + text_ + "\"");
    }

    const std::string& text() const { return text_; }
    bool empty() const { return !root_; }

    double operator()(double u, double v) const { return root_ ? root_->eval(u, v) : 0.0; }
    Jet jet(double u, double v) const { return root_ ? root_->jet(Jet::u(u), Jet::v(v)) : Jet{}; }

private:
    struct Node {
        enum class Op { Num, U, V, Add, Sub, Mul, Div, Pow, Neg, Call } op = Op::Num;
        double value = 0;
        std::string fn;
        std::unique_ptr<Node> a, b;

        template <class T>
        T eval_as(const T& u, const T& v) const
        {
            using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan, std::tanh, std::sinh, std::cosh,
                std::abs, std::pow;
            switch (op) {
            case Op::Num: return T(value);
            case Op::U: return u;
            case Op::V: return v;
            case Op::Add: return a->eval_as(u, v) + b->eval_as(u, v);
            case Op::Sub: return a->eval_as(u, v) - b->eval_as(u, v);
            case Op::Mul: return a->eval_as(u, v) * b->eval_as(u, v);
            case Op::Div: return a->eval_as(u, v) / b->eval_as(u, v);
            case Op::Pow: return pow(a->eval_as(u, v), b->eval_as(u, v));
            case Op::Neg: return -a->eval_as(u, v);
            case Op::Call: {
                T x = a->eval_as(u, v);
                if (fn == "sin") return sin(x);
                if (fn == "cos") return cos(x);
                if (fn == "tan") return tan(x);
                if (fn == "exp") return exp(x);
                if (fn == "log") return log(x);
                if (fn == "sqrt") return sqrt(x);
                if (fn == "tanh") return tanh(x);
                if (fn == "sinh") return sinh(x);
                if (fn == "cosh") return cosh(x);
                return abs(x);
            }
            }
            return T(0);
        }
        double eval(double u, double v) const { return eval_as<double>(u, v); }
        Jet jet(const Jet& u, const Jet& v) const { return eval_as<Jet>(u, v); }
    };

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip()
        {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
        }
        bool eat(char c)
        {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& what) const
        {
            throw ExpressionError(what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
        }
        static std::unique_ptr<Node> binary(typename Node::Op op, std::unique_ptr<Node> a, std::unique_ptr<Node> b)
        {
            auto n = std::make_unique<Node>();
            n->op = op;
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }

        std::unique_ptr<Node> parse_sum()
        {
            auto lhs = parse_product();
            while (true) {
                if (eat('+'))
                    lhs = binary(Node::Op::Add, std::move(lhs), parse_product());
                else if (eat('-'))
                    lhs = binary(Node::Op::Sub, std::move(lhs), parse_product());
                else
                    return lhs;
            }
        }
        std::unique_ptr<Node> parse_product()
        {
            auto lhs = parse_unary();
            while (true) {
                if (eat('*'))
                    lhs = binary(Node::Op::Mul, std::move(lhs), parse_unary());
                else if (eat('/'))
                    lhs = binary(Node::Op::Div, std::move(lhs), parse_unary());
                else
                    return lhs;
            }
        }
        std::unique_ptr<Node> parse_unary()
        {
            if (eat('-')) {
                auto n = std::make_unique<Node>();
                n->op = Node::Op::Neg;
                n->a = parse_unary();
                return n;
            }
            if (eat('+'))
                return parse_unary();
            return parse_power();
        }
        std::unique_ptr<Node> parse_power()
        {
            auto base = parse_atom();
            if (eat('^'))
                return binary(Node::Op::Pow, std::move(base), parse_unary());
            return base;
        }
        std::unique_ptr<Node> parse_atom()
        {
            skip();
            if (pos >= s.size())
                fail("unexpected end");
            if (eat('(')) {
                auto e = parse_sum();
                if (!eat(')'))
                    fail("expected ')'");
                return e;
            }
            char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t used = 0;
                double x = std::stod(s.substr(pos), &used);
                pos += used;
                auto n = std::make_unique<Node>();
                n->value = x;
                return n;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t start = pos;
                while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                    ++pos;
                std::string name = s.substr(start, pos - start);
                auto n = std::make_unique<Node>();
                if (name == "u") {
                    n->op = Node::Op::U;
                } else if (name == "v") {
                    n->op = Node::Op::V;
                } else if (name == "pi") {
                    n->value = std::numbers::pi;
                } else if (name == "e") {
                    n->value = std::numbers::e;
                } else {
                    static const std::vector<std::string> fns{"sin",  "cos",  "tan",  "exp",  "log",
                                                              "sqrt", "tanh", "sinh", "cosh", "abs"};
                    bool known = false;
                    for (const auto& f : fns)
                        known = known || f == name;
                    if (!known)
                        fail("unknown name '" + name + "'");
                    if (!eat('('))
                        fail("expected '(' after " + name);
                    n->op = Node::Op::Call;
                    n->fn = name;
                    n->a = parse_sum();
                    if (!eat(')'))
                        fail("expected ')'");
                }
                return n;
            }
            fail(std::string("unexpected '") + c + "'");
        }
    };

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace relcat::flow
