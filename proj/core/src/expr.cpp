#include "hbern/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

namespace hbern {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

enum class NodeKind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Node {
    NodeKind kind;
    double num = 0.0;
    int var = 0;                     // index into variable list
    std::string name;                // function name for Call
    std::shared_ptr<const Node> a, b;
    size_t offset = 0;               // source offset for diagnostics
    std::string text;                // source slice for domain diagnostics
};

using NodeP = std::shared_ptr<const Node>;

struct Token {
    enum Kind { Num, Ident, Op, LParen, RParen, Comma, End } kind;
    double num = 0.0;
    std::string text;
    char op = 0;
    size_t offset = 0;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t start = i;
            while (i < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                    i = j;
                    while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
                }
            }
            Token t;
            t.kind = Token::Num;
            t.text = src.substr(start, i - start);
            t.offset = start;
            t.num = std::strtod(t.text.c_str(), nullptr);
            out.push_back(t);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Token::Ident, 0.0, src.substr(start, i - start), 0, start});
            continue;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                out.push_back({Token::Op, 0.0, std::string(1, c), c, i});
                break;
            case '(': out.push_back({Token::LParen, 0.0, "(", 0, i}); break;
            case ')': out.push_back({Token::RParen, 0.0, ")", 0, i}); break;
            case ',': out.push_back({Token::Comma, 0.0, ",", 0, i}); break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
    }
    out.push_back({Token::End, 0.0, "", 0, src.size()});
    return out;
}

const char* const kFunctions[] = {"sin", "cos", "tan", "cot", "tanh",
                                  "cosh", "exp", "log", "sqrt", "atan"};

bool is_function(const std::string& s) {
    for (const char* f : kFunctions)
        if (s == f) return true;
    return false;
}

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& vars)
        : src_(src), vars_(vars), toks_(lex(src)) {}

    NodeP parse_all() {
        NodeP e = parse_expr();
        if (cur().kind != Token::End)
            throw ParseError("unexpected trailing input", cur().offset);
        return e;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    NodeP make(NodeKind k, NodeP a, NodeP b, size_t off) const {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        n->offset = off;
        return n;
    }

    NodeP parse_expr() {
        NodeP lhs = parse_term();
        while (cur().kind == Token::Op && (cur().op == '+' || cur().op == '-')) {
            char op = cur().op;
            size_t off = cur().offset;
            advance();
            NodeP rhs = parse_term();
            lhs = make(op == '+' ? NodeKind::Add : NodeKind::Sub, lhs, rhs, off);
        }
        return lhs;
    }

    NodeP parse_term() {
        NodeP lhs = parse_unary();
        while (cur().kind == Token::Op && (cur().op == '*' || cur().op == '/')) {
            char op = cur().op;
            size_t off = cur().offset;
            advance();
            NodeP rhs = parse_unary();
            lhs = make(op == '*' ? NodeKind::Mul : NodeKind::Div, lhs, rhs, off);
        }
        return lhs;
    }

    NodeP parse_unary() {
        if (cur().kind == Token::Op && cur().op == '-') {
            size_t off = cur().offset;
            advance();
            NodeP inner = parse_unary();
            return make(NodeKind::Neg, inner, nullptr, off);
        }
        if (cur().kind == Token::Op && cur().op == '+') {
            advance();
            return parse_unary();
        }
        return parse_power();
    }

    // '^' is right-associative and binds tighter than unary minus on the left.
    NodeP parse_power() {
        NodeP base = parse_primary();
        if (cur().kind == Token::Op && cur().op == '^') {
            size_t off = cur().offset;
            advance();
            if (cur().kind == Token::End)
                throw ParseError("missing exponent after '^'", cur().offset);
            NodeP expo = parse_unary();
            return make(NodeKind::Pow, base, expo, off);
        }
        return base;
    }

    NodeP parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::Num: {
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::Number;
                n->num = t.num;
                n->offset = t.offset;
                advance();
                return n;
            }
            case Token::Ident: {
                std::string name = t.text;
                size_t off = t.offset;
                advance();
                if (cur().kind == Token::LParen) {
                    if (!is_function(name))
                        throw ParseError("unknown function '" + name + "'", off);
                    advance();
                    NodeP arg = parse_expr();
                    if (cur().kind == Token::Comma)
                        throw ParseError("function '" + name + "' takes one argument", cur().offset);
                    if (cur().kind != Token::RParen)
                        throw ParseError("expected ')'", cur().offset);
                    advance();
                    auto n = std::make_shared<Node>();
                    n->kind = NodeKind::Call;
                    n->name = name;
                    n->a = arg;
                    n->offset = off;
                    n->text = name;
                    return n;
                }
                if (name == "pi") {
                    auto n = std::make_shared<Node>();
                    n->kind = NodeKind::Number;
                    n->num = kPi;
                    n->offset = off;
                    n->text = "pi";
                    return n;
                }
                if (name == "e") {
                    auto n = std::make_shared<Node>();
                    n->kind = NodeKind::Number;
                    n->num = kE;
                    n->offset = off;
                    n->text = "e";
                    return n;
                }
                for (size_t i = 0; i < vars_.size(); ++i) {
                    if (vars_[i] == name) {
                        auto n = std::make_shared<Node>();
                        n->kind = NodeKind::Var;
                        n->var = static_cast<int>(i);
                        n->name = name;
                        n->offset = off;
                        return n;
                    }
                }
                if (is_function(name))
                    throw ParseError("function '" + name + "' needs an argument list", off);
                throw ParseError("unknown identifier '" + name + "'", off);
            }
            case Token::LParen: {
                advance();
                NodeP inner = parse_expr();
                if (cur().kind != Token::RParen)
                    throw ParseError("expected ')'", cur().offset);
                advance();
                return inner;
            }
            case Token::End:
                throw ParseError("unexpected end of input", t.offset);
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.offset);
        }
    }

    const std::string& src_;
    const std::vector<std::string>& vars_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

void format(const Node& n, std::ostream& os, int parent_prec);

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add: case NodeKind::Sub: return 1;
        case NodeKind::Mul: case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

void format(const Node& n, std::ostream& os, int parent_prec) {
    const int prec = precedence(n.kind);
    const bool paren = prec < parent_prec;
    if (paren) os << '(';
    switch (n.kind) {
        case NodeKind::Number: {
            if (!n.text.empty()) {
                os << n.text;
            } else {
                std::ostringstream tmp;
                tmp.precision(17);
                tmp << n.num;
                os << tmp.str();
            }
            break;
        }
        case NodeKind::Var: os << n.name; break;
        case NodeKind::Neg:
            os << '-';
            format(*n.a, os, prec + 1);
            break;
        case NodeKind::Add:
            format(*n.a, os, prec);
            os << " + ";
            format(*n.b, os, prec + 1);
            break;
        case NodeKind::Sub:
            format(*n.a, os, prec);
            os << " - ";
            format(*n.b, os, prec + 1);
            break;
        case NodeKind::Mul:
            format(*n.a, os, prec);
            os << "*";
            format(*n.b, os, prec + 1);
            break;
        case NodeKind::Div:
            format(*n.a, os, prec);
            os << "/";
            format(*n.b, os, prec + 1);
            break;
        case NodeKind::Pow:
            format(*n.a, os, prec + 1);
            os << "^";
            format(*n.b, os, prec);
            break;
        case NodeKind::Call:
            os << n.name << '(';
            format(*n.a, os, 0);
            os << ')';
            break;
    }
    if (paren) os << ')';
}

std::string node_text(const Node& n) {
    std::ostringstream os;
    format(n, os, 0);
    return os.str();
}

template <typename J>
void check_finite(const J& j, const Node& n) {
    const double* p = reinterpret_cast<const double*>(&j);
    for (size_t i = 0; i < sizeof(J) / sizeof(double); ++i)
        if (!std::isfinite(p[i])) throw DomainError("non-finite result", node_text(n));
}

bool is_const(const Node& n, double& out) {
    if (n.kind == NodeKind::Number) {
        out = n.num;
        return true;
    }
    if (n.kind == NodeKind::Neg) {
        double inner;
        if (is_const(*n.a, inner)) {
            out = -inner;
            return true;
        }
    }
    return false;
}

template <typename J, typename MakeVar>
J eval_node(const Node& n, const MakeVar& var_jet) {
    switch (n.kind) {
        case NodeKind::Number: return J::constant(n.num);
        case NodeKind::Var: return var_jet(n.var);
        case NodeKind::Neg: return -eval_node<J>(*n.a, var_jet);
        case NodeKind::Add: return eval_node<J>(*n.a, var_jet) + eval_node<J>(*n.b, var_jet);
        case NodeKind::Sub: return eval_node<J>(*n.a, var_jet) - eval_node<J>(*n.b, var_jet);
        case NodeKind::Mul: return eval_node<J>(*n.a, var_jet) * eval_node<J>(*n.b, var_jet);
        case NodeKind::Div: {
            J num = eval_node<J>(*n.a, var_jet);
            J den = eval_node<J>(*n.b, var_jet);
            if (den.v == 0.0) throw DomainError("division by zero", node_text(n));
            J r = num / den;
            check_finite(r, n);
            return r;
        }
        case NodeKind::Pow: {
            J base = eval_node<J>(*n.a, var_jet);
            double ce;
            if (is_const(*n.b, ce)) {
                if (ce == std::floor(ce) && std::abs(ce) < 1e9) {
                    if (base.v == 0.0 && ce < 0.0)
                        throw DomainError("zero raised to negative power", node_text(n));
                    J r = pow_int(base, static_cast<long long>(ce));
                    check_finite(r, n);
                    return r;
                }
                if (base.v <= 0.0)
                    throw DomainError("non-integer power of non-positive base", node_text(n));
                J r = exp(ce * log(base));
                check_finite(r, n);
                return r;
            }
            J expo = eval_node<J>(*n.b, var_jet);
            if (base.v <= 0.0)
                throw DomainError("non-integer power of non-positive base", node_text(n));
            J r = exp(expo * log(base));
            check_finite(r, n);
            return r;
        }
        case NodeKind::Call: {
            J a = eval_node<J>(*n.a, var_jet);
            J r;
            if (n.name == "sin") r = sin(a);
            else if (n.name == "cos") r = cos(a);
            else if (n.name == "tan") {
                if (std::abs(std::cos(a.v)) < 1e-13)
                    throw DomainError("tan evaluated at a pole", node_text(n));
                r = tan(a);
            } else if (n.name == "cot") {
                if (std::abs(std::sin(a.v)) < 1e-13)
                    throw DomainError("cot evaluated at a pole", node_text(n));
                r = cot(a);
            } else if (n.name == "tanh") r = tanh(a);
            else if (n.name == "cosh") r = cosh(a);
            else if (n.name == "exp") r = exp(a);
            else if (n.name == "log") {
                if (a.v <= 0.0) throw DomainError("log of non-positive value", node_text(n));
                r = log(a);
            } else if (n.name == "sqrt") {
                if (a.v < 0.0) throw DomainError("sqrt of negative value", node_text(n));
                if (a.v == 0.0) throw DomainError("sqrt jet singular at zero", node_text(n));
                r = sqrt(a);
            } else if (n.name == "atan") r = atan(a);
            else throw DomainError("unknown function", n.name);
            check_finite(r, n);
            return r;
        }
    }
    throw DomainError("corrupt expression tree", "");
}

class TreeFn final : public detail::FnImpl {
public:
    TreeFn(NodeP root, std::vector<std::string> vars)
        : root_(std::move(root)), vars_(std::move(vars)) {}

    int arity() const override { return static_cast<int>(vars_.size()); }

    Jet1 jet1(double t) const override {
        if (arity() != 1) throw DomainError("arity mismatch: expected 1 variable", print());
        return eval_node<Jet1>(*root_, [t](int) { return Jet1::variable(t); });
    }
    Jet2 jet2(double u, double v) const override {
        if (arity() == 1)
            throw DomainError("arity mismatch: expected 2 variables", print());
        return eval_node<Jet2>(*root_, [u, v](int i) {
            return i == 0 ? Jet2::var_x(u) : Jet2::var_y(v);
        });
    }
    std::string print() const override { return node_text(*root_); }

private:
    NodeP root_;
    std::vector<std::string> vars_;
};

// Hand-coded jets for the named generator families. These are independent
// of the tree evaluator and serve as its oracle in tests.

class TanTanhFn final : public detail::FnImpl {
public:
    int arity() const override { return 1; }
    Jet1 jet1(double t) const override {
        const double u = std::tanh(t);
        const double G = std::tan(u);
        const double A = 1.0 - u * u;       // sech^2
        const double B = 1.0 + G * G;       // sec^2 of tanh
        const double d1 = A * B;
        const double d2 = d1 * (-2.0 * u + 2.0 * G * A);
        const double d3 = d2 * (-2.0 * u + 2.0 * G * A) +
                          d1 * (-2.0 * A + 2.0 * A * A * B - 4.0 * u * G * A);
        return {G, d1, d2, d3};
    }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override { return "tan(tanh(t))"; }
};

class AffineFn final : public detail::FnImpl {
public:
    AffineFn(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
    int arity() const override { return 1; }
    Jet1 jet1(double t) const override { return {alpha_ * t + beta_, alpha_, 0.0, 0.0}; }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override {
        std::ostringstream os;
        os.precision(17);
        os << alpha_ << "*t + " << beta_;
        return os.str();
    }

private:
    double alpha_, beta_;
};

class CotShiftFn final : public detail::FnImpl {
public:
    int arity() const override { return 1; }
    Jet1 jet1(double t) const override {
        // cot(pi/2 - t) = tan(t)
        const double G = std::tan(t);
        const double w = 1.0 + G * G;
        return {G, w, 2.0 * G * w, 2.0 * w * (1.0 + 3.0 * G * G)};
    }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override { return "cot(pi/2 - t)"; }
};

class SquarePosFn final : public detail::FnImpl {
public:
    int arity() const override { return 1; }
    Jet1 jet1(double t) const override { return {t * t, 2.0 * t, 2.0, 0.0}; }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override { return "t^2"; }
};

}  // namespace

ScalarFn parse(const std::string& src, const std::vector<std::string>& vars) {
    if (vars.empty() || vars.size() > 2)
        throw ParseError("expected one or two context variables", 0);
    Parser p(src, vars);
    return ScalarFn(std::make_shared<TreeFn>(p.parse_all(), vars));
}

BuiltinFn builtin_tan_tanh() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {ScalarFn(std::make_shared<TanTanhFn>()), {-inf, inf}};
}
BuiltinFn builtin_affine(double alpha, double beta) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {ScalarFn(std::make_shared<AffineFn>(alpha, beta)), {-inf, inf}};
}
BuiltinFn builtin_cot_shift() {
    constexpr double half_pi = 1.57079632679489661923;
    return {ScalarFn(std::make_shared<CotShiftFn>()), {-half_pi, half_pi}};
}
BuiltinFn builtin_square_pos() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {ScalarFn(std::make_shared<SquarePosFn>()), {0.0, inf}};
}

namespace {
class ShiftedFn final : public detail::FnImpl {
public:
    ShiftedFn(ScalarFn inner, double t0) : inner_(std::move(inner)), t0_(t0) {}
    int arity() const override { return 1; }
    Jet1 jet1(double t) const override { return inner_.jet(t0_ + t); }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override { return inner_.print(); }

private:
    ScalarFn inner_;
    double t0_;
};
}  // namespace

ScalarFn shift_arg(const ScalarFn& f, double t0) {
    if (f.arity() != 1) throw ParseError("shift_arg: needs an arity-1 function", 0);
    return ScalarFn(std::make_shared<ShiftedFn>(f, t0));
}

BuiltinFn builtin(const std::string& name, const std::vector<double>& params) {
    if (name == "tan_tanh") return builtin_tan_tanh();
    if (name == "affine") {
        if (params.size() != 2) throw ParseError("affine builtin needs two parameters", 0);
        return builtin_affine(params[0], params[1]);
    }
    if (name == "cot_shift") return builtin_cot_shift();
    if (name == "square_pos") return builtin_square_pos();
    throw ParseError("unknown builtin '" + name + "'", 0);
}

}  // namespace hbern
