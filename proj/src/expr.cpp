#include "crverify/expr.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace crv {

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::size_t index = 0;
    int exponent = 0;
    std::size_t dim = 0;
    bool variable_free = true;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

std::size_t combine_dims(std::size_t a, std::size_t b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw std::invalid_argument("expressions declared over charts of different dimension (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
}

bool is_unary(Expr::Op op) {
    switch (op) {
    case Expr::Op::Neg:
    case Expr::Op::Sin:
    case Expr::Op::Cos:
    case Expr::Op::Exp:
    case Expr::Op::Sqrt:
        return true;
    default:
        return false;
    }
}

bool is_binary(Expr::Op op) {
    switch (op) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div:
        return true;
    default:
        return false;
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset),
      detail_(message) {}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite constant in expression");
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = value == 0.0 ? 0.0 : value;  // no signed zeros
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index, std::size_t dim) {
    if (index >= dim) {
        throw std::out_of_range("variable index " + std::to_string(index) +
                                " out of range for chart dimension " + std::to_string(dim));
    }
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->index = index;
    n->dim = dim;
    n->variable_free = false;
    return Expr(std::move(n));
}

Expr::Op Expr::op() const noexcept { return node_->op; }
std::size_t Expr::dim() const noexcept { return node_->dim; }

double Expr::value() const {
    if (op() != Op::Const) throw std::logic_error("Expr::value on a non-constant node");
    return node_->value;
}

std::size_t Expr::index() const {
    if (op() != Op::Var) throw std::logic_error("Expr::index on a non-variable node");
    return node_->index;
}

int Expr::exponent() const {
    if (op() != Op::Pow) throw std::logic_error("Expr::exponent on a non-power node");
    return node_->exponent;
}

Expr Expr::lhs() const {
    if (!node_->a || is_unary(op())) throw std::logic_error("Expr::lhs on a node without a left operand");
    return Expr(node_->a);
}

Expr Expr::rhs() const {
    if (!is_binary(op())) throw std::logic_error("Expr::rhs on a non-binary node");
    return Expr(node_->b);
}

Expr Expr::arg() const {
    if (!is_unary(op())) throw std::logic_error("Expr::arg on a non-unary node");
    return Expr(node_->a);
}

bool Expr::is_zero() const noexcept { return op() == Op::Const && node_->value == 0.0; }
bool Expr::is_one() const noexcept { return op() == Op::Const && node_->value == 1.0; }
bool Expr::is_variable_free() const noexcept { return node_->variable_free; }

namespace {

NodePtr make_node(Expr::Op op, const NodePtr& a, const NodePtr& b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->a = a;
    n->b = b;
    n->dim = b ? combine_dims(a->dim, b->dim) : a->dim;
    n->variable_free = a->variable_free && (!b || b->variable_free);
    return n;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
    combine_dims(a.dim(), b.dim());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Expr(make_node(Expr::Op::Add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
    combine_dims(a.dim(), b.dim());
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return Expr(make_node(Expr::Op::Sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
    combine_dims(a.dim(), b.dim());
    if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return Expr(make_node(Expr::Op::Mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && b.value() != 0.0) {
        return Expr::constant(a.value() / b.value());
    }
    combine_dims(a.dim(), b.dim());
    if (b.is_one()) return a;
    if (a.is_zero() && !b.is_zero()) return Expr::constant(0.0);
    return Expr(make_node(Expr::Op::Div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return Expr::constant(-a.value());
    if (a.op() == Expr::Op::Neg) return a.arg();
    return Expr(make_node(Expr::Op::Neg, a.node_));
}

Expr pow(const Expr& base, int exponent) {
    if (exponent == 0) return Expr::constant(1.0);
    if (exponent == 1) return base;
    if (base.is_constant() && (base.value() != 0.0 || exponent > 0)) {
        const double v = std::pow(base.value(), exponent);
        if (std::isfinite(v)) return Expr::constant(v);
    }
    auto n = std::make_shared<Expr::Node>();
    n->op = Expr::Op::Pow;
    n->exponent = exponent;
    n->a = base.node_;
    n->dim = base.dim();
    n->variable_free = base.is_variable_free();
    return Expr(std::move(n));
}

Expr sin(const Expr& a) {
    if (a.is_constant()) return Expr::constant(std::sin(a.value()));
    return Expr(make_node(Expr::Op::Sin, a.node_));
}

Expr cos(const Expr& a) {
    if (a.is_constant()) return Expr::constant(std::cos(a.value()));
    return Expr(make_node(Expr::Op::Cos, a.node_));
}

Expr exp(const Expr& a) {
    if (a.is_constant() && std::isfinite(std::exp(a.value()))) return Expr::constant(std::exp(a.value()));
    return Expr(make_node(Expr::Op::Exp, a.node_));
}

Expr sqrt(const Expr& a) {
    if (a.is_constant() && a.value() >= 0.0) return Expr::constant(std::sqrt(a.value()));
    return Expr(make_node(Expr::Op::Sqrt, a.node_));
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double eval_node(const NodePtr& n, std::span<const double> p);

double checked(double v, const NodePtr& n, const char* what);

double eval_node(const NodePtr& n, std::span<const double> p) {
    using Op = Expr::Op;
    switch (n->op) {
    case Op::Const:
        return n->value;
    case Op::Var:
        return p[n->index];
    case Op::Add:
        return checked(eval_node(n->a, p) + eval_node(n->b, p), n, "overflow");
    case Op::Sub:
        return checked(eval_node(n->a, p) - eval_node(n->b, p), n, "overflow");
    case Op::Mul:
        return checked(eval_node(n->a, p) * eval_node(n->b, p), n, "overflow");
    case Op::Div: {
        const double num = eval_node(n->a, p);
        const double den = eval_node(n->b, p);
        if (den == 0.0) checked(std::nan(""), n, "division by zero");
        return checked(num / den, n, "overflow");
    }
    case Op::Pow: {
        const double base = eval_node(n->a, p);
        if (base == 0.0 && n->exponent < 0) checked(std::nan(""), n, "division by zero");
        return checked(std::pow(base, n->exponent), n, "overflow");
    }
    case Op::Neg:
        return -eval_node(n->a, p);
    case Op::Sin:
        return std::sin(eval_node(n->a, p));
    case Op::Cos:
        return std::cos(eval_node(n->a, p));
    case Op::Exp:
        return checked(std::exp(eval_node(n->a, p)), n, "overflow");
    case Op::Sqrt: {
        const double v = eval_node(n->a, p);
        if (v < 0.0) checked(std::nan(""), n, "square root of a negative number");
        return std::sqrt(v);
    }
    }
    return 0.0;
}

}  // namespace

// Printing lives below; forward-declared here so domain errors can quote the
// offending subexpression.
namespace {
std::string print_node(const NodePtr& n);

double checked(double v, const NodePtr& n, const char* what) {
    if (std::isfinite(v)) return v;
    std::string sub = print_node(n);
    throw DomainError(std::string(what) + " in " + sub, sub);
}
}  // namespace

double Expr::eval(std::span<const double> point) const {
    if (dim() != 0 && point.size() != dim()) {
        throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                    " coordinates, expression chart has " + std::to_string(dim()));
    }
    return eval_node(node_, point);
}

// ---------------------------------------------------------------------------
// differentiation and substitution

Expr Expr::diff(std::size_t var) const {
    if (dim() != 0 && var >= dim()) {
        throw std::out_of_range("derivative slot " + std::to_string(var) + " out of range for chart dimension " +
                                std::to_string(dim()));
    }
    if (is_variable_free()) return constant(0.0);
    switch (op()) {
    case Op::Const:
        return constant(0.0);
    case Op::Var:
        return constant(index() == var ? 1.0 : 0.0);
    case Op::Add:
        return lhs().diff(var) + rhs().diff(var);
    case Op::Sub:
        return lhs().diff(var) - rhs().diff(var);
    case Op::Mul:
        return lhs().diff(var) * rhs() + lhs() * rhs().diff(var);
    case Op::Div: {
        const Expr& num = lhs();
        const Expr den = rhs();
        if (den.is_variable_free()) return num.diff(var) / den;
        return (num.diff(var) * den - num * den.diff(var)) / pow(den, 2);
    }
    case Op::Pow: {
        const int n = exponent();
        return constant(n) * pow(lhs(), n - 1) * lhs().diff(var);
    }
    case Op::Neg:
        return -arg().diff(var);
    case Op::Sin:
        return cos(arg()) * arg().diff(var);
    case Op::Cos:
        return -sin(arg()) * arg().diff(var);
    case Op::Exp:
        return *this * arg().diff(var);
    case Op::Sqrt:
        return arg().diff(var) / (constant(2.0) * *this);
    }
    return constant(0.0);
}

Expr Expr::substitute(std::span<const Expr> replacement) const {
    if (dim() != 0 && replacement.size() != dim()) {
        throw std::invalid_argument("substitution needs " + std::to_string(dim()) + " replacements, got " +
                                    std::to_string(replacement.size()));
    }
    if (is_variable_free()) return *this;
    switch (op()) {
    case Op::Const:
        return *this;
    case Op::Var:
        return replacement[index()];
    case Op::Add:
        return lhs().substitute(replacement) + rhs().substitute(replacement);
    case Op::Sub:
        return lhs().substitute(replacement) - rhs().substitute(replacement);
    case Op::Mul:
        return lhs().substitute(replacement) * rhs().substitute(replacement);
    case Op::Div:
        return lhs().substitute(replacement) / rhs().substitute(replacement);
    case Op::Pow:
        return pow(lhs().substitute(replacement), exponent());
    case Op::Neg:
        return -arg().substitute(replacement);
    case Op::Sin:
        return sin(arg().substitute(replacement));
    case Op::Cos:
        return cos(arg().substitute(replacement));
    case Op::Exp:
        return exp(arg().substitute(replacement));
    case Op::Sqrt:
        return sqrt(arg().substitute(replacement));
    }
    return *this;
}

bool operator==(const Expr& a, const Expr& b) noexcept {
    struct Cmp {
        static bool eq(const NodePtr& x, const NodePtr& y) {
            if (x == y) return true;
            if (!x || !y) return false;
            if (x->op != y->op) return false;
            switch (x->op) {
            case Expr::Op::Const:
                return x->value == y->value;
            case Expr::Op::Var:
                return x->index == y->index && x->dim == y->dim;
            case Expr::Op::Pow:
                return x->exponent == y->exponent && eq(x->a, y->a);
            default:
                return eq(x->a, y->a) && eq(x->b, y->b);
            }
        }
    };
    return Cmp::eq(a.node_, b.node_);
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Binding strength of the printed form; a child printed in a slot that needs
// more than it offers gets parentheses.
int precedence(const NodePtr& n) {
    using Op = Expr::Op;
    switch (n->op) {
    case Op::Const:
        return n->value < 0.0 ? 3 : 5;
    case Op::Add:
    case Op::Sub:
        return 1;
    case Op::Mul:
    case Op::Div:
        return 2;
    case Op::Neg:
        return 3;
    case Op::Pow:
        return 4;
    default:
        return 5;
    }
}

bool is_signed(const NodePtr& n) {
    return n->op == Expr::Op::Neg || (n->op == Expr::Op::Const && n->value < 0.0);
}

void print_to(const NodePtr& n, std::string& out);

void print_child(const NodePtr& n, int required, bool force_parens, std::string& out) {
    if (force_parens || precedence(n) < required) {
        out += '(';
        print_to(n, out);
        out += ')';
    } else {
        print_to(n, out);
    }
}

void print_to(const NodePtr& n, std::string& out) {
    using Op = Expr::Op;
    switch (n->op) {
    case Op::Const:
        out += format_number(n->value);
        return;
    case Op::Var:
        out += 'x';
        out += std::to_string(n->index + 1);
        return;
    case Op::Add:
    case Op::Sub:
        print_child(n->a, 1, false, out);
        out += n->op == Op::Add ? " + " : " - ";
        print_child(n->b, 2, is_signed(n->b), out);
        return;
    case Op::Mul:
    case Op::Div:
        print_child(n->a, 2, false, out);
        out += n->op == Op::Mul ? "*" : "/";
        print_child(n->b, 3, is_signed(n->b), out);
        return;
    case Op::Pow:
        print_child(n->a, 5, false, out);
        out += '^';
        out += std::to_string(n->exponent);
        return;
    case Op::Neg:
        out += '-';
        print_child(n->a, 5, false, out);
        return;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Sqrt: {
        static constexpr const char* names[] = {"sin", "cos", "exp", "sqrt"};
        out += names[static_cast<int>(n->op) - static_cast<int>(Op::Sin)];
        out += '(';
        print_to(n->a, out);
        out += ')';
        return;
    }
    }
}

std::string print_node(const NodePtr& n) {
    std::string out;
    print_to(n, out);
    return out;
}

}  // namespace

std::string Expr::str() const { return print_node(node_); }

}  // namespace crv
