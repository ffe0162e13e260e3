#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crv {

/// Raised when an expression cannot be evaluated at a point (division by
/// zero, square root of a negative number, non-finite intermediate).
class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& what, std::string subexpression)
        : std::runtime_error(what), subexpression_(std::move(subexpression)) {}

    /// Printed form of the offending subexpression.
    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnknownIdentifier, VariableOutOfRange };

    ParseError(Kind kind, std::size_t offset, const std::string& message);

    Kind kind() const noexcept { return kind_; }
    /// Byte offset into the source text.
    std::size_t offset() const noexcept { return offset_; }
    /// Message without the offset prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    Kind kind_;
    std::size_t offset_;
    std::string detail_;
};

/// Immutable scalar expression over the coordinates of a chart.
///
/// Nodes are shared, so copying an Expr is cheap and values may be shared
/// across threads. Every constructor folds constants and absorbs 0/1 where
/// that is safe; a folded tree is a fixpoint of the constructors, which makes
/// print-then-parse reproduce the same tree.
///
/// `dim()` is the chart dimension the variables were declared against; a
/// variable-free expression has dim 0 and evaluates at a point of any size.
class Expr {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt };

    /// The constant 0.
    Expr();

    static Expr constant(double value);
    /// Coordinate slot `index` (0-based) of a chart of dimension `dim`.
    static Expr variable(std::size_t index, std::size_t dim);

    Op op() const noexcept;
    std::size_t dim() const noexcept;

    double value() const;           // Const
    std::size_t index() const;      // Var
    int exponent() const;           // Pow
    Expr lhs() const;               // binary ops, Pow base
    Expr rhs() const;               // binary ops
    Expr arg() const;               // Neg and functions

    bool is_constant() const noexcept { return op() == Op::Const; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// True when no variable occurs anywhere in the tree.
    bool is_variable_free() const noexcept;

    double eval(std::span<const double> point) const;

    /// Exact partial derivative with respect to coordinate slot `var`.
    Expr diff(std::size_t var) const;

    /// Replaces variable i by `replacement[i]`. The replacement list must
    /// cover the whole chart (`replacement.size() == dim()`, or any size for
    /// a variable-free expression).
    Expr substitute(std::span<const Expr> replacement) const;

    /// Source text in the parser grammar; `parse(e.str(), e.dim())`
    /// rebuilds the same tree.
    std::string str() const;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, int exponent);
    friend Expr sin(const Expr& a);
    friend Expr cos(const Expr& a);
    friend Expr exp(const Expr& a);
    friend Expr sqrt(const Expr& a);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }

/// Grammar (whitespace between tokens is ignored):
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := base ('^' integer)?
///     base   := number | ident | '(' expr ')' | '-' base | func '(' expr ')'
///     func   := 'sin' | 'cos' | 'exp' | 'sqrt'
///     ident  := 'x' positive-integer        (1-based in source)
///
/// The exponent may carry a leading '-'.
Expr parse(std::string_view source, std::size_t dim);

}  // namespace crv
