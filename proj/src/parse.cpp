#include "crverify/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace crv {

namespace {

class Parser {
public:
    Parser(std::string_view src, std::size_t dim) : src_(src), dim_(dim) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail(ParseError::Kind::Syntax, pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    std::string_view src_;
    std::size_t dim_;
    std::size_t pos_ = 0;

    [[noreturn]] static void fail(ParseError::Kind kind, std::size_t at, const std::string& msg) {
        throw ParseError(kind, at, msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= src_.size()) fail(ParseError::Kind::Syntax, pos_, std::string("expected '") + c + "' before end of input");
            fail(ParseError::Kind::Syntax, pos_, std::string("expected '") + c + "'");
        }
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) lhs = lhs + term();
            else if (accept('-')) lhs = lhs - term();
            else return lhs;
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) lhs = lhs * factor();
            else if (accept('/')) lhs = lhs / factor();
            else return lhs;
        }
    }

    Expr factor() {
        Expr b = base();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            bool negative = false;
            if (pos_ < src_.size() && src_[pos_] == '-') {
                negative = true;
                ++pos_;
            }
            const std::size_t digits = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (digits == pos_) fail(ParseError::Kind::Syntax, start, "expected integer exponent");
            int n = 0;
            auto res = std::from_chars(src_.data() + digits, src_.data() + pos_, n);
            if (res.ec != std::errc()) fail(ParseError::Kind::Syntax, start, "exponent out of range");
            b = pow(b, negative ? -n : n);
        }
        return b;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= src_.size()) fail(ParseError::Kind::Syntax, pos_, "unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (c == '-') {
            ++pos_;
            return -base();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(ParseError::Kind::Syntax, pos_, "unexpected '" + std::string(1, c) + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return pos_ - s;
        };
        std::size_t count = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) fail(ParseError::Kind::Syntax, start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail(ParseError::Kind::Syntax, mark, "malformed exponent in number");
        }
        double v = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
            fail(ParseError::Kind::Syntax, start, "number out of range");
        }
        return Expr::constant(v);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "sin" || name == "cos" || name == "exp" || name == "sqrt") {
            expect('(');
            Expr a = expr();
            expect(')');
            if (name == "sin") return sin(a);
            if (name == "cos") return cos(a);
            if (name == "exp") return exp(a);
            return sqrt(a);
        }
        if (name.size() >= 2 && name[0] == 'x') {
            bool all_digits = true;
            for (char d : name.substr(1)) all_digits = all_digits && std::isdigit(static_cast<unsigned char>(d));
            if (all_digits) {
                std::size_t k = 0;
                auto res = std::from_chars(name.data() + 1, name.data() + name.size(), k);
                if (res.ec != std::errc() || k == 0 || k > dim_) {
                    fail(ParseError::Kind::VariableOutOfRange, start,
                         "variable '" + std::string(name) + "' outside x1..x" + std::to_string(dim_));
                }
                return Expr::variable(k - 1, dim_);
            }
        }
        fail(ParseError::Kind::UnknownIdentifier, start, "unknown identifier '" + std::string(name) + "'");
    }
};

}  // namespace

Expr parse(std::string_view source, std::size_t dim) { return Parser(source, dim).run(); }

}  // namespace crv
