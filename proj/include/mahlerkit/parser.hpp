#ifndef MAHLERKIT_PARSER_HPP
#define MAHLERKIT_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/ratfunc.hpp"

namespace mahlerkit {

namespace detail {

/// Recursive-descent parser for rational-function expressions in the variable
/// x: integer literals, + - * / ^ and parentheses. '^' binds tightest, then
/// unary minus, then '*' '/' (left), then '+' '-' (left). Whitespace is
/// insignificant; errors carry a 1-based line/column.
class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    RatFunc parse() {
        skip_ws();
        RatFunc value = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return value;
    }

private:
    RatFunc expr() {
        RatFunc acc = term();
        for (;;) {
            skip_ws();
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                const int l = line_, c = col_;
                const RatFunc rhs = factor();
                if (rhs.is_zero()) throw ParseError("division by the zero polynomial", l, c);
                acc /= rhs;
            } else {
                return acc;
            }
        }
    }

    RatFunc factor() {
        skip_ws();
        if (accept('-')) return -factor();
        return power();
    }

    RatFunc power() {
        RatFunc base = atom();
        skip_ws();
        if (!accept('^')) return base;
        skip_ws();
        const int l = line_, c = col_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected a nonnegative integer exponent after '^'", l, c);
        unsigned long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (e > 1000000) throw ParseError("exponent too large", l, c);
            advance();
        }
        return pow(base, e);
    }

    RatFunc atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char ch = text_[pos_];
        if (ch == '(') {
            advance();
            RatFunc inner = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (ch == 'x') {
            advance();
            return RatFunc(Poly::x());
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits.push_back(text_[pos_]);
                advance();
            }
            return RatFunc(Rational::from_string(digits));
        }
        fail(std::string("unexpected character '") + ch + "'");
        return RatFunc(); // unreachable
    }

    bool accept(char ch) {
        if (pos_ < text_.size() && text_[pos_] == ch) {
            advance();
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace detail

inline RatFunc parse_ratfunc_expr(std::string_view text) {
    try {
        return detail::ExprParser(text).parse();
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

} // namespace mahlerkit

#endif // MAHLERKIT_PARSER_HPP
