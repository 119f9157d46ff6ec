#include "ksmap/parser.hpp"

#include <cctype>

#include "ksmap/errors.hpp"

namespace ksmap {

SymbolTable make_symbols(const std::vector<std::string>& params) {
    if (params.size() > static_cast<std::size_t>(kMaxParams)) throw InputError("at most 2 parameters are supported");
    SymbolTable s{{"x", kVarX}};
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i] == "x") throw InputError("parameter may not be named x");
        if (!s.emplace(params[i], param_var(static_cast<int>(i))).second) throw InputError("duplicate parameter " + params[i]);
    }
    return s;
}

namespace {

class Parser {
public:
    Parser(const std::string& src, const SymbolTable& symbols, int line_offset, int column_offset)
        : src_(src), symbols_(symbols), line_(1 + line_offset), col_(1 + column_offset) {}

    MultiPoly parse() {
        skip_space();
        if (at_end()) fail("empty expression");
        MultiPoly p = expr();
        skip_space();
        if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("line " + std::to_string(tok_line_) + ", column " + std::to_string(tok_col_) + ": " + what);
    }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
        tok_line_ = line_;
        tok_col_ = col_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (true) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const int l = tok_line_, c = tok_col_;
                const MultiPoly d = unary();
                if (!d.is_constant()) {
                    tok_line_ = l;
                    tok_col_ = c;
                    fail("division only by constants");
                }
                if (d.is_zero()) {
                    tok_line_ = l;
                    tok_col_ = c;
                    fail("division by zero");
                }
                acc = acc * BigRational(1 / d.constant_value());
            } else {
                skip_space();
                if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '(' || peek() == '_')) {
                    fail("implicit multiplication is not allowed");
                }
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (!accept('^')) return base;
        skip_space();
        const int l = tok_line_, c = tok_col_;
        const MultiPoly e = (!at_end() && peek() == '-') ? (advance(), -power()) : power();
        tok_line_ = l;
        tok_col_ = c;
        if (!e.is_constant()) fail("non-integer exponent");
        const BigRational v = e.constant_value();
        if (v.get_den() != 1) fail("non-integer exponent");
        if (v < 0) fail("negative exponent");
        if (v > 2047) fail("exponent too large");
        return base.pow(static_cast<int>(v.get_num().get_si()));
    }

    MultiPoly primary() {
        skip_space();
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (c == '(') {
            advance();
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) fail("only integer literals are allowed");
            return MultiPoly(BigRational(mpz_class(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                id += peek();
                advance();
            }
            const auto it = symbols_.find(id);
            if (it == symbols_.end()) fail("unknown identifier '" + id + "'");
            return MultiPoly::variable(it->second);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& src_;
    const SymbolTable& symbols_;
    std::size_t pos_ = 0;
    int line_, col_;
    int tok_line_ = 1, tok_col_ = 1;
};

}  // namespace

MultiPoly parse_polynomial(const std::string& src, const SymbolTable& symbols, int line_offset, int column_offset) {
    return Parser(src, symbols, line_offset, column_offset).parse();
}

}  // namespace ksmap
