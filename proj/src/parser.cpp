#include "glidepool/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace glidepool {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

namespace {

enum class Tok {
    End, Int, Real, String, Ident,
    AndAnd, OrOr, Bang,
    EqEq, Eq, Ne, Lt, Le, Gt, Ge,
    Plus, Minus, Star, Slash,
    LParen, RParen, LBrace, RBrace, Comma, Dot,
};

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::string text;        // Ident / String (unescaped)
    std::int64_t intValue = 0;
    double realValue = 0.0;
};

bool ieq(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.offset = pos_;
        if (pos_ >= text_.size()) return t;

        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number();
        if (c == '"') return lex_string();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident();

        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two('&', '&')) return punct(Tok::AndAnd, 2);
        if (two('|', '|')) return punct(Tok::OrOr, 2);
        if (two('=', '=')) return punct(Tok::EqEq, 2);
        if (two('!', '=')) return punct(Tok::Ne, 2);
        if (two('<', '=')) return punct(Tok::Le, 2);
        if (two('>', '=')) return punct(Tok::Ge, 2);
        switch (c) {
            case '=': return punct(Tok::Eq, 1);
            case '<': return punct(Tok::Lt, 1);
            case '>': return punct(Tok::Gt, 1);
            case '!': return punct(Tok::Bang, 1);
            case '+': return punct(Tok::Plus, 1);
            case '-': return punct(Tok::Minus, 1);
            case '*': return punct(Tok::Star, 1);
            case '/': return punct(Tok::Slash, 1);
            case '(': return punct(Tok::LParen, 1);
            case ')': return punct(Tok::RParen, 1);
            case '{': return punct(Tok::LBrace, 1);
            case '}': return punct(Tok::RBrace, 1);
            case ',': return punct(Tok::Comma, 1);
            case '.': return punct(Tok::Dot, 1);
            case '&': fail("single '&'", pos_, {"'&&'"});
            case '|': fail("single '|'", pos_, {"'||'"});
        }
        fail(std::string("unexpected character '") + c + "'", pos_, {"a token"});
        return t;  // unreachable
    }

    [[noreturn]] static void fail(const std::string& what, std::size_t offset,
                                  std::vector<std::string> expected) {
        std::ostringstream msg;
        msg << "syntax error at offset " << offset << ": " << what;
        if (!expected.empty()) {
            msg << " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg << ", ";
                msg << expected[i];
            }
            msg << ")";
        }
        throw ParseError(msg.str(), offset, std::move(expected));
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    Token punct(Tok kind, std::size_t len) {
        Token t;
        t.kind = kind;
        t.offset = pos_;
        pos_ += len;
        return t;
    }

    Token lex_number() {
        Token t;
        t.offset = pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        bool isReal = false;
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            isReal = true;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                isReal = true;
                pos_ = mark;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        std::string_view lexeme = text_.substr(start, pos_ - start);
        if (isReal) {
            t.kind = Tok::Real;
            t.realValue = std::stod(std::string(lexeme));
        } else {
            t.kind = Tok::Int;
            auto [p, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), t.intValue);
            if (ec != std::errc() || p != lexeme.data() + lexeme.size())
                fail("integer literal out of range", start, {"a 64-bit integer"});
        }
        return t;
    }

    Token lex_string() {
        Token t;
        t.kind = Tok::String;
        t.offset = pos_;
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                ++pos_;
                t.text = std::move(out);
                return t;
            }
            if (c == '\\') {
                if (pos_ + 1 >= text_.size()) break;
                char esc = text_[pos_ + 1];
                switch (esc) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    default: out.push_back(esc);
                }
                pos_ += 2;
                continue;
            }
            out.push_back(c);
            ++pos_;
        }
        fail("unterminated string literal", t.offset, {"closing '\"'"});
    }

    Token lex_ident() {
        Token t;
        t.kind = Tok::Ident;
        t.offset = pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        t.text = std::string(text_.substr(start, pos_ - start));
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

constexpr int kMaxDepth = 256;

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { advance(); }

    ExprPtr parse() {
        ExprPtr e = parse_or(0);
        expect_end();
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    void expect_end() {
        if (tok_.kind != Tok::End)
            Lexer::fail("trailing input", tok_.offset, {"end of expression", "an operator"});
    }

    void check_depth(int depth) {
        if (depth > kMaxDepth)
            Lexer::fail("expression too deeply nested", tok_.offset, {"a shallower expression"});
    }

    ExprPtr parse_or(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_and(depth + 1);
        while (tok_.kind == Tok::OrOr) {
            advance();
            lhs = Expr::disj(std::move(lhs), parse_and(depth + 1));
        }
        return lhs;
    }

    ExprPtr parse_and(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_not(depth + 1);
        while (tok_.kind == Tok::AndAnd) {
            advance();
            lhs = Expr::conj(std::move(lhs), parse_not(depth + 1));
        }
        return lhs;
    }

    ExprPtr parse_not(int depth) {
        check_depth(depth);
        if (tok_.kind == Tok::Bang) {
            advance();
            return Expr::negation(parse_not(depth + 1));
        }
        return parse_cmp(depth + 1);
    }

    ExprPtr parse_cmp(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_add(depth + 1);
        CmpOp op;
        switch (tok_.kind) {
            case Tok::EqEq:
            case Tok::Eq: op = CmpOp::Eq; break;  // '=' is an alias of '=='
            case Tok::Ne: op = CmpOp::Ne; break;
            case Tok::Lt: op = CmpOp::Lt; break;
            case Tok::Le: op = CmpOp::Le; break;
            case Tok::Gt: op = CmpOp::Gt; break;
            case Tok::Ge: op = CmpOp::Ge; break;
            default:
                if (tok_.kind == Tok::Ident && ieq(tok_.text, "in")) {
                    advance();
                    return Expr::member(std::move(lhs), parse_add(depth + 1));
                }
                return lhs;
        }
        advance();
        return Expr::compare(op, std::move(lhs), parse_add(depth + 1));
    }

    ExprPtr parse_add(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_mul(depth + 1);
        while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
            ArithOp op = tok_.kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
            advance();
            lhs = Expr::arith(op, std::move(lhs), parse_mul(depth + 1));
        }
        return lhs;
    }

    ExprPtr parse_mul(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_unary(depth + 1);
        while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
            ArithOp op = tok_.kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
            advance();
            lhs = Expr::arith(op, std::move(lhs), parse_unary(depth + 1));
        }
        return lhs;
    }

    ExprPtr parse_unary(int depth) {
        check_depth(depth);
        if (tok_.kind == Tok::Minus) {
            advance();
            ExprPtr operand = parse_unary(depth + 1);
            // fold a minus applied directly to a non-negative numeric literal
            if (const auto* lit = std::get_if<Expr::Literal>(&operand->node())) {
                const Value& v = lit->value;
                if (v.is_integer() && v.as_integer() >= 0)
                    return Expr::literal(Value::integer(-v.as_integer()));
                if (v.is_real() && !std::signbit(v.as_real()))
                    return Expr::literal(Value::real(-v.as_real()));
            }
            return Expr::arith(ArithOp::Sub, Expr::literal(Value::integer(0)), std::move(operand));
        }
        return parse_atom(depth + 1);
    }

    ExprPtr parse_atom(int depth) {
        check_depth(depth);
        switch (tok_.kind) {
            case Tok::Int: {
                auto e = Expr::literal(Value::integer(tok_.intValue));
                advance();
                return e;
            }
            case Tok::Real: {
                auto e = Expr::literal(Value::real(tok_.realValue));
                advance();
                return e;
            }
            case Tok::String: {
                auto e = Expr::literal(Value::text(tok_.text));
                advance();
                return e;
            }
            case Tok::LParen: {
                advance();
                ExprPtr inner = parse_or(depth + 1);
                consume(Tok::RParen, "')'");
                return Expr::paren(std::move(inner));
            }
            case Tok::LBrace: return parse_list(depth + 1);
            case Tok::Ident: return parse_ident_atom();
            default:
                Lexer::fail("expected an operand", tok_.offset,
                            {"a number", "a string", "'true'", "'false'", "'undefined'",
                             "an attribute name", "'('", "'{'"});
        }
    }

    // list elements must be literals: the AST has no list-expression node,
    // a list is a single Literal holding a ValueList
    ExprPtr parse_list(int depth) {
        check_depth(depth);
        std::size_t open = tok_.offset;
        advance();  // '{'
        std::vector<Value> items;
        if (tok_.kind != Tok::RBrace) {
            for (;;) {
                items.push_back(parse_literal_element(open));
                if (tok_.kind == Tok::Comma) {
                    advance();
                    continue;
                }
                break;
            }
        }
        consume(Tok::RBrace, "'}'");
        return Expr::literal(Value::list(std::move(items)));
    }

    Value parse_literal_element(std::size_t) {
        if (tok_.kind == Tok::Minus) {
            advance();
            if (tok_.kind == Tok::Int) { Value v = Value::integer(-tok_.intValue); advance(); return v; }
            if (tok_.kind == Tok::Real) { Value v = Value::real(-tok_.realValue); advance(); return v; }
            Lexer::fail("expected numeric literal after '-'", tok_.offset, {"a number"});
        }
        switch (tok_.kind) {
            case Tok::Int: { Value v = Value::integer(tok_.intValue); advance(); return v; }
            case Tok::Real: { Value v = Value::real(tok_.realValue); advance(); return v; }
            case Tok::String: { Value v = Value::text(tok_.text); advance(); return v; }
            case Tok::Ident:
                if (ieq(tok_.text, "true")) { advance(); return Value::boolean(true); }
                if (ieq(tok_.text, "false")) { advance(); return Value::boolean(false); }
                if (ieq(tok_.text, "undefined")) { advance(); return Value::undefined(); }
                break;
            default: break;
        }
        Lexer::fail("list elements must be literals", tok_.offset,
                    {"a number", "a string", "'true'", "'false'", "'undefined'"});
    }

    ExprPtr parse_ident_atom() {
        std::string name = tok_.text;
        std::size_t offset = tok_.offset;
        if (ieq(name, "true")) { advance(); return Expr::literal(Value::boolean(true)); }
        if (ieq(name, "false")) { advance(); return Expr::literal(Value::boolean(false)); }
        if (ieq(name, "undefined")) { advance(); return Expr::literal(Value::undefined()); }
        if (ieq(name, "in"))
            Lexer::fail("'in' is an operator, not an operand", offset, {"an attribute name"});
        advance();

        Scope scope = Scope::Unqualified;
        if (ieq(name, "my")) scope = Scope::My;
        else if (ieq(name, "target")) scope = Scope::Target;
        else if (ieq(name, "job")) scope = Scope::Job;
        else if (ieq(name, "machine")) scope = Scope::Machine;

        if (scope != Scope::Unqualified && tok_.kind == Tok::Dot) {
            advance();
            if (tok_.kind != Tok::Ident)
                Lexer::fail("expected attribute name after scope", tok_.offset,
                            {"an attribute name"});
            std::string attr = tok_.text;
            advance();
            return Expr::attr(std::move(attr), scope);
        }
        if (tok_.kind == Tok::Dot)
            Lexer::fail("'.' is only valid after MY, TARGET, Job or Machine", tok_.offset,
                        {"an operator", "end of expression"});
        return Expr::attr(std::move(name));
    }

    void consume(Tok kind, const char* what) {
        if (tok_.kind != kind)
            Lexer::fail("unexpected token", tok_.offset, {what});
        advance();
    }

    Lexer lexer_;
    Token tok_;
};

}  // namespace

ExprPtr parse_expression(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace glidepool
