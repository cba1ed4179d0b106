#include "glidepool/expression.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace glidepool {

namespace {

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string format_real(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    std::string s(buf, end);
    // keep the kind visible so a re-parse yields a Real again
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
        s += ".0";
    }
    return s;
}

// Grammar levels, loosest first. A child printed at a position requiring
// level N gets wrapped in parentheses when its own level is below N.
enum Level : int {
    kOr = 0,
    kAnd = 1,
    kNot = 2,
    kCmp = 3,
    kAdd = 4,
    kMul = 5,
    kUnary = 6,
    kAtom = 7,
};

bool is_negation(const Expr::Arith& a) {
    if (a.op != ArithOp::Sub) return false;
    const auto* lit = std::get_if<Expr::Literal>(&a.lhs->node());
    return lit && lit->value.is_integer() && lit->value.as_integer() == 0;
}

int level_of(const Expr& e) {
    struct Visitor {
        int operator()(const Expr::Literal&) const { return kAtom; }
        int operator()(const Expr::AttrRef&) const { return kAtom; }
        int operator()(const Expr::Paren&) const { return kAtom; }
        int operator()(const Expr::Not&) const { return kNot; }
        int operator()(const Expr::And&) const { return kAnd; }
        int operator()(const Expr::Or&) const { return kOr; }
        int operator()(const Expr::Compare&) const { return kCmp; }
        int operator()(const Expr::Member&) const { return kCmp; }
        int operator()(const Expr::Arith& a) const {
            if (is_negation(a)) return kUnary;
            return (a.op == ArithOp::Add || a.op == ArithOp::Sub) ? kAdd : kMul;
        }
    };
    return std::visit(Visitor{}, e.node());
}

const char* cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "==";
}

const char* arith_op_text(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
    }
    return "+";
}

const char* scope_prefix(Scope s) {
    switch (s) {
        case Scope::Unqualified: return "";
        case Scope::My: return "MY.";
        case Scope::Target: return "TARGET.";
        case Scope::Job: return "Job.";
        case Scope::Machine: return "Machine.";
    }
    return "";
}

void print_expr(const Expr& e, int minLevel, std::string& out);

void print_child(const ExprPtr& e, int minLevel, std::string& out) {
    if (level_of(*e) < minLevel) {
        out.push_back('(');
        print_expr(*e, kOr, out);
        out.push_back(')');
    } else {
        print_expr(*e, kOr, out);
    }
}

void print_expr(const Expr& e, int, std::string& out) {
    struct Visitor {
        std::string& out;
        void operator()(const Expr::Literal& l) const { out += glidepool::to_string(l.value); }
        void operator()(const Expr::AttrRef& a) const {
            out += scope_prefix(a.scope);
            out += a.name;
        }
        void operator()(const Expr::Paren& p) const {
            out.push_back('(');
            print_expr(*p.inner, kOr, out);
            out.push_back(')');
        }
        void operator()(const Expr::Not& n) const {
            out.push_back('!');
            print_child(n.operand, kNot, out);
        }
        void operator()(const Expr::And& a) const {
            print_child(a.lhs, kAnd, out);
            out += " && ";
            print_child(a.rhs, kNot, out);
        }
        void operator()(const Expr::Or& o) const {
            print_child(o.lhs, kOr, out);
            out += " || ";
            print_child(o.rhs, kAnd, out);
        }
        void operator()(const Expr::Compare& c) const {
            print_child(c.lhs, kAdd, out);
            out.push_back(' ');
            out += cmp_op_text(c.op);
            out.push_back(' ');
            print_child(c.rhs, kAdd, out);
        }
        void operator()(const Expr::Member& m) const {
            print_child(m.needle, kAdd, out);
            out += " in ";
            print_child(m.haystack, kAdd, out);
        }
        void operator()(const Expr::Arith& a) const {
            // Negation is encoded as 0 - x; print "-x" unless x is itself a
            // numeric literal (then "0 - 5" must survive the round trip,
            // since the parser folds "-5" into a negative literal).
            const auto* rl = std::get_if<Expr::Literal>(&a.rhs->node());
            if (is_negation(a) && !(rl && rl->value.is_number())) {
                out.push_back('-');
                print_child(a.rhs, kUnary, out);
                return;
            }
            bool additive = a.op == ArithOp::Add || a.op == ArithOp::Sub;
            print_child(a.lhs, additive ? kAdd : kMul, out);
            out.push_back(' ');
            out += arith_op_text(a.op);
            out.push_back(' ');
            print_child(a.rhs, additive ? kMul : kUnary, out);
        }
    };
    std::visit(Visitor{out}, e.node());
}

}  // namespace

std::string to_string(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Undefined: return "undefined";
        case Value::Kind::Error: return "error";
        case Value::Kind::Boolean: return v.as_boolean() ? "true" : "false";
        case Value::Kind::Integer: return std::to_string(v.as_integer());
        case Value::Kind::Real: return format_real(v.as_real());
        case Value::Kind::Text: return escape_text(v.as_text());
        case Value::Kind::List: {
            std::string out = "{";
            const auto& items = v.as_list();
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) out += ", ";
                out += to_string(items[i]);
            }
            out += "}";
            return out;
        }
    }
    return "error";
}

ExprPtr Expr::literal(Value v) {
    return std::make_shared<Expr>(Literal{std::move(v)});
}
ExprPtr Expr::attr(std::string name, Scope scope) {
    return std::make_shared<Expr>(AttrRef{scope, std::move(name)});
}
ExprPtr Expr::negation(ExprPtr e) {
    return std::make_shared<Expr>(Not{std::move(e)});
}
ExprPtr Expr::conj(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(And{std::move(lhs), std::move(rhs)});
}
ExprPtr Expr::disj(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Or{std::move(lhs), std::move(rhs)});
}
ExprPtr Expr::compare(CmpOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Compare{op, std::move(lhs), std::move(rhs)});
}
ExprPtr Expr::member(ExprPtr needle, ExprPtr haystack) {
    return std::make_shared<Expr>(Member{std::move(needle), std::move(haystack)});
}
ExprPtr Expr::arith(ArithOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Arith{op, std::move(lhs), std::move(rhs)});
}
ExprPtr Expr::paren(ExprPtr inner) {
    return std::make_shared<Expr>(Paren{std::move(inner)});
}

bool equal(const Expr& a, const Expr& b) {
    if (a.node().index() != b.node().index()) return false;
    struct Visitor {
        const Expr::Node& other;
        bool operator()(const Expr::Literal& l) const {
            return l.value == std::get<Expr::Literal>(other).value;
        }
        bool operator()(const Expr::AttrRef& r) const {
            const auto& o = std::get<Expr::AttrRef>(other);
            return r.scope == o.scope && ci_equal_names(r.name, o.name);
        }
        bool operator()(const Expr::Not& n) const {
            return equal(n.operand, std::get<Expr::Not>(other).operand);
        }
        bool operator()(const Expr::And& n) const {
            const auto& o = std::get<Expr::And>(other);
            return equal(n.lhs, o.lhs) && equal(n.rhs, o.rhs);
        }
        bool operator()(const Expr::Or& n) const {
            const auto& o = std::get<Expr::Or>(other);
            return equal(n.lhs, o.lhs) && equal(n.rhs, o.rhs);
        }
        bool operator()(const Expr::Compare& n) const {
            const auto& o = std::get<Expr::Compare>(other);
            return n.op == o.op && equal(n.lhs, o.lhs) && equal(n.rhs, o.rhs);
        }
        bool operator()(const Expr::Member& n) const {
            const auto& o = std::get<Expr::Member>(other);
            return equal(n.needle, o.needle) && equal(n.haystack, o.haystack);
        }
        bool operator()(const Expr::Arith& n) const {
            const auto& o = std::get<Expr::Arith>(other);
            return n.op == o.op && equal(n.lhs, o.lhs) && equal(n.rhs, o.rhs);
        }
        bool operator()(const Expr::Paren& n) const {
            return equal(n.inner, std::get<Expr::Paren>(other).inner);
        }
        static bool ci_equal_names(const std::string& x, const std::string& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (std::tolower(static_cast<unsigned char>(x[i])) !=
                    std::tolower(static_cast<unsigned char>(y[i])))
                    return false;
            }
            return true;
        }
    };
    return std::visit(Visitor{b.node()}, a.node());
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, kOr, out);
    return out;
}

std::string to_string(const ExprPtr& e) {
    return e ? to_string(*e) : std::string();
}

}  // namespace glidepool
