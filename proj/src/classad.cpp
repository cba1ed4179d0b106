#include "glidepool/classad.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace glidepool {

bool ci_equal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void ClassAd::set(const std::string& name, ExprPtr value) {
    std::string key = to_lower(name);
    auto it = index_.find(key);
    if (it != index_.end()) {
        attrs_[it->second].second = std::move(value);
        return;
    }
    index_.emplace(std::move(key), attrs_.size());
    attrs_.emplace_back(name, std::move(value));
}

void ClassAd::set(const std::string& name, Value literal) {
    set(name, Expr::literal(std::move(literal)));
}

const ExprPtr* ClassAd::find(std::string_view name) const {
    auto it = index_.find(to_lower(name));
    if (it == index_.end()) return nullptr;
    return &attrs_[it->second].second;
}

bool ClassAd::operator==(const ClassAd& other) const {
    if (attrs_.size() != other.attrs_.size()) return false;
    for (std::size_t i = 0; i < attrs_.size(); ++i) {
        if (!ci_equal(attrs_[i].first, other.attrs_[i].first)) return false;
        if (!equal(attrs_[i].second, other.attrs_[i].second)) return false;
    }
    return true;
}

namespace {

// Truth classification for the connectives. Anything that is neither a
// Boolean nor Undefined participates as Error.
enum class Truth { False, True, Undef, Err };

Truth truth_of(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Boolean: return v.as_boolean() ? Truth::True : Truth::False;
        case Value::Kind::Undefined: return Truth::Undef;
        default: return Truth::Err;
    }
}

constexpr int kMaxAttrDepth = 64;

struct EvalContext {
    const ClassAd* my;
    const ClassAd* target;
    int depth;
};

Value eval(const Expr& e, EvalContext ctx);

Value eval_attr(const Expr::AttrRef& ref, EvalContext ctx) {
    const ClassAd* primary = nullptr;
    const ClassAd* secondary = nullptr;
    switch (ref.scope) {
        case Scope::My: primary = ctx.my; break;
        case Scope::Target: primary = ctx.target; break;
        case Scope::Job:
            primary = ctx.my->kind() == AdKind::Job ? ctx.my
                    : ctx.target->kind() == AdKind::Job ? ctx.target : nullptr;
            break;
        case Scope::Machine:
            primary = ctx.my->kind() == AdKind::Machine ? ctx.my
                    : ctx.target->kind() == AdKind::Machine ? ctx.target : nullptr;
            break;
        case Scope::Unqualified:
            primary = ctx.my;
            secondary = ctx.target;
            break;
    }

    for (const ClassAd* ad : {primary, secondary}) {
        if (!ad) continue;
        if (const ExprPtr* found = ad->find(ref.name)) {
            if (ctx.depth + 1 > kMaxAttrDepth) return Value::error();
            // the found expression evaluates with its home ad as MY
            const ClassAd* other = ad == ctx.my ? ctx.target : ctx.my;
            return eval(**found, EvalContext{ad, other, ctx.depth + 1});
        }
    }
    return Value::undefined();
}

// Numeric comparison after Integer-to-Real promotion; Text compares
// case-insensitively (equality and ordering alike); Booleans support only
// equality. Everything else is a type mismatch.
Value eval_compare(CmpOp op, const Value& a, const Value& b) {
    if (a.is_error() || b.is_error()) return Value::error();
    if (a.is_undefined() || b.is_undefined()) return Value::undefined();

    int cmp;  // <0, 0, >0
    if (a.is_number() && b.is_number()) {
        if (a.is_integer() && b.is_integer()) {
            auto x = a.as_integer(), y = b.as_integer();
            cmp = x < y ? -1 : x > y ? 1 : 0;
        } else {
            double x = a.to_real(), y = b.to_real();
            if (std::isnan(x) || std::isnan(y)) return Value::error();
            cmp = x < y ? -1 : x > y ? 1 : 0;
        }
    } else if (a.is_text() && b.is_text()) {
        std::string x = to_lower(a.as_text()), y = to_lower(b.as_text());
        cmp = x < y ? -1 : x > y ? 1 : 0;
    } else if (a.is_boolean() && b.is_boolean()) {
        if (op != CmpOp::Eq && op != CmpOp::Ne) return Value::error();
        cmp = a.as_boolean() == b.as_boolean() ? 0 : 1;
    } else {
        return Value::error();
    }

    switch (op) {
        case CmpOp::Eq: return Value::boolean(cmp == 0);
        case CmpOp::Ne: return Value::boolean(cmp != 0);
        case CmpOp::Lt: return Value::boolean(cmp < 0);
        case CmpOp::Le: return Value::boolean(cmp <= 0);
        case CmpOp::Gt: return Value::boolean(cmp > 0);
        case CmpOp::Ge: return Value::boolean(cmp >= 0);
    }
    return Value::error();
}

Value eval_arith(ArithOp op, const Value& a, const Value& b) {
    if (a.is_error() || b.is_error()) return Value::error();
    if (a.is_undefined() || b.is_undefined()) return Value::undefined();
    if (!a.is_number() || !b.is_number()) return Value::error();

    if (a.is_integer() && b.is_integer()) {
        std::int64_t x = a.as_integer(), y = b.as_integer(), r = 0;
        switch (op) {
            case ArithOp::Add:
                if (__builtin_add_overflow(x, y, &r)) return Value::error();
                return Value::integer(r);
            case ArithOp::Sub:
                if (__builtin_sub_overflow(x, y, &r)) return Value::error();
                return Value::integer(r);
            case ArithOp::Mul:
                if (__builtin_mul_overflow(x, y, &r)) return Value::error();
                return Value::integer(r);
            case ArithOp::Div:
                if (y == 0) return Value::error();
                if (x == INT64_MIN && y == -1) return Value::error();
                return Value::integer(x / y);
        }
        return Value::error();
    }

    double x = a.to_real(), y = b.to_real();
    switch (op) {
        case ArithOp::Add: return Value::real(x + y);
        case ArithOp::Sub: return Value::real(x - y);
        case ArithOp::Mul: return Value::real(x * y);
        case ArithOp::Div:
            if (y == 0.0) return Value::error();
            return Value::real(x / y);
    }
    return Value::error();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// needle must be Text; haystack is a ValueList or a comma-separated Text.
// Matching is case-insensitive; an empty haystack yields false.
Value eval_member(const Value& needle, const Value& haystack) {
    if (needle.is_error() || haystack.is_error()) return Value::error();
    if (needle.is_undefined() || haystack.is_undefined()) return Value::undefined();
    if (!needle.is_text()) return Value::error();

    const std::string& want = needle.as_text();
    if (haystack.is_list()) {
        for (const Value& item : haystack.as_list())
            if (item.is_text() && ci_equal(item.as_text(), want)) return Value::boolean(true);
        return Value::boolean(false);
    }
    if (haystack.is_text()) {
        std::string_view rest = haystack.as_text();
        if (trim(rest).empty()) return Value::boolean(false);
        while (true) {
            std::size_t comma = rest.find(',');
            std::string_view item = trim(rest.substr(0, comma));
            if (ci_equal(item, want)) return Value::boolean(true);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return Value::boolean(false);
    }
    return Value::error();
}

Value eval(const Expr& e, EvalContext ctx) {
    struct Visitor {
        EvalContext ctx;
        Value operator()(const Expr::Literal& l) const { return l.value; }
        Value operator()(const Expr::AttrRef& r) const { return eval_attr(r, ctx); }
        Value operator()(const Expr::Paren& p) const { return eval(*p.inner, ctx); }
        Value operator()(const Expr::Not& n) const {
            switch (truth_of(eval(*n.operand, ctx))) {
                case Truth::True: return Value::boolean(false);
                case Truth::False: return Value::boolean(true);
                case Truth::Undef: return Value::undefined();
                case Truth::Err: return Value::error();
            }
            return Value::error();
        }
        Value operator()(const Expr::And& n) const {
            Truth l = truth_of(eval(*n.lhs, ctx));
            if (l == Truth::False) return Value::boolean(false);
            Truth r = truth_of(eval(*n.rhs, ctx));
            if (r == Truth::False) return Value::boolean(false);
            if (l == Truth::Err || r == Truth::Err) return Value::error();
            if (l == Truth::Undef || r == Truth::Undef) return Value::undefined();
            return Value::boolean(true);
        }
        Value operator()(const Expr::Or& n) const {
            Truth l = truth_of(eval(*n.lhs, ctx));
            if (l == Truth::True) return Value::boolean(true);
            Truth r = truth_of(eval(*n.rhs, ctx));
            if (r == Truth::True) return Value::boolean(true);
            if (l == Truth::Err || r == Truth::Err) return Value::error();
            if (l == Truth::Undef || r == Truth::Undef) return Value::undefined();
            return Value::boolean(false);
        }
        Value operator()(const Expr::Compare& n) const {
            return eval_compare(n.op, eval(*n.lhs, ctx), eval(*n.rhs, ctx));
        }
        Value operator()(const Expr::Member& n) const {
            return eval_member(eval(*n.needle, ctx), eval(*n.haystack, ctx));
        }
        Value operator()(const Expr::Arith& n) const {
            return eval_arith(n.op, eval(*n.lhs, ctx), eval(*n.rhs, ctx));
        }
    };
    return std::visit(Visitor{ctx}, e.node());
}

}  // namespace

Value evaluate(const Expr& expr, const ClassAd& my, const ClassAd& target) {
    return eval(expr, EvalContext{&my, &target, 0});
}

Value evaluate(const ExprPtr& expr, const ClassAd& my, const ClassAd& target) {
    if (!expr) return Value::undefined();
    return evaluate(*expr, my, target);
}

bool symmetric_match(const ClassAd& jobAd, const ClassAd& machineAd) {
    if (const ExprPtr* req = jobAd.find("Requirements")) {
        if (!evaluate(*req, jobAd, machineAd).is_true()) return false;
    }
    if (const ExprPtr* start = machineAd.find("Start")) {
        if (!evaluate(*start, machineAd, jobAd).is_true()) return false;
    }
    return true;
}

}  // namespace glidepool
