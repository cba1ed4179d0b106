#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "glidepool/value.hpp"

namespace glidepool {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Attribute reference qualifier. Unqualified references resolve against
/// the evaluating ad first, then the other side of the match.
enum class Scope { Unqualified, My, Target, Job, Machine };

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class ArithOp { Add, Sub, Mul, Div };

/*
 * Immutable expression AST. Nodes are shared_ptr<const Expr>; once built an
 * expression is safe to share and evaluate from any thread.
 */
class Expr {
public:
    struct Literal {
        Value value;
    };
    struct AttrRef {
        Scope scope;
        std::string name;
    };
    struct Not {
        ExprPtr operand;
    };
    struct And {
        ExprPtr lhs, rhs;
    };
    struct Or {
        ExprPtr lhs, rhs;
    };
    struct Compare {
        CmpOp op;
        ExprPtr lhs, rhs;
    };
    struct Member {
        ExprPtr needle, haystack;
    };
    struct Arith {
        ArithOp op;
        ExprPtr lhs, rhs;
    };
    struct Paren {
        ExprPtr inner;
    };

    using Node = std::variant<Literal, AttrRef, Not, And, Or, Compare, Member, Arith, Paren>;

    explicit Expr(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

    static ExprPtr literal(Value v);
    static ExprPtr attr(std::string name, Scope scope = Scope::Unqualified);
    static ExprPtr negation(ExprPtr e);
    static ExprPtr conj(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr disj(ExprPtr lhs, ExprPtr rhs);
    static ExprPtr compare(CmpOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr member(ExprPtr needle, ExprPtr haystack);
    static ExprPtr arith(ArithOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr paren(ExprPtr inner);

private:
    Node node_;
};

/// Structural equality of two ASTs.
bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Expression source text. Parentheses are emitted for explicit Paren nodes
/// and wherever operator precedence requires them, so the printed form of a
/// parser-produced AST re-parses to a structurally identical AST.
std::string to_string(const Expr& e);
std::string to_string(const ExprPtr& e);

}  // namespace glidepool
