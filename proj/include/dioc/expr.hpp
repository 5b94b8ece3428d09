#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dioc/value.hpp"

namespace dioc {

enum class ExprKind { Literal, Var, Unary, Binary, Call };
enum class UnaryOp { Not, Neg };
enum class BinaryOp { Mul, Div, Mod, Add, Sub, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

struct ExprNode;

/// Immutable expression tree with value semantics (equality is structural).
class Expr {
public:
    Expr() = default;
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

    static Expr literal(Value v);
    static Expr var(std::string name);
    static Expr unary(UnaryOp op, Expr e);
    static Expr binary(BinaryOp op, Expr l, Expr r);
    static Expr call(std::string fn, std::vector<Expr> args);

    const ExprNode& operator*() const { return *node_; }
    const ExprNode* operator->() const { return node_.get(); }
    explicit operator bool() const { return node_ != nullptr; }

    std::size_t hash() const;
    bool operator==(const Expr& o) const;

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    ExprKind kind = ExprKind::Literal;
    Value literal;
    std::string name;  // variable or function name
    UnaryOp unop = UnaryOp::Not;
    BinaryOp binop = BinaryOp::Add;
    std::vector<Expr> args;
    std::size_t hash = 0;
};

std::string to_string(const Expr& e);
int precedence(BinaryOp op);
const char* symbol(BinaryOp op);

/// One line of a function stub file: `name(p1, _, ...) = v` or `name(...) = seq(v1, v2, ...)`.
struct FunctionStub {
    std::string name;
    std::vector<std::optional<Value>> patterns;  // nullopt matches anything
    std::vector<Value> results;                   // several results: n-th call returns n-th (last repeats)
};

/// Deterministic stand-in for external functions. Unknown calls evaluate to Err.
class FunctionEnv {
public:
    void add(FunctionStub stub) { stubs_.push_back(std::move(stub)); }
    /// Result of the `call_number`-th (0-based) call of `name` with these arguments.
    Value apply(const std::string& name, const std::vector<Value>& args, std::size_t call_number) const;
    bool empty() const { return stubs_.empty(); }
    const std::vector<FunctionStub>& stubs() const { return stubs_; }

private:
    std::vector<FunctionStub> stubs_;
};

/// Name of the local variable counting calls of `fn` at a role.
std::string call_counter(const std::string& fn);

/// Pure evaluation; stub call counters are read from `s` but not advanced.
Value eval_expr(const Expr& e, const LocalState& s, const FunctionEnv& fns);

/// Evaluation that advances the stub call counters stored in `s`.
Value evaluate(const Expr& e, LocalState& s, const FunctionEnv& fns);

/// Guards: only boolean true selects the positive branch; Err and non-booleans count as false.
bool truthy(const Value& v);

}  // namespace dioc
