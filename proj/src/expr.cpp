#include "dioc/expr.hpp"

#include <functional>
#include <sstream>

#include "hash.hpp"

namespace dioc {

std::string Value::to_string() const {
    struct V {
        std::string operator()(const ErrValue&) const { return "err"; }
        std::string operator()(const NullValue&) const { return "null"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            std::string out = "\"";
            for (char c : s) {
                if (c == '"' || c == '\\') out += '\\';
                if (c == '\n') {
                    out += "\\n";
                    continue;
                }
                out += c;
            }
            return out + "\"";
        }
    };
    return std::visit(V{}, v_);
}

std::size_t Value::hash() const {
    std::size_t h = hash_mix(0x51ed, v_.index());
    switch (v_.index()) {
        case 2: return hash_mix(h, std::hash<std::int64_t>{}(as_int()));
        case 3: return hash_mix(h, as_bool() ? 1 : 2);
        case 4: return hash_mix(h, std::hash<std::string>{}(as_string()));
        default: return h;
    }
}

LocalState observable(const LocalState& s) {
    LocalState out;
    for (const auto& [k, v] : s)
        if (!is_aux_var(k)) out.emplace(k, v);
    return out;
}

std::size_t hash_state(const LocalState& s) {
    std::size_t h = 0x9e37;
    for (const auto& [k, v] : s) h = hash_mix(hash_mix(h, std::hash<std::string>{}(k)), v.hash());
    return h;
}

namespace {

Expr make(ExprNode n) {
    std::size_t h = hash_mix(0xe1, static_cast<std::size_t>(n.kind));
    switch (n.kind) {
        case ExprKind::Literal: h = hash_mix(h, n.literal.hash()); break;
        case ExprKind::Var: h = hash_mix(h, std::hash<std::string>{}(n.name)); break;
        case ExprKind::Unary: h = hash_mix(h, static_cast<std::size_t>(n.unop)); break;
        case ExprKind::Binary: h = hash_mix(h, static_cast<std::size_t>(n.binop)); break;
        case ExprKind::Call: h = hash_mix(h, std::hash<std::string>{}(n.name)); break;
    }
    for (const auto& a : n.args) h = hash_mix(h, a.hash());
    n.hash = h;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

}  // namespace

Expr Expr::literal(Value v) {
    ExprNode n;
    n.kind = ExprKind::Literal;
    n.literal = std::move(v);
    return make(std::move(n));
}

Expr Expr::var(std::string name) {
    ExprNode n;
    n.kind = ExprKind::Var;
    n.name = std::move(name);
    return make(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr e) {
    ExprNode n;
    n.kind = ExprKind::Unary;
    n.unop = op;
    n.args.push_back(std::move(e));
    return make(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr l, Expr r) {
    ExprNode n;
    n.kind = ExprKind::Binary;
    n.binop = op;
    n.args.push_back(std::move(l));
    n.args.push_back(std::move(r));
    return make(std::move(n));
}

Expr Expr::call(std::string fn, std::vector<Expr> args) {
    ExprNode n;
    n.kind = ExprKind::Call;
    n.name = std::move(fn);
    n.args = std::move(args);
    return make(std::move(n));
}

std::size_t Expr::hash() const { return node_ ? node_->hash : 0; }

bool Expr::operator==(const Expr& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    const ExprNode& a = *node_;
    const ExprNode& b = *o.node_;
    return a.hash == b.hash && a.kind == b.kind && a.literal == b.literal && a.name == b.name &&
           a.unop == b.unop && a.binop == b.binop && a.args == b.args;
}

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 5;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 4;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 3;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 2;
        case BinaryOp::And: return 1;
        case BinaryOp::Or: return 0;
    }
    return 0;
}

const char* symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

namespace {

// Operands of a binary operator are parenthesised unless they bind strictly tighter
// (left operand may share the level, since operators are left-associative).
void print(std::ostream& os, const Expr& e, int ctx, bool right) {
    const ExprNode& n = *e;
    switch (n.kind) {
        case ExprKind::Literal: os << n.literal.to_string(); return;
        case ExprKind::Var: os << n.name; return;
        case ExprKind::Unary:
            os << (n.unop == UnaryOp::Not ? "!" : "-");
            print(os, n.args[0], 6, false);
            return;
        case ExprKind::Call:
            os << n.name << "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) os << ", ";
                print(os, n.args[i], -1, false);
            }
            os << ")";
            return;
        case ExprKind::Binary: {
            int p = precedence(n.binop);
            bool paren = p < ctx || (p == ctx && right);
            if (paren) os << "(";
            print(os, n.args[0], p, false);
            os << " " << symbol(n.binop) << " ";
            print(os, n.args[1], p, true);
            if (paren) os << ")";
            return;
        }
    }
}

using Counters = std::map<std::string, std::size_t>;

std::size_t counter_value(const std::string& fn, const LocalState& s, const Counters& overlay) {
    if (auto it = overlay.find(fn); it != overlay.end()) return it->second;
    if (auto it = s.find(call_counter(fn)); it != s.end() && it->second.is_int())
        return static_cast<std::size_t>(it->second.as_int());
    return 0;
}

Value eval(const Expr& e, const LocalState& s, const FunctionEnv& fns, Counters& calls) {
    const ExprNode& n = *e;
    switch (n.kind) {
        case ExprKind::Literal: return n.literal;
        case ExprKind::Var: {
            auto it = s.find(n.name);
            return it == s.end() ? Value::err() : it->second;
        }
        case ExprKind::Unary: {
            Value v = eval(n.args[0], s, fns, calls);
            if (n.unop == UnaryOp::Not) return v.is_bool() ? Value(!v.as_bool()) : Value::err();
            return v.is_int() ? Value(-v.as_int()) : Value::err();
        }
        case ExprKind::Call: {
            std::vector<Value> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(eval(a, s, fns, calls));
            std::size_t k = counter_value(n.name, s, calls);
            calls[n.name] = k + 1;
            return fns.apply(n.name, args, k);
        }
        case ExprKind::Binary: break;
    }
    Value l = eval(n.args[0], s, fns, calls);
    Value r = eval(n.args[1], s, fns, calls);
    switch (n.binop) {
        case BinaryOp::Eq: return Value(l == r);
        case BinaryOp::Ne: return Value(l != r);
        case BinaryOp::And:
        case BinaryOp::Or:
            if (!l.is_bool() || !r.is_bool()) return Value::err();
            return Value(n.binop == BinaryOp::And ? (l.as_bool() && r.as_bool()) : (l.as_bool() || r.as_bool()));
        default: break;
    }
    if (n.binop == BinaryOp::Add && l.is_string() && r.is_string()) return Value(l.as_string() + r.as_string());
    if (l.is_string() && r.is_string()) {
        switch (n.binop) {
            case BinaryOp::Lt: return Value(l.as_string() < r.as_string());
            case BinaryOp::Le: return Value(l.as_string() <= r.as_string());
            case BinaryOp::Gt: return Value(l.as_string() > r.as_string());
            case BinaryOp::Ge: return Value(l.as_string() >= r.as_string());
            default: return Value::err();
        }
    }
    if (!l.is_int() || !r.is_int()) return Value::err();
    std::int64_t a = l.as_int(), b = r.as_int();
    switch (n.binop) {
        case BinaryOp::Mul: return Value(a * b);
        case BinaryOp::Div: return b == 0 ? Value::err() : Value(a / b);
        case BinaryOp::Mod: return b == 0 ? Value::err() : Value(a % b);
        case BinaryOp::Add: return Value(a + b);
        case BinaryOp::Sub: return Value(a - b);
        case BinaryOp::Lt: return Value(a < b);
        case BinaryOp::Le: return Value(a <= b);
        case BinaryOp::Gt: return Value(a > b);
        case BinaryOp::Ge: return Value(a >= b);
        default: return Value::err();
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e, -1, false);
    return os.str();
}

Value FunctionEnv::apply(const std::string& name, const std::vector<Value>& args, std::size_t call_number) const {
    for (const auto& stub : stubs_) {
        if (stub.name != name || stub.patterns.size() != args.size()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i)
            if (stub.patterns[i] && *stub.patterns[i] != args[i]) ok = false;
        if (!ok || stub.results.empty()) continue;
        return stub.results[std::min(call_number, stub.results.size() - 1)];
    }
    return Value::err();
}

std::string call_counter(const std::string& fn) { return "calls$" + fn; }

Value eval_expr(const Expr& e, const LocalState& s, const FunctionEnv& fns) {
    Counters calls;
    return eval(e, s, fns, calls);
}

Value evaluate(const Expr& e, LocalState& s, const FunctionEnv& fns) {
    Counters calls;
    Value v = eval(e, s, fns, calls);
    for (const auto& [fn, k] : calls) s[call_counter(fn)] = Value(static_cast<std::int64_t>(k));
    return v;
}

bool truthy(const Value& v) { return v.is_bool() && v.as_bool(); }

}  // namespace dioc
