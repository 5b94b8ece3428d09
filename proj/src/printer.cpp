#include <sstream>

#include "dioc/frontend.hpp"

namespace dioc {

namespace {

std::string pad(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

std::string props_suffix(const ScopeProps& props) {
    if (props.empty()) return "";
    std::string s = " prop { ";
    bool first = true;
    for (const auto& [k, v] : props) {
        if (!first) s += ", ";
        first = false;
        s += "N." + k + " = " + Value(v).to_string();
    }
    return s + " }";
}

// Shared layout: a right-nested sequence prints one item per line; a parallel composition
// prints its operands inline; nested sequences/parallels are wrapped in braces.
template <class P, class Leaf>
class Layout {
public:
    Layout(std::ostream& os, Leaf leaf) : os_(os), leaf_(leaf) {}

    void seq_body(const P& p, int ind) {
        P cur = p;
        while (true) {
            os_ << pad(ind);
            if (is_seq(cur)) {
                item(cur->left, ind);
                os_ << ";\n";
                cur = cur->right;
                continue;
            }
            item(cur, ind);
            os_ << "\n";
            return;
        }
    }

    void block(const P& body, int ind) {
        os_ << "{\n";
        seq_body(body, ind + 1);
        os_ << pad(ind) << "}";
    }

private:
    static bool is_seq(const P& p) { return static_cast<int>(p.kind()) == seq_kind(p); }
    static bool is_par(const P& p) { return static_cast<int>(p.kind()) == par_kind(p); }
    static int seq_kind(const DiocProc&) { return static_cast<int>(DiocKind::Seq); }
    static int par_kind(const DiocProc&) { return static_cast<int>(DiocKind::Par); }
    static int seq_kind(const DpocProc&) { return static_cast<int>(DpocKind::Seq); }
    static int par_kind(const DpocProc&) { return static_cast<int>(DpocKind::Par); }

    void item(const P& p, int ind) {
        if (is_seq(p)) {
            block(p, ind);
            return;
        }
        if (is_par(p)) {
            P cur = p;
            while (is_par(cur)) {
                operand(cur->left, ind);
                os_ << " | ";
                cur = cur->right;
            }
            operand(cur, ind);
            return;
        }
        leaf_(*this, p, ind);
    }

    void operand(const P& p, int ind) {
        if (is_seq(p) || is_par(p)) {
            block(p, ind);
            return;
        }
        leaf_(*this, p, ind);
    }

    std::ostream& os_;
    Leaf leaf_;

public:
    std::ostream& out() { return os_; }
};

std::string idx(Index i) { return i ? "[" + std::to_string(i) + "] " : ""; }

struct DiocLeaf {
    template <class L>
    void operator()(L& lay, const DiocProc& p, int ind) const {
        std::ostream& os = lay.out();
        const DiocNode& n = *p;
        switch (n.kind) {
            case DiocKind::Skip: os << "1"; return;
            case DiocKind::End: os << "0"; return;
            case DiocKind::Interaction:
                os << idx(n.index) << n.op << " : " << n.role.name() << "(" << to_string(n.expr) << ") -> "
                   << n.receiver.name() << "(" << n.var << ")";
                return;
            case DiocKind::Assign:
                os << idx(n.index) << n.var << "@" << n.role.name() << " = " << to_string(n.expr);
                return;
            case DiocKind::If:
                os << idx(n.index) << "if (" << to_string(n.expr) << ")@" << n.role.name() << " ";
                lay.block(n.left, ind);
                if (n.right.kind() != DiocKind::Skip) {
                    os << " else ";
                    lay.block(n.right, ind);
                }
                return;
            case DiocKind::While:
                os << idx(n.index) << "while (" << to_string(n.expr) << ")@" << n.role.name() << " ";
                lay.block(n.left, ind);
                return;
            case DiocKind::Scope:
                os << idx(n.index) << "scope @" << n.role.name() << " ";
                lay.block(n.left, ind);
                os << props_suffix(n.props);
                return;
            default: return;
        }
    }
};

Expr shorten_aux(const Expr& e) {
    const ExprNode& n = *e;
    switch (n.kind) {
        case ExprKind::Literal: return e;
        case ExprKind::Var: return is_aux_var(n.name) ? Expr::var(n.name.substr(kAuxPrefix.size())) : e;
        case ExprKind::Unary: return Expr::unary(n.unop, shorten_aux(n.args[0]));
        case ExprKind::Binary: return Expr::binary(n.binop, shorten_aux(n.args[0]), shorten_aux(n.args[1]));
        case ExprKind::Call: {
            std::vector<Expr> args;
            for (const auto& a : n.args) args.push_back(shorten_aux(a));
            return Expr::call(n.name, args);
        }
    }
    return e;
}

struct DpocLeaf {
    bool reading = false;

    std::string ix(const DpocIndex& i) const { return "[" + i.to_string() + "] "; }
    std::string op(const DpocNode& n) const {
        if (reading && n.op.prefix == n.index.base) return n.op.display();
        return n.op.full();
    }
    std::string var(const std::string& v) const {
        return reading && is_aux_var(v) ? v.substr(kAuxPrefix.size()) : v;
    }
    std::string ex(const Expr& e) const { return to_string(reading ? shorten_aux(e) : e); }

    template <class L>
    void operator()(L& lay, const DpocProc& p, int ind) const {
        std::ostream& os = lay.out();
        const DpocNode& n = *p;
        switch (n.kind) {
            case DpocKind::One: os << "1"; return;
            case DpocKind::Zero: os << "0"; return;
            case DpocKind::Send: {
                bool ack = reading && n.op.is_aux() && (*n.expr).kind == ExprKind::Literal && (*n.expr).literal == Value("ok");
                os << ix(n.index) << op(n) << " : " << (ack ? "ok" : ex(n.expr)) << " to " << n.peer.name();
                return;
            }
            case DpocKind::Recv: os << ix(n.index) << op(n) << " : " << var(n.var) << " from " << n.peer.name(); return;
            case DpocKind::SendUpdate:
                os << ix(n.index) << op(n) << " : ";
                if (n.payload) {
                    os << "code ";
                    lay.block(*n.payload, ind);
                } else {
                    os << "no";
                }
                os << " to " << n.peer.name();
                return;
            case DpocKind::Assign: os << ix(n.index) << var(n.var) << " = " << ex(n.expr); return;
            case DpocKind::If:
                os << ix(n.index) << "if (" << ex(n.expr) << ") ";
                lay.block(n.left, ind);
                if (!reading || n.right.kind() != DpocKind::One) {
                    os << " else ";
                    lay.block(n.right, ind);
                }
                return;
            case DpocKind::While:
                os << ix(n.index) << "while (" << ex(n.expr) << ") ";
                lay.block(n.left, ind);
                return;
            case DpocKind::ScopeCoord: {
                os << ix(n.index) << "scope @" << n.lead.name() << " ";
                lay.block(n.left, ind);
                os << " roles {";
                for (std::size_t k = 0; k < n.roleset.size(); ++k) os << (k ? ", " : " ") << n.roleset[k].name();
                os << " }" << props_suffix(n.props);
                return;
            }
            case DpocKind::ScopeSimple:
                os << ix(n.index) << "scope @" << n.lead.name() << " ";
                lay.block(n.left, ind);
                return;
            default: return;
        }
    }
};

DpocProc elide_ones(const DpocProc& p) {
    const DpocNode& n = *p;
    switch (n.kind) {
        case DpocKind::Seq:
        case DpocKind::Par: {
            DpocProc l = elide_ones(n.left);
            DpocProc r = elide_ones(n.right);
            if (l.kind() == DpocKind::One) return r;
            if (r.kind() == DpocKind::One) return l;
            return n.kind == DpocKind::Seq ? make_dseq(l, r) : make_dpar(l, r);
        }
        case DpocKind::If: return make_dif(n.index, n.expr, elide_ones(n.left), elide_ones(n.right));
        case DpocKind::While: return make_dwhile(n.index, n.expr, elide_ones(n.left));
        case DpocKind::ScopeCoord: return make_scope_coord(n.index, n.lead, elide_ones(n.left), n.roleset, n.props);
        case DpocKind::ScopeSimple: return make_scope_simple(n.index, n.lead, elide_ones(n.left));
        case DpocKind::SendUpdate:
            if (n.payload) return make_send_update(n.index, n.op, elide_ones(*n.payload), n.peer);
            return p;
        default: return p;
    }
}

// Re-associates sequences and parallels to the right so that layout is independent of grouping.
DpocProc right_assoc(const DpocProc& p) {
    const DpocNode& n = *p;
    if (n.kind == DpocKind::Seq || n.kind == DpocKind::Par) {
        std::vector<DpocProc> items;
        std::vector<DpocProc> stack{p};
        while (!stack.empty()) {
            DpocProc cur = stack.back();
            stack.pop_back();
            if (cur.kind() == n.kind) {
                stack.push_back(cur->right);
                stack.push_back(cur->left);
            } else {
                items.push_back(right_assoc(cur));
            }
        }
        return n.kind == DpocKind::Seq ? dseq_all(items) : dpar_all(items);
    }
    switch (n.kind) {
        case DpocKind::If: return make_dif(n.index, n.expr, right_assoc(n.left), right_assoc(n.right));
        case DpocKind::While: return make_dwhile(n.index, n.expr, right_assoc(n.left));
        case DpocKind::ScopeCoord: return make_scope_coord(n.index, n.lead, right_assoc(n.left), n.roleset, n.props);
        case DpocKind::ScopeSimple: return make_scope_simple(n.index, n.lead, right_assoc(n.left));
        case DpocKind::SendUpdate:
            if (n.payload) return make_send_update(n.index, n.op, right_assoc(*n.payload), n.peer);
            return p;
        default: return p;
    }
}

// Top-level layouts end every line with a newline; single processes are returned without the last one.
std::string strip_last_newline(std::string s) {
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

}  // namespace

std::string pretty(const DiocProc& p) {
    std::ostringstream os;
    Layout<DiocProc, DiocLeaf> lay(os, DiocLeaf{});
    lay.seq_body(p, 0);
    return strip_last_newline(os.str());
}

std::string pretty(const DpocProc& p) {
    std::ostringstream os;
    Layout<DpocProc, DpocLeaf> lay(os, DpocLeaf{false});
    lay.seq_body(p, 0);
    return strip_last_newline(os.str());
}

std::string display(const DpocProc& p) {
    std::ostringstream os;
    Layout<DpocProc, DpocLeaf> lay(os, DpocLeaf{true});
    lay.seq_body(right_assoc(elide_ones(p)), 0);
    return strip_last_newline(os.str());
}

std::string pretty(const Network& n) {
    std::ostringstream os;
    for (const auto& rp : n) {
        os << "role " << rp.role.name() << " {\n";
        Layout<DpocProc, DpocLeaf> lay(os, DpocLeaf{false});
        lay.seq_body(rp.proc, 1);
        os << "}";
        if (!rp.state.empty()) {
            os << " state {";
            for (const auto& [k, v] : rp.state) os << " " << k << " = " << v.to_string() << ";";
            os << " }";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace dioc
