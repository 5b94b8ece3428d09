#include <algorithm>
#include <functional>

#include "dioc/core.hpp"
#include "dioc/dpoc_engine.hpp"

namespace dioc {

namespace {

void flatten(const DpocProc& p, DpocKind k, std::vector<DpocProc>& out) {
    if (p.kind() == k) {
        flatten(p->left, k, out);
        flatten(p->right, k, out);
        return;
    }
    DpocProc c = canonical(p);
    if (c.kind() == k) {
        flatten(c, k, out);
        return;
    }
    if (c.kind() != DpocKind::One) out.push_back(c);
}

bool is_guard_var(const Expr& e, Index i) {
    return e->kind == ExprKind::Var && e->name == std::string(kAuxPrefix) + "x_" + std::to_string(i);
}

using Rewrite = std::function<std::optional<DpocProc>(const DpocProc&)>;

// Applies `rw` at the first matching node outside while bodies and update payloads.
std::optional<DpocProc> rewrite_outside_while(const DpocProc& p, const Rewrite& rw) {
    if (auto r = rw(p)) return r;
    const DpocNode& n = *p;
    switch (n.kind) {
        case DpocKind::Seq:
        case DpocKind::Par: {
            if (auto l = rewrite_outside_while(n.left, rw))
                return n.kind == DpocKind::Seq ? make_dseq(*l, n.right) : make_dpar(*l, n.right);
            if (auto r = rewrite_outside_while(n.right, rw))
                return n.kind == DpocKind::Seq ? make_dseq(n.left, *r) : make_dpar(n.left, *r);
            return std::nullopt;
        }
        case DpocKind::If: {
            if (auto l = rewrite_outside_while(n.left, rw)) return make_dif(n.index, n.expr, *l, n.right);
            if (auto r = rewrite_outside_while(n.right, rw)) return make_dif(n.index, n.expr, n.left, *r);
            return std::nullopt;
        }
        case DpocKind::ScopeCoord:
            if (auto b = rewrite_outside_while(n.left, rw))
                return make_scope_coord(n.index, n.lead, *b, n.roleset, n.props);
            return std::nullopt;
        case DpocKind::ScopeSimple:
            if (auto b = rewrite_outside_while(n.left, rw)) return make_scope_simple(n.index, n.lead, *b);
            return std::nullopt;
        default: return std::nullopt;
    }
}

// `recv op from R ; K(i) ; tail` where K is the construct of kind `k` guarded by the received value.
struct GuardedRecv {
    DpocProc construct;
    std::optional<DpocProc> tail;
};

std::optional<GuardedRecv> match_guarded_recv(const DpocProc& p, const OperationName& op, const Role& from, DpocKind k) {
    if (p.kind() != DpocKind::Seq) return std::nullopt;
    const DpocProc& head = p->left;
    if (head.kind() != DpocKind::Recv || head->op != op || head->peer != from) return std::nullopt;
    DpocProc rest = p->right;
    GuardedRecv g;
    if (rest.kind() == DpocKind::Seq) {
        g.construct = rest->left;
        g.tail = rest->right;
    } else {
        g.construct = rest;
    }
    if (g.construct.kind() != k || g.construct->index.base != op.owner) return std::nullopt;
    if (!is_guard_var(g.construct->expr, op.owner)) return std::nullopt;
    return g;
}

DpocProc then_tail(const DpocProc& p, const std::optional<DpocProc>& tail) { return tail ? make_dseq(p, *tail) : p; }

std::optional<DpocProc> resolve_guard_send(const DpocProc& receiver, const DpocNode& send, const Role& sender) {
    const Expr& e = send.expr;
    if (e->kind != ExprKind::Literal || !e->literal.is_bool()) return std::nullopt;
    const bool v = e->literal.as_bool();
    if (send.op.aux == AuxKind::Wb) {
        return rewrite_outside_while(receiver, [&](const DpocProc& q) -> std::optional<DpocProc> {
            auto g = match_guarded_recv(q, send.op, sender, DpocKind::While);
            if (!g) return std::nullopt;
            if (v) return make_dseq(g->construct->left, then_tail(g->construct, g->tail));
            return g->tail ? *g->tail : make_one();
        });
    }
    if (send.op.aux == AuxKind::Cnd) {
        return rewrite_outside_while(receiver, [&](const DpocProc& q) -> std::optional<DpocProc> {
            auto g = match_guarded_recv(q, send.op, sender, DpocKind::If);
            if (!g) return std::nullopt;
            return then_tail(v ? g->construct->left : g->construct->right, g->tail);
        });
    }
    return std::nullopt;
}

std::optional<DpocProc> resolve_update_send(const DpocProc& receiver, const DpocNode& send, const Role& sender) {
    return rewrite_outside_while(receiver, [&](const DpocProc& q) -> std::optional<DpocProc> {
        if (q.kind() != DpocKind::ScopeSimple || q->lead != sender || q->index.base != send.op.owner ||
            q->index.variant != IndexVariant::Plain)
            return std::nullopt;
        return send.payload ? *send.payload : q->left;
    });
}

std::size_t position(const Network& n, const Role& r) {
    for (std::size_t k = 0; k < n.size(); ++k)
        if (n[k].role == r) return k;
    return n.size();
}

// One completion step; false when none applies.
bool complete_once(Network& net) {
    for (std::size_t a = 0; a < net.size(); ++a) {
        RoleProc& rp = net[a];
        for (const auto& site : active_sites(rp.proc)) {
            const DpocNode& n = *site.node;
            switch (n.kind) {
                case DpocKind::Assign:
                    if (is_aux_var(n.var) && n.expr->kind == ExprKind::Literal) {
                        rp.state[n.var] = n.expr->literal;
                        rp.proc = canonical(replace_at(rp.proc, site.path, make_one()));
                        return true;
                    }
                    break;
                case DpocKind::While:
                case DpocKind::If: {
                    if (!is_guard_var(n.expr, n.index.base)) break;
                    auto it = rp.state.find(n.expr->name);
                    if (it == rp.state.end() || !it->second.is_bool()) break;
                    const bool v = it->second.as_bool();
                    DpocProc res = n.kind == DpocKind::If ? (v ? n.left : n.right)
                                                          : (v ? make_dseq(n.left, site.node) : make_one());
                    rp.proc = canonical(replace_at(rp.proc, site.path, res));
                    return true;
                }
                case DpocKind::Send:
                case DpocKind::SendUpdate: {
                    if (n.kind == DpocKind::Send && n.op.aux != AuxKind::Wb && n.op.aux != AuxKind::Cnd) break;
                    if (n.kind == DpocKind::SendUpdate && n.op.aux != AuxKind::Sb) break;
                    std::size_t b = position(net, n.peer);
                    if (b == net.size() || b == a) break;
                    std::optional<DpocProc> rec = n.kind == DpocKind::Send ? resolve_guard_send(net[b].proc, n, rp.role)
                                                                           : resolve_update_send(net[b].proc, n, rp.role);
                    if (!rec) break;
                    rp.proc = canonical(replace_at(rp.proc, site.path, make_one()));
                    net[b].proc = canonical(*rec);
                    return true;
                }
                default: break;
            }
        }
    }
    return false;
}

DpocProc clean(const DpocProc& p) {
    const DpocNode& n = *p;
    switch (n.kind) {
        case DpocKind::Send:
        case DpocKind::Recv:
            return n.op.aux == AuxKind::Se || n.op.aux == AuxKind::We ? make_one() : p;
        case DpocKind::Seq: return make_dseq(clean(n.left), clean(n.right));
        case DpocKind::Par: return make_dpar(clean(n.left), clean(n.right));
        case DpocKind::If: return make_dif(n.index, n.expr, clean(n.left), clean(n.right));
        case DpocKind::ScopeCoord: return make_scope_coord(n.index, n.lead, clean(n.left), n.roleset, n.props);
        case DpocKind::ScopeSimple: return make_scope_simple(n.index, n.lead, clean(n.left));
        default: return p;
    }
}

}  // namespace

DpocProc canonical(const DpocProc& p) {
    const DpocNode& n = *p;
    switch (n.kind) {
        case DpocKind::Seq:
        case DpocKind::Par: {
            std::vector<DpocProc> items;
            flatten(p->left, n.kind, items);
            flatten(p->right, n.kind, items);
            if (n.kind == DpocKind::Par && !items.empty() &&
                std::all_of(items.begin(), items.end(), [](const DpocProc& q) { return q.kind() == DpocKind::Zero; }))
                return make_zero();
            return n.kind == DpocKind::Seq ? dseq_all(items) : dpar_all(items);
        }
        case DpocKind::If: return make_dif(n.index, n.expr, canonical(n.left), canonical(n.right));
        case DpocKind::While: return make_dwhile(n.index, n.expr, canonical(n.left));
        case DpocKind::ScopeCoord: return make_scope_coord(n.index, n.lead, canonical(n.left), n.roleset, n.props);
        case DpocKind::ScopeSimple: return make_scope_simple(n.index, n.lead, canonical(n.left));
        case DpocKind::SendUpdate:
            if (n.payload) return make_send_update(n.index, n.op, canonical(*n.payload), n.peer);
            return p;
        default: return p;
    }
}

Network upd_normalize(const Network& n) {
    Network net = n;
    for (auto& rp : net) rp.proc = canonical(rp.proc);
    while (complete_once(net)) {
    }
    for (auto& rp : net) rp.proc = canonical(clean(rp.proc));
    return net;
}

}  // namespace dioc
