#include "dioc/projection.hpp"

#include <algorithm>

#include "dioc/core.hpp"

namespace dioc {

namespace {

DpocIndex plain(Index i) { return {i, IndexVariant::Plain}; }
DpocIndex variant(Index i, IndexVariant v) { return {i, v}; }

std::vector<Role> others(const RoleSet& rs, const Role& r) {
    std::vector<Role> out;
    for (const auto& x : rs)
        if (x != r) out.push_back(x);
    return out;
}

void require_index(const DiocNode& n) {
    if (n.index == 0) throw ProjectionError("projection needs an annotated choreography");
}

DpocProc sends_to(const std::vector<Role>& targets, Index i, IndexVariant v, AuxKind k, bool value) {
    std::vector<DpocProc> items;
    for (const auto& t : targets)
        items.push_back(make_send(variant(i, v), OperationName::auxiliary(k, i), Expr::literal(Value(value)), t));
    return dpar_all(items);
}

}  // namespace

std::string guard_var(Index i) { return std::string(kAuxPrefix) + "x_" + std::to_string(i); }

DpocProc pi(const DiocProc& p, const Role& r) {
    const DiocNode& n = *p;
    switch (n.kind) {
        case DiocKind::Skip: return make_one();
        case DiocKind::End: return make_zero();
        case DiocKind::Seq: return make_dseq(pi(n.left, r), pi(n.right, r));
        case DiocKind::Par: return make_dpar(pi(n.left, r), pi(n.right, r));
        case DiocKind::Interaction: {
            require_index(n);
            OperationName op = OperationName::user(n.op, n.index);
            if (r == n.role) return make_send(plain(n.index), op, n.expr, n.receiver);
            if (r == n.receiver) return make_recv(plain(n.index), op, n.var, n.role);
            return make_one();
        }
        case DiocKind::Assign:
            require_index(n);
            return r == n.role ? make_dassign(plain(n.index), n.var, n.expr) : make_one();
        case DiocKind::If: {
            require_index(n);
            RoleSet rs = roles(n.left);
            RoleSet re = roles(n.right);
            rs.insert(re.begin(), re.end());
            const Index i = n.index;
            if (r == n.role) {
                std::vector<Role> targets = others(rs, r);
                return make_dif(plain(i), n.expr,
                                make_dseq(sends_to(targets, i, IndexVariant::True, AuxKind::Cnd, true), pi(n.left, r)),
                                make_dseq(sends_to(targets, i, IndexVariant::False, AuxKind::Cnd, false), pi(n.right, r)));
            }
            if (rs.count(r)) {
                return make_dseq(make_recv(variant(i, IndexVariant::Recv), OperationName::auxiliary(AuxKind::Cnd, i),
                                           guard_var(i), n.role),
                                 make_dif(plain(i), Expr::var(guard_var(i)), pi(n.left, r), pi(n.right, r)));
            }
            return make_one();
        }
        case DiocKind::While: {
            require_index(n);
            RoleSet rs = roles(n.left);
            const Index i = n.index;
            const OperationName wb = OperationName::auxiliary(AuxKind::Wb, i);
            const OperationName we = OperationName::auxiliary(AuxKind::We, i);
            if (r == n.role) {
                std::vector<Role> targets = others(rs, r);
                std::vector<DpocProc> acks;
                for (const auto& t : targets) acks.push_back(make_recv(variant(i, IndexVariant::Close), we, kAckVar, t));
                DpocProc body = make_dseq(sends_to(targets, i, IndexVariant::True, AuxKind::Wb, true),
                                          make_dseq(pi(n.left, r), dpar_all(acks)));
                return make_dseq(make_dwhile(plain(i), n.expr, body),
                                 sends_to(targets, i, IndexVariant::False, AuxKind::Wb, false));
            }
            if (rs.count(r)) {
                DpocProc recv = make_recv(variant(i, IndexVariant::Recv), wb, guard_var(i), n.role);
                DpocProc ack = make_send(variant(i, IndexVariant::Close), we, Expr::literal(Value(kAck)), n.role);
                DpocProc body = make_dseq(pi(n.left, r), make_dseq(ack, recv));
                return make_dseq(recv, make_dwhile(plain(i), Expr::var(guard_var(i)), body));
            }
            return make_one();
        }
        case DiocKind::Scope: {
            require_index(n);
            RoleSet rs = roles(n.left);
            if (r == n.role)
                return make_scope_coord(plain(n.index), r, pi(n.left, r), std::vector<Role>(rs.begin(), rs.end()), n.props);
            if (rs.count(r)) return make_scope_simple(plain(n.index), n.role, pi(n.left, r));
            return make_one();
        }
    }
    return make_one();
}

Network project(const DiocProc& p, const GlobalState& sigma, const RoleSet& extra_roles) {
    RoleSet rs = roles(p);
    rs.insert(extra_roles.begin(), extra_roles.end());
    Network net;
    for (const auto& r : rs) {
        auto it = sigma.find(r);
        net.push_back({r, pi(p, r), it == sigma.end() ? LocalState{} : it->second});
    }
    return net;
}

}  // namespace dioc
