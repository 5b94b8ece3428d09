#include "dioc/dpoc_engine.hpp"

#include <algorithm>

#include "dioc/core.hpp"
#include "dioc/projection.hpp"
#include "hash.hpp"

namespace dioc {

std::size_t DpocSystem::hash() const {
    return hash_mix(hash_mix(hash_network(net), fresh * 2 + ticked), static_cast<std::size_t>(repo ? repo->id : -1));
}

bool DpocSystem::operator==(const DpocSystem& o) const {
    return fresh == o.fresh && ticked == o.ticked && (repo ? repo->id : -1) == (o.repo ? o.repo->id : -1) && net == o.net;
}

DpocSystem make_dpoc_system(Network net, RepoPtr repo) {
    if (!repo) repo = std::make_shared<const UpdateRepo>();
    Index fresh = max_index(*repo);
    for (const auto& rp : net) fresh = std::max(fresh, max_index(rp.proc));
    std::sort(net.begin(), net.end(), [](const RoleProc& a, const RoleProc& b) { return a.role < b.role; });
    return DpocSystem{std::move(repo), std::move(net), fresh, false};
}

namespace {

void collect_sites(const DpocProc& p, Path& path, std::vector<DpocSite>& out) {
    switch (p.kind()) {
        case DpocKind::One:
        case DpocKind::Zero: return;
        case DpocKind::Seq:
            path.push_back(0);
            collect_sites(p->left, path, out);
            path.back() = 1;
            if (can_tick(p->left)) collect_sites(p->right, path, out);
            path.pop_back();
            return;
        case DpocKind::Par:
            path.push_back(0);
            collect_sites(p->left, path, out);
            path.back() = 1;
            collect_sites(p->right, path, out);
            path.pop_back();
            return;
        default: out.push_back({path, p});
    }
}

DpocProc replace_from(const DpocProc& p, const Path& path, std::size_t k, const DpocProc& residue) {
    if (k == path.size()) return residue;
    const DpocNode& n = *p;
    if (n.kind == DpocKind::Seq)
        return path[k] == 0 ? make_dseq(replace_from(n.left, path, k + 1, residue), n.right)
                            : replace_from(n.right, path, k + 1, residue);
    return path[k] == 0 ? make_dpar(replace_from(n.left, path, k + 1, residue), n.right)
                        : make_dpar(n.left, replace_from(n.right, path, k + 1, residue));
}

DpocIndex plain(Index i) { return {i, IndexVariant::Plain}; }

DpocProc ack_send(Index i, const Role& lead) {
    return make_send(plain(i), OperationName::auxiliary(AuxKind::Se, i), Expr::literal(Value(kAck)), lead);
}

// Coordinator residue: distribute the chosen code, run its own part, then collect acknowledgements.
DpocProc lead_residue(const DpocNode& scope, const Role& self, const std::optional<DiocProc>& inst) {
    const Index i = scope.index.base;
    std::vector<DpocProc> sends, acks;
    for (const auto& r : scope.roleset) {
        if (r == self) continue;
        std::optional<DpocProc> code;
        if (inst) code = pi(*inst, r);
        sends.push_back(make_send_update(plain(i), OperationName::auxiliary(AuxKind::Sb, i), code, r));
        acks.push_back(make_recv(plain(i), OperationName::auxiliary(AuxKind::Se, i), kAckVar, r));
    }
    DpocProc own = inst ? pi(*inst, self) : scope.left;
    return make_dseq(dpar_all(sends), make_dseq(own, dpar_all(acks)));
}

}  // namespace

std::vector<DpocSite> active_sites(const DpocProc& p) {
    std::vector<DpocSite> out;
    Path path;
    collect_sites(p, path, out);
    return out;
}

DpocProc replace_at(const DpocProc& p, const Path& path, const DpocProc& residue) {
    return replace_from(p, path, 0, residue);
}

DpocProc RoleMove::instantiate(const DpocProc& whole, const Value& v) const {
    return replace_at(whole, path, make_dassign(node->index, node->var, Expr::literal(v)));
}

DpocProc RoleMove::instantiate(const DpocProc& whole, const std::optional<DpocProc>& code) const {
    const Index i = node->index.base;
    return replace_at(whole, path, make_dseq(code ? *code : node->left, ack_send(i, node->lead)));
}

std::vector<RoleMove> role_step(const RoleProc& rp, const RepoPtr& repo, Index fresh, const FunctionEnv& fns) {
    std::vector<RoleMove> out;
    for (const auto& site : active_sites(rp.proc)) {
        const DpocNode& n = *site.node;
        RoleMove m;
        m.path = site.path;
        m.node = site.node;
        m.state = rp.state;
        m.fresh = fresh;
        auto finish = [&](MoveKind k, const DpocProc& residue) {
            m.kind = k;
            if (residue) m.residue = replace_at(rp.proc, site.path, residue);
            out.push_back(m);
        };
        switch (n.kind) {
            case DpocKind::Assign:
                m.state[n.var] = evaluate(n.expr, m.state, fns);
                finish(MoveKind::Tau, make_one());
                break;
            case DpocKind::If: {
                bool b = truthy(evaluate(n.expr, m.state, fns));
                finish(MoveKind::Tau, b ? n.left : n.right);
                break;
            }
            case DpocKind::While: {
                bool b = truthy(evaluate(n.expr, m.state, fns));
                finish(MoveKind::Tau, b ? make_dseq(n.left, site.node) : make_one());
                break;
            }
            case DpocKind::Send:
                m.label.kind = LabelKind::Send;
                m.label.op = n.op.full();
                m.label.aux = n.op.is_aux();
                m.label.sender = rp.role;
                m.label.receiver = n.peer;
                m.label.value = evaluate(n.expr, m.state, fns);
                finish(MoveKind::Send, make_one());
                break;
            case DpocKind::Recv:
                m.label.kind = LabelKind::Recv;
                m.label.op = n.op.full();
                m.label.aux = n.op.is_aux();
                m.label.sender = n.peer;
                m.label.receiver = rp.role;
                m.label.var = n.var;
                finish(MoveKind::Recv, DpocProc{});
                break;
            case DpocKind::SendUpdate:
                m.label.kind = LabelKind::SendUpdate;
                m.label.op = n.op.full();
                m.label.aux = true;
                m.label.sender = rp.role;
                m.label.receiver = n.peer;
                m.label.has_code = n.payload.has_value();
                finish(MoveKind::SendUpdate, make_one());
                break;
            case DpocKind::ScopeSimple:
                m.label.kind = LabelKind::RecvUpdate;
                m.label.op = OperationName::auxiliary(AuxKind::Sb, n.index.base).full();
                m.label.aux = true;
                m.label.sender = n.lead;
                m.label.receiver = rp.role;
                finish(MoveKind::RecvUpdate, DpocProc{});
                break;
            case DpocKind::ScopeCoord: {
                RoleSet scope_roles(n.roleset.begin(), n.roleset.end());
                if (repo) {
                    for (const auto& u : repo->entries) {
                        if (!update_applicable(u, scope_roles, n.props)) continue;
                        RoleMove up = m;
                        DiocProc inst = fresh_instance(u.body, up.fresh);
                        up.kind = MoveKind::LeadUp;
                        up.label.kind = LabelKind::Update;
                        up.label.update_name = u.name;
                        up.label.update_hash = u.hash;
                        up.label.scope = n.index.base;
                        up.residue = replace_at(rp.proc, site.path, lead_residue(n, rp.role, inst));
                        out.push_back(std::move(up));
                    }
                }
                m.label = Label::no_up();
                m.label.scope = n.index.base;
                finish(MoveKind::LeadNoUp, lead_residue(n, rp.role, std::nullopt));
                break;
            }
            default: break;
        }
    }
    return out;
}

std::vector<DpocStep> system_step(const DpocSystem& s, const FunctionEnv& fns) {
    std::vector<DpocStep> out;
    std::vector<std::vector<RoleMove>> moves;
    moves.reserve(s.net.size());
    for (const auto& rp : s.net) moves.push_back(role_step(rp, s.repo, s.fresh, fns));

    auto with_role = [&](DpocSystem sys, std::size_t k, DpocProc proc, LocalState st) {
        sys.net[k].proc = std::move(proc);
        sys.net[k].state = std::move(st);
        return sys;
    };

    for (std::size_t a = 0; a < s.net.size(); ++a) {
        for (const auto& m : moves[a]) {
            switch (m.kind) {
                case MoveKind::Tau:
                case MoveKind::LeadNoUp:
                case MoveKind::LeadUp: {
                    DpocSystem next = with_role(s, a, m.residue, m.state);
                    next.fresh = m.fresh;
                    out.push_back({m.kind == MoveKind::Tau ? Label::tau() : m.label, std::move(next), {{a, m.path}}});
                    break;
                }
                case MoveKind::Send:
                case MoveKind::SendUpdate: {
                    for (std::size_t b = 0; b < s.net.size(); ++b) {
                        if (b == a || s.net[b].role != m.node->peer) continue;
                        for (const auto& r : moves[b]) {
                            Label l;
                            l.sender = s.net[a].role;
                            l.receiver = s.net[b].role;
                            DpocProc rproc;
                            if (m.kind == MoveKind::Send) {
                                if (r.kind != MoveKind::Recv || r.node->peer != l.sender || r.node->op != m.node->op)
                                    continue;
                                l.kind = LabelKind::Interaction;
                                l.op = m.node->op.display();
                                l.aux = m.node->op.is_aux();
                                l.value = m.label.value;
                                l.var = r.node->var;
                                rproc = r.instantiate(s.net[b].proc, m.label.value);
                            } else {
                                const OperationName& op = m.node->op;
                                if (r.kind != MoveKind::RecvUpdate || r.node->lead != l.sender ||
                                    op.aux != AuxKind::Sb || op.owner != r.node->index.base ||
                                    op.prefix != r.node->index.base || r.node->index.variant != IndexVariant::Plain)
                                    continue;
                                l.kind = LabelKind::InteractionUpdate;
                                l.op = op.display();
                                l.aux = true;
                                l.has_code = m.node->payload.has_value();
                                rproc = r.instantiate(s.net[b].proc, m.node->payload);
                            }
                            DpocSystem next = with_role(s, a, m.residue, m.state);
                            next = with_role(std::move(next), b, std::move(rproc), r.state);
                            out.push_back({std::move(l), std::move(next), {{a, m.path}, {b, r.path}}});
                        }
                    }
                    break;
                }
                default: break;
            }
        }
    }

    bool all_tick = std::all_of(s.net.begin(), s.net.end(), [](const RoleProc& rp) { return can_tick(rp.proc); });
    if (all_tick && !s.ticked) {
        DpocSystem next = s;
        next.ticked = true;
        for (auto& rp : next.net) rp.proc = tick(rp.proc);
        out.push_back({Label::tick(), std::move(next), {}});
    }
    return out;
}

}  // namespace dioc
