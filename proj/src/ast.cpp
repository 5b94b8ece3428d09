#include "dioc/ast.hpp"

#include <algorithm>
#include <functional>

#include "hash.hpp"

namespace dioc {

std::string DpocIndex::to_string() const {
    std::string s = std::to_string(base);
    switch (variant) {
        case IndexVariant::Plain: break;
        case IndexVariant::True: s += 't'; break;
        case IndexVariant::False: s += 'f'; break;
        case IndexVariant::Recv: s += 'r'; break;
        case IndexVariant::Close: s += 'c'; break;
    }
    return s;
}

std::string to_string(const GlobalIndex& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ':';
        s += g[i].to_string();
    }
    return s;
}

namespace {

std::size_t hstr(const std::string& s) { return std::hash<std::string>{}(s); }

std::size_t hash_props(std::size_t h, const ScopeProps& p) {
    for (const auto& [k, v] : p) h = hash_mix(hash_mix(h, hstr(k)), hstr(v));
    return h;
}

DiocProc finish(DiocNode n) {
    std::size_t h = hash_mix(0xd10c, static_cast<std::size_t>(n.kind));
    h = hash_mix(h, n.index);
    h = hash_mix(h, hstr(n.op));
    h = hash_mix(h, hstr(n.role.name()));
    h = hash_mix(h, hstr(n.receiver.name()));
    h = hash_mix(h, n.expr.hash());
    h = hash_mix(h, hstr(n.var));
    h = hash_mix(h, n.left.hash());
    h = hash_mix(h, n.right.hash());
    n.hash = hash_props(h, n.props);
    return DiocProc(std::make_shared<const DiocNode>(std::move(n)));
}

std::size_t hash_op(const OperationName& op) {
    std::size_t h = hash_mix(static_cast<std::size_t>(op.aux), hstr(op.name));
    return hash_mix(hash_mix(h, op.owner), op.prefix);
}

DpocProc finish(DpocNode n) {
    std::size_t h = hash_mix(0xd90c, static_cast<std::size_t>(n.kind));
    h = hash_mix(h, n.index.base * 8 + static_cast<std::size_t>(n.index.variant));
    h = hash_mix(h, hash_op(n.op));
    h = hash_mix(h, hstr(n.var));
    h = hash_mix(h, n.expr.hash());
    h = hash_mix(h, hstr(n.peer.name()));
    h = hash_mix(h, n.payload ? hash_mix(7, n.payload->hash()) : 3);
    h = hash_mix(h, n.left.hash());
    h = hash_mix(h, n.right.hash());
    h = hash_mix(h, hstr(n.lead.name()));
    for (const auto& r : n.roleset) h = hash_mix(h, hstr(r.name()));
    n.hash = hash_props(h, n.props);
    return DpocProc(std::make_shared<const DpocNode>(std::move(n)));
}

}  // namespace

DiocKind DiocProc::kind() const { return node_->kind; }
std::size_t DiocProc::hash() const { return node_ ? node_->hash : 0; }

bool DiocProc::operator==(const DiocProc& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    const DiocNode& a = *node_;
    const DiocNode& b = *o.node_;
    return a.hash == b.hash && a.kind == b.kind && a.index == b.index && a.op == b.op && a.role == b.role &&
           a.receiver == b.receiver && a.expr == b.expr && a.var == b.var && a.props == b.props &&
           a.left == b.left && a.right == b.right;
}

DiocProc make_interaction(Index i, std::string op, Role from, Expr e, Role to, std::string x) {
    DiocNode n;
    n.kind = DiocKind::Interaction;
    n.index = i;
    n.op = std::move(op);
    n.role = std::move(from);
    n.expr = std::move(e);
    n.receiver = std::move(to);
    n.var = std::move(x);
    return finish(std::move(n));
}

DiocProc make_assign(Index i, std::string x, Role r, Expr e) {
    DiocNode n;
    n.kind = DiocKind::Assign;
    n.index = i;
    n.var = std::move(x);
    n.role = std::move(r);
    n.expr = std::move(e);
    return finish(std::move(n));
}

DiocProc make_seq(DiocProc l, DiocProc r) {
    DiocNode n;
    n.kind = DiocKind::Seq;
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

DiocProc make_par(DiocProc l, DiocProc r) {
    DiocNode n;
    n.kind = DiocKind::Par;
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

DiocProc make_skip() {
    static const DiocProc one = [] {
        DiocNode n;
        n.kind = DiocKind::Skip;
        return finish(std::move(n));
    }();
    return one;
}

DiocProc make_end() {
    static const DiocProc zero = [] {
        DiocNode n;
        n.kind = DiocKind::End;
        return finish(std::move(n));
    }();
    return zero;
}

DiocProc make_if(Index i, Role r, Expr b, DiocProc then_, DiocProc else_) {
    DiocNode n;
    n.kind = DiocKind::If;
    n.index = i;
    n.role = std::move(r);
    n.expr = std::move(b);
    n.left = std::move(then_);
    n.right = std::move(else_);
    return finish(std::move(n));
}

DiocProc make_while(Index i, Role r, Expr b, DiocProc body) {
    DiocNode n;
    n.kind = DiocKind::While;
    n.index = i;
    n.role = std::move(r);
    n.expr = std::move(b);
    n.left = std::move(body);
    return finish(std::move(n));
}

DiocProc make_scope(Index i, Role r, DiocProc body, ScopeProps props) {
    DiocNode n;
    n.kind = DiocKind::Scope;
    n.index = i;
    n.role = std::move(r);
    n.left = std::move(body);
    n.props = std::move(props);
    return finish(std::move(n));
}

DiocProc with_index(const DiocProc& p, Index i) {
    DiocNode n = *p;
    n.index = i;
    return finish(std::move(n));
}

std::string OperationName::display() const {
    switch (aux) {
        case AuxKind::None: return name;
        case AuxKind::Cnd: return "cnd*_" + std::to_string(owner);
        case AuxKind::Wb: return "wb*_" + std::to_string(owner);
        case AuxKind::We: return "we*_" + std::to_string(owner);
        case AuxKind::Sb: return "sb*_" + std::to_string(owner);
        case AuxKind::Se: return "se*_" + std::to_string(owner);
    }
    return name;
}

std::string OperationName::full() const { return std::to_string(prefix) + "." + display(); }

DpocKind DpocProc::kind() const { return node_->kind; }
std::size_t DpocProc::hash() const { return node_ ? node_->hash : 0; }

bool DpocProc::operator==(const DpocProc& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    const DpocNode& a = *node_;
    const DpocNode& b = *o.node_;
    return a.hash == b.hash && a.kind == b.kind && a.index == b.index && a.op == b.op && a.var == b.var &&
           a.expr == b.expr && a.peer == b.peer && a.payload == b.payload && a.lead == b.lead &&
           a.roleset == b.roleset && a.props == b.props && a.left == b.left && a.right == b.right;
}

DpocProc make_recv(DpocIndex i, OperationName op, std::string x, Role from) {
    DpocNode n;
    n.kind = DpocKind::Recv;
    n.index = i;
    n.op = std::move(op);
    n.var = std::move(x);
    n.peer = std::move(from);
    return finish(std::move(n));
}

DpocProc make_send(DpocIndex i, OperationName op, Expr e, Role to) {
    DpocNode n;
    n.kind = DpocKind::Send;
    n.index = i;
    n.op = std::move(op);
    n.expr = std::move(e);
    n.peer = std::move(to);
    return finish(std::move(n));
}

DpocProc make_send_update(DpocIndex i, OperationName op, std::optional<DpocProc> payload, Role to) {
    DpocNode n;
    n.kind = DpocKind::SendUpdate;
    n.index = i;
    n.op = std::move(op);
    n.payload = std::move(payload);
    n.peer = std::move(to);
    return finish(std::move(n));
}

DpocProc make_dassign(DpocIndex i, std::string x, Expr e) {
    DpocNode n;
    n.kind = DpocKind::Assign;
    n.index = i;
    n.var = std::move(x);
    n.expr = std::move(e);
    return finish(std::move(n));
}

DpocProc make_dseq(DpocProc l, DpocProc r) {
    DpocNode n;
    n.kind = DpocKind::Seq;
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

DpocProc make_dpar(DpocProc l, DpocProc r) {
    DpocNode n;
    n.kind = DpocKind::Par;
    n.left = std::move(l);
    n.right = std::move(r);
    return finish(std::move(n));
}

DpocProc make_one() {
    static const DpocProc one = [] {
        DpocNode n;
        n.kind = DpocKind::One;
        return finish(std::move(n));
    }();
    return one;
}

DpocProc make_zero() {
    static const DpocProc zero = [] {
        DpocNode n;
        n.kind = DpocKind::Zero;
        return finish(std::move(n));
    }();
    return zero;
}

DpocProc make_dif(DpocIndex i, Expr b, DpocProc then_, DpocProc else_) {
    DpocNode n;
    n.kind = DpocKind::If;
    n.index = i;
    n.expr = std::move(b);
    n.left = std::move(then_);
    n.right = std::move(else_);
    return finish(std::move(n));
}

DpocProc make_dwhile(DpocIndex i, Expr b, DpocProc body) {
    DpocNode n;
    n.kind = DpocKind::While;
    n.index = i;
    n.expr = std::move(b);
    n.left = std::move(body);
    return finish(std::move(n));
}

DpocProc make_scope_coord(DpocIndex i, Role lead, DpocProc body, std::vector<Role> roles, ScopeProps props) {
    DpocNode n;
    n.kind = DpocKind::ScopeCoord;
    n.index = i;
    n.lead = std::move(lead);
    n.left = std::move(body);
    std::sort(roles.begin(), roles.end());
    roles.erase(std::unique(roles.begin(), roles.end()), roles.end());
    n.roleset = std::move(roles);
    n.props = std::move(props);
    return finish(std::move(n));
}

DpocProc make_scope_simple(DpocIndex i, Role lead, DpocProc body) {
    DpocNode n;
    n.kind = DpocKind::ScopeSimple;
    n.index = i;
    n.lead = std::move(lead);
    n.left = std::move(body);
    return finish(std::move(n));
}

DpocProc dseq_all(const std::vector<DpocProc>& items) {
    if (items.empty()) return make_one();
    DpocProc acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) acc = make_dseq(items[i], acc);
    return acc;
}

DpocProc dpar_all(const std::vector<DpocProc>& items) {
    if (items.empty()) return make_one();
    DpocProc acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) acc = make_dpar(items[i], acc);
    return acc;
}

const Update* UpdateRepo::find(const std::string& name) const {
    for (const auto& u : entries)
        if (u.name == name) return &u;
    return nullptr;
}

}  // namespace dioc
