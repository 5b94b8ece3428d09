#include "dioc/core.hpp"

#include <algorithm>
#include <functional>

#include "hash.hpp"

namespace dioc {

namespace {

bool indexed(DiocKind k) {
    return k == DiocKind::Interaction || k == DiocKind::Assign || k == DiocKind::If || k == DiocKind::While ||
           k == DiocKind::Scope;
}

void collect_roles(const DiocProc& p, RoleSet& out) {
    const DiocNode& n = *p;
    switch (n.kind) {
        case DiocKind::Interaction:
            out.insert(n.role);
            out.insert(n.receiver);
            return;
        case DiocKind::Assign: out.insert(n.role); return;
        case DiocKind::Skip:
        case DiocKind::End: return;
        case DiocKind::Seq:
        case DiocKind::Par:
            collect_roles(n.left, out);
            collect_roles(n.right, out);
            return;
        case DiocKind::If:
            out.insert(n.role);
            collect_roles(n.left, out);
            collect_roles(n.right, out);
            return;
        case DiocKind::While:
        case DiocKind::Scope:
            out.insert(n.role);
            collect_roles(n.left, out);
            return;
    }
}

// Rebuilds `p` with `f` applied to every index.
DiocProc map_indexes(const DiocProc& p, const std::function<Index(Index)>& f) {
    const DiocNode& n = *p;
    switch (n.kind) {
        case DiocKind::Skip:
        case DiocKind::End: return p;
        case DiocKind::Interaction:
        case DiocKind::Assign: return with_index(p, f(n.index));
        case DiocKind::Seq: return make_seq(map_indexes(n.left, f), map_indexes(n.right, f));
        case DiocKind::Par: return make_par(map_indexes(n.left, f), map_indexes(n.right, f));
        case DiocKind::If: return make_if(f(n.index), n.role, n.expr, map_indexes(n.left, f), map_indexes(n.right, f));
        case DiocKind::While: return make_while(f(n.index), n.role, n.expr, map_indexes(n.left, f));
        case DiocKind::Scope: return make_scope(f(n.index), n.role, map_indexes(n.left, f), n.props);
    }
    return p;
}

void collect_global(const DiocProc& p, GlobalIndex& prefix, std::vector<GlobalIndex>& out) {
    const DiocNode& n = *p;
    if (indexed(n.kind)) {
        prefix.push_back({n.index, IndexVariant::Plain});
        out.push_back(prefix);
        prefix.pop_back();
    }
    switch (n.kind) {
        case DiocKind::Seq:
        case DiocKind::Par:
        case DiocKind::If:
            collect_global(n.left, prefix, out);
            collect_global(n.right, prefix, out);
            return;
        case DiocKind::Scope: collect_global(n.left, prefix, out); return;
        case DiocKind::While:
            prefix.push_back({n.index, IndexVariant::Plain});
            collect_global(n.left, prefix, out);
            prefix.pop_back();
            return;
        default: return;
    }
}

}  // namespace

RoleSet roles(const DiocProc& p) {
    RoleSet out;
    collect_roles(p, out);
    return out;
}

AnnotationReport well_annotated(const DiocProc& p) {
    AnnotationReport rep;
    std::set<Index> seen;
    std::function<void(const DiocProc&)> walk = [&](const DiocProc& q) {
        if (!rep.ok) return;
        const DiocNode& n = *q;
        if (indexed(n.kind)) {
            if (n.index == 0) {
                rep = {false, "unannotated construct"};
                return;
            }
            if (!seen.insert(n.index).second) {
                rep = {false, "duplicate index " + std::to_string(n.index)};
                return;
            }
        }
        if (n.left) walk(n.left);
        if (n.right) walk(n.right);
    };
    walk(p);
    return rep;
}

std::vector<GlobalIndex> global_indexes(const DiocProc& p) {
    std::vector<GlobalIndex> out;
    GlobalIndex prefix;
    collect_global(p, prefix, out);
    return out;
}

DiocProc annotate_from(const DiocProc& p, Index& next) {
    const DiocNode& n = *p;
    Index own = n.index;
    if (indexed(n.kind) && own == 0) own = next++;
    switch (n.kind) {
        case DiocKind::Skip:
        case DiocKind::End: return p;
        case DiocKind::Interaction:
        case DiocKind::Assign: return own == n.index ? p : with_index(p, own);
        case DiocKind::Seq: {
            DiocProc l = annotate_from(n.left, next);
            return make_seq(l, annotate_from(n.right, next));
        }
        case DiocKind::Par: {
            DiocProc l = annotate_from(n.left, next);
            return make_par(l, annotate_from(n.right, next));
        }
        case DiocKind::If: {
            DiocProc l = annotate_from(n.left, next);
            return make_if(own, n.role, n.expr, l, annotate_from(n.right, next));
        }
        case DiocKind::While: return make_while(own, n.role, n.expr, annotate_from(n.left, next));
        case DiocKind::Scope: return make_scope(own, n.role, annotate_from(n.left, next), n.props);
    }
    return p;
}

Index max_index(const DiocProc& p) {
    const DiocNode& n = *p;
    Index m = indexed(n.kind) ? n.index : 0;
    if (n.left) m = std::max(m, max_index(n.left));
    if (n.right) m = std::max(m, max_index(n.right));
    return m;
}

Index max_index(const DpocProc& p) {
    const DpocNode& n = *p;
    Index m = std::max(n.index.base, n.op.prefix);
    if (n.left) m = std::max(m, max_index(n.left));
    if (n.right) m = std::max(m, max_index(n.right));
    if (n.payload) m = std::max(m, max_index(*n.payload));
    return m;
}

Index max_index(const UpdateRepo& repo) {
    Index m = 0;
    for (const auto& u : repo.entries) m = std::max(m, max_index(u.body));
    return m;
}

DiocProc shift_indexes(const DiocProc& p, Index offset) {
    return map_indexes(p, [offset](Index i) { return i + offset; });
}

DiocProc strip_indexes(const DiocProc& p) {
    return map_indexes(p, [](Index) { return Index{0}; });
}

DiocProc fresh_instance(const DiocProc& body, Index& counter) {
    Index offset = counter;
    counter = offset + max_index(body);
    return shift_indexes(body, offset);
}

bool can_tick(const DiocProc& p) {
    switch (p.kind()) {
        case DiocKind::Skip: return true;
        case DiocKind::Seq:
        case DiocKind::Par: return can_tick(p->left) && can_tick(p->right);
        default: return false;
    }
}

DiocProc tick(const DiocProc& p) {
    switch (p.kind()) {
        case DiocKind::Skip: return make_end();
        case DiocKind::Seq: return tick(p->right);
        case DiocKind::Par: return make_par(tick(p->left), tick(p->right));
        default: return p;
    }
}

bool can_tick(const DpocProc& p) {
    switch (p.kind()) {
        case DpocKind::One: return true;
        case DpocKind::Seq:
        case DpocKind::Par: return can_tick(p->left) && can_tick(p->right);
        default: return false;
    }
}

DpocProc tick(const DpocProc& p) {
    switch (p.kind()) {
        case DpocKind::One: return make_zero();
        case DpocKind::Seq: return tick(p->right);
        case DpocKind::Par: return make_dpar(tick(p->left), tick(p->right));
        default: return p;
    }
}

RoleSet network_roles(const Network& n) {
    RoleSet out;
    for (const auto& rp : n) out.insert(rp.role);
    return out;
}

const RoleProc* find_role(const Network& n, const Role& r) {
    auto it = std::lower_bound(n.begin(), n.end(), r, [](const RoleProc& a, const Role& b) { return a.role < b; });
    return it != n.end() && it->role == r ? &*it : nullptr;
}

std::size_t hash_network(const Network& n) {
    std::size_t h = 0x4e7;
    for (const auto& rp : n) {
        h = hash_mix(h, std::hash<std::string>{}(rp.role.name()));
        h = hash_mix(h, rp.proc.hash());
        h = hash_mix(h, hash_state(rp.state));
    }
    return h;
}

bool update_fits_scope(const Update& u, const RoleSet& scope_roles, const ScopeProps& props) {
    if (u.target) {
        auto it = props.find("name");
        if (it == props.end() || it->second != *u.target) return false;
    }
    RoleSet r = roles(u.body);
    return std::includes(scope_roles.begin(), scope_roles.end(), r.begin(), r.end());
}

}  // namespace dioc
