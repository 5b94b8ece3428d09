#include <algorithm>
#include <map>

#include "dioc/analysis.hpp"
#include "dioc/core.hpp"

namespace dioc {

std::string Event::key() const {
    static const char* names[] = {"send", "recv", "assign", "scope-start", "scope-end", "guard"};
    std::string k = std::string(names[static_cast<int>(kind)]) + "@" + to_string(xi);
    if (kind == EventKind::ScopeStart || kind == EventKind::ScopeEnd) return k;
    k += "@" + role.name();
    if (is_comm()) k += "@" + peer.name();
    return k;
}

bool EventStructure::conflict(std::size_t a, std::size_t b) const {
    for (const auto& [r1, x1, b1] : events[a].branches)
        for (const auto& [r2, x2, b2] : events[b].branches)
            if (r1 == r2 && x1 == x2 && b1 != b2) return true;
    return false;
}

std::optional<std::size_t> EventStructure::find(const std::string& key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), std::make_pair(key, std::size_t{0}));
    if (it != keys_.end() && it->first == key) return it->second;
    return std::nullopt;
}

std::vector<std::size_t> EventStructure::at_origin(std::size_t role, const Path& path) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < events.size(); ++e)
        for (const auto& o : events[e].origins)
            if (o.first == role && o.second == path) out.push_back(e);
    return out;
}

std::size_t EventStructure::add(Event e) {
    events.push_back(std::move(e));
    return events.size() - 1;
}

void EventStructure::relate(std::size_t a, std::size_t b) { pending_.emplace_back(a, b); }

void EventStructure::close(bool sync) {
    const std::size_t n = events.size();
    const std::size_t words = (n + 63) / 64;
    leq_.resize(n);
    for (auto& row : leq_) row.resize(words, 0);
    matches_.resize(n);
    for (std::size_t i = 0; i < n; ++i) leq_[i][i / 64] |= std::uint64_t{1} << (i % 64);
    for (const auto& [a, b] : pending_) leq_[a][b / 64] |= std::uint64_t{1} << (b % 64);
    pending_.clear();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (leq(i, k))
                    for (std::size_t w = 0; w < words; ++w) leq_[i][w] |= leq_[k][w];
        if (!sync) break;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t m : matches_[a])
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t before = leq_[m][w];
                    leq_[m][w] |= leq_[a][w];
                    if (leq_[m][w] != before) changed = true;
                }
    }
    keys_.clear();
    for (std::size_t i = 0; i < n; ++i) keys_.emplace_back(events[i].key(), i);
    std::sort(keys_.begin(), keys_.end());
}

namespace {

struct Context {
    GlobalIndex prefix;  // enclosing while indexes
    std::vector<GlobalIndex> scopes;
    std::vector<GlobalIndex> whiles;
    std::vector<std::tuple<Role, GlobalIndex, int>> branches;
};

GlobalIndex own(const Context& c, DpocIndex i) {
    GlobalIndex g = c.prefix;
    g.push_back(i);
    return g;
}

Event base_event(EventKind k, const Context& c, GlobalIndex xi, Role role) {
    Event e;
    e.kind = k;
    e.xi = std::move(xi);
    e.role = std::move(role);
    e.scopes = c.scopes;
    e.whiles = c.whiles;
    e.branches = c.branches;
    return e;
}

using Ids = std::vector<std::size_t>;

void precede(EventStructure& es, const Ids& before, const Ids& after) {
    for (std::size_t a : before)
        for (std::size_t b : after) es.relate(a, b);
}

void append(Ids& to, const Ids& from) { to.insert(to.end(), from.begin(), from.end()); }

class DiocEvents {
public:
    EventStructure es;
    std::vector<std::vector<std::size_t>> matches;

    Ids visit(const DiocProc& p, Context& c) {
        const DiocNode& n = *p;
        const DpocIndex ix{n.index, IndexVariant::Plain};
        Ids ids;
        switch (n.kind) {
            case DiocKind::Skip:
            case DiocKind::End: return ids;
            case DiocKind::Interaction: {
                Event s = base_event(EventKind::Send, c, own(c, ix), n.role);
                s.peer = n.receiver;
                s.op = n.op;
                s.programmer = true;
                Event r = base_event(EventKind::Recv, c, own(c, ix), n.receiver);
                r.peer = n.role;
                r.op = n.op;
                r.programmer = true;
                std::size_t a = add(std::move(s));
                std::size_t b = add(std::move(r));
                es.relate(a, b);
                matches[a].push_back(b);
                matches[b].push_back(a);
                return {a, b};
            }
            case DiocKind::Assign: return {add(base_event(EventKind::Assign, c, own(c, ix), n.role))};
            case DiocKind::Seq: {
                Ids l = visit(n.left, c);
                Ids r = visit(n.right, c);
                precede(es, l, r);
                append(l, r);
                return l;
            }
            case DiocKind::Par: {
                Ids l = visit(n.left, c);
                append(l, visit(n.right, c));
                return l;
            }
            case DiocKind::If: {
                std::size_t g = add(base_event(EventKind::Guard, c, own(c, ix), n.role));
                c.branches.emplace_back(n.role, own(c, ix), 0);
                Ids t = visit(n.left, c);
                std::get<2>(c.branches.back()) = 1;
                Ids e = visit(n.right, c);
                c.branches.pop_back();
                append(t, e);
                precede(es, {g}, t);
                t.push_back(g);
                return t;
            }
            case DiocKind::While: {
                std::size_t g = add(base_event(EventKind::Guard, c, own(c, ix), n.role));
                c.whiles.push_back(own(c, ix));
                c.prefix.push_back(ix);
                Ids b = visit(n.left, c);
                c.prefix.pop_back();
                c.whiles.pop_back();
                precede(es, {g}, b);
                b.push_back(g);
                return b;
            }
            case DiocKind::Scope: {
                RoleSet owners = roles(n.left);
                Event up = base_event(EventKind::ScopeStart, c, own(c, ix), n.role);
                up.owners = owners;
                Event down = base_event(EventKind::ScopeEnd, c, own(c, ix), n.role);
                down.owners = owners;
                std::size_t u = add(std::move(up));
                std::size_t d = add(std::move(down));
                c.scopes.push_back(own(c, ix));
                Ids b = visit(n.left, c);
                c.scopes.pop_back();
                precede(es, {u}, b);
                precede(es, b, {d});
                b.push_back(u);
                b.push_back(d);
                return b;
            }
        }
        return ids;
    }

private:
    std::size_t add(Event e) {
        matches.emplace_back();
        return es.add(std::move(e));
    }
};

class DpocEvents {
public:
    EventStructure es;

    Ids visit(const DpocProc& p, Context& c, std::size_t role_pos, const Role& role, Path& path) {
        const DpocNode& n = *p;
        Ids ids;
        auto origin = [&](Event& e) { e.origins.emplace_back(role_pos, path); };
        switch (n.kind) {
            case DpocKind::One:
            case DpocKind::Zero: return ids;
            case DpocKind::Send:
            case DpocKind::SendUpdate:
            case DpocKind::Recv: {
                Event e = base_event(n.kind == DpocKind::Recv ? EventKind::Recv : EventKind::Send, c, own(c, n.index), role);
                e.peer = n.peer;
                e.op = n.op.full();
                e.programmer = !n.op.is_aux();
                origin(e);
                return {es.add(std::move(e))};
            }
            case DpocKind::Assign: {
                Event e = base_event(EventKind::Assign, c, own(c, n.index), role);
                origin(e);
                return {es.add(std::move(e))};
            }
            case DpocKind::Seq:
            case DpocKind::Par: {
                path.push_back(0);
                Ids l = visit(n.left, c, role_pos, role, path);
                path.back() = 1;
                Ids r = visit(n.right, c, role_pos, role, path);
                path.pop_back();
                if (n.kind == DpocKind::Seq) precede(es, l, r);
                append(l, r);
                return l;
            }
            case DpocKind::If: {
                Event ge = base_event(EventKind::Guard, c, own(c, n.index), role);
                origin(ge);
                std::size_t g = es.add(std::move(ge));
                c.branches.emplace_back(role, own(c, n.index), 0);
                path.push_back(2);
                Ids t = visit(n.left, c, role_pos, role, path);
                std::get<2>(c.branches.back()) = 1;
                path.back() = 3;
                Ids e = visit(n.right, c, role_pos, role, path);
                path.pop_back();
                c.branches.pop_back();
                append(t, e);
                precede(es, {g}, t);
                t.push_back(g);
                return t;
            }
            case DpocKind::While: {
                Event ge = base_event(EventKind::Guard, c, own(c, n.index), role);
                origin(ge);
                std::size_t g = es.add(std::move(ge));
                c.whiles.push_back(own(c, n.index));
                c.prefix.push_back(n.index);
                path.push_back(4);
                Ids b = visit(n.left, c, role_pos, role, path);
                path.pop_back();
                c.prefix.pop_back();
                c.whiles.pop_back();
                precede(es, {g}, b);
                b.push_back(g);
                return b;
            }
            case DpocKind::ScopeCoord:
            case DpocKind::ScopeSimple: {
                GlobalIndex xi = own(c, n.index);
                std::size_t u = scope_event(EventKind::ScopeStart, c, xi, n, role, role_pos, path);
                std::size_t d = scope_event(EventKind::ScopeEnd, c, xi, n, role, role_pos, path);
                c.scopes.push_back(xi);
                path.push_back(4);
                Ids b = visit(n.left, c, role_pos, role, path);
                path.pop_back();
                c.scopes.pop_back();
                precede(es, {u}, b);
                precede(es, b, {d});
                b.push_back(u);
                b.push_back(d);
                return b;
            }
        }
        return ids;
    }

private:
    std::map<std::pair<int, GlobalIndex>, std::size_t> scope_events_;

    std::size_t scope_event(EventKind k, const Context& c, const GlobalIndex& xi, const DpocNode& n, const Role& role,
                            std::size_t role_pos, const Path& path) {
        auto key = std::make_pair(static_cast<int>(k), xi);
        auto it = scope_events_.find(key);
        std::size_t id;
        if (it == scope_events_.end()) {
            Event e = base_event(k, c, xi, n.lead);
            id = es.add(std::move(e));
            scope_events_.emplace(key, id);
        } else {
            id = it->second;
        }
        Event& e = es.events[id];
        e.owners.insert(role);
        if (k == EventKind::ScopeStart) e.origins.emplace_back(role_pos, path);
        return id;
    }
};

}  // namespace

bool matching(const Event& send, const Event& recv) {
    if (send.kind != EventKind::Send || recv.kind != EventKind::Recv) return false;
    if (send.op != recv.op || send.role != recv.peer || recv.role != send.peer) return false;
    if (send.xi.size() != recv.xi.size()) return false;
    for (std::size_t k = 0; k < send.xi.size(); ++k) {
        const DpocIndex& a = send.xi[k];
        const DpocIndex& b = recv.xi[k];
        if (a == b) continue;
        bool guard_variant = a.base == b.base && b.variant == IndexVariant::Recv &&
                             (a.variant == IndexVariant::True || a.variant == IndexVariant::False);
        if (!guard_variant) return false;
    }
    return true;
}

EventStructure events_dioc(const DiocProc& p) {
    DiocEvents v;
    Context c;
    v.visit(p, c);
    v.es.set_matches(std::move(v.matches));
    v.es.close(false);
    return std::move(v.es);
}

EventStructure events_dpoc(const Network& n) {
    DpocEvents v;
    for (std::size_t k = 0; k < n.size(); ++k) {
        Context c;
        Path path;
        v.visit(n[k].proc, c, k, n[k].role, path);
    }
    EventStructure es = std::move(v.es);
    std::vector<std::vector<std::size_t>> cand(es.size());
    for (std::size_t a = 0; a < es.size(); ++a) {
        if (es.events[a].kind != EventKind::Send) continue;
        for (std::size_t b = 0; b < es.size(); ++b) {
            if (matching(es.events[a], es.events[b])) {
                cand[a].push_back(b);
                cand[b].push_back(a);
            }
        }
    }
    // A pending communication pairs with the earliest of its candidates in the partner's
    // program order: a receive standing for a true/false send cannot reach a later one.
    EventStructure local = es;
    local.close(false);
    auto earliest = [&](std::size_t x, std::size_t of) {
        for (std::size_t y : cand[of])
            if (y != x && local.leq(y, x) && !local.leq(x, y)) return false;
        return true;
    };
    std::vector<std::vector<std::size_t>> m(es.size());
    for (std::size_t a = 0; a < es.size(); ++a) {
        if (es.events[a].kind != EventKind::Send) continue;
        for (std::size_t b : cand[a]) {
            if (!earliest(a, b) || !earliest(b, a)) continue;
            m[a].push_back(b);
            m[b].push_back(a);
        }
    }
    es.set_matches(std::move(m));
    es.close(true);
    return es;
}

EventRelationReport check_event_relation(const DiocProc& p, const Network& projection) {
    EventRelationReport rep;
    EventStructure d = events_dioc(p);
    EventStructure n = events_dpoc(projection);
    std::vector<std::size_t> at(d.size());
    for (std::size_t e = 0; e < d.size(); ++e) {
        auto k = n.find(d.events[e].key());
        if (!k) {
            rep.inclusion = false;
            if (rep.witness.empty()) rep.witness = d.events[e].key() + " missing from the network";
            continue;
        }
        at[e] = *k;
    }
    if (!rep.inclusion) return rep;
    for (std::size_t a = 0; a < d.size(); ++a) {
        for (std::size_t b = 0; b < d.size(); ++b) {
            if (a == b || !d.leq(a, b)) continue;
            if (d.leq(b, a) && rep.antisymmetric) {
                rep.antisymmetric = false;
                if (rep.witness.empty()) rep.witness = d.events[a].key() + " and " + d.events[b].key() + " mutually ordered";
            }
            bool kept = n.leq(at[a], at[b]);
            for (std::size_t m : n.matches(at[b])) kept = kept || n.leq(at[a], m);
            if (!kept && rep.causality) {
                rep.causality = false;
                if (rep.witness.empty())
                    rep.witness = d.events[a].key() + " <= " + d.events[b].key() + " not preserved by the network";
            }
        }
    }
    return rep;
}

}  // namespace dioc
