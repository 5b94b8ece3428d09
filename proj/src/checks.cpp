#include <algorithm>
#include <map>

#include "dioc/analysis.hpp"

namespace dioc {

namespace {

bool contains(const std::vector<GlobalIndex>& v, const GlobalIndex& g) { return std::find(v.begin(), v.end(), g) != v.end(); }

std::string describe(const Event& e) { return e.key() + (e.op.empty() ? "" : " " + e.op); }

IndexCheck check_c1(const EventStructure& es) {
    IndexCheck c{"C1", true, {}};
    std::map<GlobalIndex, std::vector<std::size_t>> by_xi;
    for (std::size_t k = 0; k < es.size(); ++k)
        if (es.events[k].is_comm() && es.events[k].programmer) by_xi[es.events[k].xi].push_back(k);
    for (const auto& [xi, ids] : by_xi) {
        bool ok = ids.size() == 1;
        if (ids.size() == 2) {
            const Event& a = es.events[ids[0]];
            const Event& b = es.events[ids[1]];
            ok = matching(a, b) || matching(b, a);
        }
        if (!ok) {
            c.ok = false;
            c.witnesses.push_back(std::to_string(ids.size()) + " programmer communication events at " + to_string(xi));
        }
    }
    return c;
}

// C3 (sends, same target) and C4 (receives, same source).
IndexCheck check_ordered(const EventStructure& es, EventKind kind, const char* name) {
    IndexCheck c{name, true, {}};
    for (std::size_t a = 0; a < es.size(); ++a) {
        const Event& ea = es.events[a];
        if (ea.kind != kind) continue;
        for (std::size_t b = a + 1; b < es.size(); ++b) {
            const Event& eb = es.events[b];
            if (eb.kind != kind || eb.role != ea.role || eb.op != ea.op || eb.peer != ea.peer || eb.xi == ea.xi) continue;
            if (es.conflict(a, b) || es.leq(a, b) || es.leq(b, a)) continue;
            c.ok = false;
            c.witnesses.push_back("unordered " + describe(ea) + " and " + describe(eb));
        }
    }
    return c;
}

IndexCheck check_c5(const EventStructure& es) {
    IndexCheck c{"C5", true, {}};
    for (std::size_t a = 0; a < es.size(); ++a) {
        const Event& ea = es.events[a];
        if (!ea.is_comm()) continue;
        for (std::size_t m : es.matches(a)) {
            for (const auto& scope : ea.scopes) {
                if (contains(es.events[m].scopes, scope)) continue;
                c.ok = false;
                c.witnesses.push_back(describe(ea) + " is inside scope " + to_string(scope) + " but its match " +
                                      describe(es.events[m]) + " is not");
            }
        }
    }
    return c;
}

std::optional<std::size_t> guard_of(const EventStructure& es, const GlobalIndex& w, const Role& role) {
    for (std::size_t k = 0; k < es.size(); ++k) {
        const Event& e = es.events[k];
        if (e.kind == EventKind::Guard && e.xi == w && e.role == role) return k;
    }
    return std::nullopt;
}

// e1 lies in a while loop that e2 is outside of, and e2 precedes that loop's guard.
bool c6_oriented(const EventStructure& es, std::size_t e1, std::size_t e2) {
    const Event& a = es.events[e1];
    const Event& b = es.events[e2];
    for (const auto& w : a.whiles) {
        if (contains(b.whiles, w)) continue;
        auto g = guard_of(es, w, a.role);
        if (g && es.leq(e2, *g)) return true;
    }
    return false;
}

IndexCheck check_c6(const EventStructure& es) {
    IndexCheck c{"C6", true, {}};
    for (std::size_t a = 0; a < es.size(); ++a) {
        const Event& ea = es.events[a];
        for (std::size_t b = a + 1; b < es.size(); ++b) {
            const Event& eb = es.events[b];
            if (ea.xi.back() != eb.xi.back() || ea.xi == eb.xi) continue;
            if (c6_oriented(es, a, b) || c6_oriented(es, b, a)) continue;
            c.ok = false;
            c.witnesses.push_back("same index, different global index: " + describe(ea) + " and " + describe(eb));
        }
    }
    return c;
}

}  // namespace

std::vector<IndexCheck> check_wellannotated_dpoc(const Network& n) {
    EventStructure es = events_dpoc(n);
    return {check_c1(es), check_ordered(es, EventKind::Send, "C3"), check_ordered(es, EventKind::Recv, "C4"),
            check_c5(es), check_c6(es)};
}

IndexCheck check_minimality(const DpocSystem& s, const FunctionEnv& fns) {
    IndexCheck c{"C2", true, {}};
    EventStructure es = events_dpoc(s.net);
    for (const auto& step : system_step(s, fns)) {
        for (const auto& o : step.origin) {
            for (std::size_t e : es.at_origin(o.role, o.path)) {
                for (std::size_t f = 0; f < es.size(); ++f) {
                    if (f == e || !es.leq(f, e) || es.leq(e, f)) continue;
                    c.ok = false;
                    c.witnesses.push_back(step.label.to_string() + ": " + describe(es.events[e]) + " enabled after " +
                                          describe(es.events[f]));
                }
            }
        }
    }
    return c;
}

IndexCheck check_minimality_reachable(const StateGraph<DpocSystem>& g, const FunctionEnv& fns) {
    for (std::size_t k = 0; k < g.states.size(); ++k) {
        DpocSystem u = g.states[k];
        u.net = upd_normalize(u.net);
        IndexCheck at = check_minimality(u, fns);
        if (at.ok) continue;
        std::string path;
        for (const auto& l : g.path_to(k)) path += (path.empty() ? "" : ", ") + l.to_string();
        at.witnesses.insert(at.witnesses.begin(), "after [" + path + "]");
        return at;
    }
    return {"C2", true, {}};
}

std::vector<std::pair<Label, DiocSystem>> dioc_successors(const DiocSystem& s, const FunctionEnv& fns,
                                                          const Schedule& schedule) {
    std::vector<std::pair<Label, DiocSystem>> out;
    for (auto& st : enabled_dioc(s, fns)) out.emplace_back(std::move(st.label), std::move(st.next));
    for (auto& n : change_updates(s, schedule)) {
        Label l;
        l.kind = LabelKind::ChangeUpdates;
        l.repo = n.repo->id;
        out.emplace_back(l, std::move(n));
    }
    return out;
}

std::vector<std::pair<Label, DpocSystem>> dpoc_successors(const DpocSystem& s, const FunctionEnv& fns,
                                                          const Schedule& schedule) {
    std::vector<std::pair<Label, DpocSystem>> out;
    for (auto& st : system_step(s, fns)) out.emplace_back(std::move(st.label), std::move(st.next));
    for (auto& n : change_updates(s, schedule)) {
        Label l;
        l.kind = LabelKind::ChangeUpdates;
        l.repo = n.repo->id;
        out.emplace_back(l, std::move(n));
    }
    return out;
}

StateGraph<DiocSystem> explore_dioc(const DiocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits) {
    return explore(s, [&](const DiocSystem& x) { return dioc_successors(x, fns, schedule); }, limits);
}

StateGraph<DpocSystem> explore_dpoc(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits) {
    return explore(s, [&](const DpocSystem& x) { return dpoc_successors(x, fns, schedule); }, limits);
}

// ---------------------------------------------------------------- safety

namespace {

Trace labels(const std::vector<Label>& ls) {
    Trace t;
    for (const auto& l : ls) t.push_back(l.to_string());
    return t;
}

bool has_pending_send(const DpocProc& p) {
    const DpocNode& n = *p;
    if (n.kind == DpocKind::Send || n.kind == DpocKind::SendUpdate) return true;
    if (n.left && has_pending_send(n.left)) return true;
    if (n.right && has_pending_send(n.right)) return true;
    return false;
}

bool internal_edge(const GraphEdge& e) { return e.label.kind != LabelKind::ChangeUpdates; }

std::vector<bool> entered_by_tick(const StateGraph<DpocSystem>& g) {
    std::vector<bool> out(g.states.size(), false);
    for (const auto& edges : g.out)
        for (const auto& e : edges)
            if (e.label.kind == LabelKind::Tick) out[e.target] = true;
    return out;
}

}  // namespace

SafetyReport check_deadlock_freedom(const StateGraph<DpocSystem>& g) {
    SafetyReport r{"deadlock-freedom", true, false, {}, {}};
    std::vector<bool> ticked = entered_by_tick(g);
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        if (!g.expanded[s]) continue;
        if (std::any_of(g.out[s].begin(), g.out[s].end(), internal_edge)) continue;
        if (ticked[s]) continue;
        r.ok = false;
        r.witness = labels(g.path_to(s));
        r.detail = "stuck configuration without termination";
        return r;
    }
    r.inconclusive = g.truncated;
    return r;
}

SafetyReport check_race_freedom(const StateGraph<DpocSystem>& g, const FunctionEnv& fns) {
    SafetyReport r{"race-freedom", true, false, {}, {}};
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        const DpocSystem& sys = g.states[s];
        // Enabled communication actions of every role: (role position, node).
        std::vector<std::pair<std::size_t, DpocProc>> sends, recvs;
        for (std::size_t k = 0; k < sys.net.size(); ++k) {
            for (const auto& m : role_step(sys.net[k], sys.repo, sys.fresh, fns)) {
                if (m.kind == MoveKind::Send || m.kind == MoveKind::SendUpdate) sends.emplace_back(k, m.node);
                if (m.kind == MoveKind::Recv || m.kind == MoveKind::RecvUpdate) recvs.emplace_back(k, m.node);
            }
        }
        auto pairs = [&](const std::pair<std::size_t, DpocProc>& snd, const std::pair<std::size_t, DpocProc>& rcv) {
            const DpocNode& a = *snd.second;
            const DpocNode& b = *rcv.second;
            if (sys.net[rcv.first].role != a.peer) return false;
            if (b.kind == DpocKind::Recv) return a.kind == DpocKind::Send && b.peer == sys.net[snd.first].role && b.op == a.op;
            return a.kind == DpocKind::SendUpdate && b.lead == sys.net[snd.first].role && a.op.owner == b.index.base;
        };
        auto report = [&](const std::string& what) {
            r.ok = false;
            r.witness = labels(g.path_to(s));
            r.detail = what;
        };
        for (const auto& rc : recvs) {
            int n = 0;
            for (const auto& sd : sends) n += pairs(sd, rc);
            if (n > 1) {
                report("receive " + rc.second->op.full() + " at " + sys.net[rc.first].role.name() + " can pair with " +
                       std::to_string(n) + " sends");
                return r;
            }
        }
        for (const auto& sd : sends) {
            int n = 0;
            for (const auto& rc : recvs) n += pairs(sd, rc);
            if (n > 1) {
                report("send " + sd.second->op.full() + " at " + sys.net[sd.first].role.name() + " can pair with " +
                       std::to_string(n) + " receives");
                return r;
            }
        }
    }
    r.inconclusive = g.truncated;
    return r;
}

SafetyReport check_orphan_freedom(const StateGraph<DpocSystem>& g) {
    SafetyReport r{"orphan-freedom", true, false, {}, {}};
    std::vector<bool> ticked = entered_by_tick(g);
    for (std::size_t s = 0; s < g.states.size(); ++s) {
        bool final_state = ticked[s] || (g.expanded[s] && std::none_of(g.out[s].begin(), g.out[s].end(), internal_edge));
        if (!final_state) continue;
        for (const auto& rp : g.states[s].net) {
            if (!has_pending_send(rp.proc)) continue;
            r.ok = false;
            r.witness = labels(g.path_to(s));
            r.detail = "pending send left at " + rp.role.name();
            return r;
        }
    }
    r.inconclusive = g.truncated;
    return r;
}

SafetyReport check_deadlock_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits) {
    return check_deadlock_freedom(explore_dpoc(s, fns, schedule, limits));
}

SafetyReport check_race_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                const ExploreLimits& limits) {
    return check_race_freedom(explore_dpoc(s, fns, schedule, limits), fns);
}

SafetyReport check_orphan_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                  const ExploreLimits& limits) {
    return check_orphan_freedom(explore_dpoc(s, fns, schedule, limits));
}

}  // namespace dioc
