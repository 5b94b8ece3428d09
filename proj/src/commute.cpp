#include <deque>
#include <unordered_set>

#include "dioc/analysis.hpp"
#include "dioc/frontend.hpp"
#include "dioc/projection.hpp"
#include "hash.hpp"

namespace dioc {

namespace {

// upd(N) against the projection of D, role by role, with states compared on program variables.
bool related(const Network& normalized, const DiocSystem& d) {
    for (const auto& rp : normalized) {
        if (!(rp.proc == canonical(pi(d.proc, rp.role)))) return false;
        auto it = d.sigma.find(rp.role);
        LocalState want = it == d.sigma.end() ? LocalState{} : observable(it->second);
        if (observable(rp.state) != want) return false;
    }
    return true;
}

// Equal processes and equal program variables, auxiliary variables ignored.
bool same_observable(const Network& a, const Network& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].role != b[k].role || !(a[k].proc == b[k].proc)) return false;
        if (observable(a[k].state) != observable(b[k].state)) return false;
    }
    return true;
}

std::string mismatch(const Network& normalized, const DiocSystem& d) {
    for (const auto& rp : normalized) {
        DpocProc want = canonical(pi(d.proc, rp.role));
        if (!(rp.proc == want))
            return "role " + rp.role.name() + ": normalized\n" + display(rp.proc) + "\nprojection\n" + display(want);
    }
    return "local states differ";
}

std::string state_text(const GlobalState& g) {
    std::string out;
    for (const auto& [r, l] : g) {
        out += r.name() + ":";
        for (const auto& [x, v] : l) out += " " + x + " = " + v.to_string();
        out += "\n";
    }
    return out;
}

struct Pair {
    DpocSystem n;
    DiocSystem d;
    std::size_t hash() const { return hash_mix(n.hash(), d.hash()); }
    bool operator==(const Pair& o) const { return n == o.n && d == o.d; }
};

struct PairHash {
    std::size_t operator()(const Pair& p) const { return p.hash(); }
};

bool carries_residue(const Label& l) { return l.kind == LabelKind::Interaction && !l.aux; }

// Fires the receiver's residue assignment left by a programmer interaction.
void fire_residue(const DpocSystem& before, DpocStep& st, const FunctionEnv& fns) {
    for (const auto& o : st.origin) {
        const RoleProc& rp = before.net[o.role];
        if (rp.role != st.label.receiver) continue;
        DpocProc recv;
        for (const auto& site : active_sites(rp.proc))
            if (site.path == o.path) recv = site.node;
        if (!recv || recv->kind != DpocKind::Recv) return;
        RoleProc& target = st.next.net[o.role];
        for (auto& m : role_step(target, st.next.repo, st.next.fresh, fns)) {
            if (m.kind != MoveKind::Tau || m.node->kind != DpocKind::Assign) continue;
            if (!(m.node->index == recv->index) || m.node->var != recv->var) continue;
            target.proc = m.residue;
            target.state = m.state;
            st.next.fresh = m.fresh;
            return;
        }
    }
}

}  // namespace

CommutationReport check_commutation(const DiocSystem& d0, const FunctionEnv& fns, const ExploreLimits& limits,
                                    Granularity g) {
    CommutationReport rep;
    Network net = project(d0.proc, d0.sigma);
    DpocSystem n0 = make_dpoc_system(net, d0.repo);
    if (!related(upd_normalize(n0.net), d0)) {
        rep.ok = false;
        rep.witness = "initial network: " + mismatch(upd_normalize(n0.net), d0);
        return rep;
    }
    std::unordered_set<Pair, PairHash> seen;
    std::deque<std::pair<Pair, std::size_t>> queue;
    seen.insert({n0, d0});
    queue.push_back({{n0, d0}, 0});
    while (!queue.empty()) {
        auto [cur, depth] = queue.front();
        queue.pop_front();
        if (depth >= limits.max_depth || seen.size() >= limits.max_states) {
            rep.truncated = true;
            continue;
        }
        ++rep.pairs;
        Network before = upd_normalize(cur.n.net);
        std::vector<DiocStep> dsteps;
        bool dsteps_ready = false;
        for (auto& st : system_step(cur.n, fns)) {
            ++rep.steps;
            bool macro = g == Granularity::AtomicDelivery && carries_residue(st.label);
            if (macro) fire_residue(cur.n, st, fns);
            Network after = upd_normalize(st.next.net);
            std::optional<DiocSystem> match;
            bool silent = st.label.silent();
            if (silent && same_observable(after, before)) match = cur.d;
            if (!match) {
                if (!dsteps_ready) {
                    dsteps = enabled_dioc(cur.d, fns);
                    dsteps_ready = true;
                }
                std::string text = st.label.to_string();
                for (const auto& ds : dsteps) {
                    bool same = silent ? ds.label.silent() : ds.label.to_string() == text;
                    if (!same) continue;
                    if (!macro) {
                        if (ds.next.fresh == st.next.fresh && related(after, ds.next)) match = ds.next;
                    } else {
                        for (const auto& rs : enabled_dioc(ds.next, fns)) {
                            if (rs.label.silent() && rs.next.fresh == st.next.fresh && related(after, rs.next)) {
                                match = rs.next;
                                break;
                            }
                        }
                    }
                    if (match) break;
                }
            }
            if (!match) {
                rep.ok = false;
                rep.witness = "step " + st.label.to_string() + " from\n" + pretty(cur.n.net) + "\nhas no matching step from choreography\n" +
                              pretty(cur.d.proc) + "\n" + state_text(cur.d.sigma) + "\n" + mismatch(after, cur.d);
                return rep;
            }
            Pair next{std::move(st.next), std::move(*match)};
            if (seen.insert(next).second) queue.push_back({std::move(next), depth + 1});
        }
    }
    return rep;
}

}  // namespace dioc
