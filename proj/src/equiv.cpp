#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "dioc/analysis.hpp"

namespace dioc {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Counterexample: return "counterexample";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr int kSilent = -1;

/// Plain LTS with interned observable labels.
struct Lts {
    std::vector<std::vector<std::pair<int, std::size_t>>> out;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;

    int intern(const Label& l) {
        if (l.silent()) return kSilent;
        std::string s = l.to_string();
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(names.size());
        names.push_back(s);
        ids.emplace(s, id);
        return id;
    }

    template <class State>
    std::size_t append(const StateGraph<State>& g) {
        std::size_t base = out.size();
        out.resize(base + g.states.size());
        for (std::size_t s = 0; s < g.states.size(); ++s)
            for (const auto& e : g.out[s]) out[base + s].emplace_back(intern(e.label), base + e.target);
        return base;
    }
};

// Strongly connected components of the silent-transition graph; components are numbered in
// reverse topological order (every silent successor component has a smaller or equal number).
std::vector<std::size_t> silent_sccs(const Lts& lts, std::size_t& count) {
    const std::size_t n = lts.out.size();
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    count = 0;
    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != none) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& edges = lts.out[f.v];
            if (f.edge < edges.size()) {
                auto [label, w] = edges[f.edge++];
                if (label != kSilent) continue;
                if (index[w] == none) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                while (true) {
                    std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                    if (w == v) break;
                }
                ++count;
            }
        }
    }
    return comp;
}

template <class T>
void merge_into(std::vector<T>& dst, const std::vector<T>& src) {
    std::vector<T> out;
    out.reserve(dst.size() + src.size());
    std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
    dst.swap(out);
}

// Coarsest weak bisimulation via signature refinement on the saturated LTS.
std::vector<int> weak_bisim_blocks(const Lts& lts) {
    const std::size_t n = lts.out.size();
    std::size_t ncomp = 0;
    std::vector<std::size_t> comp = silent_sccs(lts, ncomp);
    std::vector<std::vector<std::size_t>> members(ncomp);
    for (std::size_t s = 0; s < n; ++s) members[comp[s]].push_back(s);

    std::vector<int> block(n, 0);
    std::size_t nblocks = 1;
    while (true) {
        // tau*-reachable blocks and weak visible moves, per component, successors first.
        std::vector<std::vector<int>> reach(ncomp);
        std::vector<std::vector<std::pair<int, int>>> moves(ncomp);
        for (std::size_t c = 0; c < ncomp; ++c) {
            std::vector<int>& R = reach[c];
            for (std::size_t s : members[c]) R.push_back(block[s]);
            std::sort(R.begin(), R.end());
            R.erase(std::unique(R.begin(), R.end()), R.end());
            for (std::size_t s : members[c])
                for (const auto& [label, t] : lts.out[s])
                    if (label == kSilent && comp[t] != c) merge_into(R, reach[comp[t]]);
        }
        for (std::size_t c = 0; c < ncomp; ++c) {
            std::vector<std::pair<int, int>>& M = moves[c];
            for (std::size_t s : members[c]) {
                for (const auto& [label, t] : lts.out[s]) {
                    if (label == kSilent) {
                        if (comp[t] != c) merge_into(M, moves[comp[t]]);
                        continue;
                    }
                    std::vector<std::pair<int, int>> add;
                    for (int b : reach[comp[t]]) add.emplace_back(label, b);
                    merge_into(M, add);
                }
            }
        }
        std::map<std::tuple<int, std::vector<int>, std::vector<std::pair<int, int>>>, int> sigs;
        std::vector<int> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            auto key = std::make_tuple(block[s], reach[comp[s]], moves[comp[s]]);
            auto it = sigs.find(key);
            if (it == sigs.end()) it = sigs.emplace(std::move(key), static_cast<int>(sigs.size())).first;
            next[s] = it->second;
        }
        block.swap(next);
        if (sigs.size() == nblocks) return block;
        nblocks = sigs.size();
    }
}

using StateSet = std::vector<std::size_t>;

StateSet silent_closure(const Lts& lts, StateSet start) {
    std::set<std::size_t> seen(start.begin(), start.end());
    std::vector<std::size_t> work(start.begin(), start.end());
    while (!work.empty()) {
        std::size_t s = work.back();
        work.pop_back();
        for (const auto& [label, t] : lts.out[s])
            if (label == kSilent && seen.insert(t).second) work.push_back(t);
    }
    return StateSet(seen.begin(), seen.end());
}

std::map<int, StateSet> weak_moves(const Lts& lts, const StateSet& from) {
    std::map<int, std::set<std::size_t>> raw;
    for (std::size_t s : from)
        for (const auto& [label, t] : lts.out[s])
            if (label != kSilent) raw[label].insert(t);
    std::map<int, StateSet> out;
    for (auto& [label, ts] : raw) out[label] = silent_closure(lts, StateSet(ts.begin(), ts.end()));
    return out;
}

// Shortest weak trace accepted by exactly one side, if any (bounded search).
std::optional<std::pair<Trace, std::string>> distinguishing_trace(const Lts& lts, std::size_t d0, std::size_t p0) {
    using Pair = std::pair<StateSet, StateSet>;
    std::vector<Pair> nodes;
    std::vector<std::pair<int, int>> back;  // (parent node, label)
    Pair start{silent_closure(lts, {d0}), silent_closure(lts, {p0})};
    nodes.push_back(start);
    back.emplace_back(-1, -1);
    std::map<Pair, int> seen{{start, 0}};
    auto trace_of = [&](int id) {
        Trace t;
        while (id > 0) {
            t.push_back(lts.names[static_cast<std::size_t>(back[static_cast<std::size_t>(id)].second)]);
            id = back[static_cast<std::size_t>(id)].first;
        }
        std::reverse(t.begin(), t.end());
        return t;
    };
    for (std::size_t k = 0; k < nodes.size() && nodes.size() < 200000; ++k) {
        auto dm = weak_moves(lts, nodes[k].first);
        auto pm = weak_moves(lts, nodes[k].second);
        std::set<int> labels;
        for (const auto& [l, _] : dm) labels.insert(l);
        for (const auto& [l, _] : pm) labels.insert(l);
        for (int l : labels) {
            bool in_d = dm.count(l) > 0;
            bool in_p = pm.count(l) > 0;
            if (in_d != in_p) {
                Trace t = trace_of(static_cast<int>(k));
                t.push_back(lts.names[static_cast<std::size_t>(l)]);
                return std::make_pair(t, in_d ? std::string("choreography only") : std::string("network only"));
            }
            Pair next{dm[l], pm[l]};
            if (seen.count(next)) continue;
            seen.emplace(next, static_cast<int>(nodes.size()));
            nodes.push_back(std::move(next));
            back.emplace_back(static_cast<int>(k), l);
        }
    }
    return std::nullopt;
}

}  // namespace

template <class State>
std::vector<Trace> weak_traces(const StateGraph<State>& g, std::size_t max_len) {
    Lts lts;
    lts.append(g);
    std::set<Trace> out{{}};
    std::vector<std::pair<StateSet, Trace>> frontier{{silent_closure(lts, {0}), {}}};
    for (std::size_t len = 0; len < max_len && !frontier.empty(); ++len) {
        std::vector<std::pair<StateSet, Trace>> next;
        for (const auto& [set, trace] : frontier) {
            for (auto& [label, succ] : weak_moves(lts, set)) {
                Trace t = trace;
                t.push_back(lts.names[static_cast<std::size_t>(label)]);
                if (out.insert(t).second) next.emplace_back(std::move(succ), std::move(t));
            }
        }
        frontier.swap(next);
    }
    return std::vector<Trace>(out.begin(), out.end());
}

template std::vector<Trace> weak_traces(const StateGraph<DiocSystem>&, std::size_t);
template std::vector<Trace> weak_traces(const StateGraph<DpocSystem>&, std::size_t);

std::vector<Trace> weak_traces_dioc(const DiocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits, std::size_t max_len) {
    return weak_traces(explore_dioc(s, fns, schedule, limits), max_len);
}

std::vector<Trace> weak_traces_dpoc(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits, std::size_t max_len) {
    return weak_traces(explore_dpoc(s, fns, schedule, limits), max_len);
}

EquivResult equiv_check(const DiocSystem& d, const DpocSystem& n, const FunctionEnv& fns, const Schedule& schedule,
                        const ExploreLimits& limits) {
    EquivResult r;
    auto gd = explore_dioc(d, fns, schedule, limits);
    auto gn = explore_dpoc(n, fns, schedule, limits);
    r.dioc_states = gd.states.size();
    r.dpoc_states = gn.states.size();
    Lts lts;
    std::size_t d0 = lts.append(gd);
    std::size_t n0 = lts.append(gn);
    if (gd.truncated || gn.truncated) {
        r.verdict = Verdict::Inconclusive;
        r.detail = "exploration limit reached";
        return r;
    }
    std::vector<int> block = weak_bisim_blocks(lts);
    if (block[d0] == block[n0]) {
        r.verdict = Verdict::Equivalent;
        return r;
    }
    r.verdict = Verdict::Counterexample;
    if (auto t = distinguishing_trace(lts, d0, n0)) {
        r.counterexample = t->first;
        r.detail = "weak trace possible for the " + t->second;
    } else {
        r.detail = "weak traces agree but branching differs";
    }
    return r;
}

}  // namespace dioc
