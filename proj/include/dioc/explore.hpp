#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dioc/label.hpp"

namespace dioc {

struct ExploreLimits {
    std::size_t max_depth = 100000;   // transitions from the initial state
    std::size_t max_states = 500000;
};

struct GraphEdge {
    Label label;
    std::size_t target;
};

/// Reachable fragment of a labelled transition system, in breadth-first order.
template <class State>
struct StateGraph {
    std::vector<State> states;
    std::vector<std::vector<GraphEdge>> out;
    std::vector<std::size_t> parent;  // BFS tree; parent[0] == 0
    std::vector<Label> via;           // label of the BFS tree edge into each state
    std::vector<std::size_t> depth;
    std::vector<bool> expanded;       // false: cut off by the limits
    bool truncated = false;

    /// Labels on the BFS path from the initial state to `s`.
    std::vector<Label> path_to(std::size_t s) const {
        std::vector<Label> labels;
        while (s != 0) {
            labels.push_back(via[s]);
            s = parent[s];
        }
        std::reverse(labels.begin(), labels.end());
        return labels;
    }
};

/// Breadth-first exploration. `succ(state)` returns a range of (Label, State) pairs.
/// States need `hash()` and `operator==`.
template <class State, class Succ>
StateGraph<State> explore(const State& init, Succ&& succ, const ExploreLimits& limits) {
    StateGraph<State> g;
    std::unordered_multimap<std::size_t, std::size_t> index;
    auto add = [&](State s, std::size_t parent, const Label& via, std::size_t depth) -> std::pair<std::size_t, bool> {
        std::size_t h = s.hash();
        auto [lo, hi] = index.equal_range(h);
        for (auto it = lo; it != hi; ++it)
            if (g.states[it->second] == s) return {it->second, false};
        std::size_t id = g.states.size();
        g.states.push_back(std::move(s));
        g.out.emplace_back();
        g.parent.push_back(parent);
        g.via.push_back(via);
        g.depth.push_back(depth);
        g.expanded.push_back(false);
        index.emplace(h, id);
        return {id, true};
    };
    add(init, 0, Label::tau(), 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        if (g.depth[cur] >= limits.max_depth || g.states.size() >= limits.max_states) {
            if (!succ(g.states[cur]).empty()) g.truncated = true;
            continue;
        }
        auto next = succ(g.states[cur]);
        g.expanded[cur] = true;
        for (auto& [label, st] : next) {
            auto [id, fresh] = add(std::move(st), cur, label, g.depth[cur] + 1);
            g.out[cur].push_back({label, id});
            if (fresh) queue.push_back(id);
        }
    }
    return g;
}

}  // namespace dioc
