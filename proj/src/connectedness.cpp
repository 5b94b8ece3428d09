#include "dioc/connectedness.hpp"

#include <algorithm>
#include <vector>

#include "dioc/frontend.hpp"

namespace dioc {

namespace {

constexpr std::size_t kBruteForceLimit = 9;

struct Summary {
    PairSet first;
    PairSet last;
    RoleSet roles;
};

PairSet unite(const PairSet& a, const PairSet& b) {
    PairSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

PairSet self_pair(const Role& r) { return {RolePair::of(r, r)}; }

// Pairs {R', R} for every R' in `body_roles` other than R; {R, R} when there is none.
PairSet towards(const Role& r, const RoleSet& body_roles) {
    PairSet out;
    for (const auto& other : body_roles)
        if (other != r) out.insert(RolePair::of(other, r));
    if (out.empty()) out = self_pair(r);
    return out;
}

std::string brief(const DiocProc& p) {
    std::string s = pretty(p);
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (s.find("  ") != std::string::npos) s.erase(s.find("  "), 1);
    if (!s.empty() && s.back() == ' ') s.pop_back();
    return s.size() > 120 ? s.substr(0, 117) + "..." : s;
}

// Post-order traversal with an explicit stack: generated sequences nest thousands of levels deep.
class Checker {
public:
    ConnectednessResult result;

    Summary visit(const DiocProc& root) {
        struct Frame {
            const DiocProc* p;
            std::vector<Summary> done;  // summaries of the children visited so far
        };
        std::vector<Frame> stack;
        stack.push_back({&root, {}});
        Summary out;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const DiocNode& n = **f.p;
            std::size_t arity = children(n.kind);
            if (f.done.size() < arity) {
                const DiocProc* child = f.done.empty() ? &n.left : &n.right;
                stack.push_back({child, {}});
                continue;
            }
            Summary s = combine(*f.p, f.done);
            stack.pop_back();
            if (stack.empty()) {
                out = std::move(s);
            } else {
                stack.back().done.push_back(std::move(s));
            }
        }
        return out;
    }

private:
    static std::size_t children(DiocKind k) {
        switch (k) {
            case DiocKind::Seq:
            case DiocKind::Par:
            case DiocKind::If: return 2;
            case DiocKind::While:
            case DiocKind::Scope: return 1;
            default: return 0;
        }
    }

    Summary combine(const DiocProc& p, std::vector<Summary>& c) {
        const DiocNode& n = *p;
        Summary s;
        switch (n.kind) {
            case DiocKind::Interaction:
                s.first = s.last = {RolePair::of(n.role, n.receiver)};
                s.roles = {n.role, n.receiver};
                return s;
            case DiocKind::Assign:
                s.first = s.last = self_pair(n.role);
                s.roles = {n.role};
                return s;
            case DiocKind::Skip:
            case DiocKind::End: return s;
            case DiocKind::Seq: {
                Summary& l = c[0];
                Summary& r = c[1];
                if (result.connected && !pairsets_all_intersect(l.last, r.first)) {
                    result.connected = false;
                    result.failing_seq = std::make_pair(n.left, n.right);
                    result.diagnostic = "sequence not connected: last actions " + to_string(l.last) + " of `" +
                                        brief(n.left) + "` do not meet first actions " + to_string(r.first) + " of `" +
                                        brief(n.right) + "`";
                }
                s.first = l.first.empty() ? std::move(r.first) : std::move(l.first);
                s.last = r.last.empty() ? std::move(l.last) : std::move(r.last);
                s.roles = std::move(l.roles);
                s.roles.insert(r.roles.begin(), r.roles.end());
                return s;
            }
            case DiocKind::Par: {
                s.first = unite(c[0].first, c[1].first);
                s.last = unite(c[0].last, c[1].last);
                s.roles = std::move(c[0].roles);
                s.roles.insert(c[1].roles.begin(), c[1].roles.end());
                return s;
            }
            case DiocKind::If: {
                s.first = self_pair(n.role);
                s.last = unite(c[0].last, c[1].last);
                if (s.last.empty()) s.last = self_pair(n.role);
                s.roles = std::move(c[0].roles);
                s.roles.insert(c[1].roles.begin(), c[1].roles.end());
                s.roles.insert(n.role);
                return s;
            }
            case DiocKind::While: {
                Summary& b = c[0];
                s.first = self_pair(n.role);
                s.last = b.last.empty() ? self_pair(n.role) : towards(n.role, b.roles);
                s.roles = std::move(b.roles);
                s.roles.insert(n.role);
                return s;
            }
            case DiocKind::Scope: {
                Summary& b = c[0];
                s.first = self_pair(n.role);
                s.last = towards(n.role, b.roles);
                s.roles = std::move(b.roles);
                s.roles.insert(n.role);
                return s;
            }
        }
        return s;
    }
};

}  // namespace

PairSet trans_i(const DiocProc& p) { return Checker{}.visit(p).first; }
PairSet trans_f(const DiocProc& p) { return Checker{}.visit(p).last; }

bool pairsets_all_intersect_bruteforce(const PairSet& s1, const PairSet& s2) {
    for (const auto& x : s1)
        for (const auto& y : s2)
            if (!x.intersects(y)) return false;
    return true;
}

bool pairsets_all_intersect(const PairSet& s1, const PairSet& s2) {
    if (std::min(s1.size(), s2.size()) <= kBruteForceLimit) return pairsets_all_intersect_bruteforce(s1, s2);
    // Large families intersect pairwise only through an element common to all of them.
    const RolePair& seed = *s1.begin();
    for (const Role& cand : {seed.a, seed.b}) {
        auto has = [&](const RolePair& q) { return q.contains(cand); };
        if (std::all_of(s1.begin(), s1.end(), has) && std::all_of(s2.begin(), s2.end(), has)) return true;
    }
    return false;
}

ConnectednessResult connected(const DiocProc& p) {
    Checker c;
    c.visit(p);
    return c.result;
}

std::string to_string(const PairSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& q : s) {
        if (!first) out += ", ";
        first = false;
        out += "{" + q.a.name() + "," + q.b.name() + "}";
    }
    return out + "}";
}

}  // namespace dioc
