#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dioc/ast.hpp"

namespace dioc {

/// A two-element multiset of roles ({R, R} allowed), stored ordered.
struct RolePair {
    Role a;
    Role b;
    static RolePair of(Role x, Role y) { return x <= y ? RolePair{std::move(x), std::move(y)} : RolePair{std::move(y), std::move(x)}; }
    bool contains(const Role& r) const { return a == r || b == r; }
    bool intersects(const RolePair& o) const { return contains(o.a) || contains(o.b); }
    auto operator<=>(const RolePair&) const = default;
    bool operator==(const RolePair&) const = default;
};

using PairSet = std::set<RolePair>;

/// Role pairs that may perform the first (trans_i) or last (trans_f) action of `p`.
PairSet trans_i(const DiocProc& p);
PairSet trans_f(const DiocProc& p);

/// True iff every pair of `s1` shares a role with every pair of `s2`.
/// Brute force for small sets, otherwise the common-element characterisation.
bool pairsets_all_intersect(const PairSet& s1, const PairSet& s2);

/// Reference implementation: compares all pairs.
bool pairsets_all_intersect_bruteforce(const PairSet& s1, const PairSet& s2);

struct ConnectednessResult {
    bool connected = true;
    /// Left and right operands of the first sequential composition that fails.
    std::optional<std::pair<DiocProc, DiocProc>> failing_seq;
    std::string diagnostic;
};

/// Checks every sequential composition; runs in a single bottom-up pass.
ConnectednessResult connected(const DiocProc& p);

std::string to_string(const PairSet& s);

}  // namespace dioc
