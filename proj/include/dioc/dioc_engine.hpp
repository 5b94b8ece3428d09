#pragma once

#include <cstdint>
#include <vector>

#include "dioc/ast.hpp"
#include "dioc/label.hpp"

namespace dioc {

/// Route from the root to a sub-term: 0 = left operand, 1 = right operand of `;` or `|`.
using Path = std::vector<std::uint8_t>;

/// A repository sequence: Change-Updates moves from entry k to entry k+1. Entry ids equal positions.
using Schedule = std::vector<RepoPtr>;

/// Repository list where every entry gets its schedule position as id.
Schedule make_schedule(std::vector<UpdateRepo> repos);

struct DiocSystem {
    GlobalState sigma;
    RepoPtr repo;
    DiocProc proc;
    Index fresh = 0;  // every index at or below this one may already be in use

    std::size_t hash() const;
    bool operator==(const DiocSystem& o) const;
};

/// Initial configuration; `fresh` starts past the largest index of the program and repository.
DiocSystem make_dioc_system(const DiocProc& p, GlobalState sigma, RepoPtr repo);

struct DiocSite {
    Path path;
    DiocProc node;
};

/// Sub-terms that may act next: left of `;` (and its right once the left can terminate), both sides of `|`.
std::vector<DiocSite> active_sites(const DiocProc& p);
/// Replaces the site at `path`; stepping right of `;` drops the terminated left side.
DiocProc replace_at(const DiocProc& p, const Path& path, const DiocProc& residue);

struct DiocStep {
    Label label;
    DiocSystem next;
};

/// Update applicable to a scope: fits the scope's roles and target, and its body is connected.
bool update_applicable(const Update& u, const RoleSet& scope_roles, const ScopeProps& props);

/// All transitions of a configuration. Change-Updates is not included: it is driven by a Schedule.
std::vector<DiocStep> enabled_dioc(const DiocSystem& s, const FunctionEnv& fns);

/// Change-Updates transitions available under `schedule` (at most one, to the next repository).
template <class System>
std::vector<System> change_updates(const System& s, const Schedule& schedule) {
    std::vector<System> out;
    std::size_t pos = static_cast<std::size_t>(s.repo ? s.repo->id : 0);
    if (pos + 1 < schedule.size()) {
        System n = s;
        n.repo = schedule[pos + 1];
        out.push_back(std::move(n));
    }
    return out;
}

}  // namespace dioc
