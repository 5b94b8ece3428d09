#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioc/dpoc_engine.hpp"

namespace dioc {

enum class PolicyKind { NoUpdate, FirstApplicable, Script, Exhaustive };

/// Decision for the next activation of scope `scope`; no update name means no-up.
struct ScriptDecision {
    Index scope = 0;
    std::optional<std::string> update;
};

/// Before step `step`, the repository becomes the listed updates.
struct RepoChange {
    std::size_t step = 0;
    std::vector<std::string> updates;
};

struct Policy {
    PolicyKind kind = PolicyKind::FirstApplicable;
    std::vector<ScriptDecision> decisions;
    std::vector<RepoChange> repo_changes;
};

/// Script lines: `scope <index> <update-name>|no-up` and `repo <step> <name>...|empty`; `#` and `//` comments.
Policy parse_policy_script(std::string_view src);

/// `no-update`, `first-applicable` or `exhaustive`.
std::optional<PolicyKind> policy_kind_from_name(std::string_view name);

/// Sub-repository with the named entries of `all`, in the given order. Throws on unknown names.
UpdateRepo select_updates(const UpdateRepo& all, const std::vector<std::string>& names, int id);

/// Repositories an exhaustive analysis should explore for this policy, as a Change-Updates schedule.
Schedule schedule_for(const Policy& policy, const UpdateRepo& all);

struct RunOptions {
    Policy policy;
    std::uint64_t seed = 0;
    std::size_t fuel = 10000;
};

enum class RunOutcome { Terminated, OutOfFuel, Stuck };

struct RunResult {
    RunOutcome outcome = RunOutcome::OutOfFuel;
    std::vector<Label> trace;
};

RunResult run_dioc(const DiocProc& p, const UpdateRepo& all, const FunctionEnv& fns, const RunOptions& opts);
RunResult run_dpoc(const Network& n, const UpdateRepo& all, const FunctionEnv& fns, const RunOptions& opts);

/// One line-delimited JSON trace record (no trailing newline).
std::string trace_record(const Label& l, std::size_t step);

}  // namespace dioc
