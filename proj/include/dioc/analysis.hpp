#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioc/dioc_engine.hpp"
#include "dioc/dpoc_engine.hpp"
#include "dioc/explore.hpp"

namespace dioc {

// ---------------------------------------------------------------- events

enum class EventKind { Send, Recv, Assign, ScopeStart, ScopeEnd, Guard };

/// One event of a choreography or network. Identity is `key()`.
struct Event {
    EventKind kind = EventKind::Assign;
    GlobalIndex xi;
    Role role;             // performing role; coordinator for scope events
    Role peer;             // communication partner
    std::string op;        // operation (with index prefix at process level)
    bool programmer = false;  // communication on a programmer operation
    RoleSet owners;        // scope events: all roles taking part
    std::vector<GlobalIndex> scopes;  // enclosing scopes, outermost first
    std::vector<GlobalIndex> whiles;  // enclosing while loops, outermost first
    /// Enclosing conditionals: (role, global index, branch 0/1).
    std::vector<std::tuple<Role, GlobalIndex, int>> branches;
    /// Process-level constructs giving rise to the event: network position and path from the
    /// role's root (0/1 through `;` and `|`; 2/3 into if branches; 4 into while and scope bodies).
    std::vector<std::pair<std::size_t, Path>> origins;

    std::string key() const;
    bool is_comm() const { return kind == EventKind::Send || kind == EventKind::Recv; }
};

/// Events together with the reflexive-transitive causality relation.
class EventStructure {
public:
    std::vector<Event> events;

    std::size_t size() const { return events.size(); }
    bool leq(std::size_t a, std::size_t b) const { return (leq_[a][b / 64] >> (b % 64)) & 1; }
    bool conflict(std::size_t a, std::size_t b) const;
    const std::vector<std::size_t>& matches(std::size_t a) const { return matches_[a]; }
    std::optional<std::size_t> find(const std::string& key) const;
    /// Events originating at a process-level construct.
    std::vector<std::size_t> at_origin(std::size_t role, const Path& path) const;

    // construction
    std::size_t add(Event e);
    void relate(std::size_t a, std::size_t b);
    void set_matches(std::vector<std::vector<std::size_t>> m) { matches_ = std::move(m); }
    /// Reflexive-transitive closure; with `sync`, also closes under e <= e' => match(e) <= e'.
    void close(bool sync);

private:
    std::vector<std::vector<std::uint64_t>> leq_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
    std::vector<std::vector<std::size_t>> matches_;
    std::vector<std::pair<std::string, std::size_t>> keys_;  // sorted after close()
};

EventStructure events_dioc(const DiocProc& p);
EventStructure events_dpoc(const Network& n);

/// Process-level send/receive matching: same operation and partners, same global index up to
/// a receive variant standing for a true/false one.
bool matching(const Event& send, const Event& recv);

struct EventRelationReport {
    bool inclusion = true;      // every choreography event is an event of the network
    bool causality = true;      // e1 <= e2 implies e1 <= e2 or e1 <= match(e2) in the network
    bool antisymmetric = true;  // of the choreography relation
    std::string witness;
    bool ok() const { return inclusion && causality && antisymmetric; }
};

/// Relates the events of a choreography with those of its projection.
EventRelationReport check_event_relation(const DiocProc& p, const Network& projection);

struct IndexCheck {
    std::string condition;  // "C1", "C3", ...
    bool ok = true;
    std::vector<std::string> witnesses;
};

/// Static conditions C1, C3, C4, C5 and C6.
std::vector<IndexCheck> check_wellannotated_dpoc(const Network& n);

/// C2 at one configuration: events of enabled transitions are minimal (in the preorder sense).
IndexCheck check_minimality(const DpocSystem& s, const FunctionEnv& fns);

// ---------------------------------------------------------------- exploration helpers

std::vector<std::pair<Label, DiocSystem>> dioc_successors(const DiocSystem& s, const FunctionEnv& fns,
                                                          const Schedule& schedule);
std::vector<std::pair<Label, DpocSystem>> dpoc_successors(const DpocSystem& s, const FunctionEnv& fns,
                                                          const Schedule& schedule);

StateGraph<DiocSystem> explore_dioc(const DiocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits);
StateGraph<DpocSystem> explore_dpoc(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits);

/// C2 at every explored configuration, taken after upd normalization. The first failure carries
/// the path to the configuration as its first witness.
IndexCheck check_minimality_reachable(const StateGraph<DpocSystem>& g, const FunctionEnv& fns);

using Trace = std::vector<std::string>;

/// Observable traces (silent labels removed) of at most `max_len` labels, prefix-closed.
template <class State>
std::vector<Trace> weak_traces(const StateGraph<State>& g, std::size_t max_len);

std::vector<Trace> weak_traces_dioc(const DiocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits, std::size_t max_len);
std::vector<Trace> weak_traces_dpoc(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits, std::size_t max_len);

// ---------------------------------------------------------------- equivalence

enum class Verdict { Equivalent, Counterexample, Inconclusive };
const char* to_string(Verdict v);

struct EquivResult {
    Verdict verdict = Verdict::Inconclusive;
    Trace counterexample;  // weak trace possible on one side only
    std::string detail;
    std::size_t dioc_states = 0;
    std::size_t dpoc_states = 0;
};

/// Weak bisimilarity of the two systems under the same Change-Updates schedule.
EquivResult equiv_check(const DiocSystem& d, const DpocSystem& n, const FunctionEnv& fns, const Schedule& schedule,
                        const ExploreLimits& limits);

// ---------------------------------------------------------------- safety

struct SafetyReport {
    std::string property;
    bool ok = true;
    bool inconclusive = false;  // exploration was cut off before a violation was found
    Trace witness;              // path to the offending configuration
    std::string detail;
};

SafetyReport check_deadlock_freedom(const StateGraph<DpocSystem>& g);
SafetyReport check_race_freedom(const StateGraph<DpocSystem>& g, const FunctionEnv& fns);
SafetyReport check_orphan_freedom(const StateGraph<DpocSystem>& g);

SafetyReport check_deadlock_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                    const ExploreLimits& limits);
SafetyReport check_race_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                const ExploreLimits& limits);
SafetyReport check_orphan_freedom(const DpocSystem& s, const FunctionEnv& fns, const Schedule& schedule,
                                  const ExploreLimits& limits);

// ---------------------------------------------------------------- commutation

struct CommutationReport {
    bool ok = true;
    bool truncated = false;
    std::size_t pairs = 0;  // related (network, choreography) configurations explored
    std::size_t steps = 0;  // network transitions matched
    std::string witness;
};

/// Runs the projection of `d` and matches every network step by zero or one choreography step
/// with the same observable label, such that the normalized network (upd) equals the projection
/// of the choreography and program variables agree.
enum class Granularity {
    SingleStep,      // every network transition on its own
    AtomicDelivery,  // a programmer interaction and the receiver's residue assignment form one step
};
CommutationReport check_commutation(const DiocSystem& d, const FunctionEnv& fns, const ExploreLimits& limits,
                                    Granularity g = Granularity::SingleStep);

// ---------------------------------------------------------------- fault injection

/// The first programmer receive, in role order, replaced by 1. Unchanged if there is none.
Network drop_first_receive(const Network& n);

}  // namespace dioc
