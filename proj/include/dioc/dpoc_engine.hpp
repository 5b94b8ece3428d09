#pragma once

#include <optional>
#include <vector>

#include "dioc/dioc_engine.hpp"

namespace dioc {

struct DpocSystem {
    RepoPtr repo;
    Network net;
    Index fresh = 0;
    bool ticked = false;  // the global tick happened (matters only for an empty network)

    std::size_t hash() const;
    bool operator==(const DpocSystem& o) const;
};

/// Initial configuration; `fresh` starts past the largest index of the network and repository.
DpocSystem make_dpoc_system(Network net, RepoPtr repo);

struct DpocSite {
    Path path;
    DpocProc node;
};

std::vector<DpocSite> active_sites(const DpocProc& p);
DpocProc replace_at(const DpocProc& p, const Path& path, const DpocProc& residue);

enum class MoveKind { Tau, Send, Recv, SendUpdate, RecvUpdate, LeadUp, LeadNoUp };

/// A transition of one role in isolation. Receives are early: the residue depends on the value
/// (or code) supplied by the partner, see `instantiate`.
struct RoleMove {
    MoveKind kind = MoveKind::Tau;
    Label label;
    Path path;
    DpocProc node;      // acting sub-term
    DpocProc residue;   // whole process after the move (not for Recv/RecvUpdate)
    LocalState state;   // local state after the move
    Index fresh = 0;    // fresh counter after the move

    /// Process after a Recv of `v`.
    DpocProc instantiate(const DpocProc& whole, const Value& v) const;
    /// Process after a RecvUpdate of `code` (nullopt: no update).
    DpocProc instantiate(const DpocProc& whole, const std::optional<DpocProc>& code) const;
};

std::vector<RoleMove> role_step(const RoleProc& rp, const RepoPtr& repo, Index fresh, const FunctionEnv& fns);

struct Origin {
    std::size_t role;  // position in the network
    Path path;
};

struct DpocStep {
    Label label;
    DpocSystem next;
    std::vector<Origin> origin;  // acting constructs; empty for a tick
};

/// System transitions: local moves, synchronisations and the global tick. Role-level send and
/// receive labels never surface on their own.
std::vector<DpocStep> system_step(const DpocSystem& s, const FunctionEnv& fns);

/// Sequences right-nested, parallels flattened and right-nested, 1s removed from both.
DpocProc canonical(const DpocProc& p);

/// Completes pending auxiliary exchanges and removes leftover acknowledgement actions, so that a
/// network reached by running a projection can be compared with the projection of its choreography.
Network upd_normalize(const Network& n);

}  // namespace dioc
