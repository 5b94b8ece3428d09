#pragma once

#include <stdexcept>

#include "dioc/ast.hpp"

namespace dioc {

class ProjectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variable holding the guard value communicated for construct `i`.
std::string guard_var(Index i);
/// Variable receiving acknowledgements (`ok`).
inline const std::string kAckVar = "aux$_";
/// Value sent as acknowledgement.
inline const char* kAck = "ok";

/// Process of role `r` in annotated choreography `p`. Throws ProjectionError on unannotated input.
DpocProc pi(const DiocProc& p, const Role& r);

/// One entry per role of `p` plus `extra_roles`, with its local state from `sigma` (empty if absent).
Network project(const DiocProc& p, const GlobalState& sigma, const RoleSet& extra_roles = {});

}  // namespace dioc
