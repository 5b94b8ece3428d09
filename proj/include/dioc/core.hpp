#pragma once

#include <string>
#include <vector>

#include "dioc/ast.hpp"

namespace dioc {

/// Roles occurring in a choreography (interaction endpoints, locations, coordinators).
RoleSet roles(const DiocProc& p);

struct AnnotationReport {
    bool ok = true;
    std::string diagnostic;  // first offending construct
};

/// Every indexed construct carries an index > 0 and no two constructs share one.
AnnotationReport well_annotated(const DiocProc& p);

/// Global indexes (enclosing while chain plus own index) of all indexed constructs, pre-order.
std::vector<GlobalIndex> global_indexes(const DiocProc& p);

/// Fills every unannotated (index 0) construct with fresh indexes, pre-order, starting at `next`.
/// Returns the next unused index through `next`.
DiocProc annotate_from(const DiocProc& p, Index& next);

Index max_index(const DiocProc& p);
Index max_index(const DpocProc& p);
Index max_index(const UpdateRepo& repo);

/// Adds `offset` to every index.
DiocProc shift_indexes(const DiocProc& p, Index offset);
/// Sets every index to 0.
DiocProc strip_indexes(const DiocProc& p);

/// Fresh copy of an update body for insertion: indexes shifted past `counter`, which advances.
DiocProc fresh_instance(const DiocProc& body, Index& counter);

bool can_tick(const DiocProc& p);
DiocProc tick(const DiocProc& p);
bool can_tick(const DpocProc& p);
DpocProc tick(const DpocProc& p);

/// Roles owning a network entry.
RoleSet network_roles(const Network& n);
const RoleProc* find_role(const Network& n, const Role& r);
std::size_t hash_network(const Network& n);

/// Body-roles and target/name-property conditions for applying `u` to a scope; connectedness
/// of the update body is checked by the engines.
bool update_fits_scope(const Update& u, const RoleSet& scope_roles, const ScopeProps& props);

}  // namespace dioc
