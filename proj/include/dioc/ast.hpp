#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dioc/expr.hpp"

namespace dioc {

class Role {
public:
    Role() = default;
    explicit Role(std::string name) : name_(std::move(name)) {}
    const std::string& name() const { return name_; }
    bool empty() const { return name_.empty(); }
    auto operator<=>(const Role&) const = default;
    bool operator==(const Role&) const = default;

private:
    std::string name_;
};

using RoleSet = std::set<Role>;

/// Construct index. 0 means "not yet annotated".
using Index = std::uint32_t;

enum class IndexVariant : std::uint8_t { Plain, True, False, Recv, Close };

/// Index of a process construct: a choreography index plus the variant projection adds.
struct DpocIndex {
    Index base = 0;
    IndexVariant variant = IndexVariant::Plain;
    auto operator<=>(const DpocIndex&) const = default;
    bool operator==(const DpocIndex&) const = default;
    std::string to_string() const;  // "3", "3t", "3f", "3r", "3c"
};

/// Enclosing while indexes followed by the construct's own index.
using GlobalIndex = std::vector<DpocIndex>;
std::string to_string(const GlobalIndex& g);

using ScopeProps = std::map<std::string, std::string>;

struct DiocNode;

enum class DiocKind { Interaction, Assign, Seq, Par, Skip, End, If, While, Scope };

/// Immutable choreography term. Equality is structural and short-circuits on the cached hash.
class DiocProc {
public:
    DiocProc() = default;
    explicit DiocProc(std::shared_ptr<const DiocNode> n) : node_(std::move(n)) {}

    const DiocNode& operator*() const { return *node_; }
    const DiocNode* operator->() const { return node_.get(); }
    explicit operator bool() const { return node_ != nullptr; }
    const DiocNode* get() const { return node_.get(); }

    DiocKind kind() const;
    std::size_t hash() const;
    bool operator==(const DiocProc& o) const;

private:
    std::shared_ptr<const DiocNode> node_;
};

struct DiocNode {
    DiocKind kind = DiocKind::Skip;
    Index index = 0;
    std::string op;   // interaction operation
    Role role;        // sender, assignment location, coordinator
    Role receiver;    // interaction receiver
    Expr expr;        // payload, right-hand side or guard
    std::string var;  // receiving or assigned variable
    DiocProc left;    // seq/par left, then-branch, while/scope body
    DiocProc right;   // seq/par right, else-branch
    ScopeProps props;
    std::size_t hash = 0;
};

DiocProc make_interaction(Index i, std::string op, Role from, Expr e, Role to, std::string x);
DiocProc make_assign(Index i, std::string x, Role r, Expr e);
DiocProc make_seq(DiocProc l, DiocProc r);
DiocProc make_par(DiocProc l, DiocProc r);
DiocProc make_skip();
DiocProc make_end();
DiocProc make_if(Index i, Role r, Expr b, DiocProc then_, DiocProc else_);
DiocProc make_while(Index i, Role r, Expr b, DiocProc body);
DiocProc make_scope(Index i, Role r, DiocProc body, ScopeProps props = {});
/// Same node with a different index.
DiocProc with_index(const DiocProc& p, Index i);

enum class AuxKind : std::uint8_t { None, Cnd, Wb, We, Sb, Se };

/// Operation of a process action: a programmer operation or an auxiliary one such as `cnd*_15`,
/// always prefixed by the index of the choreography construct it was projected from.
struct OperationName {
    AuxKind aux = AuxKind::None;
    std::string name;  // programmer operation name
    Index owner = 0;   // construct the auxiliary operation belongs to
    Index prefix = 0;

    static OperationName user(std::string name, Index prefix) { return {AuxKind::None, std::move(name), 0, prefix}; }
    static OperationName auxiliary(AuxKind k, Index owner) { return {k, {}, owner, owner}; }

    bool is_aux() const { return aux != AuxKind::None; }
    /// `priceReq`, `cnd*_15`
    std::string display() const;
    /// `5.priceReq`, `15.cnd*_15`
    std::string full() const;
    auto operator<=>(const OperationName&) const = default;
    bool operator==(const OperationName&) const = default;
};

struct DpocNode;

enum class DpocKind { Recv, Send, SendUpdate, Assign, Seq, Par, One, Zero, If, While, ScopeCoord, ScopeSimple };

/// Immutable process term of a single role.
class DpocProc {
public:
    DpocProc() = default;
    explicit DpocProc(std::shared_ptr<const DpocNode> n) : node_(std::move(n)) {}

    const DpocNode& operator*() const { return *node_; }
    const DpocNode* operator->() const { return node_.get(); }
    explicit operator bool() const { return node_ != nullptr; }
    const DpocNode* get() const { return node_.get(); }

    DpocKind kind() const;
    std::size_t hash() const;
    bool operator==(const DpocProc& o) const;

private:
    std::shared_ptr<const DpocNode> node_;
};

struct DpocNode {
    DpocKind kind = DpocKind::One;
    DpocIndex index;
    OperationName op;
    std::string var;  // receive target or assigned variable
    Expr expr;        // sent value, right-hand side or guard
    Role peer;        // receive source or send target
    std::optional<DpocProc> payload;  // SendUpdate: code, or nullopt for `no`
    DpocProc left;
    DpocProc right;
    Role lead;             // scope coordinator
    std::vector<Role> roleset;  // ScopeCoord participants, sorted
    ScopeProps props;
    std::size_t hash = 0;
};

DpocProc make_recv(DpocIndex i, OperationName op, std::string x, Role from);
DpocProc make_send(DpocIndex i, OperationName op, Expr e, Role to);
DpocProc make_send_update(DpocIndex i, OperationName op, std::optional<DpocProc> payload, Role to);
DpocProc make_dassign(DpocIndex i, std::string x, Expr e);
DpocProc make_dseq(DpocProc l, DpocProc r);
DpocProc make_dpar(DpocProc l, DpocProc r);
DpocProc make_one();
DpocProc make_zero();
DpocProc make_dif(DpocIndex i, Expr b, DpocProc then_, DpocProc else_);
DpocProc make_dwhile(DpocIndex i, Expr b, DpocProc body);
DpocProc make_scope_coord(DpocIndex i, Role lead, DpocProc body, std::vector<Role> roles, ScopeProps props = {});
DpocProc make_scope_simple(DpocIndex i, Role lead, DpocProc body);

/// Right-nested sequence of the given items (skipping nothing); empty gives 1.
DpocProc dseq_all(const std::vector<DpocProc>& items);
/// Right-nested parallel composition; empty gives 1.
DpocProc dpar_all(const std::vector<DpocProc>& items);

using GlobalState = std::map<Role, LocalState>;

struct RoleProc {
    Role role;
    DpocProc proc;
    LocalState state;
    bool operator==(const RoleProc&) const = default;
};

/// Parallel composition of role processes, kept sorted by role name.
using Network = std::vector<RoleProc>;

struct Update {
    std::string name;
    DiocProc body;
    std::optional<std::string> target;  // scope `name` property this update is restricted to
    std::uint64_t hash = 0;             // of the index-stripped body
};

/// Update repository. `id` identifies it in a Change-Updates schedule.
struct UpdateRepo {
    int id = 0;
    std::vector<Update> entries;
    const Update* find(const std::string& name) const;
};

using RepoPtr = std::shared_ptr<const UpdateRepo>;

}  // namespace dioc

template <>
struct std::hash<dioc::Role> {
    std::size_t operator()(const dioc::Role& r) const noexcept { return std::hash<std::string>{}(r.name()); }
};
