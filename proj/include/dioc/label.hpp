#pragma once

#include <cstdint>
#include <string>

#include "dioc/ast.hpp"

namespace dioc {

enum class LabelKind : std::uint8_t {
    Interaction,        // o : R(v) -> S(x)
    InteractionUpdate,  // sb*_i : R(code|no) -> S
    Tau,
    Update,             // application of an update taken from the repository
    NoUp,
    ChangeUpdates,      // repository replaced by the next one of the schedule
    Tick,
    Send,               // role-level: i.o!v to S
    Recv,               // role-level: i.o?x from R
    SendUpdate,
    RecvUpdate,
};

/// Transition label. Interactions carry the operation without its index prefix.
struct Label {
    LabelKind kind = LabelKind::Tau;
    std::string op;
    bool aux = false;
    Role sender;
    Role receiver;
    Value value;
    std::string var;
    std::string update_name;
    std::uint64_t update_hash = 0;
    bool has_code = false;  // InteractionUpdate payload
    int repo = 0;           // ChangeUpdates target
    Index scope = 0;        // Update/NoUp: the scope decided on (not part of the text form)

    static Label tau() { return {}; }
    static Label tick() {
        Label l;
        l.kind = LabelKind::Tick;
        return l;
    }
    static Label no_up() {
        Label l;
        l.kind = LabelKind::NoUp;
        return l;
    }

    /// Internal for weak semantics: tau and auxiliary interactions.
    bool silent() const;
    /// Canonical text, used as the observable identity of the label.
    std::string to_string() const;
    bool operator==(const Label&) const = default;
};

}  // namespace dioc
