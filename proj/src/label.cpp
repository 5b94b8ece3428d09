#include "dioc/label.hpp"

#include <cstdio>

namespace dioc {

bool Label::silent() const {
    return kind == LabelKind::Tau || ((kind == LabelKind::Interaction || kind == LabelKind::InteractionUpdate) && aux);
}

std::string Label::to_string() const {
    switch (kind) {
        case LabelKind::Interaction:
            return op + " : " + sender.name() + "(" + value.to_string() + ") -> " + receiver.name() + "(" + var + ")";
        case LabelKind::InteractionUpdate:
            return op + " : " + sender.name() + "(" + (has_code ? "code" : "no") + ") -> " + receiver.name();
        case LabelKind::Tau: return "tau";
        case LabelKind::Update: {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(update_hash));
            return "update " + update_name + "#" + buf;
        }
        case LabelKind::NoUp: return "no-up";
        case LabelKind::ChangeUpdates: return "change-updates " + std::to_string(repo);
        case LabelKind::Tick: return "tick";
        case LabelKind::Send: return "send " + op + " " + value.to_string() + " to " + receiver.name();
        case LabelKind::Recv: return "recv " + op + " " + var + " from " + sender.name();
        case LabelKind::SendUpdate: return "send " + op + (has_code ? " code" : " no") + " to " + receiver.name();
        case LabelKind::RecvUpdate: return "recv " + op + " update from " + sender.name();
    }
    return "?";
}

}  // namespace dioc
