#include "dioc/analysis.hpp"

namespace dioc {

namespace {

DpocProc with_children(const DpocNode& n, DpocProc l, DpocProc r) {
    switch (n.kind) {
        case DpocKind::Seq: return make_dseq(std::move(l), std::move(r));
        case DpocKind::Par: return make_dpar(std::move(l), std::move(r));
        case DpocKind::If: return make_dif(n.index, n.expr, std::move(l), std::move(r));
        case DpocKind::While: return make_dwhile(n.index, n.expr, std::move(l));
        case DpocKind::ScopeCoord: return make_scope_coord(n.index, n.lead, std::move(l), n.roleset, n.props);
        case DpocKind::ScopeSimple: return make_scope_simple(n.index, n.lead, std::move(l));
        default: return {};
    }
}

// Replaces the first node satisfying `pick` (pre-order, left first) by 1.
template <class Pick>
bool drop_first(const DpocProc& p, Pick& pick, DpocProc& out) {
    const DpocNode& n = *p;
    if (pick(n)) {
        out = make_one();
        return true;
    }
    DpocProc l = n.left, r = n.right;
    if (l && drop_first(n.left, pick, l)) {
        out = with_children(n, l, r);
        return true;
    }
    if (r && drop_first(n.right, pick, r)) {
        out = with_children(n, l, r);
        return true;
    }
    return false;
}

template <class Pick>
Network drop_in_network(const Network& net, Pick pick) {
    Network out = net;
    for (auto& rp : out) {
        DpocProc p;
        if (drop_first(rp.proc, pick, p)) {
            rp.proc = p;
            break;
        }
    }
    return out;
}

}  // namespace

Network drop_first_receive(const Network& n) {
    return drop_in_network(n, [](const DpocNode& x) { return x.kind == DpocKind::Recv && !x.op.is_aux(); });
}

}  // namespace dioc
