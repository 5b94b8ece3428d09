#include "dioc/generator.hpp"

#include <random>

#include "dioc/connectedness.hpp"
#include "dioc/core.hpp"
#include "dioc/frontend.hpp"
#include "hash.hpp"

namespace dioc {

namespace {

class Gen {
public:
    Gen(const GeneratorConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
        for (int k = 0; k < std::max(1, cfg.roles); ++k) roles_.emplace_back(std::string(1, static_cast<char>('A' + k)));
    }

    DiocProc program(int depth, bool scopes) {
        scopes_ = scopes;
        return depth <= 0 ? make_skip() : node(depth);
    }

private:
    const GeneratorConfig& cfg_;
    std::mt19937_64 rng_;
    std::vector<Role> roles_;
    bool scopes_ = true;
    int loops_ = 0;

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
    const Role& role() { return roles_[static_cast<std::size_t>(pick(static_cast<int>(roles_.size())))]; }
    std::string var() { return pick(2) ? "x" : "y"; }
    Expr literal() { return Expr::literal(Value(pick(std::max(1, cfg_.value_domain)))); }

    Expr value_expr() {
        switch (pick(3)) {
            case 0: return literal();
            case 1: return Expr::var(var());
            default: return Expr::binary(BinaryOp::Add, Expr::var(var()), literal());
        }
    }

    Expr guard() {
        static const BinaryOp ops[] = {BinaryOp::Lt, BinaryOp::Eq, BinaryOp::Ge};
        return Expr::binary(ops[pick(3)], Expr::var(var()), literal());
    }

    DiocProc leaf() {
        if (roles_.size() < 2 || pick(3) == 0) return make_assign(0, var(), role(), value_expr());
        Role from = role();
        Role to = role();
        while (to == from) to = role();
        static const char* ops[] = {"a", "b", "c"};
        return make_interaction(0, ops[pick(3)], from, value_expr(), to, var());
    }

    DiocProc node(int depth) {
        if (depth <= 1) return leaf();
        const ConstructWeights& w = cfg_.weights;
        int scope_w = scopes_ ? w.scope : 0;
        int while_w = loops_ < 2 ? w.while_ : 0;
        int total = w.seq + w.par + w.if_ + while_w + scope_w + w.leaf;
        int r = pick(std::max(1, total));
        if ((r -= w.seq) < 0) return seq(node(depth - 1), node(depth - 1));
        if ((r -= w.par) < 0) return make_par(node(depth - 1), node(depth - 1));
        if ((r -= w.if_) < 0) {
            Role at = role();
            DiocProc then_ = node(depth - 1);
            DiocProc else_ = pick(2) ? node(depth - 1) : make_skip();
            return make_if(0, at, guard(), then_, else_);
        }
        if ((r -= while_w) < 0) return loop(depth);
        if ((r -= scope_w) < 0) {
            DiocProc body = node(depth - 1);
            RoleSet rs = roles(body);
            if (rs.empty()) return body;
            auto it = rs.begin();
            std::advance(it, pick(static_cast<int>(rs.size())));
            return make_scope(0, *it, body);
        }
        return leaf();
    }

    // w@R = 0; while (w < k)@R { body; w@R = w + 1 }
    DiocProc loop(int depth) {
        ++loops_;
        Role at = role();
        std::string counter = "w" + std::to_string(loops_);
        int bound = 1 + pick(std::max(1, cfg_.max_iterations));
        DiocProc body = node(depth - 1);
        DiocProc step = make_assign(0, counter, at, Expr::binary(BinaryOp::Add, Expr::var(counter), Expr::literal(Value(1))));
        DiocProc w = make_while(0, at, Expr::binary(BinaryOp::Lt, Expr::var(counter), Expr::literal(Value(bound))),
                                seq(body, step));
        return seq(make_assign(0, counter, at, Expr::literal(Value(0))), w);
    }

    // Sequential composition, repaired when the frontiers do not meet.
    DiocProc seq(DiocProc l, DiocProc r) {
        if (!cfg_.repair) return make_seq(std::move(l), std::move(r));
        PairSet last = trans_f(l);
        PairSet first = trans_i(r);
        if (pairsets_all_intersect(last, first)) return make_seq(std::move(l), std::move(r));
        auto meets_all = [](const RolePair& p, const PairSet& s) {
            for (const auto& q : s)
                if (!p.intersects(q)) return false;
            return true;
        };
        for (std::size_t i = 0; i < roles_.size(); ++i) {
            for (std::size_t j = i; j < roles_.size(); ++j) {
                RolePair bridge = RolePair::of(roles_[i], roles_[j]);
                if (!meets_all(bridge, last) || !meets_all(bridge, first)) continue;
                DiocProc b = i == j ? make_assign(0, "x", roles_[i], Expr::var("x"))
                                    : make_interaction(0, "sync", roles_[i], Expr::var("x"), roles_[j], "y");
                return make_seq(std::move(l), make_seq(std::move(b), std::move(r)));
            }
        }
        return make_par(std::move(l), std::move(r));
    }
};

}  // namespace

DiocProc gen_dioc(const GeneratorConfig& cfg, std::uint64_t seed) {
    Gen g(cfg, seed);
    return annotate(g.program(cfg.max_depth, true));
}

UpdateRepo gen_updates(const GeneratorConfig& cfg, std::uint64_t seed, int count) {
    UpdateRepo repo;
    GeneratorConfig small = cfg;
    small.roles = std::min(cfg.roles, 2);
    small.max_depth = std::min(cfg.max_depth, 2);
    for (int k = 0; k < count; ++k) {
        Gen g(small, hash_mix(seed, static_cast<std::uint64_t>(k)));
        Update u;
        u.name = "u" + std::to_string(k);
        DiocProc body = g.program(small.max_depth, false);
        if (body.kind() == DiocKind::Skip) body = make_assign(0, "x", Role("A"), Expr::literal(Value(0)));
        Index next = 10000 * static_cast<Index>(k + 1);
        u.body = annotate_from(body, next);
        u.hash = fnv1a64(pretty(strip_indexes(u.body)));
        repo.entries.push_back(std::move(u));
    }
    return repo;
}

GlobalState generator_state(const GeneratorConfig& cfg) {
    GlobalState s;
    for (int k = 0; k < std::max(1, cfg.roles); ++k) {
        LocalState& l = s[Role(std::string(1, static_cast<char>('A' + k)))];
        l["x"] = Value(0);
        l["y"] = Value(1);
    }
    return s;
}

}  // namespace dioc
