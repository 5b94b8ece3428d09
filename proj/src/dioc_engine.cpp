#include "dioc/dioc_engine.hpp"

#include <algorithm>

#include "dioc/connectedness.hpp"
#include "dioc/core.hpp"
#include "hash.hpp"

namespace dioc {

Schedule make_schedule(std::vector<UpdateRepo> repos) {
    Schedule out;
    for (std::size_t k = 0; k < repos.size(); ++k) {
        repos[k].id = static_cast<int>(k);
        out.push_back(std::make_shared<const UpdateRepo>(std::move(repos[k])));
    }
    if (out.empty()) out.push_back(std::make_shared<const UpdateRepo>());
    return out;
}

std::size_t DiocSystem::hash() const {
    std::size_t h = hash_mix(proc.hash(), fresh);
    h = hash_mix(h, static_cast<std::size_t>(repo ? repo->id : -1));
    for (const auto& [r, st] : sigma) h = hash_mix(hash_mix(h, std::hash<Role>{}(r)), hash_state(st));
    return h;
}

bool DiocSystem::operator==(const DiocSystem& o) const {
    return fresh == o.fresh && (repo ? repo->id : -1) == (o.repo ? o.repo->id : -1) && proc == o.proc &&
           sigma == o.sigma;
}

DiocSystem make_dioc_system(const DiocProc& p, GlobalState sigma, RepoPtr repo) {
    if (!repo) repo = std::make_shared<const UpdateRepo>();
    Index fresh = std::max(max_index(p), max_index(*repo));
    return DiocSystem{std::move(sigma), std::move(repo), p, fresh};
}

namespace {

void collect_sites(const DiocProc& p, Path& path, std::vector<DiocSite>& out) {
    switch (p.kind()) {
        case DiocKind::Skip:
        case DiocKind::End: return;
        case DiocKind::Seq:
            path.push_back(0);
            collect_sites(p->left, path, out);
            path.back() = 1;
            if (can_tick(p->left)) collect_sites(p->right, path, out);
            path.pop_back();
            return;
        case DiocKind::Par:
            path.push_back(0);
            collect_sites(p->left, path, out);
            path.back() = 1;
            collect_sites(p->right, path, out);
            path.pop_back();
            return;
        default: out.push_back({path, p});
    }
}

DiocProc replace_from(const DiocProc& p, const Path& path, std::size_t k, const DiocProc& residue) {
    if (k == path.size()) return residue;
    const DiocNode& n = *p;
    if (n.kind == DiocKind::Seq)
        return path[k] == 0 ? make_seq(replace_from(n.left, path, k + 1, residue), n.right)
                            : replace_from(n.right, path, k + 1, residue);
    return path[k] == 0 ? make_par(replace_from(n.left, path, k + 1, residue), n.right)
                        : make_par(n.left, replace_from(n.right, path, k + 1, residue));
}

}  // namespace

std::vector<DiocSite> active_sites(const DiocProc& p) {
    std::vector<DiocSite> out;
    Path path;
    collect_sites(p, path, out);
    return out;
}

DiocProc replace_at(const DiocProc& p, const Path& path, const DiocProc& residue) {
    return replace_from(p, path, 0, residue);
}

bool update_applicable(const Update& u, const RoleSet& scope_roles, const ScopeProps& props) {
    return update_fits_scope(u, scope_roles, props) && connected(u.body).connected;
}

std::vector<DiocStep> enabled_dioc(const DiocSystem& s, const FunctionEnv& fns) {
    std::vector<DiocStep> out;
    for (const auto& site : active_sites(s.proc)) {
        const DiocNode& n = *site.node;
        auto emit = [&](Label l, const DiocProc& residue, GlobalState sigma, Index fresh) {
            out.push_back({std::move(l), DiocSystem{std::move(sigma), s.repo, replace_at(s.proc, site.path, residue), fresh}});
        };
        switch (n.kind) {
            case DiocKind::Interaction: {
                GlobalState sigma = s.sigma;
                Value v = evaluate(n.expr, sigma[n.role], fns);
                Label l;
                l.kind = LabelKind::Interaction;
                l.op = n.op;
                l.sender = n.role;
                l.receiver = n.receiver;
                l.value = v;
                l.var = n.var;
                emit(l, make_assign(n.index, n.var, n.receiver, Expr::literal(v)), std::move(sigma), s.fresh);
                break;
            }
            case DiocKind::Assign: {
                GlobalState sigma = s.sigma;
                LocalState& st = sigma[n.role];
                Value v = evaluate(n.expr, st, fns);
                st[n.var] = v;
                emit(Label::tau(), make_skip(), std::move(sigma), s.fresh);
                break;
            }
            case DiocKind::If: {
                GlobalState sigma = s.sigma;
                bool b = truthy(evaluate(n.expr, sigma[n.role], fns));
                emit(Label::tau(), b ? n.left : n.right, std::move(sigma), s.fresh);
                break;
            }
            case DiocKind::While: {
                GlobalState sigma = s.sigma;
                bool b = truthy(evaluate(n.expr, sigma[n.role], fns));
                emit(Label::tau(), b ? make_seq(n.left, site.node) : make_skip(), std::move(sigma), s.fresh);
                break;
            }
            case DiocKind::Scope: {
                RoleSet body_roles = roles(n.left);
                if (s.repo) {
                    for (const auto& u : s.repo->entries) {
                        if (!update_applicable(u, body_roles, n.props)) continue;
                        Index fresh = s.fresh;
                        DiocProc inst = fresh_instance(u.body, fresh);
                        Label l;
                        l.kind = LabelKind::Update;
                        l.update_name = u.name;
                        l.update_hash = u.hash;
                        l.scope = n.index;
                        emit(l, inst, s.sigma, fresh);
                    }
                }
                Label no = Label::no_up();
                no.scope = n.index;
                emit(no, n.left, s.sigma, s.fresh);
                break;
            }
            default: break;
        }
    }
    if (can_tick(s.proc)) out.push_back({Label::tick(), DiocSystem{s.sigma, s.repo, tick(s.proc), s.fresh}});
    return out;
}

}  // namespace dioc
