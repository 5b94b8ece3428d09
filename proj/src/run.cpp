#include "dioc/run.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "dioc/analysis.hpp"

namespace dioc {

Policy parse_policy_script(std::string_view src) {
    Policy p;
    p.kind = PolicyKind::Script;
    std::istringstream in{std::string(src)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        for (const char* mark : {"#", "//"})
            if (auto c = line.find(mark); c != std::string::npos) line.erase(c);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);
        if (words.empty()) continue;
        auto bad = [&](const std::string& why) {
            return std::runtime_error("policy script line " + std::to_string(lineno) + ": " + why);
        };
        auto number = [&](const std::string& w) {
            try {
                std::size_t used = 0;
                unsigned long v = std::stoul(w, &used);
                if (used != w.size()) throw bad("expected a number, got '" + w + "'");
                return v;
            } catch (const std::logic_error&) {
                throw bad("expected a number, got '" + w + "'");
            }
        };
        if (words[0] == "scope") {
            if (words.size() != 3) throw bad("expected `scope <index> <update>|no-up`");
            ScriptDecision d;
            d.scope = static_cast<Index>(number(words[1]));
            if (words[2] != "no-up") d.update = words[2];
            p.decisions.push_back(std::move(d));
        } else if (words[0] == "repo") {
            if (words.size() < 3) throw bad("expected `repo <step> <update>...|empty`");
            RepoChange c;
            c.step = number(words[1]);
            if (!(words.size() == 3 && words[2] == "empty")) c.updates.assign(words.begin() + 2, words.end());
            p.repo_changes.push_back(std::move(c));
        } else {
            throw bad("unknown directive '" + words[0] + "'");
        }
    }
    std::stable_sort(p.repo_changes.begin(), p.repo_changes.end(),
                     [](const RepoChange& a, const RepoChange& b) { return a.step < b.step; });
    return p;
}

std::optional<PolicyKind> policy_kind_from_name(std::string_view name) {
    if (name == "no-update") return PolicyKind::NoUpdate;
    if (name == "first-applicable") return PolicyKind::FirstApplicable;
    if (name == "exhaustive") return PolicyKind::Exhaustive;
    return std::nullopt;
}

UpdateRepo select_updates(const UpdateRepo& all, const std::vector<std::string>& names, int id) {
    UpdateRepo r;
    r.id = id;
    for (const auto& n : names) {
        const Update* u = all.find(n);
        if (!u) throw std::runtime_error("unknown update '" + n + "'");
        r.entries.push_back(*u);
    }
    return r;
}

Schedule schedule_for(const Policy& policy, const UpdateRepo& all) {
    std::vector<UpdateRepo> repos;
    if (policy.kind == PolicyKind::NoUpdate) {
        repos.emplace_back();
    } else {
        repos.push_back(all);
        for (const auto& c : policy.repo_changes) {
            if (c.step == 0) repos.pop_back();
            repos.push_back(select_updates(all, c.updates, 0));
        }
    }
    return make_schedule(std::move(repos));
}

namespace {

bool decision(const Label& l) { return l.kind == LabelKind::Update || l.kind == LabelKind::NoUp; }

/// Keeps the moves the policy allows; `pending` holds the unconsumed script decisions.
template <class Step>
std::vector<const Step*> allowed(const std::vector<Step>& steps, const Policy& policy,
                                 const std::vector<ScriptDecision>& pending) {
    std::vector<const Step*> out;
    for (const auto& st : steps) {
        const Label& l = st.label;
        if (l.kind == LabelKind::ChangeUpdates) continue;
        if (!decision(l)) {
            out.push_back(&st);
            continue;
        }
        switch (policy.kind) {
            case PolicyKind::NoUpdate:
                if (l.kind == LabelKind::NoUp) out.push_back(&st);
                break;
            case PolicyKind::Exhaustive: out.push_back(&st); break;
            case PolicyKind::FirstApplicable: {
                // The first update offered for this scope, or no-up when there is none.
                const Step* first = nullptr;
                for (const auto& o : steps)
                    if (o.label.scope == l.scope && o.label.kind == LabelKind::Update) {
                        first = &o;
                        break;
                    }
                if (first ? first == &st : l.kind == LabelKind::NoUp) out.push_back(&st);
                break;
            }
            case PolicyKind::Script: {
                auto it = std::find_if(pending.begin(), pending.end(),
                                       [&](const ScriptDecision& d) { return d.scope == l.scope; });
                bool want_up = it != pending.end() && it->update.has_value();
                bool offered = want_up && std::any_of(steps.begin(), steps.end(), [&](const Step& o) {
                                   return o.label.scope == l.scope && o.label.kind == LabelKind::Update &&
                                          o.label.update_name == *it->update;
                               });
                if (offered ? (l.kind == LabelKind::Update && l.update_name == *it->update)
                            : l.kind == LabelKind::NoUp)
                    out.push_back(&st);
                break;
            }
        }
    }
    return out;
}

void consume(std::vector<ScriptDecision>& pending, const Label& l) {
    if (!decision(l)) return;
    auto it = std::find_if(pending.begin(), pending.end(), [&](const ScriptDecision& d) { return d.scope == l.scope; });
    if (it != pending.end()) pending.erase(it);
}

template <class System, class Succ>
RunResult run(System sys, const UpdateRepo& all, const RunOptions& opts, Succ&& succ) {
    RunResult r;
    std::mt19937_64 rng(opts.seed);
    std::vector<ScriptDecision> pending = opts.policy.decisions;
    const auto& changes = opts.policy.repo_changes;
    std::size_t change = 0;
    int repo_id = 0;
    // Changes at step 0 define the initial repository instead of being a transition.
    for (; change < changes.size() && changes[change].step == 0; ++change)
        sys.repo = std::make_shared<UpdateRepo>(select_updates(all, changes[change].updates, 0));
    for (std::size_t step = 0; step < opts.fuel; ++step) {
        while (change < changes.size() && changes[change].step <= step) {
            sys.repo = std::make_shared<UpdateRepo>(select_updates(all, changes[change].updates, ++repo_id));
            Label l;
            l.kind = LabelKind::ChangeUpdates;
            l.repo = repo_id;
            r.trace.push_back(l);
            ++change;
        }
        auto steps = succ(sys);
        auto options = allowed(steps, opts.policy, pending);
        if (options.empty()) {
            r.outcome = RunOutcome::Stuck;
            return r;
        }
        const auto* chosen = options[options.size() == 1 ? 0 : rng() % options.size()];
        r.trace.push_back(chosen->label);
        consume(pending, chosen->label);
        if (chosen->label.kind == LabelKind::Tick) {
            r.outcome = RunOutcome::Terminated;
            return r;
        }
        System next = chosen->next;
        sys = std::move(next);
    }
    r.outcome = RunOutcome::OutOfFuel;
    return r;
}

RepoPtr initial_repo(const UpdateRepo& all) {
    auto r = std::make_shared<UpdateRepo>(all);
    r->id = 0;
    return r;
}

}  // namespace

RunResult run_dioc(const DiocProc& p, const UpdateRepo& all, const FunctionEnv& fns, const RunOptions& opts) {
    DiocSystem s = make_dioc_system(p, {}, initial_repo(all));
    return run(s, all, opts, [&](const DiocSystem& x) { return enabled_dioc(x, fns); });
}

RunResult run_dpoc(const Network& n, const UpdateRepo& all, const FunctionEnv& fns, const RunOptions& opts) {
    DpocSystem s = make_dpoc_system(n, initial_repo(all));
    return run(s, all, opts, [&](const DpocSystem& x) { return system_step(x, fns); });
}

namespace {

nlohmann::json value_json(const Value& v) {
    if (v.is_int()) return v.as_int();
    if (v.is_bool()) return v.as_bool();
    if (v.is_string()) return v.as_string();
    if (v.is_null()) return nullptr;
    return v.to_string();
}

}  // namespace

std::string trace_record(const Label& l, std::size_t step) {
    nlohmann::ordered_json j;
    j["step"] = step;
    switch (l.kind) {
        case LabelKind::Interaction:
            j["kind"] = "interaction";
            j["op"] = l.op;
            j["sender"] = l.sender.name();
            j["receiver"] = l.receiver.name();
            j["value"] = value_json(l.value);
            j["var"] = l.var;
            break;
        case LabelKind::InteractionUpdate:
            j["kind"] = "interaction-update";
            j["op"] = l.op;
            j["sender"] = l.sender.name();
            j["receiver"] = l.receiver.name();
            j["value"] = l.has_code ? "code" : "no";
            break;
        case LabelKind::Tau: j["kind"] = "tau"; break;
        case LabelKind::Update: {
            j["kind"] = "update";
            j["updateName"] = l.update_name;
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(l.update_hash));
            j["hash"] = buf;
            j["scope"] = l.scope;
            break;
        }
        case LabelKind::NoUp:
            j["kind"] = "no-up";
            j["scope"] = l.scope;
            break;
        case LabelKind::ChangeUpdates:
            j["kind"] = "change-updates";
            j["repo"] = l.repo;
            break;
        case LabelKind::Tick: j["kind"] = "tick"; break;
        case LabelKind::Send:
        case LabelKind::Recv:
        case LabelKind::SendUpdate:
        case LabelKind::RecvUpdate:
            j["kind"] = "role-action";
            j["label"] = l.to_string();
            break;
    }
    if (l.aux) j["aux"] = true;
    return j.dump();
}

}  // namespace dioc
