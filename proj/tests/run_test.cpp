#include <gtest/gtest.h>

#include "dioc/projection.hpp"
#include "dioc/run.hpp"
#include "support.hpp"

namespace dioc {
namespace {

using test::corpus;
using test::prog;

std::vector<std::string> visible(const RunResult& r) {
    std::vector<std::string> out;
    for (const auto& l : r.trace)
        if (!l.silent()) out.push_back(l.to_string());
    return out;
}

struct Purchase {
    DiocProgram program = parse_dioc(read_file(corpus("programs/purchase.dioc")));
    UpdateRepo updates = load_updates(corpus("updates/fidelity.upd"));
    FunctionEnv fns = parse_functions(read_file(corpus("fns/purchase.fns")));
};

TEST(Policy, ParsesScript) {
    Policy p = parse_policy_script("# comment\nscope 6 fidelity\nscope 17 no-up\n// more\nrepo 3 a b\nrepo 9 empty\n");
    EXPECT_EQ(p.kind, PolicyKind::Script);
    ASSERT_EQ(p.decisions.size(), 2u);
    EXPECT_EQ(p.decisions[0].scope, 6u);
    EXPECT_EQ(*p.decisions[0].update, "fidelity");
    EXPECT_FALSE(p.decisions[1].update.has_value());
    ASSERT_EQ(p.repo_changes.size(), 2u);
    EXPECT_EQ(p.repo_changes[0].step, 3u);
    EXPECT_EQ(p.repo_changes[0].updates, (std::vector<std::string>{"a", "b"}));
    EXPECT_TRUE(p.repo_changes[1].updates.empty());
    EXPECT_ANY_THROW(parse_policy_script("scope x fidelity"));
    EXPECT_ANY_THROW(parse_policy_script("launch 1"));
}

TEST(Policy, KindNames) {
    EXPECT_EQ(policy_kind_from_name("no-update"), PolicyKind::NoUpdate);
    EXPECT_EQ(policy_kind_from_name("first-applicable"), PolicyKind::FirstApplicable);
    EXPECT_EQ(policy_kind_from_name("exhaustive"), PolicyKind::Exhaustive);
    EXPECT_FALSE(policy_kind_from_name("sometimes").has_value());
}

TEST(Policy, ScheduleFollowsRepoChanges) {
    UpdateRepo all = load_updates(corpus("updates"));
    Policy none;
    none.kind = PolicyKind::NoUpdate;
    Schedule s0 = schedule_for(none, all);
    ASSERT_EQ(s0.size(), 1u);
    EXPECT_TRUE(s0[0]->entries.empty());
    Policy swap = parse_policy_script(read_file(corpus("policies/repo-swap.pol")));
    Schedule s1 = schedule_for(swap, all);
    ASSERT_EQ(s1.size(), 2u);
    EXPECT_TRUE(s1[0]->entries.empty());
    ASSERT_EQ(s1[1]->entries.size(), 1u);
    EXPECT_EQ(s1[1]->entries[0].name, "fidelity");
    EXPECT_EQ(s1[1]->id, 1);
    EXPECT_ANY_THROW(select_updates(all, {"missing"}, 0));
}

TEST(Run, BothLevelsAgreeWithoutUpdates) {
    Purchase f;
    RunOptions opts;
    opts.policy.kind = PolicyKind::NoUpdate;
    RunResult d = run_dioc(f.program.proc, f.updates, f.fns, opts);
    RunResult n = run_dpoc(project(f.program.proc, {}, f.program.declared_roles), f.updates, f.fns, opts);
    EXPECT_EQ(d.outcome, RunOutcome::Terminated);
    EXPECT_EQ(n.outcome, RunOutcome::Terminated);
    EXPECT_EQ(visible(d), visible(n));
    EXPECT_EQ(visible(d).back(), "tick");
}

TEST(Run, ScriptAppliesNamedUpdate) {
    Purchase f;
    RunOptions opts;
    opts.policy = parse_policy_script(read_file(corpus("policies/fidelity-at-6.pol")));
    RunResult r = run_dpoc(project(f.program.proc, {}, f.program.declared_roles), f.updates, f.fns, opts);
    EXPECT_EQ(r.outcome, RunOutcome::Terminated);
    auto v = visible(r);
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const std::string& s) { return s.rfind("update fidelity#", 0) == 0; }));
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const std::string& s) { return s.rfind("cardReq", 0) == 0; }));
}

TEST(Run, SeedDeterminesTrace) {
    DiocProc p = prog("[1] a : A(1) -> B(x) | [2] b : C(2) -> D(y) | [3] c : E(3) -> F(z)");
    RunOptions opts;
    opts.seed = 42;
    auto a = run_dpoc(project(p, {}), {}, {}, opts);
    auto b = run_dpoc(project(p, {}), {}, {}, opts);
    EXPECT_EQ(a.trace, b.trace);
}

TEST(Run, OutcomesReflectFuelAndStuck) {
    RunOptions opts;
    opts.fuel = 3;
    EXPECT_EQ(run_dioc(prog("[1] while (true)@A { [2] a : A(1) -> B(x) }"), {}, {}, opts).outcome,
              RunOutcome::OutOfFuel);
    Network lone = parse_network(read_file(corpus("raw-dpoc/lone-receive.dpocnet")));
    EXPECT_EQ(run_dpoc(lone, {}, {}, RunOptions{}).outcome, RunOutcome::Stuck);
}

TEST(Trace, RecordsAreJsonLines) {
    Label l;
    l.kind = LabelKind::Interaction;
    l.op = "a";
    l.sender = Role("A");
    l.receiver = Role("B");
    l.value = Value(3);
    l.var = "x";
    EXPECT_EQ(trace_record(l, 4),
              "{\"step\":4,\"kind\":\"interaction\",\"op\":\"a\",\"sender\":\"A\",\"receiver\":\"B\",\"value\":3,\"var\":\"x\"}");
    EXPECT_EQ(trace_record(Label::tick(), 0), "{\"step\":0,\"kind\":\"tick\"}");
}

}  // namespace
}  // namespace dioc
