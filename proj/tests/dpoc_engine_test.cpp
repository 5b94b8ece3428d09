#include <gtest/gtest.h>

#include <algorithm>

#include "dioc/dpoc_engine.hpp"
#include "dioc/projection.hpp"
#include "support.hpp"

namespace dioc {
namespace {

using test::prog;

DpocSystem net(const std::string& src, UpdateRepo repo = {}) {
    return make_dpoc_system(parse_network(src), std::make_shared<UpdateRepo>(std::move(repo)));
}

DpocSystem projected(const std::string& src, UpdateRepo repo = {}) {
    return make_dpoc_system(project(prog(src), {}), std::make_shared<UpdateRepo>(std::move(repo)));
}

std::vector<std::string> labels(const std::vector<DpocStep>& steps) {
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.label.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

// Visible labels of the run that always takes the first transition.
std::vector<std::string> first_run(DpocSystem s, const FunctionEnv& fns = {}) {
    std::vector<std::string> out;
    for (int k = 0; k < 200; ++k) {
        auto steps = system_step(s, fns);
        if (steps.empty()) break;
        out.push_back(steps[0].label.to_string());
        if (steps[0].label.kind == LabelKind::Tick) break;
        s = steps[0].next;
    }
    return out;
}

TEST(DpocEngine, SynchronisationNeedsBothSides) {
    DpocSystem s = net("role A { [1] 1.a : 3 to B }\nrole B { [1] 1.a : y from A }");
    auto steps = system_step(s, {});
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].label.to_string(), "a : A(3) -> B(y)");
    EXPECT_EQ(steps[0].origin.size(), 2u);
    const RoleProc& b = steps[0].next.net[1];
    ASSERT_EQ(b.proc.kind(), DpocKind::Assign);
    auto rest = system_step(steps[0].next, {});
    ASSERT_EQ(rest.size(), 1u);
    EXPECT_TRUE(rest[0].label.silent());
    EXPECT_EQ(rest[0].next.net[1].state.at("y"), Value(3));
}

TEST(DpocEngine, LoneActionsDoNotSurface) {
    DpocSystem s = net("role A { [1] 1.a : 3 to B }\nrole B { 1 }");
    EXPECT_TRUE(system_step(s, {}).empty());
    auto moves = role_step(s.net[0], s.repo, s.fresh, {});
    ASSERT_EQ(moves.size(), 1u);
    EXPECT_EQ(moves[0].kind, MoveKind::Send);
}

TEST(DpocEngine, OperationPrefixesMustAgree) {
    DpocSystem s = net("role A { [1] 1.a : 3 to B }\nrole B { [2] 2.a : y from A }");
    EXPECT_TRUE(system_step(s, {}).empty());
}

TEST(DpocEngine, TickNeedsEveryRoleDone) {
    auto steps = system_step(net("role A { 1 }\nrole B { 1 }"), {});
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].label.kind, LabelKind::Tick);
    EXPECT_TRUE(system_step(steps[0].next, {}).empty());
    auto empty = system_step(make_dpoc_system({}, std::make_shared<UpdateRepo>()), {});
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_TRUE(system_step(empty[0].next, {}).empty());
}

TEST(DpocEngine, ConditionalSendsDecisionToOthers) {
    std::vector<std::string> run = first_run(projected("[1] x@A = 1; [2] if (x > 0)@A { [3] a : A(1) -> B(y) }"));
    std::vector<std::string> visible;
    for (const auto& l : run)
        if (l != "tau") visible.push_back(l);
    EXPECT_EQ(visible, (std::vector<std::string>{"cnd*_2 : A(true) -> B(aux$x_2)", "a : A(1) -> B(y)", "tick"}));
}

TEST(DpocEngine, LeadNoUpInformsParticipants) {
    DpocSystem s = projected("[1] scope @S { [2] ack : S(1) -> C(x) }");
    auto steps = system_step(s, {});
    ASSERT_EQ(labels(steps), std::vector<std::string>{"no-up"});
    EXPECT_EQ(steps[0].label.scope, 1u);
    auto next = system_step(steps[0].next, {});
    ASSERT_EQ(next.size(), 1u);
    EXPECT_EQ(next[0].label.to_string(), "sb*_1 : S(no) -> C");
    EXPECT_TRUE(next[0].label.silent());
}

TEST(DpocEngine, LeadUpShipsProjectedCode) {
    UpdateRepo repo = parse_updates("update audit { [1] log : S(\"l\") -> C(t); [2] ack : S(1) -> C(x) }");
    DpocSystem s = projected("[1] scope @S { [2] ack : S(1) -> C(x) }", repo);
    auto steps = system_step(s, {});
    ASSERT_EQ(steps.size(), 2u);
    const DpocStep* up = nullptr;
    for (const auto& st : steps)
        if (st.label.kind == LabelKind::Update) up = &st;
    ASSERT_NE(up, nullptr);
    EXPECT_EQ(up->label.update_name, "audit");
    EXPECT_EQ(up->label.update_hash, repo.entries[0].hash);
    auto ship = system_step(up->next, {});
    ASSERT_EQ(ship.size(), 1u);
    EXPECT_EQ(ship[0].label.to_string(), "sb*_1 : S(code) -> C");
    auto log = system_step(ship[0].next, {});
    ASSERT_FALSE(log.empty());
    EXPECT_EQ(log[0].label.to_string(), "log : S(\"l\") -> C(t)");
}

TEST(DpocEngine, WhileLoopRunsProjectedIterations) {
    std::vector<std::string> run =
        first_run(projected("[1] n@A = 0; [2] while (n < 2)@A { [3] beat : A(n) -> B(m); [4] n@A = n + 1 }"));
    std::vector<std::string> programmer;
    for (const auto& l : run)
        if (l.rfind("beat", 0) == 0) programmer.push_back(l);
    EXPECT_EQ(programmer, (std::vector<std::string>{"beat : A(0) -> B(m)", "beat : A(1) -> B(m)"}));
    EXPECT_EQ(run.back(), "tick");
}

TEST(Canonical, FlattensAndElides) {
    DpocProc p = parse_dpoc("{ 1; [1] x = 1 }; { 1 | [2] y = 2 }");
    EXPECT_EQ(display(canonical(p)), "[1] x = 1;\n[2] y = 2");
    EXPECT_TRUE(canonical(parse_dpoc("1; 1 | 1")) == make_one());
}

TEST(Upd, CompletesPendingAuxiliaryExchange) {
    DpocSystem s = projected("[1] x@A = 1; [2] if (x > 0)@A { [3] a : A(1) -> B(y) }");
    DpocSystem mid = system_step(system_step(s, {})[0].next, {})[0].next;
    Network normalized = upd_normalize(mid.net);
    Network expected = project(prog("[3] a : A(1) -> B(y)"), {});
    ASSERT_EQ(normalized.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k)
        EXPECT_TRUE(normalized[k].proc == canonical(expected[k].proc)) << display(normalized[k].proc);
}

}  // namespace
}  // namespace dioc
