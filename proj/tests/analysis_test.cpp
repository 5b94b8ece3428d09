#include <gtest/gtest.h>

#include <algorithm>

#include "dioc/analysis.hpp"
#include "dioc/connectedness.hpp"
#include "dioc/core.hpp"
#include "dioc/generator.hpp"
#include "dioc/projection.hpp"
#include "support.hpp"

namespace dioc {
namespace {

using test::corpus;
using test::prog;

struct Pair {
    DiocSystem d;
    DpocSystem n;
    Schedule schedule;
};

Pair systems(const DiocProc& p, UpdateRepo repo = {}) {
    Schedule s = make_schedule({std::move(repo)});
    return {make_dioc_system(p, {}, s[0]), make_dpoc_system(project(p, {}), s[0]), s};
}

DpocSystem raw(const char* file) {
    return make_dpoc_system(parse_network(read_file(corpus(std::string("raw-dpoc/") + file))),
                            std::make_shared<UpdateRepo>());
}

const IndexCheck& condition(const std::vector<IndexCheck>& all, const std::string& name) {
    for (const auto& c : all)
        if (c.condition == name) return c;
    throw std::runtime_error("no condition " + name);
}

TEST(Equiv, SmallProgramsAreEquivalent) {
    for (const char* src : {"[1] a : A(1) -> B(x)", "[1] a : A(1) -> B(x); [2] b : B(x) -> A(y)",
                            "[1] x@A = 1; [2] if (x > 0)@A { [3] a : A(1) -> B(y) } else { [4] b : A(2) -> B(y) }",
                            "[1] a : A(1) -> B(x) | [2] b : A(2) -> C(y)"}) {
        Pair s = systems(prog(src));
        EquivResult r = equiv_check(s.d, s.n, {}, s.schedule, {});
        EXPECT_EQ(r.verdict, Verdict::Equivalent) << src << ": " << r.detail;
    }
}

TEST(Equiv, ScopeWithUpdateIsEquivalent) {
    UpdateRepo repo = parse_updates("update audit { [1] log : S(\"l\") -> C(t); [2] ack : S(1) -> C(x) }");
    Pair s = systems(prog("[1] scope @S { [2] ack : S(1) -> C(x) }; [3] done : C(x) -> S(z)"), repo);
    EXPECT_EQ(equiv_check(s.d, s.n, {}, s.schedule, {}).verdict, Verdict::Equivalent);
}

TEST(Equiv, DroppedReceiveGivesCounterexample) {
    Pair s = systems(prog("[1] a : A(1) -> B(x); [2] b : B(x) -> A(y)"));
    s.n.net = drop_first_receive(s.n.net);
    EquivResult r = equiv_check(s.d, s.n, {}, s.schedule, {});
    EXPECT_EQ(r.verdict, Verdict::Counterexample);
    EXPECT_FALSE(r.counterexample.empty());
}

TEST(Equiv, TruncationIsInconclusive) {
    Pair s = systems(prog("[1] n@A = 0; [2] while (true)@A { [3] a : A(n) -> B(m); [4] n@A = n + 1 }"));
    ExploreLimits lim;
    lim.max_states = 50;
    EXPECT_EQ(equiv_check(s.d, s.n, {}, s.schedule, lim).verdict, Verdict::Inconclusive);
}

TEST(WeakTraces, AgreeOnProjection) {
    Pair s = systems(prog("[1] x@A = 1; [2] if (x > 0)@A { [3] a : A(1) -> B(y) }"));
    auto td = weak_traces_dioc(s.d, {}, s.schedule, {}, 4);
    auto tn = weak_traces_dpoc(s.n, {}, s.schedule, {}, 4);
    EXPECT_EQ(td, tn);
    EXPECT_TRUE(std::find(td.begin(), td.end(), Trace{"a : A(1) -> B(y)", "tick"}) != td.end());
}

TEST(Safety, ProjectionsAreSafe) {
    Pair s = systems(prog(read_file(corpus("programs/two_buyers.dioc"))));
    EXPECT_TRUE(check_deadlock_freedom(s.n, {}, s.schedule, {}).ok);
    EXPECT_TRUE(check_race_freedom(s.n, {}, s.schedule, {}).ok);
    EXPECT_TRUE(check_orphan_freedom(s.n, {}, s.schedule, {}).ok);
}

TEST(Safety, FixturesFailTheirProperty) {
    Schedule s = make_schedule({UpdateRepo{}});
    auto lone = check_deadlock_freedom(raw("lone-receive.dpocnet"), {}, s, {});
    EXPECT_FALSE(lone.ok);
    EXPECT_FALSE(check_race_freedom(raw("two-sends.dpocnet"), {}, s, {}).ok);
    EXPECT_FALSE(check_orphan_freedom(raw("stray-send.dpocnet"), {}, s, {}).ok);
    EXPECT_TRUE(check_deadlock_freedom(raw("all-one.dpocnet"), {}, s, {}).ok);
    EXPECT_TRUE(check_race_freedom(raw("lone-receive.dpocnet"), {}, s, {}).ok);
    EXPECT_TRUE(check_orphan_freedom(raw("lone-receive.dpocnet"), {}, s, {}).ok);
}

TEST(IndexConditions, ProjectionsSatisfyThem) {
    for (const char* name : {"purchase", "voting", "nested_scopes", "two_buyers", "auction"}) {
        Network n = project(prog(read_file(corpus(std::string("programs/") + name + ".dioc"))), {});
        for (const auto& c : check_wellannotated_dpoc(n))
            EXPECT_TRUE(c.ok) << name << " " << c.condition << ": " << (c.witnesses.empty() ? "" : c.witnesses[0]);
    }
}

TEST(IndexConditions, C1RejectsDuplicatedSend) {
    EXPECT_FALSE(condition(check_wellannotated_dpoc(raw("two-sends.dpocnet").net), "C1").ok);
}

TEST(IndexConditions, C3RejectsUnorderedSends) {
    Network n = parse_network("role A { [1] 1.o : 1 to B | [2] 1.o : 2 to B }\nrole B { [3] 1.o : x from A; [4] 1.o : y from A }");
    EXPECT_FALSE(condition(check_wellannotated_dpoc(n), "C3").ok);
}

TEST(IndexConditions, C4RejectsUnorderedReceives) {
    Network n = parse_network("role A { [3] 1.o : 1 to B; [4] 1.o : 2 to B }\nrole B { [1] 1.o : x from A | [2] 1.o : y from A }");
    EXPECT_FALSE(condition(check_wellannotated_dpoc(n), "C4").ok);
}

TEST(IndexConditions, C5RejectsCommunicationLeavingScope) {
    Network n = parse_network(
        "role A { [1] scope @A { [2] 2.o : 1 to B } roles { A } }\n"
        "role B { [2] 2.o : x from A }");
    EXPECT_FALSE(condition(check_wellannotated_dpoc(n), "C5").ok);
}

TEST(IndexConditions, C6RejectsIndexReusedAcrossLoop) {
    Network n = parse_network("role A { [1] x = 1 | [3] while (true) { [1] x = 2 } }");
    EXPECT_FALSE(condition(check_wellannotated_dpoc(n), "C6").ok);
}

TEST(EventRelation, HoldOnCorpus) {
    for (const char* name : {"purchase", "voting", "nested_scopes", "parallel_fetch"}) {
        DiocProc p = prog(read_file(corpus(std::string("programs/") + name + ".dioc")));
        EventRelationReport r = check_event_relation(p, project(p, {}));
        EXPECT_TRUE(r.ok()) << name << ": " << r.witness;
    }
}

TEST(Events, ChoreographyOrder) {
    EventStructure es = events_dioc(prog("[1] a : A(1) -> B(x); [2] b : B(x) -> C(y)"));
    ASSERT_FALSE(es.events.empty());
    std::optional<std::size_t> first, second;
    for (std::size_t k = 0; k < es.size(); ++k) {
        if (es.events[k].op == "a" && es.events[k].kind == EventKind::Send) first = k;
        if (es.events[k].op == "b" && es.events[k].kind == EventKind::Recv) second = k;
    }
    ASSERT_TRUE(first && second);
    EXPECT_TRUE(es.leq(*first, *second));
    EXPECT_FALSE(es.leq(*second, *first));
}

TEST(Minimality, HoldsAlongProjectedRuns) {
    Pair s = systems(prog(read_file(corpus("programs/voting.dioc"))));
    auto g = explore_dpoc(s.n, {}, s.schedule, {});
    IndexCheck c = check_minimality_reachable(g, {});
    EXPECT_TRUE(c.ok) << (c.witnesses.empty() ? "" : c.witnesses[0]);
}

TEST(Commutation, AtomicDeliveryMatchesChoreography) {
    for (const char* name : {"purchase_noscope", "voting", "relay"}) {
        DiocProc p = prog(read_file(corpus(std::string("programs/") + name + ".dioc")));
        DiocSystem d = make_dioc_system(p, {}, std::make_shared<UpdateRepo>());
        CommutationReport r = check_commutation(d, {}, {}, Granularity::AtomicDelivery);
        EXPECT_TRUE(r.ok) << name << ": " << r.witness;
    }
}

TEST(Commutation, SingleStepDetectsOvertakenResidue) {
    // A's pending `x = ...` from c is overtaken by B's later actions on the network only.
    DiocProc p = prog("{ [1] y@B = x + 0; [2] c : B(x + 2) -> A(x) }; [3] x@B = y + 1; [4] y@B = 0");
    DiocSystem d = make_dioc_system(p, generator_state(GeneratorConfig{}), std::make_shared<UpdateRepo>());
    CommutationReport strict = check_commutation(d, {}, {}, Granularity::SingleStep);
    EXPECT_FALSE(strict.ok);
    EXPECT_FALSE(strict.witness.empty());
    EXPECT_TRUE(check_commutation(d, {}, {}, Granularity::AtomicDelivery).ok);
}

TEST(Generator, DepthZeroIsSkip) {
    GeneratorConfig cfg;
    cfg.max_depth = 0;
    EXPECT_EQ(gen_dioc(cfg, 3).kind(), DiocKind::Skip);
}

TEST(Generator, DeterministicInSeed) {
    GeneratorConfig cfg;
    EXPECT_TRUE(gen_dioc(cfg, 11) == gen_dioc(cfg, 11));
    EXPECT_EQ(pretty(gen_dioc(cfg, 11)), pretty(gen_dioc(cfg, 11)));
}

TEST(Generator, ProgramsAreWellAnnotatedAndConnected) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        GeneratorConfig cfg;
        cfg.max_depth = 2 + static_cast<int>(seed % 4);
        cfg.roles = 2 + static_cast<int>((seed / 4) % 2);
        DiocProc p = gen_dioc(cfg, seed);
        ASSERT_TRUE(well_annotated(p).ok) << seed;
        ASSERT_TRUE(connected(p).connected) << seed << "\n" << pretty(p);
        for (const auto& u : gen_updates(cfg, seed, 2).entries) ASSERT_TRUE(connected(u.body).connected) << seed;
    }
}

}  // namespace
}  // namespace dioc
