#include <gtest/gtest.h>

#include <random>

#include "dioc/connectedness.hpp"
#include "support.hpp"

namespace dioc {
namespace {

using test::corpus;
using test::prog;

RolePair rp(const char* a, const char* b) { return RolePair::of(Role(a), Role(b)); }

TEST(Frontier, Interaction) {
    DiocProc p = prog("a : A(1) -> B(x)");
    EXPECT_EQ(trans_i(p), PairSet{rp("A", "B")});
    EXPECT_EQ(trans_f(p), PairSet{rp("A", "B")});
}

TEST(Frontier, SequenceAndParallel) {
    DiocProc s = prog("a : A(1) -> B(x); b : B(x) -> C(y)");
    EXPECT_EQ(trans_i(s), PairSet{rp("A", "B")});
    EXPECT_EQ(trans_f(s), PairSet{rp("B", "C")});
    DiocProc p = prog("a : A(1) -> B(x) | y@C = 2");
    EXPECT_EQ(trans_i(p), (PairSet{rp("A", "B"), rp("C", "C")}));
}

TEST(Frontier, GuardedConstructsStartAtCoordinator) {
    EXPECT_EQ(trans_i(prog("if (x > 0)@C { a : A(1) -> B(x) }")), PairSet{rp("C", "C")});
    EXPECT_EQ(trans_i(prog("while (x > 0)@C { a : A(1) -> B(x) }")), PairSet{rp("C", "C")});
}

TEST(Frontier, SkipIsTransparentInSequence) {
    DiocProc p = prog("1; a : A(1) -> B(x)");
    EXPECT_EQ(trans_i(p), PairSet{rp("A", "B")});
}

TEST(Connected, RejectsDisjointSequence) {
    ConnectednessResult r = connected(prog(read_file(corpus("negative/disconnected.dioc"))));
    EXPECT_FALSE(r.connected);
    ASSERT_TRUE(r.failing_seq.has_value());
    EXPECT_EQ(r.failing_seq->first->op, "op1");
    EXPECT_EQ(r.failing_seq->second->op, "op2");
    EXPECT_NE(r.diagnostic.find("op1"), std::string::npos);
}

TEST(Connected, AcceptsSharedRole) {
    EXPECT_TRUE(connected(prog("a : A(1) -> B(x); b : B(x) -> C(y)")).connected);
    EXPECT_TRUE(connected(prog("x@A = 1; a : A(x) -> B(y)")).connected);
    EXPECT_FALSE(connected(prog("x@A = 1; y@B = 2")).connected);
}

TEST(Connected, NestedFailureIsFound) {
    ConnectednessResult r = connected(prog("a : A(1) -> B(x); if (x > 0)@B { x@B = 1; y@C = 2 }"));
    EXPECT_FALSE(r.connected);
    ASSERT_TRUE(r.failing_seq.has_value());
    EXPECT_EQ(r.failing_seq->second.kind(), DiocKind::Assign);
}

TEST(Connected, CorpusPrograms) {
    for (const char* name : {"purchase", "voting", "relay", "ping_pong", "auction"})
        EXPECT_TRUE(connected(prog(read_file(corpus(std::string("programs/") + name + ".dioc")))).connected) << name;
}

TEST(Connected, DeepSequenceDoesNotExhaustStack) {
    const char* names[] = {"A", "B", "C"};
    const Index n = 50000;
    DiocProc p = make_interaction(n, "o", Role(names[(n - 1) % 3]), Expr::literal(1), Role(names[n % 3]), "x");
    for (Index k = n - 1; k >= 1; --k)
        p = make_seq(make_interaction(k, "o", Role(names[(k - 1) % 3]), Expr::literal(1), Role(names[k % 3]), "x"), p);
    EXPECT_TRUE(connected(p).connected);
}

TEST(PairSets, IntersectionBasics) {
    PairSet star{rp("A", "B"), rp("A", "C"), rp("A", "D")};
    EXPECT_TRUE(pairsets_all_intersect(star, PairSet{rp("A", "A")}));
    EXPECT_FALSE(pairsets_all_intersect(star, PairSet{rp("B", "C")}));
    EXPECT_TRUE(pairsets_all_intersect(PairSet{}, star));
    PairSet triangle{rp("A", "B"), rp("B", "C"), rp("A", "C")};
    EXPECT_TRUE(pairsets_all_intersect(triangle, triangle));
}

TEST(PairSets, AgreesWithBruteForceOnRandomSets) {
    std::mt19937_64 rng(7);
    const char* names[] = {"A", "B", "C", "D", "E"};
    for (int k = 0; k < 2000; ++k) {
        auto make = [&] {
            PairSet s;
            int n = static_cast<int>(rng() % 12);
            for (int i = 0; i < n; ++i) s.insert(rp(names[rng() % 5], names[rng() % 5]));
            return s;
        };
        PairSet a = make(), b = make();
        ASSERT_EQ(pairsets_all_intersect(a, b), pairsets_all_intersect_bruteforce(a, b)) << to_string(a) << " " << to_string(b);
    }
}

}  // namespace
}  // namespace dioc
