#include <gtest/gtest.h>

#include "dioc/core.hpp"
#include "dioc/projection.hpp"
#include "support.hpp"

namespace dioc {
namespace {

using test::corpus;
using test::prog;

TEST(Parser, InteractionFields) {
    DiocProc p = prog("[4] quote : Seller(price * 2) -> Buyer(offer)");
    ASSERT_EQ(p.kind(), DiocKind::Interaction);
    EXPECT_EQ(p->index, 4u);
    EXPECT_EQ(p->op, "quote");
    EXPECT_EQ(p->role, Role("Seller"));
    EXPECT_EQ(p->receiver, Role("Buyer"));
    EXPECT_EQ(p->var, "offer");
    EXPECT_EQ(to_string(p->expr), "price * 2");
}

TEST(Parser, ParallelBindsTighterThanSequence) {
    DiocProc p = prog("x@A = 1; y@A = 2 | z@B = 3");
    ASSERT_EQ(p.kind(), DiocKind::Seq);
    EXPECT_EQ(p->right.kind(), DiocKind::Par);
    EXPECT_EQ(prog("{ x@A = 1; y@A = 2 } | z@B = 3").kind(), DiocKind::Par);
}

TEST(Parser, RolesPreamble) {
    DiocProgram p = parse_dioc("roles A, B, C;\nx@A = 1");
    EXPECT_EQ(p.declared_roles, (RoleSet{Role("A"), Role("B"), Role("C")}));
}

TEST(Parser, ScopeProperties) {
    DiocProc p = prog("scope @S { ack : S(1) -> C(x) }");
    ASSERT_EQ(p.kind(), DiocKind::Scope);
    EXPECT_EQ(p->role, Role("S"));
}

TEST(Parser, ErrorsCarryPosition) {
    try {
        parse_dioc("x@A = 1;\n  a : A(1) -> ");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_GT(e.col(), 1);
    }
    EXPECT_THROW(parse_dioc("while (x) { 1 }"), ParseError);
    EXPECT_THROW(parse_dioc("a : A(1) -> B(x) junk"), ParseError);
}

TEST(Printer, RoundTripsCorpus) {
    for (const char* name : {"purchase", "voting", "two_buyers", "nested_scopes", "parallel_fetch"}) {
        DiocProc p = prog(read_file(corpus(std::string("programs/") + name + ".dioc")));
        std::string text = pretty(p);
        EXPECT_EQ(pretty(prog(text)), text) << name;
        EXPECT_TRUE(prog(text) == p) << name;
    }
}

TEST(Updates, ParseAndHash) {
    UpdateRepo repo = parse_updates("update u { a : A(1) -> B(x) }\nupdate v target fast { 1 }");
    ASSERT_EQ(repo.entries.size(), 2u);
    EXPECT_EQ(repo.entries[0].name, "u");
    EXPECT_GE(max_index(repo.entries[0].body), 10000u);
    ASSERT_TRUE(repo.entries[1].target.has_value());
    EXPECT_EQ(*repo.entries[1].target, "fast");
    EXPECT_NE(repo.entries[0].hash, repo.entries[1].hash);
}

TEST(Updates, DirectoryLoadRejectsDuplicates) {
    UpdateRepo repo = load_updates(corpus("updates"));
    EXPECT_NE(repo.find("fidelity"), nullptr);
    EXPECT_NE(repo.find("audit"), nullptr);
    EXPECT_THROW(parse_updates("update u { 1 }\nupdate u { 1 }"), ParseError);
}

TEST(DpocSyntax, FullFormRoundTrips) {
    DiocProc p = prog(read_file(corpus("programs/purchase.dioc")));
    for (const auto& rp : project(p, {})) {
        std::string text = pretty(rp.proc);
        EXPECT_TRUE(parse_dpoc(text) == rp.proc) << rp.role.name();
    }
}

TEST(DpocSyntax, NetworkWithState) {
    Network n = parse_network("role A { [1] 1.o : x + 1 to B } state { x = 2; }\nrole B { [1] 1.o : y from A }");
    ASSERT_EQ(n.size(), 2u);
    EXPECT_EQ(n[0].role, Role("A"));
    EXPECT_EQ(n[0].state.at("x"), Value(2));
    EXPECT_EQ(n[1].proc.kind(), DpocKind::Recv);
}

TEST(Functions, ParseStubs) {
    FunctionEnv fns = parse_functions("// comment\ng(_, 2) = true\nh() = seq(\"a\", null)\n");
    ASSERT_EQ(fns.stubs().size(), 2u);
    EXPECT_EQ(fns.apply("g", {Value(0), Value(2)}, 0), Value(true));
    EXPECT_EQ(fns.apply("h", {}, 1), Value::null());
    EXPECT_THROW(parse_functions("g( = 1"), ParseError);
}

}  // namespace
}  // namespace dioc
