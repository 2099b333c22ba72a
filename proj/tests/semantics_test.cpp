#include "fixtures.hpp"
#include "oracle.hpp"

#include "relcalc/error.hpp"
#include "relcalc/semantics.hpp"

#include <gtest/gtest.h>

using namespace relcalc;

namespace {

bool holds(const CausalModel& m, const std::string& text) { return satisfies(m, parse_formula(text, m.signature())); }

} // namespace

TEST(SemanticsTest, FeedbackPairVerdicts) {
    const CausalModel m = fixtures::feedback_pair();
    EXPECT_FALSE(holds(m, "irr(X1; X4; )"));
    EXPECT_TRUE(holds(m, "irr(X1; X4; X2)"));
    EXPECT_TRUE(holds(m, "irr(X1; X4; X3)"));
    EXPECT_FALSE(holds(m, "irr(X2; X4; X1,X3)"));
    EXPECT_FALSE(holds(m, "irr(X1; X3; X4)"));
    EXPECT_FALSE(holds(m, "irr(X2; X3; X4)"));
}

TEST(SemanticsTest, ContextSwitchVerdicts) {
    const CausalModel m = fixtures::context_switch();
    EXPECT_FALSE(holds(m, "irr(X1; X2; )"));
    EXPECT_FALSE(holds(m, "irr(X2; X1; )"));
    EXPECT_TRUE(holds(m, "!irr(X1; X2; ) & !irr(X2; X1; )"));
    EXPECT_FALSE(holds(m, "irr(X1; X2; ) | irr(X2; X1; )"));
}

TEST(SemanticsTest, ConditioningSweepCoversEveryExtraSet) {
    // A -> B -> C with B copying A and C copying B: A is relevant to C
    // unconditionally, yet irrelevant once B is held fixed.
    const Signature sig({"A", "B", "C"});
    const Digraph g = parse_edge_list("A -> B\nB -> C\n", sig);
    const CausalModel m = fragment_model(g, sig);
    EXPECT_FALSE(holds(m, "irr(A; C; )"));
    EXPECT_TRUE(holds(m, "irr(A; C; B)"));
    EXPECT_FALSE(holds(m, "irr(A; B,C; )"));
    EXPECT_TRUE(holds(m, "irr(C; A,B; )"));
}

TEST(SemanticsTest, ConnectivesFollowClassicalLogic) {
    const CausalModel m = fixtures::collider_chain();
    EXPECT_TRUE(holds(m, "irr(X1; X2; ) & !irr(X1; X4; )"));
    EXPECT_TRUE(holds(m, "irr(X1; X4; ) | irr(X1; X2; )"));
    EXPECT_TRUE(holds(m, "irr(X1; X4; ) => irr(X4; X1; )"));
    EXPECT_FALSE(holds(m, "irr(X1; X2; ) => irr(X1; X4; )"));
}

TEST(SemanticsTest, VerdictReportFormat) {
    const auto t = theory_literals(fixtures::context_switch());
    EXPECT_EQ(t.render_verdicts(), "irr(X1; X2; ): false\nirr(X2; X1; ): false\n");
    EXPECT_EQ(t.render_literals(), "!irr(X1; X2; )\n!irr(X2; X1; )\n");
    EXPECT_EQ(t.negatives().size(), 2u);
    EXPECT_TRUE(t.positives().empty());
}

TEST(SemanticsTest, RejectsModelsWithoutUniqueSolutions) {
    const Signature sig({"A", "B"});
    const CausalModel m = CausalModel::from_function(sig, {"u"}, [](std::size_t v, std::size_t, std::span<const Value> f) {
        return f[1 - v];
    });
    EXPECT_THROW(satisfies(m, parse_formula("irr(A; B; )", sig)), NotUniq);
}

TEST(SemanticsPropertyTest, AtomVerdictsMatchBruteForce) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto kind = seed % 2 ? GeneratedClass::Uniq : GeneratedClass::Recursive;
        const CausalModel m = fixtures::random_model(seed, 3 + seed % 2, kind, 1 + seed % 2, 2 + seed % 3 / 2);
        const oracle::BruteSemantics brute(m);
        if (!brute.uniq()) continue;
        EXPECT_EQ(theory_literals(m).values(), brute.theory()) << "seed " << seed;
    }
    for (const auto& m : fixtures::fixture_models())
        EXPECT_EQ(theory_literals(m).values(), oracle::BruteSemantics(m).theory());
}

TEST(SemanticsPropertyTest, ThreadCountDoesNotChangeVerdicts) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CausalModel m = fixtures::random_model(seed, 4, GeneratedClass::Recursive, 2);
        const auto one = theory_literals(m, 1);
        EXPECT_EQ(theory_literals(m, 4), one);
        Evaluator ev(m, 3);
        for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(ev.satisfies(one.space()[i]), bool(one[i]));
    }
}

TEST(SemanticsPropertyTest, FormulaValueIsCompositional) {
    Rng rng(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CausalModel m = fixtures::random_model(seed, 3, GeneratedClass::Recursive, 2);
        const auto t = theory_literals(m);
        const AtomSpace& space = t.space();
        for (int i = 0; i < 50; ++i) {
            const Atom a = space[rng.below(space.size())], b = space[rng.below(space.size())];
            const Formula f = Formula::implication(Formula::atom(a), Formula::negation(Formula::atom(b)));
            EXPECT_EQ(satisfies(m, f), !t.value(a) || !t.value(b));
            EXPECT_EQ(t.satisfies(f), satisfies(m, f));
        }
    }
}
