#include "fixtures.hpp"

#include "relcalc/error.hpp"
#include "relcalc/identify.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace relcalc;

namespace {

std::vector<InfoOption> options_with(const std::vector<Formula>& base, const std::vector<std::vector<Formula>>& extra,
                                     const std::vector<Rational>& costs) {
    std::vector<InfoOption> out;
    for (std::size_t i = 0; i < extra.size(); ++i) {
        InfoOption o{base, costs[i]};
        o.gamma.insert(o.gamma.end(), extra[i].begin(), extra[i].end());
        out.push_back(o);
    }
    return out;
}

} // namespace

TEST(IdentifyTest, FourVariableStatements) {
    const auto sig = fixtures::four();
    const auto gamma = fixtures::four_variable_statements();
    const std::string expected = "X1 -> X3\nX2 -> X1\nX2 -> X3\nX3 -> X4\n";
    EXPECT_EQ(identified_graph(sig, gamma, AxiomSystem::Srec).render(sig), expected);
    EXPECT_EQ(identified_graph(sig, gamma, AxiomSystem::Rec).render(sig), expected);
    EXPECT_EQ(identified_graph_exhaustive(sig, gamma, AxiomSystem::Srec, 10).render(sig), expected);
}

TEST(IdentifyTest, EmptyTheoryIdentifiesNothing) {
    const Signature sig({"X1", "X2", "X3"});
    EXPECT_EQ(identified_graph(sig, {}, AxiomSystem::Srec).edge_count(), 0u);
    EXPECT_THROW(identified_graph_exhaustive(sig, {}, AxiomSystem::Srec, 10), TooManyExtensions);
}

TEST(IdentifyTest, InconsistentTheoryThrows) {
    const Signature sig({"X1", "X2"});
    const std::vector<Formula> both{parse_formula("!irr(X1; X2; )", sig), parse_formula("!irr(X2; X1; )", sig)};
    EXPECT_THROW(identified_graph(sig, both, AxiomSystem::Srec), Inconsistent);
    EXPECT_EQ(identified_graph(sig, both, AxiomSystem::Rec).render(sig), "X1 -> X2\nX2 -> X1\n");
}

TEST(IdentifyPropertyTest, PerEdgeQueriesMatchEnumeration) {
    Rng rng(21);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto t = theory_literals(fixtures::random_model(seed, 3, GeneratedClass::StrongRecursive, 2));
        const Signature sig(t.signature().names());
        const auto gamma = fixtures::random_subset(AtomValuation(sig, t.values()), rng, 20);
        for (auto sys : {AxiomSystem::Srec, AxiomSystem::Rec})
            EXPECT_EQ(identified_graph(sig, gamma, sys), identified_graph_exhaustive(sig, gamma, sys, 100000)) << seed;
    }
}

TEST(IdentifyPropertyTest, SoundAndMonotone) {
    Rng rng(22);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const CausalModel m = fixtures::random_model(seed, 4, GeneratedClass::StrongRecursive, 2);
        const auto t = theory_literals(m);
        const Signature sig(t.signature().names());
        const Digraph truth = semantic_graph(m);
        auto small = fixtures::random_subset(AtomValuation(sig, t.values()), rng, 10);
        auto large = small;
        for (const auto& l : t.literals())
            if (rng.below(100) < 20) large.push_back(Formula::literal(l));
        const Digraph gs = identified_graph(sig, small, AxiomSystem::Srec);
        const Digraph gl = identified_graph(sig, large, AxiomSystem::Srec);
        EXPECT_TRUE(gs.subgraph_of(gl));
        EXPECT_TRUE(gl.subgraph_of(truth));
        EXPECT_EQ(identified_graph(sig, t.formulas(), AxiomSystem::Srec), truth);
    }
}

TEST(CostTest, PonderedCostArithmetic) {
    EXPECT_EQ(pondered_cost(Rational(6), 4).render(), "3/2");
    EXPECT_EQ(pondered_cost(Rational(6), 3).render(), "2");
    EXPECT_TRUE(pondered_cost(Rational(6), 0).is_infinite());
    EXPECT_EQ(pondered_cost(Rational(6), 0).render(), "inf");
    EXPECT_LT(pondered_cost(Rational(100), 1), PonderedCost::infinite());
    EXPECT_LT(pondered_cost(Rational(1), 2), pondered_cost(Rational(1), 1));
    EXPECT_EQ(PonderedCost::infinite(), PonderedCost::infinite());
}

TEST(CostTest, RanksOptionsByCostPerNewEdge) {
    const auto sig = fixtures::four();
    const std::vector<Formula> base{parse_formula("!irr(X1; X3; X2,X4)", sig)};
    const auto f = [&](const char* t) { return parse_formula(t, sig); };
    const auto opts = options_with(base,
                                   {{f("irr(X1; X2; X3,X4)")},
                                    {f("!irr(X2; X3; X1,X4)"), f("!irr(X3; X4; X1,X2)")},
                                    {f("!irr(X3; X4; X1,X2)")}},
                                   {Rational(1), Rational(3), Rational(2)});
    const auto ranked = rank_options(sig, base, opts, AxiomSystem::Srec);
    ASSERT_EQ(ranked.size(), 3u);
    EXPECT_EQ(ranked[0].index, 1u);
    EXPECT_EQ(ranked[0].new_edges, 2u);
    EXPECT_EQ(ranked[0].cost.render(), "3/2");
    EXPECT_EQ(ranked[1].index, 2u);
    EXPECT_EQ(ranked[1].new_edges, 1u);
    EXPECT_EQ(ranked[1].cost.render(), "2");
    EXPECT_EQ(ranked[2].index, 0u);
    EXPECT_TRUE(ranked[2].cost.is_infinite());
}

TEST(CostTest, RankingChecksItsInputs) {
    const auto sig = fixtures::four();
    const std::vector<Formula> base{parse_formula("!irr(X1; X3; X2,X4)", sig)};
    EXPECT_THROW(rank_options(sig, base, std::vector<InfoOption>{{{}, Rational(1)}}, AxiomSystem::Srec), PreconditionError);
    auto bad = options_with(base, {{parse_formula("!irr(X3; X1; X2,X4)", sig)}}, {Rational(1)});
    try {
        rank_options(sig, base, bad, AxiomSystem::Srec);
        FAIL();
    } catch (const Inconsistent& e) {
        EXPECT_NE(std::string(e.what()).find("option 1"), std::string::npos);
    }
}

TEST(CostTest, OptionsFileParsing) {
    const auto sig = fixtures::four();
    const auto opts = parse_options(R"j([{"formulas": ["irr(X1; X2; )"], "cost": 0.1}, {"formulas": [], "cost": 3}])j", sig);
    ASSERT_EQ(opts.size(), 2u);
    EXPECT_EQ(opts[0].cost, Rational(1, 10));
    EXPECT_EQ(opts[1].cost, Rational(3));
    EXPECT_THROW(parse_options(R"j([{"formulas": [], "cost": -1}])j", sig), SchemaError);
    EXPECT_THROW(parse_options(R"j([{"formulas": [], "cost": "1"}])j", sig), SchemaError);
    EXPECT_THROW(parse_options(R"j([{"formulas": []}])j", sig), SchemaError);
    EXPECT_THROW(parse_options(R"j({"formulas": []})j", sig), SchemaError);
    EXPECT_THROW(parse_options(R"j([{"formulas": [], "cost": 1, "note": 2}])j", sig), SchemaError);
    EXPECT_EQ(option_variable_names(R"j([{"formulas": ["irr(B; A; )"], "cost": 1}])j"), (std::vector<std::string>{"B", "A"}));
}

TEST(RecursivenessTest, SeparatesCyclicFeedback) {
    const auto cyclic = theory_literals(fixtures::feedback_pair());
    const Signature sig(cyclic.signature().names());
    EXPECT_EQ(recursiveness_test(sig, AtomValuation(sig, cyclic.values()).formulas()), Recursiveness::NonRecursive);
    EXPECT_EQ(recursiveness_test(sig, fixtures::four_variable_statements()), Recursiveness::PossiblyRecursive);
    EXPECT_EQ(to_string(Recursiveness::NonRecursive), "non-recursive");
}

TEST(ConstraintTest, ExportsOnePathObligationPerNegativeLiteral) {
    const auto sig = fixtures::four();
    const auto gamma = fixtures::four_variable_statements();
    const auto cs = path_constraints(gamma);
    EXPECT_EQ(cs.size(), 5u);
    const auto doc = nlohmann::json::parse(render_path_constraints(cs, sig));
    ASSERT_EQ(doc.size(), 5u);
    EXPECT_EQ(doc[0]["from"], nlohmann::json::array({"X2"}));
    EXPECT_EQ(doc[0]["to"], nlohmann::json::array({"X1"}));
    EXPECT_EQ(doc[0]["avoid"], nlohmann::json::array({"X3", "X4"}));
}
