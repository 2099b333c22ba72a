#include "fixtures.hpp"

#include "relcalc/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace relcalc;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixtures::path(name); }

class TempFile {
public:
    TempFile(const std::string& name, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / ("relcalc_cli_" + std::to_string(::getpid()) + "_" + name)) {
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    [[nodiscard]] std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(CliTest, EvalOnFeedbackModel) {
    const auto r = run({"eval", "--model", fx("feedback_pair.json"), "--formula", "irr(X1; X4; X2)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    const auto f = run({"eval", "--model", fx("feedback_pair.json"), "--formula", "irr(X1; X4; )"});
    EXPECT_EQ(f.code, 1);
    EXPECT_EQ(f.out, "false\n");
}

TEST(CliTest, DeriveFromFourVariableStatements) {
    const auto r = run({"derive", "--system", "uniq", "--gamma", fx("four_statements.txt"), "--formula", "!irr(X2; X4; X1)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "derivable\n");
    const auto n = run({"derive", "--system", "uniq", "--gamma", fx("four_statements.txt"), "--formula", "irr(X2; X4; X1)"});
    EXPECT_EQ(n.code, 1);
    EXPECT_EQ(n.out, "not derivable\n");
}

TEST(CliTest, FeedbackTheoryIsNotRecursive) {
    const auto r = run({"consistent", "--system", "rec", "--gamma", fx("feedback_pair-theory.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "inconsistent\n");
    const auto u = run({"consistent", "--system", "uniq", "--gamma", fx("feedback_pair-theory.txt")});
    EXPECT_EQ(u.code, 0);
    EXPECT_EQ(run({"rectest", "--gamma", fx("feedback_pair-theory.txt")}).out, "non-recursive\n");
}

TEST(CliTest, TheoryFixtureMatchesModel) {
    std::ifstream in(fx("feedback_pair-theory.txt"));
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(run({"theory", "--model", fx("feedback_pair.json"), "--literals"}).out, expected.str());
}

TEST(CliTest, EmitExtension) {
    const auto r = run({"consistent", "--gamma", fx("four_statements.txt"), "--emit-extension"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 11), "consistent\n");
    const std::string literals = r.out.substr(11);
    EXPECT_EQ(std::count(literals.begin(), literals.end(), '\n'), 110);
    TempFile ext("ext.txt", literals);
    EXPECT_EQ(run({"consistent", "--gamma", ext.str(), "--system", "srec"}).code, 0);
}

TEST(CliTest, GraphsAndPaths) {
    EXPECT_EQ(run({"graph", "--model", fx("feedback_pair.json")}).out, "X1 -> X2\nX2 -> X3\nX2 -> X4\nX3 -> X2\n");
    EXPECT_EQ(run({"graph", "--model", fx("two_contexts.json"), "--context", "v"}).out, "X1 -> X2\n");
    EXPECT_EQ(run({"graph", "--gamma", fx("four_statements.txt")}).out, "X1 -> X3\nX2 -> X1\nX2 -> X3\nX3 -> X4\n");
    const auto dot = run({"graph", "--gamma", fx("four_statements.txt"), "--dot"}).out;
    EXPECT_EQ(dot.rfind("digraph G {\n", 0), 0u);
    EXPECT_EQ(run({"path", "--gamma", fx("four_statements.txt"), "--atom", "irr(X2; X4; X1)"}).out, "X2 -> X3 -> X4\n");
    EXPECT_EQ(run({"identify", "--gamma", fx("four_statements.txt"), "--system", "srec"}).out,
              "X1 -> X3\nX2 -> X1\nX2 -> X3\nX3 -> X4\n");
}

TEST(CliTest, RespondAndClassify) {
    const auto r = run({"respond", "--model", fx("two_contexts.json"), "--do", "X1=1", "--targets", "X2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "u: X2=0\nv: X2=1\n");
    EXPECT_EQ(run({"classify", "--model", fx("feedback_pair.json")}).out, "uniq\n");
    EXPECT_EQ(run({"classify", "--model", fx("two_contexts.json")}).out, "recursive\n");
}

TEST(CliTest, FragmentFindAndCheck) {
    const auto r = run({"fragment", "--gamma", fx("four_statements.txt"), "--anchor", "irr(X1; X4; )"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "anchor: X1; X4;\nX1 -> X3\nX2 -> X3\nX3 -> X4\n");
    TempFile good("good.txt", r.out);
    EXPECT_EQ(run({"fragment", "--gamma", fx("four_statements.txt"), "--check", good.str()}).out, "fragment\n");
    TempFile bad("bad.txt", "anchor: X1; X4;\nX2 -> X1\nX1 -> X3\nX3 -> X4\n");
    const auto b = run({"fragment", "--gamma", fx("four_statements.txt"), "--check", bad.str()});
    EXPECT_EQ(b.code, 1);
    EXPECT_EQ(b.out, "not a fragment\n");
}

TEST(CliTest, WitnessRoundTrip) {
    TempFile model("witness.json", "");
    EXPECT_EQ(run({"witness", "--gamma", fx("four_statements.txt"), "--system", "rec", "-o", model.str()}).code, 0);
    for (const char* formula : {"!irr(X2; X4; X1)", "irr(X3,X4; X1; )", "!irr(X1; X4; X2)"})
        EXPECT_EQ(run({"eval", "--model", model.str(), "--formula", formula}).out, "true\n") << formula;
}

TEST(CliTest, RankOptions) {
    TempFile gamma("base.txt", "!irr(X1; X3; X2,X4)\n");
    TempFile opts("opts.json", R"j([
      {"formulas": ["!irr(X1; X3; X2,X4)", "irr(X1; X2; X3,X4)"], "cost": 1},
      {"formulas": ["!irr(X1; X3; X2,X4)", "!irr(X2; X3; X1,X4)", "!irr(X3; X4; X1,X2)"], "cost": 3},
      {"formulas": ["!irr(X1; X3; X2,X4)", "!irr(X3; X4; X1,X2)"], "cost": 2}
    ])j");
    const auto r = run({"rank", "--gamma", gamma.str(), "--options", opts.str(), "--vars", "X1,X2,X3,X4"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "option 2\tnew-edges 2\tcost 3/2\noption 3\tnew-edges 1\tcost 2\noption 1\tnew-edges 0\tcost inf\n");
}

TEST(CliTest, JsonModesEmitOneDocument) {
    const std::vector<std::vector<std::string>> invocations{
        {"eval", "--model", fx("feedback_pair.json"), "--formula", "irr(X1; X4; X2)"},
        {"theory", "--model", fx("two_contexts.json")},
        {"respond", "--model", fx("two_contexts.json"), "--do", "X1=1"},
        {"classify", "--model", fx("feedback_pair.json")},
        {"consistent", "--gamma", fx("four_statements.txt"), "--emit-extension"},
        {"derive", "--gamma", fx("four_statements.txt"), "--formula", "irr(X1; X2; )", "--emit-extension"},
        {"extensions", "--gamma", fx("four_statements.txt")},
        {"graph", "--gamma", fx("four_statements.txt")},
        {"path", "--gamma", fx("four_statements.txt"), "--atom", "irr(X1; X4; X2)"},
        {"fragment", "--gamma", fx("four_statements.txt"), "--anchor", "irr(X1; X4; )"},
        {"identify", "--gamma", fx("four_statements.txt")},
        {"rectest", "--gamma", fx("four_statements.txt")},
    };
    for (auto args : invocations) {
        args.push_back("--json");
        const auto r = run(args);
        EXPECT_LE(r.code, 1) << args[0] << ": " << r.err;
        EXPECT_TRUE(nlohmann::json::accept(r.out)) << args[0] << ": " << r.out;
    }
}

TEST(CliTest, OutputIndependentOfJobs) {
    const auto one = run({"theory", "--model", fx("feedback_pair.json"), "--jobs", "1"});
    const auto four = run({"theory", "--model", fx("feedback_pair.json"), "--jobs", "4"});
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(one.out, run({"theory", "--model", fx("feedback_pair.json")}).out);
}

TEST(CliTest, GeneratorNeedsSeedAndIsReproducible) {
    const auto a = run({"gen", "--seed", "17", "--variables", "3", "--class", "rec", "--contexts", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run({"gen", "--seed", "17", "--variables", "3", "--class", "rec", "--contexts", "2"}).out);
    EXPECT_TRUE(nlohmann::json::accept(a.out));
    EXPECT_EQ(run({"gen", "--variables", "3"}).code, 2);
}

TEST(CliTest, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"eval", "--model", fx("feedback_pair.json")}).code, 2);
    EXPECT_EQ(run({"eval", "--model", "/nonexistent.json", "--formula", "irr(X1; X2; )"}).code, 2);
    const auto syntax = run({"eval", "--model", fx("feedback_pair.json"), "--formula", "irr(X1; X9; )"});
    EXPECT_EQ(syntax.code, 2);
    EXPECT_NE(syntax.err.find("X9"), std::string::npos);
    EXPECT_EQ(run({"consistent", "--gamma", fx("four_statements.txt"), "--system", "weird"}).code, 2);
    EXPECT_EQ(run({"identify", "--gamma", fx("four_statements.txt"), "--system", "uniq"}).code, 2);
    TempFile empty("empty.txt", "");
    EXPECT_EQ(run({"extensions", "--gamma", empty.str(), "--vars", "X1,X2,X3", "--max-extensions", "5"}).code, 2);
}

TEST(CliTest, VersionAndHelp) {
    const auto v = run({"--version"});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliTest, SignatureInferenceUsesNaturalOrder) {
    EXPECT_TRUE(natural_less("X2", "X10"));
    EXPECT_FALSE(natural_less("X10", "X2"));
    EXPECT_TRUE(natural_less("A", "B"));
    TempFile gamma("order.txt", "irr(X10; X2; )\n");
    EXPECT_EQ(run({"consistent", "--gamma", gamma.str(), "--emit-extension"}).out,
              "consistent\nirr(X2; X10; )\nirr(X10; X2; )\n");
}

TEST(CliTest, BinaryExitCodes) {
    const std::string cmd = std::string(RELCALC_BINARY) + " consistent --system rec --gamma " + fx("feedback_pair-theory.txt") + " > /dev/null";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
