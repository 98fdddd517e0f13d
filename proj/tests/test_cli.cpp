#include "virw/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = virw::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ActSymbolic) {
    auto r = run({"act", "--epsilon", "-1", "--i", "0", "--m", "1", "--poly", "1", "--symbolic"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "b*t^1 + -1*a*b^2\n");
}

TEST(Cli, ActNumeric) {
    auto r = run({"act", "--epsilon", "1", "--i", "1", "--m", "0", "--poly", "t", "--lambda", "2", "--alpha", "1/2",
                  "--beta", "3"});
    EXPECT_EQ(r.code, 0);
    // 2 (t - 1/2)(t - 1)
    EXPECT_EQ(r.out, "2*t^2 + -3*t^1 + 1\n");
}

TEST(Cli, UsageErrors) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"act", "--epsilon", "1", "--i", "0", "--m", "1", "--lambda", "0"},
             {"act", "--epsilon", "1", "--i", "0", "--m", "-1", "--symbolic"},
             {"act", "--epsilon", "1", "--i", "0", "--m", "1", "--alpha", "1/x"},
             {"act", "--epsilon", "2", "--i", "0", "--m", "1"},
             {"act", "--epsilon", "1", "--i", "0", "--m", "1", "--symbolic", "--beta", "2"},
             {"act", "--epsilon", "1", "--poly", "t^"},
             {"act", "--unknown-flag"},
             {"verify", "no-such-suite"},
             {"verify", "axioms", "--i-max", "-1"},
             {"classify", "wm1", "--degree", "1"},
             {"classify", "wm1", "--mode", "fast"},
             {"sequence", "--values", "1,2,x"},
             {"sequence", "--values", "2,4"},
             {"probe", "--epsilon", "1", "--lambda", "1", "--alpha", "1", "--beta", "1", "--start", "0"},
             {},
         }) {
        auto r = run(args);
        EXPECT_EQ(r.code, 2) << (args.empty() ? "(none)" : args[0]) << " " << r.err;
        EXPECT_FALSE(r.err.empty());
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
    }
}

TEST(Cli, VerifySuitesPass) {
    EXPECT_EQ(run({"verify", "axioms", "--epsilon", "1", "--i-max", "2", "--m-max", "2", "--k-max", "3",
                   "--symbolic"}).code, 0);
    for (const char* suite : {"oracle", "m0", "expansion", "closed-forms", "submodule", "shift-iso", "freeness",
                              "identities", "lie"})
        EXPECT_EQ(run({"verify", suite, "--i-max", "2", "--m-max", "2", "--k-max", "3"}).code, 0) << suite;
    EXPECT_EQ(run({"verify", "extract", "--samples", "3"}).code, 0);
}

TEST(Cli, VerifyOutputIsDeterministic) {
    std::vector<std::string> args{"verify", "axioms", "--epsilon", "-1", "--i-max", "1", "--m-max", "2",
                                  "--k-max", "2", "--symbolic"};
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("summary records=243 failures=0 status=pass"), std::string::npos);
    auto j = nlohmann::json::parse(run({"verify", "m0", "--epsilon", "1", "--format", "json"}).out);
    EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, Classify) {
    auto w1 = run({"classify", "w1", "--degree", "4"});
    EXPECT_EQ(w1.code, 0);
    EXPECT_NE(w1.out.find("equation=\"18*a_4 = 0\""), std::string::npos);
    EXPECT_NE(w1.out.find("forced symbol=a_4 value=\"0\""), std::string::npos);

    auto wm1 = run({"classify", "wm1", "--degree", "3", "--trace"});
    EXPECT_EQ(wm1.code, 0);
    EXPECT_NE(wm1.out.find("row_space_equal=yes"), std::string::npos);
    EXPECT_NE(wm1.out.find("witness row=0 displayed=0 factor=-2"), std::string::npos);
    EXPECT_NE(wm1.out.find("provenance="), std::string::npos);
    EXPECT_NE(wm1.out.find("trace "), std::string::npos);
    EXPECT_EQ(run({"classify", "wm1", "--degree", "3"}).out.find("provenance="), std::string::npos);

    auto zero = run({"classify", "wm1", "--degree", "3", "--mode", "alpha-zero"});
    EXPECT_EQ(zero.code, 0);
    EXPECT_NE(zero.out.find("forced symbol=a_3^(0) value=\"0\""), std::string::npos);

    auto sampled = run({"classify", "wm1", "--degree", "5", "--mode", "sampled", "--format", "json"});
    EXPECT_EQ(sampled.code, 0);
    auto j = nlohmann::json::parse(sampled.out);
    EXPECT_EQ(j["forced"]["a_5^(0)"], "0");
    EXPECT_GE(j["samples"].size(), 5u);

    auto steps = run({"classify", "sequence-steps", "--trace"});
    EXPECT_EQ(steps.code, 0);
    EXPECT_NE(steps.out.find("trace \"b2 = b1^2\""), std::string::npos);
    EXPECT_EQ(run({"classify", "sequence-steps", "--degree", "3"}).code, 1);
}

TEST(Cli, Sequence) {
    EXPECT_EQ(run({"sequence", "--values", "1,2,4,8,16,32"}).code, 0);
    auto bad = run({"sequence", "--values", "1,1,2,4"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("violation=1,1"), std::string::npos);
}

TEST(Cli, Probe) {
    auto found = run({"probe", "--epsilon", "-1", "--lambda", "1", "--alpha", "1", "--beta", "1", "--start", "t"});
    EXPECT_EQ(found.code, 0);
    EXPECT_NE(found.out.find("outcome=found"), std::string::npos);
    auto cert = run({"probe", "--epsilon", "1", "--lambda", "1", "--alpha", "0", "--beta", "1"});
    EXPECT_EQ(cert.code, 0);
    EXPECT_NE(cert.out.find("certified-contained-in-tSubmodule"), std::string::npos);
    auto none = run({"probe", "--epsilon", "1", "--lambda", "1", "--alpha", "1", "--beta", "1", "--word-len", "0"});
    EXPECT_EQ(none.code, 1);
}

TEST(Cli, ExportTableAndOutputFile) {
    const std::string path = ::testing::TempDir() + "virw_table.json";
    auto r = run({"act", "--epsilon", "1", "--lambda", "2", "--alpha", "3", "--beta", "5", "--export-table",
                  "--i-max", "1", "--m-max", "1", "--k-max", "1", "--format", "json", "--output", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    auto table = virw::table_from_json(nlohmann::json::parse(in));
    EXPECT_EQ(table.size(), 3u * 2 * 2);
    auto p = virw::extract_params(virw::table_oracle(table), virw::Epsilon::plus, virw::Window(1, 1, 1));
    EXPECT_EQ(p.lambda, virw::Rat(2));
    EXPECT_EQ(p.alpha, virw::Rat(3));
    EXPECT_EQ(p.beta, virw::Rat(5));
    std::remove(path.c_str());
}
