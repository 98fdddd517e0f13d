#include "virw/verify.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace virw;

namespace {

std::vector<Rat> powers_of(const Rat& b, long last) {
    std::vector<Rat> v;
    for (long q = 0; q <= last; ++q) v.push_back(b.pow(q));
    return v;
}

}  // namespace

TEST(ModuleAxiom, SmallWindowSymbolic) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        auto r = check_module_axiom(eps, ModuleParams::symbolic(eps), Window(2, 2, 3));
        EXPECT_TRUE(r.passed()) << r.serialize();
        EXPECT_EQ(r.records().size(), 5u * 3 * 5 * 3 * 4);
    }
}

TEST(ModuleAxiom, NumericAndBetaZero) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        auto numeric = ModuleParams::numeric(eps, Rat(-3, 2), Rat(2, 5), Rat(7));
        EXPECT_TRUE(check_module_axiom(eps, numeric, Window(2, 2, 3)).passed());
        auto beta0 = ModuleParams::symbolic(eps).with_beta(Rat(0));
        EXPECT_TRUE(check_module_axiom(eps, beta0, Window(2, 2, 3)).passed());
    }
}

TEST(ModuleAxiom, PointFromPairWithEqualIndices) {
    // [L[0,1], L[1,1]] = L[1,2] for eps = -1, checked on t^2 directly
    const ModuleParams p = ModuleParams::symbolic(Epsilon::minus);
    const TPoly f = TPoly::monomial(2);
    TPoly lhs = act(0, 1, act(1, 1, f, p), p) - act(1, 1, act(0, 1, f, p), p);
    EXPECT_EQ(lhs, act(1, 2, f, p));
}

TEST(ModuleAxiom, DetectsBrokenAction) {
    // A deliberately wrong module: right Vir part, L[i,1] scaled by 2.
    const ModuleParams p = ModuleParams::symbolic(Epsilon::plus);
    ActionOracle bad([p](long i, long m, const TPoly& f) {
        TPoly r = act(i, m, f, p);
        return m == 1 ? r * Rat(2) : r;
    });
    TPoly f(Rat(1));
    LieElt br = bracket_basis(Epsilon::plus, {1, 0}, {0, 1});
    TPoly lhs;
    for (const auto& [idx, c] : br.terms()) lhs += bad(idx.i, idx.m, f) * c;
    TPoly rhs = bad(1, 0, bad(0, 1, f)) - bad(0, 1, bad(1, 0, f));
    EXPECT_NE(lhs, rhs);
}

TEST(Report, SerializationFormat) {
    VerificationReport r;
    r.add({"x", 1, {{"i", 1}, {"m", 0}}, true, ""});
    r.add({"x", -1, {{"i", -2}}, false, "t^1"});
    EXPECT_EQ(r.serialize(),
              "check_id=x epsilon=1 point=i=1,m=0 status=pass\n"
              "check_id=x epsilon=-1 point=i=-2 status=fail diff=\"t^1\"\n"
              "summary records=2 failures=1 status=fail\n");
    EXPECT_EQ(r.to_json()["status"], "fail");
}

TEST(Report, ParallelMapKeepsOrder) {
    auto v = parallel_map<long>(1000, [](std::size_t q) { return static_cast<long>(q * q); });
    for (std::size_t q = 0; q < v.size(); ++q) EXPECT_EQ(v[q], static_cast<long>(q * q));
    EXPECT_THROW(parallel_map<int>(10, [](std::size_t q) -> int { if (q == 7) throw std::runtime_error("x"); return 0; }),
                 std::runtime_error);
}

TEST(Report, Deterministic) {
    const auto p = ModuleParams::symbolic(Epsilon::minus);
    EXPECT_EQ(check_module_axiom(Epsilon::minus, p, Window(1, 2, 2)).serialize(),
              check_module_axiom(Epsilon::minus, p, Window(1, 2, 2)).serialize());
}

TEST(Suites, OracleM0ExpansionFreeness) {
    EXPECT_TRUE(check_oracle_equivalence(Window(2, 3, 4)).passed());
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        EXPECT_TRUE(check_m0_reduction(eps, Window(3, 0, 5)).passed());
        EXPECT_TRUE(check_expansion(eps, Window(2, 3, 4)).passed());
        EXPECT_TRUE(check_freeness(eps, ModuleParams::symbolic(eps), 6).passed());
    }
}

TEST(Submodule, ActionOnOneAtAlphaZero) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        const ModuleParams p = ModuleParams::symbolic(eps).with_alpha(Rat(0));
        for (long i = -3; i <= 3; ++i)
            for (long m = 0; m <= 3; ++m) {
                TPoly v = act(i, m, TPoly(Rat(1)), p);
                EXPECT_TRUE(v.constant_term().is_zero());
                EXPECT_EQ(v, TPoly::monomial(1, lambda_power(static_cast<int>(i)) * beta_symbol().pow(static_cast<unsigned>(m))));
            }
        EXPECT_TRUE(check_submodule_and_quotient(eps, Window(3, 3, 4)).passed());
    }
}

TEST(Sequence, Examples) {
    EXPECT_TRUE(check_sequence(SequenceVec(powers_of(Rat(2), 12))).pass);
    EXPECT_TRUE(check_sequence(SequenceVec(powers_of(Rat(1), 12))).pass);
    EXPECT_TRUE(check_sequence(SequenceVec(powers_of(Rat(-3, 5), 12))).pass);
    EXPECT_TRUE(check_sequence(SequenceVec(powers_of(Rat(0), 12))).pass);

    std::vector<Rat> bad{Rat(1), Rat(1), Rat(2), Rat(4), Rat(8)};
    auto r = check_sequence(SequenceVec(bad));
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.violation);
    EXPECT_EQ(*r.violation, std::make_pair(1L, 1L));
    EXPECT_THROW(SequenceVec({Rat(2), Rat(1)}), std::invalid_argument);
}

TEST(Sequence, EverySinglePerturbationFails) {
    const auto base = powers_of(Rat(2), 12);
    for (std::size_t q = 1; q < base.size(); ++q) {
        auto v = base;
        v[q] += Rat(1);
        EXPECT_FALSE(check_sequence(SequenceVec(v)).pass) << q;
    }
}

TEST(Identities, Examples) {
    auto sign = [](long e) { return e % 2 == 0 ? 1L : -1L; };
    long lhs3 = 0;
    for (long s = 0; s <= 3; ++s) lhs3 += sign(3);
    EXPECT_EQ(lhs3, -4);
    long lhs5 = 0;
    for (long s = 0; s <= 2; ++s) lhs5 += sign(3) * (2 - s + 1);
    for (long s = 0; s <= 3; ++s) lhs5 += sign(3) * (3 - s);
    EXPECT_EQ(lhs5, -12);
    auto r = check_identities(20);
    EXPECT_TRUE(r.passed()) << r.serialize();
}

TEST(Probe, Outcomes) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        EXPECT_EQ(simplicity_probe(eps, Rat(1), Rat(1), Rat(1), TPoly::t()).outcome, ProbeOutcome::found);
        EXPECT_EQ(simplicity_probe(eps, Rat(1), Rat(0), Rat(1), TPoly::t()).outcome,
                  ProbeOutcome::certified_contained_in_t_submodule);
        EXPECT_THROW(simplicity_probe(eps, Rat(1), Rat(1), Rat(1), TPoly()), std::invalid_argument);
    }
    // budget with no words cannot reach 1 from t
    EXPECT_EQ(simplicity_probe(Epsilon::plus, Rat(1), Rat(1), Rat(1), TPoly::t(), {2, 2, 0}).outcome,
              ProbeOutcome::not_found_within_budget);
}

TEST(Probe, FoundMeansOneIsInTheSpan) {
    // Independent check at (1,1,1), eps = 1: L[0,0].t = t^2, L[1,0].t = t^2 - 2t + 1 ... their
    // combination L[0,0].t - L[1,0].t - 2t = -1 already lies in the depth-one span.
    const ModuleParams p = ModuleParams::numeric(Epsilon::plus, Rat(1), Rat(1), Rat(1));
    TPoly v = act(0, 0, TPoly::t(), p) - act(1, 0, TPoly::t(), p);
    EXPECT_EQ(v, TPoly::parse("2*t - 1"));
    EXPECT_EQ(v - Rat(2) * TPoly::t(), TPoly(Rat(-1)));
}
