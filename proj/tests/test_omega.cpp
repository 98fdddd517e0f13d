#include "virw/omega.hpp"
#include "virw/verify.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace virw;

namespace {

const ModuleParams kPlus = ModuleParams::symbolic(Epsilon::plus);
const ModuleParams kMinus = ModuleParams::symbolic(Epsilon::minus);

TPoly P(const char* text) { return TPoly::parse(text); }
TPoly tk(unsigned k) { return TPoly::monomial(k); }

}  // namespace

TEST(Vir, Examples) {
    EXPECT_EQ(act_vir(0, tk(3), kPlus), tk(4));
    EXPECT_EQ(act_vir(2, tk(0), kPlus), P("l^2*t - 2*l^2*a"));
    EXPECT_EQ(act_vir(1, tk(1), kPlus), P("l*t^2 - l*t - l*a*t + l*a"));
}

TEST(W1, Examples) {
    for (long i = -3; i <= 3; ++i) {
        CoefPoly li = lambda_power(static_cast<int>(i));
        TPoly one_m1 = TPoly(li * (alpha_symbol() - Rat(i) * alpha_symbol() * beta_symbol())) +
                       TPoly::monomial(1, li * beta_symbol());
        EXPECT_EQ(act_w1(i, 1, tk(0), kPlus), one_m1);
    }
    EXPECT_EQ(act_w1(0, 0, tk(3), kPlus), tk(4));
}

TEST(W1, DegreeTwoFormulaAtKOne) {
    // L[i,2].t = l^i b (2a - iab + bt)(t - i) + 2 l^i (a - iab + bt)
    for (long i = -3; i <= 3; ++i) {
        CoefPoly li = lambda_power(static_cast<int>(i)), a = alpha_symbol(), b = beta_symbol();
        TPoly first = TPoly(li * b * (Rat(2) * a - Rat(i) * a * b)) + TPoly::monomial(1, li * b * b);
        TPoly second = TPoly(li * (a - Rat(i) * a * b)) + TPoly::monomial(1, li * b);
        TPoly expected = first * (TPoly::t() - TPoly(Rat(i))) + Rat(2) * second;
        EXPECT_EQ(act_w1(i, 2, tk(1), kPlus), expected) << i;
    }
}

TEST(W1, BetaZeroReading) {
    const ModuleParams p = kPlus.with_beta(Rat(0));
    // L[1,1].t^2 at b = 0: l a (t-1)^2 + 2 l (t-a)(t-1)
    EXPECT_EQ(act_w1(1, 1, tk(2), p), P("l*a*t^2 - 2*l*a*t + l*a + 2*l*t^2 - 2*l*t - 2*l*a*t + 2*l*a"));
    for (long i = -2; i <= 2; ++i)
        for (unsigned k = 0; k <= 3; ++k) EXPECT_EQ(act_w1(i, 0, tk(k), p), act_vir(i, tk(k), p));
}

TEST(Wm1, Examples) {
    EXPECT_EQ(act_wm1(0, 1, tk(1), kMinus), P("b*t^2 - a*b^2*t - b^2*t + 2*a*b^3"));
    EXPECT_EQ(act_wm1_deriv(0, 1, tk(1), kMinus), act_wm1(0, 1, tk(1), kMinus));
    EXPECT_EQ(act_wm1(0, 1, tk(0), kMinus), P("b*t - a*b^2"));
    EXPECT_EQ(act_wm1_deriv(1, 2, tk(5), kMinus), act_wm1(1, 2, tk(5), kMinus));
    for (long i = -3; i <= 3; ++i)
        for (unsigned k = 0; k <= 4; ++k) EXPECT_EQ(act_wm1(i, 0, tk(k), kMinus), act_vir(i, tk(k), kMinus));
}

TEST(Actions, EpsilonMismatchRejected) {
    EXPECT_THROW(act_w1(0, 1, tk(0), kMinus), std::invalid_argument);
    EXPECT_THROW(act_wm1(0, 1, tk(0), kPlus), std::invalid_argument);
    EXPECT_THROW(act(0, -1, tk(0), kPlus), std::invalid_argument);
}

TEST(Actions, MatchPointwiseOracle) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        Rat l = oracle::random_rat(rng, true), a = oracle::random_rat(rng), b = oracle::random_rat(rng, true);
        Rat t = oracle::random_rat(rng);
        for (long i = -3; i <= 3; ++i)
            for (long m = 0; m <= 4; ++m)
                for (long k = 0; k <= 5; ++k) {
                    TPoly f = tk(static_cast<unsigned>(k));
                    EXPECT_EQ(oracle::value_at(act_w1(i, m, f, kPlus), l, a, b, t), oracle::w1(i, m, k, l, a, b, t));
                    EXPECT_EQ(oracle::value_at(act_wm1(i, m, f, kMinus), l, a, b, t),
                              oracle::wm1(i, m, k, l, a, b, t));
                }
    }
}

TEST(Expansion, Examples) {
    ActionOracle w1 = ActionOracle::from_module(kPlus);
    ActionOracle wm1 = ActionOracle::from_module(kMinus);
    for (long i = -2; i <= 2; ++i)
        for (long m = 1; m <= 3; ++m) {
            TPoly expected = (TPoly::t() - TPoly(Rat(i))) * w1.on_one(i, m) + Rat(m) * w1.on_one(i, m - 1);
            EXPECT_EQ(expansion_rhs(Epsilon::plus, i, m, 1, w1), expected);
            EXPECT_EQ(expansion_rhs(Epsilon::plus, i, m, 0, w1), w1.on_one(i, m));
        }
    EXPECT_EQ(expansion_rhs(Epsilon::minus, 1, 1, 2, wm1), act_wm1(1, 1, tk(2), kMinus));
}

TEST(ShiftIso, PointValue) {
    // eps = 1, (i,m,k) = (0,1,0): both sides are b t^2 + t
    const TPoly lhs = act(0, 1, shift_map(tk(0)), kPlus.with_alpha(Rat(0)));
    const TPoly rhs = shift_map(act(0, 1, tk(0), kPlus.with_alpha(Rat(1))));
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(lhs, P("b*t^2 + t"));
}

TEST(ShiftIso, VirSliceAtKTwo) {
    for (long i = -3; i <= 3; ++i) {
        TPoly lhs = act(i, 0, shift_map(tk(2)), kPlus.with_alpha(Rat(0)));
        CoefPoly li = lambda_power(static_cast<int>(i));
        EXPECT_EQ(lhs, TPoly(li) * TPoly::t() * (TPoly::t() - TPoly(Rat(i))).pow(3));
    }
}

TEST(ShiftIso, Grid) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        auto r = check_shift_iso(eps, Window(3, 3, 4));
        EXPECT_TRUE(r.passed()) << r.serialize();
    }
}

TEST(Extract, Examples) {
    const auto w1 = ActionOracle::from_module(ModuleParams::numeric(Epsilon::plus, Rat(2), Rat(3), Rat(5)));
    EXPECT_EQ(w1.on_one(1, 0), P("2*t - 6"));
    EXPECT_EQ(w1.on_one(0, 1), P("5*t + 3"));
    EXPECT_EQ(extract_params(w1, Epsilon::plus), (ExtractedParams{Rat(2), Rat(3), Rat(5)}));

    const auto triv = ActionOracle::from_module(ModuleParams::numeric(Epsilon::plus, Rat(1), Rat(0), Rat(0)));
    EXPECT_TRUE(triv.on_one(0, 1).is_zero());
    EXPECT_EQ(extract_params(triv, Epsilon::plus), (ExtractedParams{Rat(1), Rat(0), Rat(0)}));

    const auto wm1 = ActionOracle::from_module(ModuleParams::numeric(Epsilon::minus, Rat(3), Rat(1), Rat(2)));
    EXPECT_EQ(wm1.on_one(0, 1), P("2*t - 4"));
    EXPECT_EQ(wm1.on_one(1, 0), P("3*t - 3"));
    EXPECT_EQ(extract_params(wm1, Epsilon::minus), (ExtractedParams{Rat(3), Rat(1), Rat(2)}));
}

TEST(Extract, RejectsOutsideFamily) {
    ActionOracle bad([](long, long, const TPoly& f) { return f; });
    EXPECT_THROW(extract_params(bad, Epsilon::plus), ExtractionError);
    // right values on 1 but wrong elsewhere
    const ModuleParams p = ModuleParams::numeric(Epsilon::plus, Rat(2), Rat(1), Rat(1));
    ActionOracle tampered([p](long i, long m, const TPoly& f) {
        TPoly r = act(i, m, f, p);
        return (i == 2 && m == 1 && f.degree() == 2) ? r + TPoly(Rat(1)) : r;
    });
    EXPECT_THROW(extract_params(tampered, Epsilon::plus), ExtractionError);
}

TEST(Extract, RandomTriplesThroughTables) {
    for (Epsilon eps : {Epsilon::plus, Epsilon::minus}) {
        auto r = check_extraction_roundtrip(eps, 20, 99);
        EXPECT_EQ(r.records().size(), 20u);
        EXPECT_TRUE(r.passed()) << r.serialize();
    }
}

TEST(Tables, JsonRoundTrip) {
    const ModuleParams p = ModuleParams::numeric(Epsilon::minus, Rat(-2, 3), Rat(5), Rat(1, 2));
    const auto table = export_action_table(p, Window(1, 2, 2));
    const auto back = table_from_json(table_to_json(table));
    ASSERT_EQ(back.size(), table.size());
    for (std::size_t q = 0; q < table.size(); ++q) EXPECT_EQ(back[q].result, table[q].result);
    EXPECT_THROW(table_oracle(table)(5, 0, tk(0)), std::out_of_range);
}
