#include "virw/coef_poly.hpp"
#include "virw/rational.hpp"
#include "virw/tpoly.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace virw;

TEST(Rat, ParseAndPrint) {
    EXPECT_EQ(Rat::parse("3/6").str(), "1/2");
    EXPECT_EQ(Rat::parse("-4").str(), "-4");
    EXPECT_THROW(Rat::parse("-4/-2"), std::invalid_argument);
    EXPECT_THROW(Rat::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rat::parse("x"), std::invalid_argument);
    EXPECT_THROW(Rat::parse(""), std::invalid_argument);
    EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(Rat, Powers) {
    EXPECT_EQ(Rat(2).pow(-3), Rat(1, 8));
    EXPECT_EQ(Rat(-3, 2).pow(2), Rat(9, 4));
    EXPECT_EQ(Rat(5).pow(0), Rat(1));
}

TEST(Binom, Conventions) {
    EXPECT_EQ(binom(-1, 0), Rat(1));
    EXPECT_EQ(binom(2, 3), Rat(0));  // binom(s-1, s) at s = 3
    EXPECT_EQ(binom(4, 2), Rat(6));
    EXPECT_EQ(binom(-2, 3), Rat(-4));
    EXPECT_THROW(binom(3, -1), std::invalid_argument);
}

TEST(Binom, PascalProperty) {
    for (long n = -6; n <= 12; ++n)
        for (long k = 1; k <= 8; ++k) EXPECT_EQ(binom(n - 1, k) + binom(n - 1, k - 1), binom(n, k)) << n << " " << k;
}

TEST(CoefPoly, ParsePrintRoundTrip) {
    for (const char* text : {"0", "1", "-1/2*l^-1*a", "a*b^2 + -3", "l^2*b + l^-3", "2*a^3*b + a + -7/3"}) {
        CoefPoly p = CoefPoly::parse(text);
        EXPECT_EQ(CoefPoly::parse(p.str()), p) << text;
    }
    EXPECT_EQ(CoefPoly::parse("a - a").str(), "0");
    EXPECT_THROW(CoefPoly::parse("a^-1"), ParseError);  // alpha is not Laurent
    EXPECT_THROW(CoefPoly::parse("q"), ParseError);
    EXPECT_THROW(CoefPoly::parse("a +"), ParseError);
}

TEST(CoefPoly, RingAxiomsOnRandomElements) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(-2, 2), pe(0, 2), c(-5, 5);
    auto random_poly = [&] {
        CoefPoly p;
        for (int q = 0; q < 4; ++q) p.add_term({e(rng), pe(rng), pe(rng)}, Rat(c(rng)));
        return p;
    };
    for (int trial = 0; trial < 40; ++trial) {
        CoefPoly x = random_poly(), y = random_poly(), z = random_poly();
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_TRUE((x - x).is_zero());
        EXPECT_EQ(CoefPoly::parse(x.str()), x);
        // evaluation is a ring homomorphism
        Rat l(3, 2), a(-2), b(5, 7);
        EXPECT_EQ(eval_params(x * y + z, l, a, b), eval_params(x, l, a, b) * eval_params(y, l, a, b) + eval_params(z, l, a, b));
    }
}

TEST(EvalParams, Examples) {
    EXPECT_EQ(eval_params(lambda_power(-1) * alpha_symbol(), Rat(2), Rat(3), Rat(0)), Rat(3, 2));
    TPoly f = TPoly::parse("l^2*b*t - a*b^2");
    EXPECT_EQ(eval_params(f, Rat(1, 2), Rat(1), Rat(4)), TPoly::parse("t - 16"));
    EXPECT_THROW(eval_params(f, Rat(0), Rat(1), Rat(1)), std::domain_error);
}

TEST(TPoly, Serialization) {
    EXPECT_EQ(TPoly::parse("b*t - a*b^2").str(), "b*t^1 + -1*a*b^2");
    EXPECT_EQ(TPoly().str(), "0");
    EXPECT_EQ(TPoly(Rat(1)).str(), "1");
    TPoly f = TPoly::parse("3/2*l^-1*t^3 + a*t + -b");
    EXPECT_EQ(TPoly::parse(f.str()), f);
}

TEST(TPoly, ShiftExamples) {
    EXPECT_EQ(poly_shift(TPoly::parse("t^2"), CoefPoly(1)), TPoly::parse("t^2 - 2*t + 1"));
    TPoly f = TPoly::parse("a*t^3 + b*t + 5");
    EXPECT_EQ(poly_shift(f, CoefPoly()), f);
    EXPECT_EQ(poly_shift(poly_shift(TPoly::parse("t^3"), CoefPoly(2)), CoefPoly(-2)), TPoly::parse("t^3"));
}

TEST(TPoly, ShiftComposition) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        TPoly f;
        for (unsigned k = 0; k <= 4; ++k) f.add_term(k, CoefPoly(c(rng)) + Rat(c(rng)) * alpha_symbol());
        CoefPoly u(c(rng)), v = Rat(c(rng)) * beta_symbol();
        EXPECT_EQ(poly_shift(poly_shift(f, u), v), poly_shift(f, u + v));
    }
}

TEST(TPoly, Derivatives) {
    EXPECT_EQ(poly_derivative(TPoly::parse("t^3"), 1), TPoly::parse("3*t^2"));
    EXPECT_TRUE(poly_derivative(TPoly::parse("t^3"), 4).is_zero());
    EXPECT_EQ(poly_derivative(TPoly::parse("t^5"), 2), TPoly::parse("20*t^3"));
}

TEST(TPoly, ShiftedPowerMatchesPointwise) {
    for (unsigned k = 0; k <= 6; ++k) {
        TPoly p = shifted_power(alpha_symbol(), k);
        for (long t = -3; t <= 3; ++t)
            EXPECT_EQ(oracle::value_at(p, Rat(1), Rat(2, 3), Rat(1), Rat(t)), (Rat(t) - Rat(2, 3)).pow(k));
    }
}
