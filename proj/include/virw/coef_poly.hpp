#pragma once

// The coefficient ring Q[l, l^-1, a, b] for the module parameters
// (l = lambda, a = alpha, b = beta) and the binomial convention used by
// the module actions.

#include "polynomial.hpp"
#include "rational.hpp"

#include <array>
#include <stdexcept>
#include <string_view>

namespace virw {

struct LabVars {
    static constexpr std::array<std::string_view, 3> names{"l", "a", "b"};
    static constexpr std::array<bool, 3> laurent{true, false, false};
};

using CoefPoly = Polynomial<LabVars>;

namespace var {
inline constexpr std::size_t lambda = 0;
inline constexpr std::size_t alpha = 1;
inline constexpr std::size_t beta = 2;
}  // namespace var

inline CoefPoly lambda_power(int e) { return CoefPoly::monomial({e, 0, 0}); }
inline CoefPoly alpha_symbol() { return CoefPoly::monomial({0, 1, 0}); }
inline CoefPoly beta_symbol() { return CoefPoly::monomial({0, 0, 1}); }

/// Falling-factorial binomial n(n-1)...(n-k+1)/k!, valid for every integer n.
/// Gives binom(-1, 0) = 1 and binom(n-1, n) = 0 for n > 0 without special cases.
inline Rat binom(long n, long k) {
    if (k < 0) throw std::invalid_argument("binom: negative k");
    mpz_class num = 1;
    for (long q = 0; q < k; ++q) num *= mpz_class(n - q);
    return Rat(num) / factorial(static_cast<unsigned>(k));
}

/// Substitutes numeric values for (lambda, alpha, beta). lambda must be nonzero.
inline Rat eval_params(const CoefPoly& x, const Rat& lambda, const Rat& alpha, const Rat& beta) {
    if (lambda.is_zero()) throw std::domain_error("lambda must be nonzero");
    Rat sum;
    for (const auto& [e, c] : x.terms())
        sum += c * lambda.pow(e[var::lambda]) * alpha.pow(e[var::alpha]) * beta.pow(e[var::beta]);
    return sum;
}

}  // namespace virw
