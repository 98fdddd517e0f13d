#pragma once

/**
 * @file tpoly.hpp
 * @brief Module vectors: polynomials in t with CoefPoly coefficients.
 *
 * A TPoly is a finite map from t-exponent to a nonzero CoefPoly. The
 * serialization order is descending in the t-exponent and then descending
 * lexicographic on (l, a, b) inside each coefficient; t is printed last
 * and always with its exponent, e.g. "b*t^1 + -1*a*b^2".
 */

#include "coef_poly.hpp"
#include "polynomial.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace virw {

class TPoly {
public:
    using Terms = std::map<unsigned, CoefPoly, std::greater<>>;

    TPoly() = default;
    TPoly(const CoefPoly& c) {  // NOLINT: constants embed implicitly
        if (!c.is_zero()) terms_.emplace(0U, c);
    }
    TPoly(const Rat& c) : TPoly(CoefPoly(c)) {}  // NOLINT
    template <std::integral I>
    TPoly(I c) : TPoly(CoefPoly(Rat(c))) {}  // NOLINT

    /// c * t^k
    static TPoly monomial(unsigned k, const CoefPoly& c = CoefPoly(1)) {
        TPoly p;
        if (!c.is_zero()) p.terms_.emplace(k, c);
        return p;
    }
    static TPoly t() { return monomial(1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first); }

    CoefPoly coefficient(unsigned k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? CoefPoly() : it->second;
    }
    CoefPoly constant_term() const { return coefficient(0); }

    void add_term(unsigned k, const CoefPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TPoly operator-() const {
        TPoly r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    TPoly& operator+=(const TPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    TPoly& operator-=(const TPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    TPoly& operator*=(const CoefPoly& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        Terms out;
        for (const auto& [k, c] : terms_) {
            CoefPoly p = c * s;
            if (!p.is_zero()) out.emplace(k, std::move(p));
        }
        terms_ = std::move(out);
        return *this;
    }
    TPoly& operator*=(const TPoly& o) { return *this = *this * o; }

    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(TPoly a, const CoefPoly& s) { return a *= s; }
    friend TPoly operator*(const CoefPoly& s, TPoly a) { return a *= s; }
    friend TPoly operator*(TPoly a, const Rat& s) { return a *= CoefPoly(s); }
    friend TPoly operator*(const Rat& s, TPoly a) { return a *= CoefPoly(s); }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    TPoly pow(unsigned e) const {
        TPoly r(1), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, coef] : terms_) {
            for (const auto& [e, c] : coef.terms()) {
                if (!out.empty()) out += " + ";
                std::string m = CoefPoly::monomial_string(e);
                if (k > 0) {
                    if (!m.empty()) m += '*';
                    m += "t^" + std::to_string(k);
                }
                if (m.empty())
                    out += c.str();
                else if (c.is_one())
                    out += m;
                else
                    out += c.str() + "*" + m;
            }
        }
        return out;
    }

    static TPoly parse(std::string_view text);

private:
    Terms terms_;
};

struct TLabVars {
    static constexpr std::array<std::string_view, 4> names{"t", "l", "a", "b"};
    static constexpr std::array<bool, 4> laurent{false, true, false, false};
};

inline TPoly TPoly::parse(std::string_view text) {
    auto flat = Polynomial<TLabVars>::parse(text);
    TPoly r;
    for (const auto& [e, c] : flat.terms())
        r.add_term(static_cast<unsigned>(e[0]), CoefPoly::monomial({e[1], e[2], e[3]}, c));
    return r;
}

/// (t - c)^k for a coefficient-ring constant c.
inline TPoly shifted_power(const CoefPoly& c, unsigned k) {
    TPoly r;
    // binomial expansion: sum_j binom(k, j) t^j (-c)^(k-j)
    CoefPoly neg = -c;
    std::vector<CoefPoly> powers{CoefPoly(1)};
    for (unsigned j = 1; j <= k; ++j) powers.push_back(powers.back() * neg);
    for (unsigned j = 0; j <= k; ++j) r.add_term(j, powers[k - j] * binom(k, j));
    return r;
}

/// f(t - c), expanded exactly.
inline TPoly poly_shift(const TPoly& f, const CoefPoly& c) {
    if (c.is_zero()) return f;
    TPoly r;
    for (const auto& [k, coef] : f.terms()) r += shifted_power(c, k) * coef;
    return r;
}

/// s-th derivative in t; f itself for s = 0.
inline TPoly poly_derivative(const TPoly& f, unsigned s) {
    TPoly r;
    for (const auto& [k, coef] : f.terms()) {
        if (k < s) continue;
        Rat falling(1);
        for (unsigned q = 0; q < s; ++q) falling *= Rat(static_cast<long>(k - q));
        r.add_term(k - s, coef * falling);
    }
    return r;
}

/// Substitutes numeric parameters into every coefficient.
inline TPoly eval_params(const TPoly& f, const Rat& lambda, const Rat& alpha, const Rat& beta) {
    TPoly r;
    for (const auto& [k, coef] : f.terms())
        r.add_term(k, CoefPoly(eval_params(coef, lambda, alpha, beta)));
    return r;
}

}  // namespace virw
