#pragma once

/**
 * @file omega.hpp
 * @brief Rank-one free modules over Vir and W(eps).
 *
 * All families live on Q[t]; L[0,0] acts as multiplication by t.
 *
 *   Vir:     L_i t^k     = l^i (t - i a)(t - i)^k
 *   W(+1):   L[i,m] t^k  = sum_{s=0}^{min(m,k)} s! C(m,s) C(k,s) l^i
 *                            b^{m-s-1}((m-s)a - i a b + b t)(t - i)^{k-s}
 *   W(-1):   L[i,m] t^k  = sum_{s=0}^{k} (-1)^s s! C(m+s-1,s) C(k,s) l^i
 *                            b^{m+s}(t - i a - (m+s) a b)(t - i)^{k-s}
 *
 * In the W(+1) formula the factor b^{m-s-1}(...) is stored expanded,
 * (m-s) a b^{m-s-1} - i a b^{m-s} + b^{m-s} t, with the first summand
 * omitted when m = s. No negative power of b is ever formed.
 */

#include "coef_poly.hpp"
#include "lie.hpp"
#include "report.hpp"
#include "tpoly.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace virw {

/// Module parameters. Each of lambda, alpha, beta is either a fixed
/// rational or left symbolic; lambda, when fixed, is nonzero.
class ModuleParams {
public:
    static ModuleParams symbolic(Epsilon eps) { return ModuleParams(eps); }

    static ModuleParams numeric(Epsilon eps, const Rat& lambda, const Rat& alpha, const Rat& beta) {
        return ModuleParams(eps).with_lambda(lambda).with_alpha(alpha).with_beta(beta);
    }

    ModuleParams with_lambda(const Rat& l) const {
        if (l.is_zero()) throw std::invalid_argument("lambda must be nonzero");
        ModuleParams p = *this;
        p.lambda_ = l;
        return p;
    }
    ModuleParams with_alpha(const Rat& a) const {
        ModuleParams p = *this;
        p.alpha_ = a;
        return p;
    }
    ModuleParams with_beta(const Rat& b) const {
        ModuleParams p = *this;
        p.beta_ = b;
        return p;
    }
    ModuleParams with_epsilon(Epsilon e) const {
        ModuleParams p = *this;
        p.epsilon_ = e;
        return p;
    }

    Epsilon epsilon() const { return epsilon_; }
    bool is_numeric() const { return lambda_ && alpha_ && beta_; }
    const std::optional<Rat>& lambda() const { return lambda_; }
    const std::optional<Rat>& alpha() const { return alpha_; }
    const std::optional<Rat>& beta() const { return beta_; }

    CoefPoly lambda_pow(long i) const {
        return lambda_ ? CoefPoly(lambda_->pow(i)) : lambda_power(static_cast<int>(i));
    }
    CoefPoly alpha_value() const { return alpha_ ? CoefPoly(*alpha_) : alpha_symbol(); }
    CoefPoly beta_pow(long e) const {
        return beta_ ? CoefPoly(beta_->pow(e)) : CoefPoly::monomial({0, 0, static_cast<int>(e)});
    }

private:
    explicit ModuleParams(Epsilon eps) : epsilon_(eps) {}

    Epsilon epsilon_;
    std::optional<Rat> lambda_, alpha_, beta_;
};

namespace detail {

inline TPoly linear_extension(const TPoly& f, const std::function<TPoly(unsigned)>& on_monomial) {
    TPoly r;
    for (const auto& [k, c] : f.terms()) r += on_monomial(k) * c;
    return r;
}

inline void require_m(long m) {
    if (m < 0) throw std::invalid_argument("module action needs m >= 0");
}

}  // namespace detail

/// Vir action L_i t^k = l^i (t - i a)(t - i)^k, extended linearly.
inline TPoly act_vir(long i, const TPoly& f, const ModuleParams& p) {
    const TPoly factor = TPoly::monomial(1) - TPoly(p.alpha_value() * Rat(i));
    const CoefPoly li = p.lambda_pow(i);
    return detail::linear_extension(
        f, [&](unsigned k) { return factor * shifted_power(CoefPoly(i), k) * li; });
}

inline TPoly act_w1_monomial(long i, long m, unsigned k, const ModuleParams& p) {
    detail::require_m(m);
    const CoefPoly a = p.alpha_value();
    const CoefPoly li = p.lambda_pow(i);
    TPoly r;
    const long top = std::min<long>(m, k);
    for (long s = 0; s <= top; ++s) {
        const long d = m - s;
        TPoly factor = TPoly::monomial(1, p.beta_pow(d)) - TPoly(a * p.beta_pow(d) * Rat(i));
        if (d > 0) factor += TPoly(a * p.beta_pow(d - 1) * Rat(d));
        Rat c = factorial(static_cast<unsigned>(s)) * binom(m, s) * binom(k, s);
        r += factor * shifted_power(CoefPoly(i), k - static_cast<unsigned>(s)) * (li * c);
    }
    return r;
}

inline TPoly act_wm1_monomial(long i, long m, unsigned k, const ModuleParams& p) {
    detail::require_m(m);
    const CoefPoly a = p.alpha_value();
    const CoefPoly li = p.lambda_pow(i);
    TPoly r;
    for (long s = 0; s <= static_cast<long>(k); ++s) {
        Rat c = factorial(static_cast<unsigned>(s)) * binom(m + s - 1, s) * binom(k, s);
        if (s % 2) c = -c;
        if (c.is_zero()) continue;
        const CoefPoly bp = p.beta_pow(m + s);
        TPoly factor = TPoly::monomial(1) - TPoly(a * Rat(i) + a * p.beta_pow(1) * Rat(m + s));
        r += factor * shifted_power(CoefPoly(i), k - static_cast<unsigned>(s)) * (li * bp * c);
    }
    return r;
}

inline TPoly act_w1(long i, long m, const TPoly& f, const ModuleParams& p) {
    if (p.epsilon() != Epsilon::plus) throw std::invalid_argument("act_w1 needs epsilon = 1");
    detail::require_m(m);
    return detail::linear_extension(f, [&](unsigned k) { return act_w1_monomial(i, m, k, p); });
}

inline TPoly act_wm1(long i, long m, const TPoly& f, const ModuleParams& p) {
    if (p.epsilon() != Epsilon::minus) throw std::invalid_argument("act_wm1 needs epsilon = -1");
    detail::require_m(m);
    return detail::linear_extension(f, [&](unsigned k) { return act_wm1_monomial(i, m, k, p); });
}

/// Derivative form of the W(-1) action:
/// sum_s (-1)^s C(m+s-1,s) l^i b^{m+s}(t - i a - (m+s) a b) f^{(s)}(t - i).
inline TPoly act_wm1_deriv(long i, long m, const TPoly& f, const ModuleParams& p) {
    if (p.epsilon() != Epsilon::minus) throw std::invalid_argument("act_wm1_deriv needs epsilon = -1");
    detail::require_m(m);
    const CoefPoly a = p.alpha_value();
    const CoefPoly li = p.lambda_pow(i);
    TPoly r;
    for (long s = 0; s <= f.degree(); ++s) {
        Rat c = binom(m + s - 1, s);
        if (s % 2) c = -c;
        if (c.is_zero()) continue;
        TPoly factor = TPoly::monomial(1) - TPoly(a * Rat(i) + a * p.beta_pow(1) * Rat(m + s));
        TPoly shifted = poly_shift(poly_derivative(f, static_cast<unsigned>(s)), CoefPoly(i));
        r += factor * shifted * (li * p.beta_pow(m + s) * c);
    }
    return r;
}

/// Action of L[i,m] in the family selected by p.epsilon().
inline TPoly act(long i, long m, const TPoly& f, const ModuleParams& p) {
    return p.epsilon() == Epsilon::plus ? act_w1(i, m, f, p) : act_wm1(i, m, f, p);
}

inline TPoly act(const LieElt& x, const TPoly& f, const ModuleParams& p) {
    TPoly r;
    for (const auto& [idx, c] : x.terms()) r += act(idx.i, idx.m, f, p) * CoefPoly(c);
    return r;
}

/**
 * Any evaluator (i, m, f) -> L[i,m].f. Built from the module formulas, from
 * an exported action table, or from an arbitrary callable.
 */
class ActionOracle {
public:
    using Fn = std::function<TPoly(long, long, const TPoly&)>;

    explicit ActionOracle(Fn fn) : fn_(std::move(fn)) {}

    static ActionOracle from_module(const ModuleParams& p) {
        return ActionOracle([p](long i, long m, const TPoly& f) { return act(i, m, f, p); });
    }

    TPoly operator()(long i, long m, const TPoly& f) const { return fn_(i, m, f); }
    TPoly on_one(long i, long m) const { return fn_(i, m, TPoly(1)); }

private:
    Fn fn_;
};

/**
 * Right-hand side of the expansion of L[i,m].t^k through the values on 1:
 *   eps = +1: sum_{s<=min(m,k)} s! C(m,s) C(k,s) (t-i)^{k-s} L[i,m-s].1
 *   eps = -1: sum_{s<=k} (-1)^s s! C(m+s-1,s) C(k,s) (t-i)^{k-s} L[i,m+s].1
 */
inline TPoly expansion_rhs(Epsilon eps, long i, long m, unsigned k, const ActionOracle& oracle) {
    detail::require_m(m);
    TPoly r;
    if (eps == Epsilon::plus) {
        const long top = std::min<long>(m, k);
        for (long s = 0; s <= top; ++s) {
            Rat c = factorial(static_cast<unsigned>(s)) * binom(m, s) * binom(k, s);
            r += shifted_power(CoefPoly(i), k - static_cast<unsigned>(s)) * oracle.on_one(i, m - s) *
                 CoefPoly(c);
        }
        return r;
    }
    for (long s = 0; s <= static_cast<long>(k); ++s) {
        Rat c = factorial(static_cast<unsigned>(s)) * binom(m + s - 1, s) * binom(k, s);
        if (s % 2) c = -c;
        if (c.is_zero()) continue;
        r += shifted_power(CoefPoly(i), k - static_cast<unsigned>(s)) * oracle.on_one(i, m + s) *
             CoefPoly(c);
    }
    return r;
}

/// t^k -> t^{k+1}: identifies Omega(l, 1, b) with the submodule t Omega(l, 0, b).
inline TPoly shift_map(const TPoly& f) { return TPoly::t() * f; }

/**
 * Checks L[i,m].shift_map(t^k) in Omega(l,0,b) against
 * shift_map(L[i,m].t^k) in Omega(l,1,b), symbolically in (l, b).
 */
inline VerificationReport check_shift_iso(Epsilon eps, const Window& w) {
    const ModuleParams at0 = ModuleParams::symbolic(eps).with_alpha(Rat(0));
    const ModuleParams at1 = ModuleParams::symbolic(eps).with_alpha(Rat(1));
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i) {
        for (long m = 0; m <= w.m_max; ++m) {
            for (long k = 0; k <= w.k_max; ++k) {
                const TPoly tk = TPoly::monomial(static_cast<unsigned>(k));
                TPoly d = act(i, m, shift_map(tk), at0) - shift_map(act(i, m, tk, at1));
                report.add({"shift_iso", value(eps), {{"i", i}, {"m", m}, {"k", k}}, d.is_zero(),
                            d.is_zero() ? "" : d.str()});
            }
        }
    }
    return report;
}

struct ExtractedParams {
    Rat lambda, alpha, beta;
    friend bool operator==(const ExtractedParams&, const ExtractedParams&) = default;
};

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline Rat numeric_coefficient(const TPoly& f, unsigned k) {
    CoefPoly c = f.coefficient(k);
    if (!c.is_constant()) throw ExtractionError("oracle value is not numeric: " + f.str());
    return c.constant_term();
}
}  // namespace detail

/**
 * Reads (lambda, alpha, beta) off a numeric oracle from L[1,0].1 = l(t - a)
 * and L[0,1].1 (a + b t for eps = +1, b(t - a b) for eps = -1), then
 * regenerates the module on a small grid and requires agreement.
 */
inline ExtractedParams extract_params(const ActionOracle& oracle, Epsilon eps,
                                      const Window& check = Window(2, 2, 2)) {
    const TPoly v = oracle.on_one(1, 0);
    if (v.degree() != 1) throw ExtractionError("L[1,0].1 is not of degree 1: " + v.str());
    const Rat lambda = detail::numeric_coefficient(v, 1);
    if (lambda.is_zero()) throw ExtractionError("L[1,0].1 has zero leading coefficient");
    const Rat alpha = -detail::numeric_coefficient(v, 0) / lambda;
    const TPoly w = oracle.on_one(0, 1);
    if (w.degree() > 1) throw ExtractionError("L[0,1].1 has degree above 1: " + w.str());
    const Rat beta = detail::numeric_coefficient(w, 1);

    const ModuleParams p = ModuleParams::numeric(eps, lambda, alpha, beta);
    for (long i = -check.i_max; i <= check.i_max; ++i)
        for (long m = 0; m <= check.m_max; ++m)
            for (long k = 0; k <= check.k_max; ++k) {
                const TPoly tk = TPoly::monomial(static_cast<unsigned>(k));
                if (oracle(i, m, tk) != act(i, m, tk, p))
                    throw ExtractionError("oracle is not Omega(" + lambda.str() + "," + alpha.str() +
                                          "," + beta.str() + ") at L[" + std::to_string(i) + "," +
                                          std::to_string(m) + "].t^" + std::to_string(k));
            }
    return {lambda, alpha, beta};
}

/// One exported action value L[i,m].t^k.
struct ActionRecord {
    Epsilon epsilon = Epsilon::plus;
    long i = 0;
    long m = 0;
    unsigned k = 0;
    TPoly result;
};

inline std::vector<ActionRecord> export_action_table(const ModuleParams& p, const Window& w) {
    std::vector<ActionRecord> out;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long m = 0; m <= w.m_max; ++m)
            for (long k = 0; k <= w.k_max; ++k)
                out.push_back({p.epsilon(), i, m, static_cast<unsigned>(k),
                               act(i, m, TPoly::monomial(static_cast<unsigned>(k)), p)});
    return out;
}

inline nlohmann::json table_to_json(const std::vector<ActionRecord>& table) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : table)
        out.push_back({{"epsilon", value(r.epsilon)}, {"i", r.i}, {"m", r.m}, {"k", r.k},
                       {"result", r.result.str()}});
    return out;
}

inline std::vector<ActionRecord> table_from_json(const nlohmann::json& j) {
    std::vector<ActionRecord> out;
    for (const auto& r : j) {
        out.push_back({epsilon_from_int(r.at("epsilon").get<long>()), r.at("i").get<long>(),
                       r.at("m").get<long>(), r.at("k").get<unsigned>(),
                       TPoly::parse(r.at("result").get<std::string>())});
    }
    return out;
}

/// Oracle backed by a table; extends linearly in f and throws on a missing entry.
inline ActionOracle table_oracle(const std::vector<ActionRecord>& table) {
    auto index = std::make_shared<std::map<std::tuple<long, long, unsigned>, TPoly>>();
    for (const auto& r : table) (*index)[{r.i, r.m, r.k}] = r.result;
    return ActionOracle([index](long i, long m, const TPoly& f) {
        TPoly r;
        for (const auto& [k, c] : f.terms()) {
            auto it = index->find({i, m, k});
            if (it == index->end())
                throw std::out_of_range("action table has no entry for L[" + std::to_string(i) + "," +
                                        std::to_string(m) + "].t^" + std::to_string(k));
            r += it->second * c;
        }
        return r;
    });
}

}  // namespace virw
