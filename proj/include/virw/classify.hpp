#pragma once

// Constraint systems whose solutions pin down the possible actions on 1,
// the sequence derivation for b_m, and the closed forms of L_{i,m} . 1.

#include "coef_poly.hpp"
#include "lie.hpp"
#include "linear_system.hpp"
#include "omega.hpp"
#include "polynomial.hpp"
#include "report.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace virw {

struct ClassVars {
    static constexpr std::array<std::string_view, 4> names{"i", "j", "t", "a"};
    static constexpr std::array<bool, 4> laurent{false, false, false, false};
};

/// Polynomials in the bracket indices i, j, the module variable t and alpha.
using ClassPoly = Polynomial<ClassVars>;

namespace cvar {
inline constexpr std::size_t i = 0;
inline constexpr std::size_t j = 1;
inline constexpr std::size_t t = 2;
inline constexpr std::size_t a = 3;
}  // namespace cvar

/// sum_x coeffs[x] * x + constant, with ClassPoly coefficients.
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(const ClassPoly& c) : constant_(c) {}  // NOLINT

    static LinearForm symbol(const std::string& name, const ClassPoly& c = ClassPoly(1)) {
        LinearForm f;
        if (!c.is_zero()) f.coeffs_[name] = c;
        return f;
    }

    const std::map<std::string, ClassPoly>& coeffs() const { return coeffs_; }
    const ClassPoly& constant() const { return constant_; }

    bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }

    template <class Fn>
    LinearForm map_coeffs(Fn&& fn) const {
        LinearForm out;
        for (const auto& [k, c] : coeffs_) {
            ClassPoly v = fn(c);
            if (!v.is_zero()) out.coeffs_[k] = std::move(v);
        }
        out.constant_ = fn(constant_);
        return out;
    }

    LinearForm coefficient_of(std::size_t v, int power) const {
        return map_coeffs([&](const ClassPoly& c) { return c.coefficient_of(v, power); });
    }
    LinearForm evaluate(std::size_t v, const Rat& x) const {
        return map_coeffs([&](const ClassPoly& c) { return c.evaluate(v, x); });
    }

    /// Largest total degree in the variables of `mask` over all coefficients.
    std::optional<int> total_degree(const std::array<bool, 4>& mask) const {
        std::optional<int> d;
        auto see = [&](const ClassPoly& c) {
            auto e = c.total_degree(mask);
            if (e && (!d || *e > *d)) d = e;
        };
        for (const auto& [k, c] : coeffs_) see(c);
        see(constant_);
        return d;
    }

    /// Divides every coefficient by the monomial; nullopt if any is not divisible.
    std::optional<LinearForm> divide_by_monomial(const ClassPoly::Exponents& m) const {
        LinearForm out;
        for (const auto& [k, c] : coeffs_) {
            auto q = c.divide_by_monomial(m);
            if (!q) return std::nullopt;
            out.coeffs_[k] = *q;
        }
        auto q = constant_.divide_by_monomial(m);
        if (!q) return std::nullopt;
        out.constant_ = *q;
        return out;
    }

    LinearForm& operator+=(const LinearForm& o) {
        for (const auto& [k, c] : o.coeffs_) {
            ClassPoly v = coeffs_[k] + c;
            if (v.is_zero())
                coeffs_.erase(k);
            else
                coeffs_[k] = std::move(v);
        }
        constant_ += o.constant_;
        return *this;
    }
    LinearForm operator-() const {
        return map_coeffs([](const ClassPoly& c) { return -c; });
    }
    LinearForm& operator-=(const LinearForm& o) { return *this += -o; }
    friend LinearForm operator+(LinearForm x, const LinearForm& y) { return x += y; }
    friend LinearForm operator-(LinearForm x, const LinearForm& y) { return x -= y; }
    friend LinearForm operator*(const ClassPoly& s, const LinearForm& f) {
        return f.map_coeffs([&](const ClassPoly& c) { return s * c; });
    }
    friend LinearForm operator*(const Rat& s, const LinearForm& f) { return ClassPoly(s) * f; }
    friend bool operator==(const LinearForm& x, const LinearForm& y) {
        return x.coeffs_ == y.coeffs_ && x.constant_ == y.constant_;
    }

    /// Converts to a row; every coefficient must be a polynomial in alpha only.
    LinearRow to_row(std::string provenance) const {
        auto convert = [](const ClassPoly& c) {
            CoefPoly out;
            for (const auto& [e, v] : c.terms()) {
                if (e[cvar::i] || e[cvar::j] || e[cvar::t])
                    throw std::logic_error("row coefficient still depends on i, j or t: " + c.str());
                out.add_term({0, e[cvar::a], 0}, v);
            }
            return out;
        };
        LinearRow row;
        for (const auto& [k, c] : coeffs_) row.coeffs[k] = convert(c);
        row.constant = convert(constant_);
        row.provenance = std::move(provenance);
        return row;
    }

private:
    std::map<std::string, ClassPoly> coeffs_;
    ClassPoly constant_;
};

namespace detail {

inline ClassPoly cv(std::size_t v) { return ClassPoly::variable(v); }

/// sum_r names[r] * x^r
inline LinearForm ansatz(const std::vector<std::string>& names, const ClassPoly& x) {
    LinearForm f;
    ClassPoly power(1);
    for (const auto& n : names) {
        f += LinearForm::symbol(n, power);
        power = power * x;
    }
    return f;
}

inline std::string t_power(int d) { return "t^" + std::to_string(d); }

}  // namespace detail

/**
 * Degree-K ansatz F(t) = a_0 + ... + a_K t^K for the (shifted) action of
 * L_{0,1} on 1 in a W(1)-module of rank one.
 *
 * The relation is derived, not transcribed: acting with [L_{0,1},L_{i,0}]
 * on 1 gives i*F_i in terms of F; acting with [L_{-i,0},L_{i,1}] gives 2iF
 * in terms of F_i; eliminating F_i gives a relation in F alone. The
 * result is compared against the expanded form written in terms of F(t),
 * F(t+i), F(t-i), then specialized to i = 1 and split by powers of t.
 */
inline LinearSystem build_w1_base_system(int K) {
    using detail::cv;
    if (K < 0) throw std::invalid_argument("degree K must be nonnegative");
    LinearSystem sys;
    std::vector<std::string> names;
    for (int r = 0; r <= K; ++r) names.push_back("a_" + std::to_string(r));
    sys.unknowns = names;

    const ClassPoly i = cv(cvar::i), t = cv(cvar::t), a = cv(cvar::a);
    auto F = [&](const ClassPoly& x) { return detail::ansatz(names, x); };
    // i * F_i(x), lambda already cancelled
    auto G = [&](const ClassPoly& x) { return (x - i * a) * F(x) - (x - i * a) * F(x - i) + LinearForm(i * a); };

    LinearForm derived = (t + i * a) * G(t + i) - (t + i * a - i) * G(t) + LinearForm(i * i * a) -
                         ClassPoly(2) * (i * i) * F(t);
    LinearForm expanded = LinearForm(ClassPoly(2) * i * i * a) -
                          ClassPoly(2) * (t * t - i * i * a * a + i * i * a + i * i) * F(t) +
                          (t * t + i * t - i * i * a * a + i * i * a) * F(t + i) +
                          (t * t - i * t - i * i * a * a + i * i * a) * F(t - i);
    sys.trace.push_back("act [L(0,1),L(i,0)] = i L(i,1) + L(i,0) on 1: i F_i(t) = (t-ia)F(t) - (t-ia)F(t-i) + ia");
    sys.trace.push_back("act [L(-i,0),L(i,1)] = 2i L(0,1) - L(0,0) on 1: 2i F(t) = (t+ia)F_i(t+i) - (t+ia-i)F_i(t) + ia");
    sys.trace.push_back("multiply the second by i and eliminate F_i");
    if (derived == expanded)
        sys.trace.push_back("eliminated relation agrees with the expanded form in F(t), F(t+i), F(t-i)");
    else
        sys.findings.push_back("eliminated relation differs from the expanded form");

    const LinearForm at_one = derived.evaluate(cvar::i, Rat(1));
    sys.trace.push_back("specialize i = 1, ansatz degree " + std::to_string(K));
    for (int d = K + 2; d >= 0; --d) {
        LinearForm row = at_one.coefficient_of(cvar::t, d);
        if (row.is_zero()) continue;
        sys.rows.push_back(row.to_row(
            "[L(0,1),L(i,0)] and [L(-i,0),L(i,1)] on 1, F(i,1) eliminated, i=1, coefficient of " + detail::t_power(d)));
    }
    return sys;
}

namespace detail {

inline std::string sup(const std::string& base, int r, int which) {
    return base + "_" + std::to_string(r) + "^(" + std::to_string(which) + ")";
}

// Claim-free N = 2 path: Y_{i,1} = a_2 t^2 + a_1^(i) t + a_0^(i),
// Y_{i,2} = b_2 t^2 + b_1^(i) t + b_0^(i), compared in t^2 of the
// L(0,1),L(1,0) relation.
inline LinearSystem build_wm1_n2() {
    const ClassPoly t = cv(cvar::t), a = cv(cvar::a);
    LinearSystem sys;
    sys.unknowns = {"a_2", sup("a", 1, 0), sup("a", 0, 0), sup("a", 1, 1), sup("a", 0, 1),
                    "b_2", sup("b", 1, 0), sup("b", 0, 0), sup("b", 1, 1), sup("b", 0, 1)};
    auto Y = [&](const std::string& base, int which, const ClassPoly& x) {
        return ansatz({sup(base, 0, which), sup(base, 1, which), base + "_2"}, x);
    };
    // i = 1:  (t - a) Y01(t) - (t - a) Y01(t - 1) - Y02(t) - (Y11(t) - Y12(t)) = 0
    LinearForm rel = (t - a) * Y("a", 0, t) - (t - a) * Y("a", 0, t - ClassPoly(1)) - Y("b", 0, t) -
                     Y("a", 1, t) + Y("b", 1, t);
    sys.trace.push_back("act [L(j,1),L(i-j,0)] = (i-2j)L(i,1) - L(i,2) on 1 at j=0, i=1");
    sys.trace.push_back("degree-2 ansatz for Y(i,1) with shared leading a_2 and for Y(i,2) with shared leading b_2");
    sys.rows.push_back(rel.coefficient_of(cvar::t, 2).to_row("[L(0,1),L(1,0)] on 1, coefficient of t^2"));
    return sys;
}

}  // namespace detail

/**
 * Constraint system for a W(-1)-module whose shifted actions Y_{i,1} on 1
 * all have degree N with common leading coefficient a_N.
 *
 * N >= 3: the j-dependent relation
 *   (t+ja)Y_j(t+j) - ia Y_j(t) - (t-(i-j)a)Y_j(t-i+j) + 2j Y_i(t)
 *     = (t-ia+2j)Y_0(t) - (t-ia)Y_0(t-i)
 * (from the brackets [L(j,1),L(i-j,0)], [L(-j,0),L(j,1)], [L(0,1),L(i,0)]
 * on 1) with every Y_i expressed through Y_0 and Y_1 by its j = 1 case.
 * The t^{N-2} and t^0 coefficients are (1/2) ij K_{N-2} and (1/2) ija K_0
 * for polynomials K in i, j; the rows are the i and j (resp. i^{N-1}, j^{N-1})
 * coefficients of those, or only the first pair at a = 0.
 *
 * N = 2 takes a separate path with an auxiliary ansatz for Y_{i,2}.
 */
inline LinearSystem build_wm1_system(int N, AlphaMode mode) {
    using detail::cv;
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (N == 2) {
        LinearSystem sys = detail::build_wm1_n2();
        if (mode == AlphaMode::zero) {
            for (auto& row : sys.rows)
                for (auto& [k, c] : row.coeffs) c = c.evaluate(var::alpha, Rat(0));
        }
        return sys;
    }

    const ClassPoly i = cv(cvar::i), j = cv(cvar::j), t = cv(cvar::t), a = cv(cvar::a);
    LinearSystem sys;
    std::vector<std::string> y0, y1;
    for (int r = 0; r <= N; ++r) y0.push_back(detail::sup("a", r, 0));
    for (int r = 0; r < N; ++r) y1.push_back(detail::sup("a", r, 1));
    y1.push_back(y0.back());  // leading coefficients agree
    sys.unknowns = y0;
    sys.unknowns.insert(sys.unknowns.end(), y1.begin(), y1.end() - 1);

    auto Y0 = [&](const ClassPoly& x) { return detail::ansatz(y0, x); };
    auto Y1 = [&](const ClassPoly& x) { return detail::ansatz(y1, x); };
    // Y_idx(x) through the j = 1 case of the relation
    auto Yd = [&](const ClassPoly& idx, const ClassPoly& x) {
        LinearForm twice = (x - idx * a + ClassPoly(2)) * Y0(x) - (x - idx * a) * Y0(x - idx) -
                           (x + a) * Y1(x + ClassPoly(1)) + (idx * a) * Y1(x) +
                           (x - (idx - ClassPoly(1)) * a) * Y1(x - idx + ClassPoly(1));
        return Rat(1, 2) * twice;
    };
    LinearForm lhs = (t + j * a) * Yd(j, t + j) - (i * a) * Yd(j, t) - (t - (i - j) * a) * Yd(j, t - i + j) +
                     (ClassPoly(2) * j) * Yd(i, t);
    LinearForm rhs = (t - i * a + ClassPoly(2) * j) * Y0(t) - (t - i * a) * Y0(t - i);
    LinearForm diff = lhs - rhs;
    sys.trace.push_back("act [L(j,1),L(i-j,0)], [L(-j,0),L(j,1)], [L(0,1),L(i,0)] on 1; first + second - third");
    sys.trace.push_back("eliminate Y(i,1), Y(j,1) through the j=1 case; unknowns Y(0,1), Y(1,1) of degree " +
                        std::to_string(N));

    const std::array<bool, 4> ij_mask{true, true, false, false};
    auto extract = [&](int power, bool with_alpha, const std::string& label) -> std::optional<LinearForm> {
        LinearForm c = Rat(2) * diff.coefficient_of(cvar::t, power);
        ClassPoly::Exponents m{1, 1, 0, with_alpha ? 1 : 0};
        auto k = c.divide_by_monomial(m);
        if (!k) {
            sys.findings.push_back("coefficient of " + detail::t_power(power) + " is not divisible by " +
                                   ClassPoly::monomial_string(m) + "/2");
            return std::nullopt;
        }
        sys.trace.push_back(label + " = 2 coeff_{" + detail::t_power(power) + "} / (" +
                            ClassPoly::monomial_string(m) + ")");
        return k;
    };
    auto kn2 = extract(N - 2, false, "K_{N-2}");
    auto k0 = extract(0, true, "K_0");

    auto bound = [&](const std::optional<LinearForm>& k, int limit, const std::string& label) {
        if (!k) return;
        auto d = k->total_degree(ij_mask);
        if (d && *d > limit)
            sys.findings.push_back(label + " has degree " + std::to_string(*d) + " in (i,j), above " +
                                   std::to_string(limit));
        else
            sys.trace.push_back(label + " has degree <= " + std::to_string(limit) + " in (i,j)");
    };
    bound(kn2, 1, "K_{N-2}");
    bound(k0, N - 1, "K_0");

    auto coeff = [](const LinearForm& k, int pi, int pj) {
        return k.coefficient_of(cvar::i, pi).coefficient_of(cvar::j, pj);
    };
    const std::string src = "[L(j,1),L(i-j,0)] + [L(-j,0),L(j,1)] - [L(0,1),L(i,0)] on 1, Y(i,1) from j=1, ";
    if (kn2) {
        LinearForm ri = coeff(*kn2, 1, 0), rj = coeff(*kn2, 0, 1);
        if (mode == AlphaMode::zero) {
            ri = ri.evaluate(cvar::a, Rat(0));
            rj = rj.evaluate(cvar::a, Rat(0));
        }
        sys.rows.push_back(ri.to_row(src + "coefficient of i in K_{N-2}"));
        sys.rows.push_back(rj.to_row(src + "coefficient of j in K_{N-2}"));
    }
    if (mode != AlphaMode::zero) {
        sys.assumptions.push_back(alpha_symbol());
        if (k0) {
            sys.rows.push_back(coeff(*k0, N - 1, 0).to_row(src + "coefficient of i^" + std::to_string(N - 1) + " in K_0"));
            sys.rows.push_back(coeff(*k0, 0, N - 1).to_row(src + "coefficient of j^" + std::to_string(N - 1) + " in K_0"));
        }
    }
    return sys;
}

/// The N = 3 systems as usually displayed, for row-space comparison.
inline std::vector<LinearRow> displayed_n3_rows(AlphaMode mode) {
    const CoefPoly a = alpha_symbol(), one(1);
    const std::string a20 = "a_2^(0)", a21 = "a_2^(1)", a30 = "a_3^(0)";
    auto row = [&](const CoefPoly& delta, const CoefPoly& lead) {
        LinearRow r;
        r.coeffs[a20] = delta;
        r.coeffs[a21] = -delta;
        r.coeffs[a30] = lead;
        r.provenance = "displayed";
        return r;
    };
    if (mode == AlphaMode::zero) return {row(CoefPoly(2), CoefPoly(-3)), row(one, CoefPoly(-1))};
    const CoefPoly p = one + Rat(2) * a;
    return {row(Rat(2) * p, Rat(-3) * p * (one + a)),
            row(p, -(one + Rat(3) * a + Rat(8) * a * a)),
            row(CoefPoly(2), Rat(-3) * (one + a)),
            row(one - a, CoefPoly(-1))};
}

// ---------------------------------------------------------------------------
// Sequence derivation

struct SeqVars {
    static constexpr std::array<std::string_view, 13> names{"b0", "b1", "b2", "b3", "b4", "b5", "b6",
                                                            "b7", "b8", "b9", "b10", "b11", "b12"};
    static constexpr std::array<bool, 13> laurent{};
};
using SeqPoly = Polynomial<SeqVars>;
inline constexpr long kSeqMaxIndex = 12;

/// Both sides of b_{m+n} + (n-m) b_{m+n+1} = b_n b_m + n b_m b_{n+1} - m b_n b_{m+1}, with b_0 = 1.
inline std::pair<SeqPoly, SeqPoly> sequence_row(long m, long n) {
    if (m < 0 || n < 0 || m + n + 1 > kSeqMaxIndex) throw std::out_of_range("sequence row out of range");
    auto b = [](long q) {
        return q == 0 ? SeqPoly(1) : SeqPoly::variable(static_cast<std::size_t>(q));
    };
    SeqPoly lhs = b(m + n) + Rat(n - m) * b(m + n + 1);
    SeqPoly rhs = b(n) * b(m) + Rat(n) * b(m) * b(n + 1) - Rat(m) * b(n) * b(m + 1);
    return {lhs, rhs};
}

/// b_k -> b_1^k for 2 <= k < upto.
inline SeqPoly substitute_geometric(SeqPoly p, long upto) {
    for (long k = 2; k < upto && k <= kSeqMaxIndex; ++k)
        p = p.substitute(static_cast<std::size_t>(k), SeqPoly::variable(1, static_cast<int>(k)));
    return p;
}

struct SequenceStep {
    std::string label;
    std::vector<std::pair<long, long>> rows;
    std::vector<std::string> instantiated;  // each row after substitution, "lhs = rhs"
    SeqPoly combined;                       // sum of (lhs - rhs) over rows
    long determines = 0;                    // index m with combined = c (b_m - b_1^m)
    std::optional<Rat> factor;              // that c, if the shape matches
};

inline std::vector<SequenceStep> derive_sequence_steps(long max_index = kSeqMaxIndex) {
    if (max_index < 2 || max_index > kSeqMaxIndex) throw std::out_of_range("max_index must be in [2, 12]");
    auto make = [](std::string label, std::vector<std::pair<long, long>> rows, long m) {
        SequenceStep s;
        s.label = std::move(label);
        s.rows = std::move(rows);
        s.determines = m;
        for (auto [p, q] : s.rows) {
            auto [lhs, rhs] = sequence_row(p, q);
            lhs = substitute_geometric(lhs, m);
            rhs = substitute_geometric(rhs, m);
            s.instantiated.push_back(lhs.str() + " = " + rhs.str());
            s.combined += lhs - rhs;
        }
        SeqPoly target = SeqPoly::variable(static_cast<std::size_t>(m)) - SeqPoly::variable(1, static_cast<int>(m));
        const auto& [lead, lead_coef] = *target.terms().begin();
        Rat c = s.combined.coefficient(lead) / lead_coef;
        if (!c.is_zero() && s.combined == c * target) s.factor = c;
        return s;
    };
    std::vector<SequenceStep> steps;
    steps.push_back(make("(m,n)=(1,1)", {{1, 1}}, 2));
    if (max_index >= 4) steps.push_back(make("(m,n)=(1,2) plus (m,n)=(2,1)", {{1, 2}, {2, 1}}, 3));
    for (long m = 4; m <= max_index; ++m)
        steps.push_back(make("(m,n)=(" + std::to_string(m - 2) + ",1) with b_k=b1^k for k<" + std::to_string(m),
                             {{m - 2, 1}}, m));
    return steps;
}

struct SequenceCertificate {
    bool geometric_satisfies = true;  // every row vanishes on b_k = b1^k
    bool forces_geometric = true;     // each b_m, 2 <= m <= N, is determined
    std::optional<long> undetermined; // first index no step reaches
};

/**
 * Replays the steps for sequences b_0..b_N: geometric sequences satisfy every
 * row with m+n+1 <= N, and each b_m (m >= 2) is forced by a step whose rows fit.
 */
inline SequenceCertificate certify_sequence_steps(long N) {
    if (N < 1 || N > kSeqMaxIndex) throw std::out_of_range("N must be in [1, 12]");
    SequenceCertificate cert;
    for (long total = 0; total + 1 <= N; ++total)
        for (long m = 0; m <= total; ++m) {
            auto [lhs, rhs] = sequence_row(m, total - m);
            if (!substitute_geometric(lhs - rhs, kSeqMaxIndex + 1).is_zero()) cert.geometric_satisfies = false;
        }
    const auto steps = derive_sequence_steps(kSeqMaxIndex);
    for (long m = 2; m <= N; ++m) {
        bool found = false;
        for (const auto& s : steps) {
            if (s.determines != m || !s.factor) continue;
            bool fits = true;
            for (auto [p, q] : s.rows) fits = fits && p + q + 1 <= N;
            found = found || fits;
        }
        if (!found) {
            cert.forces_geometric = false;
            cert.undetermined = m;
            break;
        }
    }
    return cert;
}

// ---------------------------------------------------------------------------

/// Expected L_{i,m} . 1, built directly from the parameters.
inline TPoly closed_form_on_one(Epsilon eps, long i, long m) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    const CoefPoly a = alpha_symbol(), b = beta_symbol(), l = lambda_power(static_cast<int>(i));
    auto bp = [&](long e) { return b.pow(static_cast<unsigned>(e)); };
    TPoly out;
    if (eps == Epsilon::plus) {
        // l^i b^{m-1} (m a - i a b + b t), the m a term absent at m = 0
        if (m > 0) out += TPoly(Rat(m) * l * a * bp(m - 1));
        out += TPoly(Rat(-i) * l * a * bp(m)) + TPoly::monomial(1, l * bp(m));
    } else {
        // l^i b^m (t - i a - m a b)
        out = TPoly::monomial(1, l * bp(m)) + TPoly(Rat(-i) * l * a * bp(m) - Rat(m) * l * a * bp(m + 1));
    }
    return out;
}

inline VerificationReport verify_closed_forms(Epsilon eps, const Window& w) {
    const ModuleParams p = ModuleParams::symbolic(eps);
    VerificationReport report;
    for (long i = -w.i_max; i <= w.i_max; ++i)
        for (long m = 0; m <= w.m_max; ++m) {
            TPoly d = act(i, m, TPoly(1), p) - closed_form_on_one(eps, i, m);
            report.add({"closed_form", value(eps), {{"i", i}, {"m", m}}, d.is_zero(), d.is_zero() ? "" : d.str()});
        }
    return report;
}

}  // namespace virw
