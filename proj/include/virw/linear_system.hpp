#pragma once

/**
 * @file linear_system.hpp
 * @brief Linear systems with coefficients in Q[a] and their exact solution.
 *
 * Rows are equations  sum_x c_x * x + c_0 = 0  where the c's are
 * polynomials in alpha only. Elimination is fraction-free Gauss-Jordan
 * over Q(a); every polynomial the elimination divides by, or multiplies an
 * equation by, is returned as a genericity condition (the result holds
 * wherever none of them vanishes).
 */

#include "coef_poly.hpp"
#include "rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace virw {

/// Dense univariate polynomial over Q in alpha; coefficients low to high.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rat& c) {  // NOLINT
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

    static UPoly from_coef(const CoefPoly& p) {
        std::vector<Rat> c;
        for (const auto& [e, v] : p.terms()) {
            if (e[var::lambda] != 0 || e[var::beta] != 0)
                throw std::invalid_argument("linear system entry must be a polynomial in a only: " + p.str());
            auto d = static_cast<std::size_t>(e[var::alpha]);
            if (c.size() <= d) c.resize(d + 1);
            c[d] = v;
        }
        return UPoly(std::move(c));
    }

    CoefPoly to_coef() const {
        CoefPoly p;
        for (std::size_t d = 0; d < c_.size(); ++d) p.add_term({0, static_cast<int>(d), 0}, c_[d]);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& lead() const { return c_.back(); }
    Rat coefficient(std::size_t d) const { return d < c_.size() ? c_[d] : Rat(0); }

    Rat evaluate(const Rat& x) const {
        Rat r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly r = *this;
        Rat l = lead();
        for (auto& x : r.c_) x /= l;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t q = 0; q < c.size(); ++q) c[q] = a.coefficient(q) + b.coefficient(q);
        return UPoly(std::move(c));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t p = 0; p < a.c_.size(); ++p)
            for (std::size_t q = 0; q < b.c_.size(); ++q) c[p + q] += a.c_[p] * b.c_[q];
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder; b must be nonzero.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rat> rem = a.c_;
        std::vector<Rat> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
        for (int d = static_cast<int>(rem.size()) - 1; d >= b.degree(); --d) {
            Rat f = rem[static_cast<std::size_t>(d)] / b.lead();
            if (f.is_zero()) continue;
            auto shift = static_cast<std::size_t>(d - b.degree());
            quo[shift] = f;
            for (std::size_t q = 0; q < b.c_.size(); ++q) rem[shift + q] -= f * b.c_[q];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    /// Exact quotient; throws if b does not divide a.
    static UPoly exact_div(const UPoly& a, const UPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
        return q;
    }

    /// Monic gcd; gcd(0, 0) = 0.
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    std::string str() const { return to_coef().str(); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/// One equation sum coeffs[x] * x + constant = 0 with entries in Q[a].
struct LinearRow {
    std::map<std::string, CoefPoly> coeffs;
    CoefPoly constant;
    std::string provenance;

    bool is_trivial() const {
        return constant.is_zero() &&
               std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.is_zero(); });
    }

    /// Text in a fixed column order: "2*x + (-3 + -3*a)*y + ... = 0".
    std::string str(const std::vector<std::string>& order) const {
        auto wrap = [](const CoefPoly& c) {
            return c.size() > 1 ? "(" + c.str() + ")" : c.str();
        };
        std::string out;
        for (const auto& name : order) {
            auto it = coeffs.find(name);
            if (it == coeffs.end() || it->second.is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (it->second == CoefPoly(1))
                out += name;
            else
                out += wrap(it->second) + "*" + name;
        }
        if (!constant.is_zero()) out += (out.empty() ? "" : " + ") + wrap(constant);
        return (out.empty() ? "0" : out) + " = 0";
    }
};

struct LinearSystem {
    std::vector<std::string> unknowns;   // column order
    std::vector<LinearRow> rows;         // generation order
    std::vector<CoefPoly> assumptions;   // polynomials in a assumed nonzero while building
    std::vector<std::string> findings;   // unexpected structure met while building
    std::vector<std::string> trace;      // human-readable derivation steps

    std::string str() const {
        std::string out;
        for (const auto& r : rows) out += r.str(unknowns) + "    [" + r.provenance + "]\n";
        return out;
    }
};

enum class AlphaMode { symbolic, zero, sampled };

inline std::string to_string(AlphaMode m) {
    switch (m) {
        case AlphaMode::symbolic: return "symbolic";
        case AlphaMode::zero: return "alpha-zero";
        case AlphaMode::sampled: return "sampled";
    }
    return "unknown";
}

/// A pivot variable pinned to numerator/denominator (polynomials in a).
struct ForcedValue {
    CoefPoly numerator;
    CoefPoly denominator;

    std::string str() const {
        if (denominator == CoefPoly(1)) return numerator.str();
        return "(" + numerator.str() + ")/(" + denominator.str() + ")";
    }
};

struct SolutionSpace {
    bool consistent = true;
    std::map<std::string, ForcedValue> forced;
    std::vector<std::string> forced_zero;
    std::vector<std::string> free;
    std::vector<std::string> relations;
    std::vector<CoefPoly> genericity;
    std::vector<Rat> samples;
    bool samples_agree = true;

    bool is_forced_zero(const std::string& x) const {
        return std::find(forced_zero.begin(), forced_zero.end(), x) != forced_zero.end();
    }
    bool is_free(const std::string& x) const {
        return std::find(free.begin(), free.end(), x) != free.end();
    }

    std::string str() const {
        std::string out = std::string("consistent=") + (consistent ? "yes" : "no") + "\n";
        for (const auto& [x, v] : forced) out += "forced " + x + " = " + v.str() + "\n";
        for (const auto& x : free) out += "free " + x + "\n";
        for (const auto& r : relations) out += "relation " + r + "\n";
        for (const auto& g : genericity) out += "assume " + g.str() + " != 0\n";
        for (const auto& s : samples) out += "sample a=" + s.str() + "\n";
        if (!samples.empty()) out += std::string("samples_agree=") + (samples_agree ? "yes" : "no") + "\n";
        return out;
    }
};

namespace detail {

struct Reduced {
    std::vector<std::vector<UPoly>> rows;  // last entry of each row is the constant
    std::vector<std::size_t> pivot_cols;   // pivot column of rows[q], q < pivot_cols.size()
    std::vector<UPoly> conditions;
};

inline void add_condition(std::vector<UPoly>& out, const UPoly& p) {
    if (p.degree() <= 0) return;
    UPoly m = p.monic();
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
}

inline void make_primitive(std::vector<UPoly>& row, std::vector<UPoly>& conditions) {
    UPoly g;
    for (const auto& e : row) g = UPoly::gcd(g, e);
    if (g.is_zero()) return;
    add_condition(conditions, g);
    for (auto& e : row)
        if (!e.is_zero()) e = UPoly::exact_div(e, g);
    // fix the sign/scale so the first nonzero entry has leading coefficient 1
    for (const auto& e : row) {
        if (e.is_zero()) continue;
        Rat l = e.lead();
        for (auto& x : row) x = x * UPoly(Rat(1) / l);
        break;
    }
}

inline Reduced gauss_jordan(std::vector<std::vector<UPoly>> rows, std::size_t ncols) {
    Reduced out;
    for (auto& row : rows) make_primitive(row, out.conditions);
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::optional<std::size_t> best;
        for (std::size_t q = r; q < rows.size(); ++q) {
            if (rows[q][col].is_zero()) continue;
            if (!best || rows[q][col].degree() < rows[*best][col].degree()) best = q;
        }
        if (!best) continue;
        std::swap(rows[r], rows[*best]);
        const UPoly pivot = rows[r][col];
        add_condition(out.conditions, pivot);
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][col].is_zero()) continue;
            UPoly g = UPoly::gcd(pivot, rows[q][col]);
            UPoly p_scale = UPoly::exact_div(pivot, g);
            UPoly q_scale = UPoly::exact_div(rows[q][col], g);
            for (std::size_t c = 0; c <= ncols; ++c)
                rows[q][c] = p_scale * rows[q][c] - q_scale * rows[r][c];
            make_primitive(rows[q], out.conditions);
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.rows = std::move(rows);
    return out;
}

inline std::vector<std::vector<UPoly>> to_matrix(const LinearSystem& sys,
                                                 const std::optional<Rat>& alpha_value) {
    std::vector<std::vector<UPoly>> m;
    for (const auto& row : sys.rows) {
        std::vector<UPoly> line;
        auto entry = [&](const CoefPoly& c) {
            UPoly u = UPoly::from_coef(c);
            return alpha_value ? UPoly(u.evaluate(*alpha_value)) : u;
        };
        for (const auto& name : sys.unknowns) {
            auto it = row.coeffs.find(name);
            line.push_back(it == row.coeffs.end() ? UPoly() : entry(it->second));
        }
        for (const auto& [name, c] : row.coeffs)
            if (std::find(sys.unknowns.begin(), sys.unknowns.end(), name) == sys.unknowns.end())
                throw std::invalid_argument("row mentions undeclared unknown " + name);
        line.push_back(entry(row.constant));
        m.push_back(std::move(line));
    }
    return m;
}

inline SolutionSpace describe(const LinearSystem& sys, const Reduced& red) {
    SolutionSpace sol;
    const std::size_t ncols = sys.unknowns.size();
    for (const auto& c : red.conditions) sol.genericity.push_back(c.to_coef());
    for (std::size_t q = red.pivot_cols.size(); q < red.rows.size(); ++q)
        if (!red.rows[q][ncols].is_zero()) sol.consistent = false;

    std::set<std::size_t> pivots(red.pivot_cols.begin(), red.pivot_cols.end());
    for (std::size_t c = 0; c < ncols; ++c)
        if (!pivots.count(c)) sol.free.push_back(sys.unknowns[c]);

    for (std::size_t q = 0; q < red.pivot_cols.size(); ++q) {
        const auto& row = red.rows[q];
        const std::size_t pc = red.pivot_cols[q];
        bool alone = true;
        for (std::size_t c = 0; c < ncols; ++c)
            if (c != pc && !row[c].is_zero()) alone = false;
        if (alone) {
            UPoly num = -row[ncols];
            UPoly den = row[pc];
            UPoly g = UPoly::gcd(num, den);
            if (!num.is_zero()) {
                num = UPoly::exact_div(num, g);
                den = UPoly::exact_div(den, g);
            } else {
                den = UPoly(Rat(1));
            }
            Rat l = den.lead();
            num = num * UPoly(Rat(1) / l);
            den = den * UPoly(Rat(1) / l);
            sol.forced[sys.unknowns[pc]] = {num.to_coef(), den.to_coef()};
            if (num.is_zero()) sol.forced_zero.push_back(sys.unknowns[pc]);
        } else {
            LinearRow text;
            for (std::size_t c = 0; c < ncols; ++c)
                if (!row[c].is_zero()) text.coeffs[sys.unknowns[c]] = row[c].to_coef();
            text.constant = row[ncols].to_coef();
            sol.relations.push_back(text.str(sys.unknowns));
        }
    }
    return sol;
}

}  // namespace detail

/**
 * Solves `sys` exactly.
 *
 * symbolic: over Q(a), recording genericity conditions.
 * zero:     a specialized to 0 first; no division by a can occur.
 * sampled:  the symbolic solution, re-solved at >= 5 random rationals a
 *           avoiding every recorded root; samples_agree reports whether the
 *           forced/free structure matched at every sample.
 */
inline SolutionSpace solve_system(const LinearSystem& sys, AlphaMode mode, std::uint64_t seed = 20240607,
                                  int sample_count = 5) {
    if (sys.rows.empty() && sys.unknowns.empty()) throw std::invalid_argument("empty linear system");
    const std::size_t ncols = sys.unknowns.size();
    if (mode == AlphaMode::zero)
        return detail::describe(sys, detail::gauss_jordan(detail::to_matrix(sys, Rat(0)), ncols));

    SolutionSpace sol = detail::describe(sys, detail::gauss_jordan(detail::to_matrix(sys, std::nullopt), ncols));
    if (mode == AlphaMode::symbolic) return sol;

    std::vector<UPoly> avoid;
    for (const auto& g : sol.genericity) avoid.push_back(UPoly::from_coef(g));
    for (const auto& g : sys.assumptions) avoid.push_back(UPoly::from_coef(g));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-97, 97), den(1, 23);
    while (static_cast<int>(sol.samples.size()) < std::max(sample_count, 5)) {
        Rat a(num(rng), den(rng));
        if (std::any_of(avoid.begin(), avoid.end(), [&](const UPoly& p) { return p.evaluate(a).is_zero(); }))
            continue;
        if (std::find(sol.samples.begin(), sol.samples.end(), a) != sol.samples.end()) continue;
        SolutionSpace at = detail::describe(sys, detail::gauss_jordan(detail::to_matrix(sys, a), ncols));
        bool agree = at.consistent == sol.consistent && at.free == sol.free && at.forced_zero == sol.forced_zero;
        sol.samples_agree = sol.samples_agree && agree;
        sol.samples.push_back(a);
    }
    return sol;
}

/// Rank over Q(a) of the rows restricted to `unknowns` (constants included as a column).
inline std::size_t rank(const std::vector<LinearRow>& rows, const std::vector<std::string>& unknowns) {
    LinearSystem sys;
    sys.unknowns = unknowns;
    sys.rows = rows;
    const std::size_t n = unknowns.size();
    auto red = detail::gauss_jordan(detail::to_matrix(sys, std::nullopt), n);
    std::size_t r = red.pivot_cols.size();
    for (std::size_t q = r; q < red.rows.size(); ++q)
        if (!red.rows[q][n].is_zero()) return r + 1;
    return r;
}

/// True when both row sets span the same space over Q(a).
inline bool row_space_equal(const std::vector<LinearRow>& a, const std::vector<LinearRow>& b,
                            const std::vector<std::string>& unknowns) {
    std::vector<LinearRow> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t ra = rank(a, unknowns), rb = rank(b, unknowns);
    return ra == rb && rank(both, unknowns) == ra;
}

/// The rational c with a = c * b, if one exists (c != 0).
inline std::optional<Rat> scaling_witness(const LinearRow& a, const LinearRow& b) {
    std::set<std::string> names;
    for (const auto& [k, v] : a.coeffs) names.insert(k);
    for (const auto& [k, v] : b.coeffs) names.insert(k);
    auto get = [](const LinearRow& r, const std::string& k) {
        auto it = r.coeffs.find(k);
        return it == r.coeffs.end() ? CoefPoly() : it->second;
    };
    std::optional<Rat> c;
    for (const auto& k : names) {
        CoefPoly x = get(a, k), y = get(b, k);
        if (x.is_zero() != y.is_zero()) return std::nullopt;
        if (x.is_zero()) continue;
        if (!c) c = x.terms().begin()->second / y.terms().begin()->second;
        if (x != y * *c) return std::nullopt;
    }
    if (!c) return std::nullopt;
    if (a.constant != b.constant * *c) return std::nullopt;
    return c;
}

}  // namespace virw
