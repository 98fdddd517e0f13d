#pragma once

/**
 * @file lie.hpp
 * @brief The Lie algebras W(eps), eps = +1 or -1.
 *
 * Basis L[i,m] with i an integer and m >= 0, bracket
 *
 *   [L[i,m], L[j,n]] = (j - i) L[i+j, m+n] + eps (m - n) L[i+j, m+n-eps].
 *
 * Elements are finite rational combinations of basis symbols. The m = 0
 * slice is the centerless Virasoro algebra.
 */

#include "rational.hpp"
#include "report.hpp"

#include <cassert>
#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace virw {

enum class Epsilon : int { plus = 1, minus = -1 };

inline int value(Epsilon e) { return static_cast<int>(e); }

inline Epsilon epsilon_from_int(long v) {
    if (v == 1) return Epsilon::plus;
    if (v == -1) return Epsilon::minus;
    throw std::invalid_argument("epsilon must be 1 or -1, got " + std::to_string(v));
}

struct BasisIndex {
    long i = 0;
    long m = 0;
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

class LieElt {
public:
    using Terms = std::map<BasisIndex, Rat>;

    LieElt() = default;

    static LieElt basis(long i, long m, const Rat& c = Rat(1)) {
        if (m < 0) throw std::invalid_argument("L[i,m] needs m >= 0");
        LieElt x;
        x.add_term({i, m}, c);
        return x;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coefficient(long i, long m) const {
        auto it = terms_.find({i, m});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(BasisIndex idx, const Rat& c) {
        if (c.is_zero()) return;
        assert(idx.m >= 0);
        auto [it, inserted] = terms_.try_emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LieElt& operator+=(const LieElt& o) {
        for (const auto& [idx, c] : o.terms_) add_term(idx, c);
        return *this;
    }
    LieElt& operator-=(const LieElt& o) {
        for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
        return *this;
    }
    LieElt& operator*=(const Rat& s) {
        if (s.is_zero()) terms_.clear();
        for (auto& [idx, c] : terms_) c *= s;
        return *this;
    }
    friend LieElt operator+(LieElt a, const LieElt& b) { return a += b; }
    friend LieElt operator-(LieElt a, const LieElt& b) { return a -= b; }
    friend LieElt operator*(const Rat& s, LieElt a) { return a *= s; }
    friend bool operator==(const LieElt& a, const LieElt& b) { return a.terms_ == b.terms_; }

    /// "L[1,1] + -1*L[1,0]"-style text; terms ascending in (i, m).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [idx, c] : terms_) {
            if (!out.empty()) out += " + ";
            if (!c.is_one()) out += c.str() + "*";
            out += "L[" + std::to_string(idx.i) + "," + std::to_string(idx.m) + "]";
        }
        return out;
    }

private:
    Terms terms_;
};

/// Bracket of two basis symbols. A summand whose coefficient vanishes is
/// dropped before its second index is formed, so m+n-eps = -1 never appears.
inline LieElt bracket_basis(Epsilon eps, BasisIndex x, BasisIndex y) {
    LieElt r;
    const long e = value(eps);
    r.add_term({x.i + y.i, x.m + y.m}, Rat(y.i - x.i));
    const long second = e * (x.m - y.m);
    if (second != 0) {
        const long index = x.m + y.m - e;
        if (index < 0) throw std::logic_error("bracket produced a negative second index");
        r.add_term({x.i + y.i, index}, Rat(second));
    }
    return r;
}

inline LieElt bracket(Epsilon eps, const LieElt& x, const LieElt& y) {
    LieElt r;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) r += (ca * cb) * bracket_basis(eps, a, b);
    return r;
}

/// Expression over the generators {L[i,0], L[i,1]} built from brackets
/// and rational linear combinations.
class GenExpr {
public:
    static GenExpr generator(long i, long m) {
        if (m < 0 || m > 1) throw std::invalid_argument("generators are L[i,0] and L[i,1]");
        auto n = std::make_shared<Node>();
        n->kind = Kind::generator;
        n->index = {i, m};
        return GenExpr(std::move(n));
    }

    static GenExpr commutator(GenExpr a, GenExpr b) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::bracket;
        n->children = {{Rat(1), std::move(a)}, {Rat(1), std::move(b)}};
        return GenExpr(std::move(n));
    }

    /// Zero-coefficient summands are dropped.
    static GenExpr combination(std::vector<std::pair<Rat, GenExpr>> terms) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::combination;
        for (auto& t : terms)
            if (!t.first.is_zero()) n->children.push_back(std::move(t));
        return GenExpr(std::move(n));
    }

    bool is_generator() const { return node_->kind == Kind::generator; }

    LieElt evaluate(Epsilon eps) const {
        switch (node_->kind) {
            case Kind::generator:
                return LieElt::basis(node_->index.i, node_->index.m);
            case Kind::bracket:
                return bracket(eps, node_->children[0].second.evaluate(eps),
                               node_->children[1].second.evaluate(eps));
            case Kind::combination: {
                LieElt r;
                for (const auto& [c, e] : node_->children) r += c * e.evaluate(eps);
                return r;
            }
        }
        return {};
    }

    std::string str() const {
        switch (node_->kind) {
            case Kind::generator:
                return "L[" + std::to_string(node_->index.i) + "," + std::to_string(node_->index.m) + "]";
            case Kind::bracket:
                return "[" + node_->children[0].second.str() + ", " + node_->children[1].second.str() + "]";
            case Kind::combination: {
                std::string out;
                for (const auto& [c, e] : node_->children) {
                    if (!out.empty()) out += " + ";
                    if (c.is_one())
                        out += e.str();
                    else
                        out += c.str() + "*(" + e.str() + ")";
                }
                return out.empty() ? "0" : out;
            }
        }
        return {};
    }

private:
    enum class Kind { generator, bracket, combination };
    struct Node {
        Kind kind = Kind::generator;
        BasisIndex index;
        std::vector<std::pair<Rat, GenExpr>> children;
    };
    explicit GenExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

/**
 * Writes L[i,m] in terms of the generators L[j,0], L[j,1].
 *
 * eps = +1, i != 0:  [L[0,1], L[i,m-1]] = i L[i,m] + (2-m) L[i,m-1]
 * eps = +1, i == 0:  [L[1,m], L[-1,0]]  = -2 L[0,m] + m L[0,m-1]
 * eps = -1, m == 2:  [L[0,1], L[i,0]]   = i L[i,1] - L[i,2]
 * eps = -1, m >= 3:  [L[0,0], L[i,m-1]] = i L[i,m-1] + (m-1) L[i,m]
 *
 * Each identity is solved for the highest-m symbol and the rest is
 * decomposed recursively, so the route is fixed and the output deterministic.
 */
inline GenExpr generator_decomposition(Epsilon eps, long i, long m) {
    if (m < 0) throw std::invalid_argument("generator_decomposition: m must be >= 0");
    if (m <= 1) return GenExpr::generator(i, m);
    if (eps == Epsilon::plus) {
        if (i != 0) {
            GenExpr lower = generator_decomposition(eps, i, m - 1);
            GenExpr br = GenExpr::commutator(GenExpr::generator(0, 1), lower);
            return GenExpr::combination(
                {{Rat(1, i), GenExpr::combination({{Rat(1), br}, {Rat(-(2 - m)), lower}})}});
        }
        GenExpr br = GenExpr::commutator(generator_decomposition(eps, 1, m), GenExpr::generator(-1, 0));
        GenExpr lower = generator_decomposition(eps, 0, m - 1);
        return GenExpr::combination(
            {{Rat(-1, 2), GenExpr::combination({{Rat(1), br}, {Rat(-m), lower}})}});
    }
    if (m == 2) {
        GenExpr br = GenExpr::commutator(GenExpr::generator(0, 1), GenExpr::generator(i, 0));
        return GenExpr::combination({{Rat(i), GenExpr::generator(i, 1)}, {Rat(-1), br}});
    }
    GenExpr lower = generator_decomposition(eps, i, m - 1);
    GenExpr br = GenExpr::commutator(GenExpr::generator(0, 0), lower);
    return GenExpr::combination(
        {{Rat(1, m - 1), GenExpr::combination({{Rat(1), br}, {Rat(-i), lower}})}});
}

namespace detail {
inline std::vector<BasisIndex> basis_window(long i_max, long m_max) {
    std::vector<BasisIndex> out;
    for (long i = -i_max; i <= i_max; ++i)
        for (long m = 0; m <= m_max; ++m) out.push_back({i, m});
    return out;
}
}  // namespace detail

/// [x,y] + [y,x] = 0 on all basis pairs in the window.
inline VerificationReport check_antisymmetry(Epsilon eps, long i_max, long m_max) {
    VerificationReport report;
    auto basis = detail::basis_window(i_max, m_max);
    for (auto x : basis) {
        for (auto y : basis) {
            LieElt d = bracket_basis(eps, x, y) + bracket_basis(eps, y, x);
            report.add({"lie_antisymmetry", value(eps), {{"i", x.i}, {"m", x.m}, {"j", y.i}, {"n", y.m}},
                        d.is_zero(), d.is_zero() ? "" : d.str()});
        }
    }
    return report;
}

/// Jacobi identity on all basis triples in the window.
inline VerificationReport check_jacobi(Epsilon eps, long i_max, long m_max) {
    VerificationReport report;
    auto basis = detail::basis_window(i_max, m_max);
    for (auto x : basis) {
        LieElt X = LieElt::basis(x.i, x.m);
        for (auto y : basis) {
            LieElt Y = LieElt::basis(y.i, y.m);
            LieElt xy = bracket_basis(eps, x, y);
            for (auto z : basis) {
                LieElt Z = LieElt::basis(z.i, z.m);
                LieElt d = bracket(eps, X, bracket_basis(eps, y, z)) +
                           bracket(eps, Y, bracket_basis(eps, z, x)) + bracket(eps, Z, xy);
                report.add({"lie_jacobi",
                            value(eps),
                            {{"i", x.i}, {"m", x.m}, {"j", y.i}, {"n", y.m}, {"p", z.i}, {"q", z.m}},
                            d.is_zero(),
                            d.is_zero() ? "" : d.str()});
            }
        }
    }
    return report;
}

/// The span of {L[i,0]} is closed and brackets like centerless Virasoro.
inline VerificationReport check_virasoro_slice(Epsilon eps, long i_max) {
    VerificationReport report;
    for (long i = -i_max; i <= i_max; ++i) {
        for (long j = -i_max; j <= i_max; ++j) {
            LieElt d = bracket_basis(eps, {i, 0}, {j, 0}) - LieElt::basis(i + j, 0, Rat(j - i));
            report.add({"lie_virasoro_slice", value(eps), {{"i", i}, {"j", j}}, d.is_zero(),
                        d.is_zero() ? "" : d.str()});
        }
    }
    return report;
}

/// Evaluating generator_decomposition(i, m) gives back L[i,m].
inline VerificationReport check_generator_roundtrip(Epsilon eps, long i_max, long m_max) {
    VerificationReport report;
    for (long i = -i_max; i <= i_max; ++i) {
        for (long m = 0; m <= m_max; ++m) {
            LieElt d = generator_decomposition(eps, i, m).evaluate(eps) - LieElt::basis(i, m);
            report.add({"lie_generators", value(eps), {{"i", i}, {"m", m}}, d.is_zero(),
                        d.is_zero() ? "" : d.str()});
        }
    }
    return report;
}

}  // namespace virw
