#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with exact rational coefficients.
 *
 * A Polynomial is parameterised by a variable set, a tag type that names the
 * variables and says which ones may carry negative (Laurent) exponents:
 *
 *   struct LabVars {
 *       static constexpr std::array<std::string_view, 3> names{"l", "a", "b"};
 *       static constexpr std::array<bool, 3> laurent{true, false, false};
 *   };
 *
 * Terms are stored in strictly descending lexicographic order of their
 * exponent vectors, which is also the serialization order. No zero
 * coefficient is ever stored.
 */

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace virw {

template <class V>
concept VariableSet = requires {
    V::names.size();
    V::laurent.size();
} && V::names.size() == V::laurent.size() && V::names.size() > 0;

/// Thrown by the text parsers on malformed input.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <VariableSet Vars>
class Polynomial {
public:
    static constexpr std::size_t arity = Vars::names.size();
    using Exponents = std::array<int, arity>;
    using Terms = std::map<Exponents, Rat, std::greater<>>;

    Polynomial() = default;
    Polynomial(const Rat& c) {  // NOLINT: constants embed implicitly
        if (!c.is_zero()) terms_.emplace(Exponents{}, c);
    }
    template <std::integral I>
    Polynomial(I c) : Polynomial(Rat(c)) {}  // NOLINT

    static Polynomial monomial(const Exponents& e, const Rat& c = Rat(1)) {
        check_exponents(e);
        Polynomial p;
        if (!c.is_zero()) p.terms_.emplace(e, c);
        return p;
    }

    static Polynomial variable(std::size_t var, int power = 1) {
        Exponents e{};
        e.at(var) = power;
        return monomial(e);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
    }

    Rat coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat constant_term() const { return coefficient(Exponents{}); }

    /// Largest exponent of `var`; nullopt for the zero polynomial.
    std::optional<int> degree(std::size_t var) const {
        std::optional<int> d;
        for (const auto& [e, c] : terms_) d = d ? std::max(*d, e[var]) : e[var];
        return d;
    }

    /// Total degree restricted to the variables flagged in `mask`.
    std::optional<int> total_degree(const std::array<bool, arity>& mask) const {
        std::optional<int> d;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (std::size_t v = 0; v < arity; ++v)
                if (mask[v]) s += e[v];
            d = d ? std::max(*d, s) : s;
        }
        return d;
    }

    /// Coefficient of var^power, as a polynomial in the remaining variables.
    Polynomial coefficient_of(std::size_t var, int power) const {
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            if (e[var] != power) continue;
            Exponents f = e;
            f[var] = 0;
            r.terms_.emplace(f, c);
        }
        return r;
    }

    /// Replaces `var` by `value`. Requires nonnegative exponents on `var`.
    Polynomial substitute(std::size_t var, const Polynomial& value) const {
        std::map<int, Polynomial> grouped;
        for (const auto& [e, c] : terms_) {
            if (e[var] < 0) throw std::domain_error("substitution into a negative power");
            Exponents f = e;
            f[var] = 0;
            grouped[e[var]].terms_.emplace(f, c);
        }
        Polynomial result;
        Polynomial power(1);
        int have = 0;
        for (const auto& [deg, rest] : grouped) {
            while (have < deg) {
                power *= value;
                ++have;
            }
            result += rest * power;
        }
        return result;
    }

    /// Specializes `var` to a rational; negative powers need value != 0.
    Polynomial evaluate(std::size_t var, const Rat& value) const {
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            f[var] = 0;
            r.add_term(f, c * value.pow(e[var]));
        }
        return r;
    }

    /// Exact division by a monomial; nullopt if some term is not divisible.
    std::optional<Polynomial> divide_by_monomial(const Exponents& m) const {
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            Exponents f{};
            for (std::size_t v = 0; v < arity; ++v) {
                f[v] = e[v] - m[v];
                if (f[v] < 0 && !Vars::laurent[v]) return std::nullopt;
            }
            r.terms_.emplace(f, c);
        }
        return r;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (c.is_zero()) return;
        check_exponents(e);
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rat& s) { return a *= s; }
    friend Polynomial operator*(const Rat& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        if (a.is_zero() || b.is_zero()) return r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t v = 0; v < arity; ++v) e[v] = ea[v] + eb[v];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r(1), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    /// Renders one monomial's factor list ("l^-1*a*b^2"); empty for the unit monomial.
    static std::string monomial_string(const Exponents& e) {
        std::string out;
        for (std::size_t v = 0; v < arity; ++v) {
            if (e[v] == 0) continue;
            if (!out.empty()) out += '*';
            out += Vars::names[v];
            if (e[v] != 1) out += "^" + std::to_string(e[v]);
        }
        return out;
    }

    /// Canonical text: terms in descending order joined by " + "; unit
    /// coefficients are omitted in front of a non-trivial monomial.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string m = monomial_string(e);
            if (m.empty())
                out += c.str();
            else if (c.is_one())
                out += m;
            else
                out += c.str() + "*" + m;
        }
        return out;
    }

    /// Parses the canonical grammar (and any term order). Throws ParseError.
    static Polynomial parse(std::string_view text);

private:
    static void check_exponents(const Exponents& e) {
        for (std::size_t v = 0; v < arity; ++v)
            if (e[v] < 0 && !Vars::laurent[v])
                throw std::domain_error("negative exponent on non-Laurent variable " +
                                        std::string(Vars::names[v]));
    }

    Terms terms_;
};

namespace detail {

/// Shared term-level scanner for the polynomial grammar:
///   poly   = term (("+" | "-") term)*
///   term   = [sign] (rational | factor) ("*" factor)*
///   factor = name ["^" int]
/// `on_term` receives the coefficient and (name, exponent) factor list.
class TermScanner {
public:
    TermScanner(std::string_view text, std::vector<std::string_view> names)
        : text_(text), names_(std::move(names)) {
        std::sort(names_.begin(), names_.end(),
                  [](auto a, auto b) { return a.size() > b.size(); });
    }

    template <class OnTerm>
    void scan(OnTerm&& on_term) {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty polynomial");
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (!first) {
                if (pos_ == text_.size()) break;
                char c = text_[pos_];
                if (c != '+' && c != '-') fail("expected '+' or '-'");
                if (c == '-') sign = -1;
                ++pos_;
                skip_ws();
            }
            first = false;
            while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                if (text_[pos_] == '-') sign = -sign;
                ++pos_;
                skip_ws();
            }
            Rat coef(sign);
            std::vector<std::pair<std::string_view, int>> factors;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                coef *= read_rational();
            } else {
                factors.push_back(read_factor());
            }
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                skip_ws();
                factors.push_back(read_factor());
                skip_ws();
            }
            on_term(coef, factors);
            skip_ws();
            if (pos_ == text_.size()) break;
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
    }

    Rat read_rational() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
            ++pos_;
        try {
            return Rat::parse(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument&) {
            fail("malformed rational");
        }
    }

    std::pair<std::string_view, int> read_factor() {
        for (auto name : names_) {
            if (text_.substr(pos_, name.size()) != name) continue;
            std::size_t after = pos_ + name.size();
            if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after])) &&
                text_[after] != '^')
                continue;
            pos_ = after;
            int exponent = 1;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                skip_ws();
                std::size_t start = pos_;
                if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                std::string digits(text_.substr(start, pos_ - start));
                if (digits.empty() || digits == "-") fail("missing exponent");
                exponent = std::stoi(digits);
            }
            return {name, exponent};
        }
        fail("unknown factor");
    }

    std::string_view text_;
    std::vector<std::string_view> names_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <VariableSet Vars>
Polynomial<Vars> Polynomial<Vars>::parse(std::string_view text) {
    std::vector<std::string_view> names(Vars::names.begin(), Vars::names.end());
    Polynomial result;
    detail::TermScanner scanner(text, names);
    scanner.scan([&](const Rat& coef, const auto& factors) {
        Exponents e{};
        for (const auto& [name, exp] : factors) {
            auto it = std::find(Vars::names.begin(), Vars::names.end(), name);
            e[static_cast<std::size_t>(it - Vars::names.begin())] += exp;
        }
        try {
            result.add_term(e, coef);
        } catch (const std::domain_error& err) {
            throw ParseError(err.what());
        }
    });
    return result;
}

}  // namespace virw
