#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars backed by GMP.
 *
 * Every coefficient in the library is a Rat. The value is always kept in
 * lowest terms with a positive denominator, so structural equality is
 * numeric equality and zero is 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace virw {

class Rat {
public:
    Rat() = default;

    template <std::integral I>
    Rat(I value) : value_(static_cast<long>(value)) {}  // NOLINT: implicit by design of the scalar type

    template <std::integral I, std::integral J>
    Rat(I num, J den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        value_.canonicalize();
    }

    explicit Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
    explicit Rat(const mpz_class& value) : value_(value) {}

    /// Parses "p", "-p", "p/q" (whitespace not allowed). Throws std::invalid_argument.
    static Rat parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty rational");
        std::string s(text);
        auto digits_ok = [](std::string_view part, bool allow_sign) {
            if (allow_sign && !part.empty() && (part.front() == '-' || part.front() == '+'))
                part.remove_prefix(1);
            if (part.empty()) return false;
            for (char c : part)
                if (c < '0' || c > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!digits_ok(num, true) || !digits_ok(den, false))
            throw std::invalid_argument("malformed rational '" + s + "'");
        if (num.front() == '+') num.erase(0, 1);
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rat(mpq_class(n, d));
    }

    const mpq_class& value() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    std::string str() const {
        if (is_integer()) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    Rat operator-() const { return Rat(mpq_class(-value_)); }

    Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
    Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
    Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("division by zero rational");
        value_ /= o.value_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Integer power; negative exponents invert (zero base rejected).
    Rat pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw std::domain_error("negative power of zero");
            return Rat(1) / pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rat(mpq_class(n, d));
    }

private:
    mpq_class value_{0};
};

inline Rat factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Rat(r);
}

}  // namespace virw
