#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace copos {

/**
 * Exact rational number in lowest terms with a positive denominator.
 *
 * Values whose numerator and denominator fit in 64 bits are kept inline and
 * handled with machine arithmetic (128-bit intermediates); anything larger is
 * promoted to a GMP rational and demoted again as soon as it fits. The
 * tableaux and Schur complements in this library almost never leave the
 * inline range, which is what makes exact pivoting affordable.
 */
class Rational {
public:
    Rational() = default;
    Rational(long long value) : num_(value) {  // NOLINT: implicit by design of a number type
        if (value == std::numeric_limits<long long>::min()) promote_min();
    }
    Rational(int value) : num_(value) {}        // NOLINT
    Rational(long long num, long long den);
    explicit Rational(const mpq_class& value);
    explicit Rational(const mpz_class& value);

    Rational(const Rational& other);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    /// Parses `p`, `p/q` or a decimal such as `-0.125` (exactly, from its digits).
    static Rational parse(std::string_view text);

    [[nodiscard]] int sign() const;
    [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] bool is_small() const { return !big_; }

    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;
    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] double to_double() const;
    /// `p` for integers, `p/q` otherwise.
    [[nodiscard]] std::string to_string() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    /// this -= a * b, the elimination kernel.
    void sub_mul(const Rational& a, const Rational& b);

    friend Rational operator-(Rational value);
    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);
    friend bool operator==(const Rational& lhs, const Rational& rhs);

private:
    void set_big(mpq_class value);
    void promote_min();
    void demote();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

Rational abs(Rational value);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace copos
