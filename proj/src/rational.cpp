#include "copos/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace copos {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

// INT64_MIN is excluded so that negation never overflows.
bool fits(i128 v) { return v >= -static_cast<i128>(kMax) && v <= static_cast<i128>(kMax); }

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    u128 mag = abs128(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

std::uint64_t uabs(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

}  // namespace

void Rational::promote_min() {
    num_ = 0;
    set_big(mpq_class(to_mpz(std::numeric_limits<std::int64_t>::min())));
}

Rational::Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(abs128(n), abs128(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        set_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& value) {
    mpq_class q(value);
    q.canonicalize();
    set_big(std::move(q));
    demote();
}

Rational::Rational(const mpz_class& value) : Rational(mpq_class(value)) {}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
    if (this == &other) return *this;
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
        if (big_) {
            *big_ = *other.big_;
        } else {
            big_ = std::make_unique<mpq_class>(*other.big_);
        }
    } else {
        big_.reset();
    }
    return *this;
}

void Rational::set_big(mpq_class value) {
    if (big_) {
        *big_ = std::move(value);
    } else {
        big_ = std::make_unique<mpq_class>(std::move(value));
    }
}

void Rational::demote() {
    if (!big_) return;
    const mpz_class& n = big_->get_num();
    const mpz_class& d = big_->get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        long nv = n.get_si();
        if (nv != std::numeric_limits<long>::min()) {
            num_ = nv;
            den_ = d.get_si();
            big_.reset();
        }
    }
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&]() { return std::invalid_argument("invalid rational literal '" + std::string(text) + "'"); };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw bad();

    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };
    auto to_z = [](std::string_view s) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        return mpz_class(std::string(s), 10);
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto p = text.substr(0, slash);
        auto q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) throw bad();
        mpz_class den = to_z(q);
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return Rational(mpq_class(to_z(p), den));
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        auto exp_text = text.substr(e + 1);
        if (!is_int(exp_text) || exp_text.size() > 6) throw bad();
        exponent = std::stol(std::string(exp_text));
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_point) throw bad();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw bad();
        }
    }
    if (digits.empty()) throw bad();
    mpz_class num(digits, 10);
    if (negative) num = -num;
    long scale = exponent - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale >= 0) return Rational(mpq_class(num * pow10));
    return Rational(mpq_class(num, pow10));
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

mpz_class Rational::numerator() const {
    return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
    return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (rhs.num_ == 0) return *this;
        if (num_ == 0) {
            num_ = rhs.num_;
            den_ = rhs.den_;
            return *this;
        }
        i128 n;
        i128 d;
        if (den_ == 1 && rhs.den_ == 1) {
            n = static_cast<i128>(num_) + rhs.num_;
            if (fits(n)) {
                num_ = static_cast<std::int64_t>(n);
                return *this;
            }
            d = 1;
        } else if (den_ == rhs.den_) {
            n = static_cast<i128>(num_) + rhs.num_;
            d = den_;
        } else {
            n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
            d = static_cast<i128>(den_) * rhs.den_;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        u128 g = gcd128(abs128(n), static_cast<u128>(d));
        if (g > 1) {
            n /= static_cast<i128>(g);
            d /= static_cast<i128>(g);
        }
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        set_big(std::move(q));
        return *this;
    }
    set_big(to_mpq() + rhs.to_mpq());
    demote();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    if (!rhs.big_) {
        Rational neg;
        neg.num_ = -rhs.num_;
        neg.den_ = rhs.den_;
        return *this += neg;
    }
    set_big(to_mpq() - rhs.to_mpq());
    demote();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (num_ == 0 || rhs.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && rhs.den_ == 1) {
            const i128 n = static_cast<i128>(num_) * rhs.num_;
            if (fits(n)) {
                num_ = static_cast<std::int64_t>(n);
                return *this;
            }
        }
        std::int64_t g1 = static_cast<std::int64_t>(std::gcd(uabs(num_), static_cast<std::uint64_t>(rhs.den_)));
        std::int64_t g2 = static_cast<std::int64_t>(std::gcd(uabs(rhs.num_), static_cast<std::uint64_t>(den_)));
        i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
        i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        set_big(mpq_class(to_mpz(n), to_mpz(d)));
        return *this;
    }
    set_big(to_mpq() * rhs.to_mpq());
    demote();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero rational");
    if (!big_ && !rhs.big_) {
        if (num_ == 0) return *this;
        std::int64_t g1 = static_cast<std::int64_t>(std::gcd(uabs(num_), uabs(rhs.num_)));
        std::int64_t g2 = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(den_),
                                                             static_cast<std::uint64_t>(rhs.den_)));
        i128 n = static_cast<i128>(num_ / g1) * (rhs.den_ / g2);
        i128 d = static_cast<i128>(den_ / g2) * (rhs.num_ / g1);
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        set_big(mpq_class(to_mpz(n), to_mpz(d)));
        return *this;
    }
    set_big(to_mpq() / rhs.to_mpq());
    demote();
    return *this;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return;
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        const i128 n = static_cast<i128>(num_) - static_cast<i128>(a.num_) * b.num_;
        if (fits(n)) {
            num_ = static_cast<std::int64_t>(n);
            return;
        }
    }
    Rational p(a);
    p *= b;
    *this -= p;
}

Rational operator-(Rational value) {
    if (value.big_) {
        *value.big_ = -*value.big_;
    } else {
        value.num_ = -value.num_;
    }
    return value;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) {
        if (lhs.den_ == rhs.den_) return lhs.num_ <=> rhs.num_;
        i128 a = static_cast<i128>(lhs.num_) * rhs.den_;
        i128 b = static_cast<i128>(rhs.num_) * lhs.den_;
        return a <=> b;
    }
    int c = cmp(lhs.to_mpq(), rhs.to_mpq());
    return c <=> 0;
}

bool operator==(const Rational& lhs, const Rational& rhs) {
    if (!lhs.big_ && !rhs.big_) return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
    if (lhs.big_ && rhs.big_) return *lhs.big_ == *rhs.big_;
    return false;  // a demoted value never equals a promoted one
}

Rational abs(Rational value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

}  // namespace copos
