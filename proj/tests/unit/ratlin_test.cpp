#include <doctest.h>

#include "copos/ratlin.hpp"
#include "support.hpp"

using namespace copos;

namespace {

SymmetricRationalMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    SymmetricRationalMatrix m(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
}

Vector<Rational> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

bool all_zero(const Vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

// Sylvester: PSD iff every principal minor is nonnegative.
bool sylvester_psd(const SymmetricRationalMatrix& m) {
    for (std::uint32_t mask = 1; mask < (1u << m.dim()); ++mask) {
        if (testing::det(testing::dense(testing::principal(m, mask))).sign() < 0) return false;
    }
    return true;
}

// Largest k with a nonzero k x k minor (rows and columns chosen independently).
int minor_rank(const SymmetricRationalMatrix& m) {
    const int n = m.dim();
    const auto d = testing::dense(m);
    for (int k = n; k > 0; --k) {
        for (std::uint32_t rows = 0; rows < (1u << n); ++rows) {
            if (std::popcount(rows) != k) continue;
            for (std::uint32_t cols = 0; cols < (1u << n); ++cols) {
                if (std::popcount(cols) != k) continue;
                std::vector<std::vector<Rational>> sub;
                for (int i = 0; i < n; ++i) {
                    if (!((rows >> i) & 1u)) continue;
                    std::vector<Rational> r;
                    for (int j = 0; j < n; ++j) {
                        if ((cols >> j) & 1u) r.push_back(d[i][j]);
                    }
                    sub.push_back(std::move(r));
                }
                if (!testing::det(sub).is_zero()) return k;
            }
        }
    }
    return 0;
}

void check_contract(const SymmetricRationalMatrix& m, const PsdStatus& s) {
    if (s.psd()) {
        CHECK(s.corank == static_cast<int>(s.kernel.size()));
        for (const auto& v : s.kernel) {
            CHECK_FALSE(all_zero(v));
            CHECK(all_zero(m.apply(v)));
        }
        CHECK(rank(s.kernel) == s.corank);
    } else {
        CHECK(m.quadratic_form(s.witness) == s.witness_value);
        CHECK(s.witness_value.sign() < 0);
    }
}

}  // namespace

TEST_SUITE("ratlin") {

TEST_CASE("psd_status examples") {
    auto id = psd_status(SymmetricRationalMatrix::identity(3));
    CHECK(id.psd());
    CHECK(id.corank == 0);
    CHECK(id.kernel.empty());

    auto r1 = psd_status(from_rows({{1, -1}, {-1, 1}}));
    CHECK(r1.psd());
    CHECK(r1.corank == 1);
    REQUIRE(r1.kernel.size() == 1);
    CHECK(r1.kernel[0] == ints({1, 1}));

    const auto indef = from_rows({{1, 2}, {2, 1}});
    auto s = psd_status(indef);
    CHECK_FALSE(s.psd());
    CHECK(s.witness_value.sign() < 0);
    CHECK(indef.quadratic_form(s.witness) == s.witness_value);
    CHECK(indef.quadratic_form(ints({1, -1})) == Rational(-2));

    auto r2 = psd_status(from_rows({{1, -1, 1}, {-1, 1, -1}, {1, -1, 1}}));
    CHECK(r2.psd());
    CHECK(r2.corank == 2);
}

TEST_CASE("kernel_basis examples") {
    CHECK(kernel_basis(from_rows({{1, -1}, {-1, 1}})) == std::vector<Vector<Rational>>{ints({1, 1})});
    CHECK(kernel_basis(SymmetricRationalMatrix::identity(2)).empty());
    CHECK(kernel_basis(SymmetricRationalMatrix(2)) == std::vector<Vector<Rational>>{ints({1, 0}), ints({0, 1})});
}

TEST_CASE("kernel vectors are coprime integers with positive leading entry") {
    for (int t = 0; t < 200; ++t) {
        const int n = testing::uniform(2, 5);
        SymmetricRationalMatrix m(n);
        // Low rank: sum of two rational outer products.
        for (int k = 0; k < 2; ++k) {
            std::vector<Rational> w(n);
            for (auto& x : w) x = testing::small_rational(3, 3);
            for (int i = 0; i < n; ++i) {
                for (int j = i; j < n; ++j) m(i, j) += w[i] * w[j];
            }
        }
        for (const auto& v : kernel_basis(m)) {
            mpz_class g = 0;
            Rational first;
            for (const auto& x : v) {
                CHECK(x.is_integer());
                mpz_class num = x.numerator();
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
                if (first.is_zero() && !x.is_zero()) first = x;
            }
            CHECK(g == 1);
            CHECK(first.sign() > 0);
        }
    }
}

TEST_CASE("rank examples") {
    const std::vector<Vector<Rational>> unit{ints({1, 0}), ints({0, 1})};
    CHECK(rank(unit) == 2);
    const std::vector<Vector<Rational>> dup{ints({1, 1}), ints({2, 2})};
    CHECK(rank(dup) == 1);
    std::vector<Vector<Rational>> cycle;
    for (int i = 0; i < 5; ++i) {
        Vector<Rational> v(5);
        v[i] = 1;
        v[(i + 1) % 5] = 1;
        cycle.push_back(v);
    }
    CHECK(rank(cycle) == 5);
    const std::vector<Vector<Rational>> bad{ints({1, 0}), ints({0, 1, 2})};
    CHECK_THROWS_AS(rank(bad), DimensionMismatch);
}

TEST_CASE("psd_status agrees with Sylvester on every 3x3 matrix over {-1,0,1}") {
    int checked = 0;
    for (int code = 0; code < 729; ++code) {
        int c = code;
        SymmetricRationalMatrix m(3);
        for (int i = 0; i < 3; ++i) {
            for (int j = i; j < 3; ++j) {
                m(i, j) = c % 3 - 1;
                c /= 3;
            }
        }
        const auto s = psd_status(m);
        CHECK(s.psd() == sylvester_psd(m));
        check_contract(m, s);
        ++checked;
    }
    CHECK(checked == 729);
}

TEST_CASE("corank plus rank equals n against the minor oracle") {
    for (int t = 0; t < 150; ++t) {
        const int n = testing::uniform(1, 5);
        SymmetricRationalMatrix m(n);
        const int terms = testing::uniform(0, n);
        for (int k = 0; k < terms; ++k) {
            std::vector<Rational> w(n);
            for (auto& x : w) x = testing::uniform(-2, 2);
            for (int i = 0; i < n; ++i) {
                for (int j = i; j < n; ++j) m(i, j) += w[i] * w[j];
            }
        }
        const auto s = psd_status(m);
        REQUIRE(s.psd());
        CHECK(s.corank + minor_rank(m) == n);
        check_contract(m, s);
    }
}

TEST_CASE("PSD verdicts survive random quadratic evaluation; NotPsd witnesses are negative") {
    int psd_seen = 0, indefinite_seen = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = testing::uniform(2, 5);
        SymmetricRationalMatrix m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) m(i, j) = testing::small_rational(3, 3);
        }
        if (t % 2 == 0) {
            // make it PSD: M^T M style via a sum of outer products
            SymmetricRationalMatrix p(n);
            for (int k = 0; k < n; ++k) {
                std::vector<Rational> w(n);
                for (auto& x : w) x = testing::small_rational(3, 2);
                for (int i = 0; i < n; ++i) {
                    for (int j = i; j < n; ++j) p(i, j) += w[i] * w[j];
                }
            }
            m = p;
        }
        const auto s = psd_status(m);
        check_contract(m, s);
        if (s.psd()) {
            ++psd_seen;
            for (int r = 0; r < 1000; ++r) {
                std::vector<Rational> x(n);
                for (auto& e : x) e = testing::small_rational(9, 7);
                CHECK(m.quadratic_form(x).sign() >= 0);
            }
        } else {
            ++indefinite_seen;
        }
    }
    CHECK(psd_seen > 0);
    CHECK(indefinite_seen > 0);
}

TEST_CASE("normalize_integer") {
    Vector<Rational> v{Rational(-1, 2), Rational(1, 3), 0};
    CHECK(normalize_integer(v) == ints({3, -2, 0}));
    CHECK(dot(ints({1, 2}), ints({3, 4})) == Rational(11));
}

}
