#include <doctest.h>

#include <numbers>

#include "copos/errors.hpp"
#include "copos/irred.hpp"
#include "copos/matgen.hpp"
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

// Basis of the orthogonal complement of the span of the minimal zeros: ker sum z z^T.
std::vector<Vector<Rational>> complement_basis(const MinimalZeroSet& mz) {
    SymmetricRationalMatrix g(mz.n);
    for (const auto& z : mz.zeros) {
        for (int i = 0; i < mz.n; ++i) {
            for (int j = i; j < mz.n; ++j) g(i, j) += z.vector[i] * z.vector[j];
        }
    }
    return kernel_basis(g);
}

// Oracle for the pair test: brute force over zeros with (Au)_i = (Au)_j = 0, u_i + u_j > 0.
bool pair_oracle(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz, int i, int j) {
    for (const auto& z : mz.zeros) {
        const auto au = a.apply(z.vector);
        if (au[i].is_zero() && au[j].is_zero() && (z.vector[i] + z.vector[j]).sign() > 0) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("irred") {

TEST_CASE("nonnegative-cone irreducibility examples") {
    const auto h = gen_horn();
    const auto hz = find_minimal_zeros(h);
    const auto r = irreducible_wrt_nonnegative(h, hz);
    CHECK(r.irreducible);
    CHECK(r.witnesses.size() == 15);  // all pairs i <= j
    CHECK(r.uncovered.empty());
    for (const auto& w : r.witnesses) CHECK(pair_oracle(h, hz, w.i, w.j));

    const auto id = SymmetricRationalMatrix::identity(3);
    CHECK_FALSE(irreducible_wrt_nonnegative(id, find_minimal_zeros(id)).irreducible);

    const auto j2 = from_rows({{1, -1}, {-1, 1}});
    CHECK(irreducible_wrt_nonnegative(j2, find_minimal_zeros(j2)).irreducible);
}

TEST_CASE("psd-cone irreducibility examples") {
    const auto h = gen_horn();
    const auto ph = irreducible_wrt_psd(h, find_minimal_zeros(h));
    CHECK(ph.irreducible);
    CHECK(ph.span_rank == 5);

    const auto j2 = from_rows({{1, -1}, {-1, 1}});
    const auto pj = irreducible_wrt_psd(j2, find_minimal_zeros(j2));
    CHECK_FALSE(pj.irreducible);
    CHECK(pj.span_rank == 1);

    const auto id = SymmetricRationalMatrix::identity(4);
    const auto pi = irreducible_wrt_psd(id, find_minimal_zeros(id));
    CHECK_FALSE(pi.irreducible);
    CHECK(pi.span_rank == 0);
}

TEST_CASE("single generator examples") {
    const auto h = gen_horn();
    const auto hz = find_minimal_zeros(h);
    CHECK(irreducible_wrt_generator(h, hz, Eij{0, 2}));

    const auto j2 = from_rows({{1, -1}, {-1, 1}});
    const auto jz = find_minimal_zeros(j2);
    CHECK_FALSE(irreducible_wrt_generator(j2, jz, RankOne{{1, -1}}));
    CHECK(irreducible_wrt_generator(j2, jz, RankOne{{1, 0}}));

    const auto id = SymmetricRationalMatrix::identity(2);
    CHECK_FALSE(irreducible_wrt_generator(id, find_minimal_zeros(id), Eij{0, 1}));

    CHECK_THROWS_AS(irreducible_wrt_generator(j2, jz, RankOne{{0, 0}}), PreconditionViolation);
}

TEST_CASE("psd irreducibility agrees with rank-one generators") {
    int reducible = 0, irreducible = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = testing::uniform(2, 5);
        const auto a = t < 5 ? gen_horn() : testing::unit_psd_plus_nonnegative(n, t % 3 != 0);
        const auto mz = find_minimal_zeros(a);
        const auto psd = irreducible_wrt_psd(a, mz);
        // any nonzero w: true whenever the zeros span R^n
        for (int k = 0; k < 200; ++k) {
            Vector<Rational> w(a.dim());
            for (auto& x : w) x = testing::small_rational(4, 3);
            if (std::all_of(w.begin(), w.end(), [](const Rational& x) { return x.is_zero(); })) continue;
            const bool g = irreducible_wrt_generator(a, mz, RankOne{w});
            if (psd.irreducible) CHECK(g);
        }
        const auto comp = complement_basis(mz);
        CHECK(static_cast<int>(comp.size()) == a.dim() - psd.span_rank);
        for (const auto& w : comp) CHECK_FALSE(irreducible_wrt_generator(a, mz, RankOne{w}));
        psd.irreducible ? ++irreducible : ++reducible;
    }
    CHECK(irreducible > 0);
    CHECK(reducible > 0);
}

TEST_CASE("pair witnesses agree with the brute-force oracle") {
    for (int t = 0; t < 100; ++t) {
        const int n = testing::uniform(2, 5);
        const auto a = testing::unit_psd_plus_nonnegative(n);
        const auto mz = find_minimal_zeros(a);
        const auto r = irreducible_wrt_nonnegative(a, mz);
        bool all = true;
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const bool o = pair_oracle(a, mz, i, j);
                CHECK(irreducible_wrt_generator(a, mz, Eij{i, j}) == o);
                all = all && o;
            }
        }
        CHECK(r.irreducible == all);
        CHECK(r.witnesses.size() + r.uncovered.size() == static_cast<std::size_t>(n * (n + 1) / 2));
        // unit diagonal: the two positive entries of a pair zero are equal
        for (const auto& z : mz.zeros) {
            if (z.support.size() != 2) continue;
            const auto idx = z.support.elements();
            CHECK(z.vector[idx[0]] == z.vector[idx[1]]);
        }
    }
}

TEST_CASE("alpha relations on the Horn matrix") {
    const auto h = gen_horn();
    const auto rep = lin_rel_check(h, find_minimal_zeros(h).supports());
    double total = 0;
    for (int i = 0; i < 5; ++i) {
        const int next = (i + 1) % 5, skip = (i + 2) % 5;
        CHECK(rep.alpha.value(i, next) == 0.0);
        CHECK(rep.alpha.value(i, skip) == 1.0);
        REQUIRE(rep.alpha.exact(i, next).has_value());
        CHECK(*rep.alpha.exact(i, next) == Rational(0));
        CHECK(*rep.alpha.exact(i, skip) == Rational(1));
        for (int j = i + 1; j < 5; ++j) total += rep.alpha.value(i, j);
    }
    CHECK(total == 5.0);
    for (char r = 'a'; r <= 'h'; ++r) CHECK(rep.holds(r));
}

TEST_CASE("relation (e) on the T-matrix triples") {
    const double p = std::numbers::pi / 10;
    const auto t = gen_tmat({p, p, p, p, p});
    const auto mz = find_minimal_zeros(t, 1e-9);
    const auto rep = lin_rel_check(t, mz.supports(), 1e-9);
    int e_checks = 0;
    for (const auto& c : rep.checks) {
        if (c.relation != 'e') continue;
        ++e_checks;
        CHECK(std::abs(c.lhs - 1.0) < 1e-9);
        CHECK(c.pass);
    }
    CHECK(e_checks == 5);
    CHECK(rep.holds('e'));
}

TEST_CASE("alpha parametrization rejects out-of-range entries") {
    SymmetricRationalMatrix a = SymmetricRationalMatrix::identity(2);
    a(0, 1) = Rational(-3, 2);
    CHECK_THROWS_AS(lin_rel_check(a, SupportFamily(2, {})), OutOfRange);
    SymmetricRationalMatrix b = SymmetricRationalMatrix::identity(2);
    b(1, 1) = 2;
    CHECK_THROWS_AS(lin_rel_check(b, SupportFamily(2, {})), OutOfRange);
    // exact alpha for 0 entries
    const auto rep = lin_rel_check(SymmetricRationalMatrix::identity(2), SupportFamily(2, {}));
    REQUIRE(rep.alpha.exact(0, 1).has_value());
    CHECK(*rep.alpha.exact(0, 1) == Rational(1, 2));
}

TEST_CASE("N-irreducible unit-diagonal matrices satisfy relations (a), (e), (g), (h)") {
    int seen = 0;
    // T-matrices with random positive angles summing below pi
    for (int t = 0; t < 60; ++t) {
        std::array<double, 5> th{};
        double sum = 0;
        for (auto& x : th) {
            x = 0.02 + testing::uniform(0, 1000) / 1000.0 * 0.55;
            sum += x;
        }
        if (sum >= std::numbers::pi - 0.05) continue;
        const auto a = gen_tmat(th);
        const auto mz = find_minimal_zeros(a, 1e-9);
        const auto nn = irreducible_wrt_nonnegative(a, mz, 1e-9);
        CHECK(nn.irreducible);
        if (!nn.irreducible) continue;
        const auto rep = lin_rel_check(a, mz.supports(), 1e-9);
        for (char r : {'a', 'e', 'g', 'h'}) CHECK(rep.holds(r));
        ++seen;
    }
    // exact matrices from the random generator whenever they happen to be irreducible
    for (int t = 0; t < 400; ++t) {
        const auto a = testing::unit_psd_plus_nonnegative(testing::uniform(2, 5));
        const auto mz = find_minimal_zeros(a);
        if (!irreducible_wrt_nonnegative(a, mz).irreducible) continue;
        const auto rep = lin_rel_check(a, mz.supports());
        for (char r : {'a', 'e', 'g', 'h'}) CHECK(rep.holds(r));
        ++seen;
    }
    const auto h = gen_horn();
    const auto rep = lin_rel_check(h, find_minimal_zeros(h).supports());
    for (char r : {'a', 'e', 'g', 'h'}) CHECK(rep.holds(r));
    CHECK(seen > 40);
}

}
