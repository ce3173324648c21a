#include <doctest.h>

#include <cmath>
#include <numbers>

#include "copos/errors.hpp"
#include "copos/matgen.hpp"
#include "support.hpp"

using namespace copos;

TEST_SUITE("matgen") {

TEST_CASE("Horn matrix shape") {
    const auto h = gen_horn();
    REQUIRE(h.dim() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(h(i, i) == Rational(1));
        for (int j = 0; j < 5; ++j) CHECK(abs(h(i, j)) == Rational(1));
    }
    CHECK(h(0, 1) == Rational(-1));
    CHECK(h(0, 4) == Rational(-1));
    CHECK(h(0, 2) == Rational(1));
}

TEST_CASE("Horn matrix is the zero-angle T-matrix") {
    const auto h = gen_horn();
    const auto t = gen_tmat({0, 0, 0, 0, 0});
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) CHECK(t(i, j) == h(i, j).to_double());
    }
}

TEST_CASE("T-matrix entries") {
    const double p = std::numbers::pi / 10;
    const auto t = gen_tmat({p, p, p, p, p});
    CHECK(t(0, 1) == doctest::Approx(-0.9510565).epsilon(1e-7));
    CHECK(t(0, 2) == doctest::Approx(std::cos(2 * p)));

    const std::array<double, 5> th{0.1, 0.2, 0.3, 0.4, 0.5};
    const auto u = gen_tmat(th);
    // band (i, i+1) = -cos theta_i, (i, i+2) = cos(theta_i + theta_{i+1})
    CHECK(u(0, 1) == -std::cos(0.1));
    CHECK(u(3, 4) == -std::cos(0.4));
    CHECK(u(4, 0) == -std::cos(0.5));
    CHECK(u(0, 2) == std::cos(0.1 + 0.2));
    CHECK(u(0, 3) == std::cos(0.4 + 0.5));
    CHECK(u(1, 3) == std::cos(0.2 + 0.3));
    CHECK(u(1, 4) == std::cos(0.5 + 0.1));
    CHECK(u(2, 4) == std::cos(0.3 + 0.4));
}

TEST_CASE("T-matrix domain") {
    const double p = std::numbers::pi / 5;
    CHECK_THROWS_AS(gen_tmat({p, p, p, p, p}), DomainError);
    CHECK_THROWS_AS(gen_tmat({1, 1, 1, 1, 1}), DomainError);
    CHECK_THROWS_AS(gen_tmat({-0.1, 0, 0, 0, 0}), DomainError);
    CHECK_NOTHROW(gen_tmat({p, p, p, p, p * 0.999}));
}

TEST_CASE("parse_matrix") {
    const auto m = parse_matrix("2\n1 -1\n-1 1\n");
    CHECK(m(0, 0) == Rational(1));
    CHECK(m(0, 1) == Rational(-1));
    CHECK(parse_matrix("1\n1/3\n")(0, 0) == Rational(1, 3));
    CHECK(parse_matrix("# comment\n\n2\n0.5 1\n1 2.25\n")(1, 1) == Rational(9, 4));

    CHECK_THROWS_AS(parse_matrix("2\n1 0.5\n0.4 1\n"), AsymmetryError);
    try {
        (void)parse_matrix("2\n1 0.5\n0.4 1\n");
    } catch (const AsymmetryError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 2);
    }
    try {
        (void)parse_matrix("2\n1 x\n0 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n1 0 0\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n1 0\n0 1\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n1 0\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("1\n1/0\n"), ParseError);
}

TEST_CASE("rational round trip") {
    for (int t = 0; t < 100; ++t) {
        const int n = testing::uniform(1, 6);
        SymmetricRationalMatrix m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) m(i, j) = testing::small_rational(50, 9);
        }
        const std::string text = serialize_matrix(m);
        CHECK(parse_matrix(text) == m);
        CHECK(serialize_matrix(parse_matrix(text)) == text);
    }
    // decimals normalize to fractions
    CHECK(serialize_matrix(parse_matrix("2\n1 0.5\n0.50 1\n")) == "2\n1 1/2\n1/2 1\n");
}

TEST_CASE("float round trip to 17 significant digits") {
    for (int t = 0; t < 50; ++t) {
        std::array<double, 5> th{};
        for (auto& x : th) x = testing::uniform(0, 1000) / 1000.0 * 0.6;
        const auto m = gen_tmat(th);
        const auto back = parse_float_matrix(serialize_matrix(m));
        CHECK(back == m);
    }
    CHECK(parse_float_matrix("1\n1/3\n")(0, 0) == 1.0 / 3.0);
}

TEST_CASE("load_matrix dispatch") {
    MatrixSource src;
    src.kind = MatrixSource::Kind::Horn;
    CHECK(std::get<SymmetricRationalMatrix>(load_matrix(src)) == gen_horn());
    src.kind = MatrixSource::Kind::Inline;
    src.text = "1\n2\n";
    CHECK(std::get<SymmetricRationalMatrix>(load_matrix(src))(0, 0) == Rational(2));
    src.kind = MatrixSource::Kind::TMatrix;
    src.theta = {0.1, 0.1, 0.1, 0.1, 0.1};
    CHECK(std::holds_alternative<SymmetricFloatMatrix>(load_matrix(src)));
    src.kind = MatrixSource::Kind::File;
    src.path = "/nonexistent/matrix.txt";
    CHECK_THROWS_AS(load_matrix(src), Error);
}

}
