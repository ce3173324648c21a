#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "copos/matrix.hpp"
#include "copos/rational.hpp"

namespace testing {

using copos::Rational;
using copos::SymmetricRationalMatrix;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20130917);
    return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational small_rational(int range = 5, int max_den = 4) {
    return Rational(uniform(-range, range), uniform(1, max_den));
}

inline std::vector<int> random_permutation(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng());
    return p;
}

/// Full n x n determinant by cofactor expansion (oracle only; n <= 6).
inline Rational det(const std::vector<std::vector<Rational>>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Rational s;
    for (int c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<Rational>> minor;
        for (int r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (int k = 0; k < n; ++k) {
                if (k != c) row.push_back(m[r][k]);
            }
            minor.push_back(std::move(row));
        }
        const Rational term = m[0][c] * det(minor);
        if (c % 2 == 0) {
            s += term;
        } else {
            s -= term;
        }
    }
    return s;
}

inline std::vector<std::vector<Rational>> dense(const SymmetricRationalMatrix& a) {
    std::vector<std::vector<Rational>> m(a.dim(), std::vector<Rational>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) m[i][j] = a(i, j);
    }
    return m;
}

inline SymmetricRationalMatrix principal(const SymmetricRationalMatrix& a, std::uint32_t mask) {
    std::vector<int> idx;
    for (int i = 0; i < a.dim(); ++i) {
        if ((mask >> i) & 1u) idx.push_back(i);
    }
    return a.principal(idx);
}

// Rational points on the unit circle, with signs; rows of V for P = V V^T.
inline const std::vector<std::pair<Rational, Rational>>& circle_points() {
    static const std::vector<std::pair<Rational, Rational>> pts = [] {
        std::vector<std::pair<Rational, Rational>> p;
        const std::vector<std::pair<Rational, Rational>> base{
            {1, 0}, {0, 1}, {Rational(3, 5), Rational(4, 5)}};
        for (const auto& [x, y] : base) {
            p.push_back({x, y});
            p.push_back({-x, -y});
            p.push_back({x, -y});
            p.push_back({-x, y});
        }
        return p;
    }();
    return pts;
}

// Unit-diagonal copositive matrix: Gram matrix of unit vectors in the plane
// plus a nonnegative matrix with zero diagonal (about two thirds of the entries zero).
inline SymmetricRationalMatrix unit_psd_plus_nonnegative(int n, bool nonnegative_part = true) {
    const auto& pts = circle_points();
    std::vector<std::pair<Rational, Rational>> v(n);
    for (auto& row : v) row = pts[uniform(0, static_cast<int>(pts.size()) - 1)];
    SymmetricRationalMatrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            a(i, j) = v[i].first * v[j].first + v[i].second * v[j].second;
            if (nonnegative_part && i != j && uniform(0, 2) == 0) a(i, j) += Rational(uniform(1, 4), 4);
        }
    }
    return a;
}

}  // namespace testing
