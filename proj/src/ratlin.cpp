#include "copos/ratlin.hpp"

#include <algorithm>

namespace copos {

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense to_dense(const SymmetricRationalMatrix& m) {
    const int n = m.dim();
    Dense d(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d[i][j] = m(i, j);
    }
    return d;
}

// Symmetric reduction on the trailing block starting at `first`. Returns an
// empty vector if the block is PSD, otherwise a witness over the block.
Vector<Rational> reduce(Dense& m, int first) {
    const int n = static_cast<int>(m.size());
    const int k = n - first;
    if (k == 0) return {};
    const Rational pivot = m[first][first];

    if (pivot.sign() < 0) {
        Vector<Rational> w(k, Rational(0));
        w[0] = 1;
        return w;
    }

    if (pivot.is_zero()) {
        for (int j = first + 1; j < n; ++j) {
            if (m[first][j].is_zero()) continue;
            // (t e_0 + e_j)^T M (t e_0 + e_j) = 2 t b + M_jj = -1
            Vector<Rational> w(k, Rational(0));
            w[0] = -(m[j][j] + Rational(1)) / (Rational(2) * m[first][j]);
            w[j - first] = 1;
            return w;
        }
        Vector<Rational> tail = reduce(m, first + 1);
        if (tail.empty()) return {};
        tail.insert(tail.begin(), Rational(0));
        return tail;
    }

    for (int i = first + 1; i < n; ++i) {
        if (m[i][first].is_zero()) continue;
        const Rational f = m[i][first] / pivot;
        for (int j = first + 1; j < n; ++j) {
            if (!m[first][j].is_zero()) m[i][j].sub_mul(f, m[first][j]);
        }
    }
    // Column `first` of the original block is still needed to lift a witness;
    // the Schur update above leaves row/column `first` untouched.
    Vector<Rational> tail = reduce(m, first + 1);
    if (tail.empty()) return {};
    Rational lead(0);
    for (int j = first + 1; j < n; ++j) lead.sub_mul(m[first][j], tail[j - first - 1]);
    lead /= pivot;
    tail.insert(tail.begin(), lead);
    return tail;
}

}  // namespace

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors with different lengths");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

Vector<Rational> normalize_integer(Vector<Rational> v) {
    mpz_class den_lcm = 1;
    for (const auto& x : v) {
        if (!x.is_zero()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.denominator().get_mpz_t());
    }
    mpz_class num_gcd = 0;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        mpz_class scaled = x.numerator() * (den_lcm / x.denominator());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    if (num_gcd == 0) return v;
    int lead_sign = 0;
    for (const auto& x : v) {
        if (!x.is_zero()) {
            lead_sign = x.sign();
            break;
        }
    }
    const Rational factor(mpq_class(den_lcm * lead_sign, num_gcd));
    for (auto& x : v) x *= factor;
    return v;
}

PsdStatus psd_status(const SymmetricRationalMatrix& m) {
    Dense work = to_dense(m);
    Vector<Rational> w = reduce(work, 0);
    PsdStatus status;
    if (!w.empty()) {
        status.verdict = PsdVerdict::NotPsd;
        status.witness = normalize_integer(std::move(w));
        status.witness_value = m.quadratic_form(status.witness);
        return status;
    }
    status.verdict = PsdVerdict::Psd;
    status.kernel = kernel_basis(m);
    status.corank = static_cast<int>(status.kernel.size());
    return status;
}

std::vector<Vector<Rational>> kernel_basis(const SymmetricRationalMatrix& m) {
    const int n = m.dim();
    Dense a = to_dense(m);
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = row;
        while (p < n && a[p][col].is_zero()) ++p;
        if (p == n) continue;
        std::swap(a[p], a[row]);
        const Rational inv = Rational(1) / a[row][col];
        for (int j = col; j < n; ++j) a[row][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || a[i][col].is_zero()) continue;
            const Rational f = a[i][col];
            for (int j = col; j < n; ++j) {
                if (!a[row][j].is_zero()) a[i][j].sub_mul(f, a[row][j]);
            }
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Vector<Rational>> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector<Rational> v(n, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
        basis.push_back(normalize_integer(std::move(v)));
    }
    return basis;
}

int rank(std::span<const Vector<Rational>> vectors) {
    if (vectors.empty()) return 0;
    const std::size_t dim = vectors.front().size();
    Dense a;
    a.reserve(vectors.size());
    for (const auto& v : vectors) {
        if (v.size() != dim) throw DimensionMismatch("rank: vectors have different lengths");
        a.push_back(normalize_integer(v));
    }
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(dim);
    Rational prev(1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Rational v = a[r][c] * a[i][j];
                v.sub_mul(a[i][c], a[r][j]);
                a[i][j] = v / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

}  // namespace copos
