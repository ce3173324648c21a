#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "copos/errors.hpp"
#include "copos/rational.hpp"

namespace copos {

template <typename T>
using Vector = std::vector<T>;

/**
 * Symmetric n x n matrix, one stored value per unordered index pair.
 * Indices are 0-based here; 1-based numbering only appears at I/O edges.
 */
template <typename T>
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * (n + 1) / 2, T(0)) {
        if (n < 1) throw DimensionMismatch("matrix dimension must be at least 1");
    }

    [[nodiscard]] int dim() const { return n_; }

    [[nodiscard]] const T& operator()(int i, int j) const { return data_[index(i, j)]; }
    T& operator()(int i, int j) { return data_[index(i, j)]; }

    static SymmetricMatrix identity(int n) {
        SymmetricMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    /// Principal submatrix on the given (0-based, sorted) indices.
    [[nodiscard]] SymmetricMatrix principal(std::span<const int> idx) const {
        SymmetricMatrix sub(static_cast<int>(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = a; b < idx.size(); ++b) sub(static_cast<int>(a), static_cast<int>(b)) = (*this)(idx[a], idx[b]);
        }
        return sub;
    }

    [[nodiscard]] Vector<T> apply(std::span<const T> x) const {
        if (static_cast<int>(x.size()) != n_) throw DimensionMismatch("vector length does not match matrix dimension");
        Vector<T> y(static_cast<std::size_t>(n_), T(0));
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                if (x[j] != T(0)) y[i] += (*this)(i, j) * x[j];
            }
        }
        return y;
    }

    [[nodiscard]] T quadratic_form(std::span<const T> x) const {
        Vector<T> y = apply(x);
        T s(0);
        for (int i = 0; i < n_; ++i) s += x[i] * y[i];
        return s;
    }

    template <typename U, typename F>
    [[nodiscard]] SymmetricMatrix<U> map(F&& f) const {
        SymmetricMatrix<U> out(n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = i; j < n_; ++j) out(i, j) = f((*this)(i, j));
        }
        return out;
    }

    friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    [[nodiscard]] std::size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n_ - i + 1) / 2 + static_cast<std::size_t>(j - i);
    }

    int n_ = 0;
    std::vector<T> data_;
};

using SymmetricRationalMatrix = SymmetricMatrix<Rational>;
using SymmetricFloatMatrix = SymmetricMatrix<double>;

inline SymmetricFloatMatrix to_float(const SymmetricRationalMatrix& m) {
    return m.map<double>([](const Rational& r) { return r.to_double(); });
}

}  // namespace copos
