#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "copos/family.hpp"
#include "copos/matrix.hpp"
#include "copos/rational.hpp"

namespace copos {

inline constexpr double kDefaultTolerance = 1e-9;

/**
 * A zero u of A: u >= 0, u != 0, u^T A u = 0. `support` holds the indices of
 * the strictly positive entries.
 *
 * Exact zeros are scaled to coprime positive integers on their support; float
 * zeros are scaled so that the largest entry is 1.
 */
template <typename T>
struct BasicZero {
    Vector<T> vector;
    IndexSet support;
    bool minimal = false;
};

using Zero = BasicZero<Rational>;
using FloatZero = BasicZero<double>;

/// One minimal zero per minimal support, supports listed in family order.
template <typename T>
struct BasicMinimalZeroSet {
    int n = 0;
    std::vector<BasicZero<T>> zeros;

    [[nodiscard]] SupportFamily supports() const {
        std::vector<IndexSet> sets;
        sets.reserve(zeros.size());
        for (const auto& z : zeros) sets.push_back(z.support);
        return SupportFamily(n, std::move(sets));
    }
};

using MinimalZeroSet = BasicMinimalZeroSet<Rational>;
using FloatMinimalZeroSet = BasicMinimalZeroSet<double>;

/**
 * Minimal zeros of a matrix assumed copositive.
 *
 * Index sets are scanned by increasing cardinality, skipping supersets of
 * supports already found; I is a minimal support iff A_I is PSD of corank 1
 * with a kernel generator that is strictly positive up to sign.
 *
 * Copositivity is not certified. If a nonnegative vector with negative
 * quadratic value turns up along the way, NotCopositiveEvidence is thrown.
 */
MinimalZeroSet find_minimal_zeros(const SymmetricRationalMatrix& a);

/// Float backend: Jacobi eigenvalues, PSD iff lambda_min >= -tau, corank = #{|lambda| <= tau}.
FloatMinimalZeroSet find_minimal_zeros(const SymmetricFloatMatrix& a, double tau = kDefaultTolerance);

/**
 * Writes a zero u as a positive combination of minimal zeros, sum c_j v^j = u.
 * Throws NotAZero when u is not a zero and NoMinimalZeroInside when the
 * residual cannot be reduced further (only possible if A is not copositive).
 */
std::vector<std::pair<Zero, Rational>> decompose_zero(const SymmetricRationalMatrix& a, const Vector<Rational>& u);

struct ZeroDiagnostics {
    Rational value;  ///< u^T A u
    Vector<Rational> au;
    bool is_zero = false;
    bool first_order_ok = false;            ///< Au >= 0
    bool support_orthogonality_ok = false;  ///< (Au)_i = 0 on Supp(u)
    /// A_kk = u_I^T A_I u_I with I = Supp(u) \ {k}, u scaled to u_k = 1; only with a distinguished k.
    std::optional<bool> pd_identity_ok;
    /// Set when u itself shows x^T A x < 0.
    std::optional<Vector<Rational>> not_copositive_evidence;
};

/// Exact checks on a candidate zero; violations are flags, never exceptions.
ZeroDiagnostics zero_diagnostics(const SymmetricRationalMatrix& a, const Vector<Rational>& u,
                                 std::optional<int> distinguished = std::nullopt);

IndexSet support_of(const Vector<Rational>& u);
IndexSet support_of(const Vector<double>& u, double tau);

}  // namespace copos
