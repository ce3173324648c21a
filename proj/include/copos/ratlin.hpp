#pragma once

#include <span>
#include <vector>

#include "copos/matrix.hpp"
#include "copos/rational.hpp"

namespace copos {

enum class PsdVerdict { Psd, NotPsd };

/**
 * Exact semidefiniteness verdict for a symmetric rational matrix.
 *
 * NotPsd carries a witness w with w^T M w < 0 (stored in `witness`, value in
 * `witness_value`). Psd carries a basis of ker M; corank == kernel.size().
 */
struct PsdStatus {
    PsdVerdict verdict = PsdVerdict::Psd;
    int corank = 0;
    std::vector<Vector<Rational>> kernel;
    Vector<Rational> witness;
    Rational witness_value;

    [[nodiscard]] bool psd() const { return verdict == PsdVerdict::Psd; }
};

PsdStatus psd_status(const SymmetricRationalMatrix& m);

/// Basis of ker M, each vector scaled to coprime integers with first nonzero entry positive.
std::vector<Vector<Rational>> kernel_basis(const SymmetricRationalMatrix& m);

/// Rank of a set of equal-length rational vectors (fraction-free elimination).
int rank(std::span<const Vector<Rational>> vectors);

/// Scales v to coprime integer entries whose first nonzero entry is positive.
Vector<Rational> normalize_integer(Vector<Rational> v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace copos
