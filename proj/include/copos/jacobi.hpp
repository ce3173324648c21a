#pragma once

#include <vector>

#include "copos/matrix.hpp"

namespace copos {

/// Eigenvalues ascending; vectors[k] is the unit eigenvector of values[k].
struct EigenDecomposition {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/**
 * Cyclic Jacobi eigendecomposition. Sweeps until the off-diagonal Frobenius
 * norm drops below `off_tolerance` times max(1, ||M||_F).
 */
EigenDecomposition jacobi_eigen(const SymmetricFloatMatrix& m, double off_tolerance = 1e-14, int max_sweeps = 100);

}  // namespace copos
