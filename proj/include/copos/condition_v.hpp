#pragma once

#include <vector>

#include "copos/conditions.hpp"
#include "copos/family.hpp"
#include "copos/lp.hpp"

namespace copos {

/// Sign vectors v in {+1,-1}^k with v_1 = +1; the vertices of MC_k are vv^T.
struct CutPolytopeVertices {
    int k = 0;
    std::vector<std::vector<int>> signs;

    explicit CutPolytopeVertices(int k);
    [[nodiscard]] std::size_t size() const { return signs.size(); }
    /// (vv^T)_{pq} for vertex index v.
    [[nodiscard]] int entry(std::size_t v, int p, int q) const { return signs[v][p] * signs[v][q]; }
};

/// Convex weights lambda_v tying B_I = 2 alpha_I - 1 to MC_|I|.
struct LambdaBlock {
    char relation = 'c';  ///< 'c' membership, 'd' relative interior
    IndexSet set;
    int first_var = 0;
    int count = 0;
};

struct ConditionVProgram {
    LinearProgram lp;
    int n = 0;
    int eps = 0;
    std::vector<int> alpha_index;  ///< n*n table, variable of alpha_ij for i != j
    std::vector<LambdaBlock> blocks;

    [[nodiscard]] int alpha(int i, int j) const { return alpha_index[static_cast<std::size_t>(i) * n + j]; }
};

/**
 * Maximize eps subject to relations (a)-(h) on alpha_ij in [0,1], strict
 * inequalities relaxed by eps, 0 <= eps <= 1. Throws PreconditionViolation
 * unless the family satisfies (i) and (ii).
 */
ConditionVProgram build_condition_v_lp(const SupportFamily& f);

/// Pass iff the program is optimal with eps > 0. Certificate: optimal alpha or Farkas multipliers.
ConditionOutcome holds_condition_v(const SupportFamily& f);

/// Verdict only, for bulk use.
bool condition_v_passes(const SupportFamily& f);

}  // namespace copos
