#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "copos/matrix.hpp"
#include "copos/zeros.hpp"

namespace copos {

/// A minimal zero u with (Au)_i = (Au)_j = 0 and u_i + u_j > 0 (0-based indices).
struct PairWitness {
    int i = 0;
    int j = 0;
    int zero_index = 0;  ///< into MinimalZeroSet::zeros
};

struct NonnegativeIrreducibility {
    bool irreducible = false;
    std::vector<PairWitness> witnesses;            ///< one per covered pair i <= j
    std::vector<std::pair<int, int>> uncovered;    ///< pairs i <= j without a witness
};

struct PsdIrreducibility {
    bool irreducible = false;
    int span_rank = 0;
};

/// E_ij generator (0-based; i == j allowed).
struct Eij {
    int i = 0;
    int j = 0;
};

/// ww^T generator.
struct RankOne {
    Vector<Rational> w;
};

using Generator = std::variant<Eij, RankOne>;

NonnegativeIrreducibility irreducible_wrt_nonnegative(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz);
NonnegativeIrreducibility irreducible_wrt_nonnegative(const SymmetricFloatMatrix& a, const FloatMinimalZeroSet& mz,
                                                      double tau = kDefaultTolerance);

PsdIrreducibility irreducible_wrt_psd(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz);
PsdIrreducibility irreducible_wrt_psd(const SymmetricFloatMatrix& a, const FloatMinimalZeroSet& mz,
                                      double tau = kDefaultTolerance);

/// Throws PreconditionViolation for RankOne with w = 0.
bool irreducible_wrt_generator(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz, const Generator& gen);

/**
 * alpha_ij in [0,1] with A_ij = -cos(alpha_ij pi). Exact (0, 1/2, 1) when
 * A_ij is -1, 0 or 1, float otherwise.
 */
class AlphaMatrix {
public:
    AlphaMatrix() = default;
    explicit AlphaMatrix(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] double value(int i, int j) const;
    [[nodiscard]] const std::optional<Rational>& exact(int i, int j) const;
    void set(int i, int j, double value, std::optional<Rational> exact);

private:
    [[nodiscard]] std::size_t index(int i, int j) const;

    int n_ = 0;
    std::vector<double> values_;
    std::vector<std::optional<Rational>> exact_;
};

enum class RelationKind { Equal, GreaterEqual, Greater };

/// One instance of an alpha relation, lhs (kind) rhs.
struct RelationCheck {
    char relation = 'a';                 ///< 'a'..'h'
    std::vector<int> indices;            ///< 0-based index set the instance is about
    RelationKind kind = RelationKind::Equal;
    double lhs = 0.0;
    double rhs = 0.0;
    bool exact = false;                  ///< decided in exact arithmetic
    bool evaluated = true;               ///< false for cut-polytope checks on |I| > 3
    bool pass = true;
};

struct RelationReport {
    AlphaMatrix alpha;
    std::vector<RelationCheck> checks;

    /// True iff every evaluated instance of `relation` passes (vacuous if none).
    [[nodiscard]] bool holds(char relation) const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/**
 * Computes the alpha parametrization and evaluates relations (a)-(h) against
 * the minimal supports. Cut-polytope relations (c), (d) are checked only for
 * |I| <= 3 (interval and triangle inequalities). Requires unit diagonal and
 * |A_ij| <= 1, otherwise throws OutOfRange.
 */
RelationReport lin_rel_check(const SymmetricRationalMatrix& a, const SupportFamily& supports,
                             double tau = kDefaultTolerance);
RelationReport lin_rel_check(const SymmetricFloatMatrix& a, const SupportFamily& supports,
                             double tau = kDefaultTolerance);

}  // namespace copos
