#pragma once

#include <string>
#include <vector>

#include "copos/rational.hpp"

namespace copos {

struct LpTerm {
    int var = 0;
    Rational coef;
};

enum class Relation { Eq, Ge };

/// sum coef * x_var (relation) rhs
struct Constraint {
    std::vector<LpTerm> terms;
    Relation relation = Relation::Ge;
    Rational rhs;
    std::string label;
};

/**
 * Maximization program over exact rationals. Every variable is either
 * nonnegative or free; all other bounds are ordinary constraints.
 */
class LinearProgram {
public:
    int add_variable(std::string name, bool nonnegative = true);
    void add_constraint(std::vector<LpTerm> terms, Relation relation, Rational rhs, std::string label = {});
    /// Stored as the negated >= row.
    void add_le(std::vector<LpTerm> terms, Rational rhs, std::string label = {});
    void set_objective(std::vector<LpTerm> terms);

    [[nodiscard]] int num_variables() const { return static_cast<int>(names_.size()); }
    [[nodiscard]] const std::string& name(int var) const { return names_[var]; }
    [[nodiscard]] bool nonnegative(int var) const { return nonnegative_[var]; }
    [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
    [[nodiscard]] const std::vector<LpTerm>& objective() const { return objective_; }

    [[nodiscard]] Rational lhs(const Constraint& c, const std::vector<Rational>& x) const;
    [[nodiscard]] Rational objective_value(const std::vector<Rational>& x) const;
    /// Every constraint and sign restriction holds exactly.
    [[nodiscard]] bool feasible(const std::vector<Rational>& x) const;

    /// Text dump: objective line, then one constraint per line `c1*x1 + c2*x2 {=|>=} rhs`.
    [[nodiscard]] std::string dump() const;

private:
    std::vector<std::string> names_;
    std::vector<char> nonnegative_;
    std::vector<Constraint> constraints_;
    std::vector<LpTerm> objective_;
};

enum class LpStatus { Infeasible, Optimal, Unbounded };

std::string to_string(LpStatus s);

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Rational value;               ///< Optimal
    std::vector<Rational> point;  ///< Optimal, Unbounded (feasible start of the ray)
    /// Infeasible: one multiplier per constraint, y >= 0 on >= rows, with
    /// y^T A <= 0 on nonnegative and = 0 on free columns and y^T b > 0.
    std::vector<Rational> farkas;
    std::vector<Rational> ray;    ///< Unbounded: improving direction
    int pivots = 0;
};

/// Two-phase dense tableau simplex in exact arithmetic with Bland's rule.
LpOutcome simplex_solve(const LinearProgram& p);

bool verify_farkas(const LinearProgram& p, const std::vector<Rational>& y);
bool verify_ray(const LinearProgram& p, const std::vector<Rational>& ray);

}  // namespace copos
