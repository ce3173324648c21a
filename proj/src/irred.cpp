#include "copos/irred.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "copos/errors.hpp"
#include "copos/ratlin.hpp"

namespace copos {

namespace {

bool is_zero_tol(const Rational& x, double) { return x.is_zero(); }
bool is_zero_tol(double x, double tau) { return std::abs(x) <= tau; }
bool is_positive_tol(const Rational& x, double) { return x.sign() > 0; }
bool is_positive_tol(double x, double tau) { return x > tau; }

template <typename T>
NonnegativeIrreducibility nonnegative_impl(const SymmetricMatrix<T>& a, const BasicMinimalZeroSet<T>& mz, double tau) {
    const int n = a.dim();
    std::vector<Vector<T>> products;
    products.reserve(mz.zeros.size());
    for (const auto& z : mz.zeros) products.push_back(a.apply(z.vector));

    NonnegativeIrreducibility out;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            bool covered = false;
            for (std::size_t k = 0; k < mz.zeros.size() && !covered; ++k) {
                const auto& u = mz.zeros[k].vector;
                const auto& au = products[k];
                if (is_zero_tol(au[i], tau) && is_zero_tol(au[j], tau) && is_positive_tol(u[i] + u[j], tau)) {
                    out.witnesses.push_back(PairWitness{i, j, static_cast<int>(k)});
                    covered = true;
                }
            }
            if (!covered) out.uncovered.emplace_back(i, j);
        }
    }
    out.irreducible = out.uncovered.empty();
    return out;
}

int float_rank(std::vector<std::vector<double>> rows, double tau) {
    if (rows.empty()) return 0;
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows.front().size());
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int best = r;
        for (int i = r + 1; i < m; ++i) {
            if (std::abs(rows[i][c]) > std::abs(rows[best][c])) best = i;
        }
        if (std::abs(rows[best][c]) <= tau) continue;
        std::swap(rows[best], rows[r]);
        for (int i = r + 1; i < m; ++i) {
            const double f = rows[i][c] / rows[r][c];
            for (int j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

// alpha for a single entry, exact when the entry is -1, 0 or 1.
std::pair<double, std::optional<Rational>> alpha_of(const Rational& x) {
    if (x == Rational(-1)) return {0.0, Rational(0)};
    if (x.is_zero()) return {0.5, Rational(1, 2)};
    if (x == Rational(1)) return {1.0, Rational(1)};
    return {std::acos(-x.to_double()) / std::numbers::pi, std::nullopt};
}

std::pair<double, std::optional<Rational>> alpha_of(double x) {
    if (x == -1.0) return {0.0, Rational(0)};
    if (x == 0.0) return {0.5, Rational(1, 2)};
    if (x == 1.0) return {1.0, Rational(1)};
    return {std::acos(std::clamp(-x, -1.0, 1.0)) / std::numbers::pi, std::nullopt};
}

void check_unit_diagonal(const Rational& d, int i, double) {
    if (d != Rational(1)) throw OutOfRange("diagonal entry " + std::to_string(i + 1) + " is " + d.to_string() + ", not 1");
}
void check_unit_diagonal(double d, int i, double tau) {
    if (std::abs(d - 1.0) > tau) throw OutOfRange("diagonal entry " + std::to_string(i + 1) + " is not 1");
}
void check_off_diagonal(const Rational& x, int i, int j, double) {
    if (abs(x) > Rational(1)) {
        throw OutOfRange("|A_" + std::to_string(i + 1) + std::to_string(j + 1) + "| = |" + x.to_string() + "| exceeds 1");
    }
}
void check_off_diagonal(double x, int i, int j, double tau) {
    if (std::abs(x) > 1.0 + tau) throw OutOfRange("|A_" + std::to_string(i + 1) + std::to_string(j + 1) + "| exceeds 1");
}

/// Linear form over alpha (coefficient, i, j) plus a constant.
struct AlphaForm {
    std::vector<std::tuple<int, int, int>> terms;
    int constant = 0;
};

class RelationEvaluator {
public:
    RelationEvaluator(const AlphaMatrix& alpha, double tau, std::vector<RelationCheck>& out)
        : alpha_(alpha), tau_(tau), out_(out) {}

    void add(char relation, std::vector<int> indices, const AlphaForm& lhs, RelationKind kind, int rhs) {
        RelationCheck check;
        check.relation = relation;
        check.indices = std::move(indices);
        check.kind = kind;
        check.rhs = rhs;
        double value = lhs.constant;
        Rational exact_value(lhs.constant);
        bool exact = true;
        for (auto [c, i, j] : lhs.terms) {
            value += c * alpha_.value(i, j);
            if (const auto& e = alpha_.exact(i, j)) {
                exact_value += Rational(c) * *e;
            } else {
                exact = false;
            }
        }
        check.lhs = value;
        check.exact = exact;
        if (exact) {
            const auto cmp = exact_value <=> Rational(rhs);
            check.pass = kind == RelationKind::Equal ? cmp == 0 : kind == RelationKind::GreaterEqual ? cmp >= 0 : cmp > 0;
        } else {
            const double diff = value - rhs;
            check.pass = kind == RelationKind::Equal          ? std::abs(diff) <= tau_
                         : kind == RelationKind::GreaterEqual ? diff >= -tau_
                                                               : diff > tau_;
        }
        out_.push_back(std::move(check));
    }

    void skip(char relation, std::vector<int> indices) {
        RelationCheck check;
        check.relation = relation;
        check.indices = std::move(indices);
        check.evaluated = false;
        out_.push_back(std::move(check));
    }

    // B_I in MC_|I| (strict: relative interior) for |I| = 2, 3, with B = 2 alpha - 1.
    void cut_polytope(char relation, IndexSet set, bool strict) {
        const auto idx = set.elements();
        const RelationKind kind = strict ? RelationKind::Greater : RelationKind::GreaterEqual;
        if (idx.size() == 2) {
            // -1 <= 2a - 1 <= 1  <=>  a >= 0 and -a >= -1
            add(relation, idx, AlphaForm{{{2, idx[0], idx[1]}}, -1}, kind, -1);
            add(relation, idx, AlphaForm{{{-2, idx[0], idx[1]}}, 1}, kind, -1);
        } else if (idx.size() == 3) {
            static constexpr int kSigns[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
            const std::pair<int, int> pairs[3] = {{idx[0], idx[1]}, {idx[0], idx[2]}, {idx[1], idx[2]}};
            for (const auto& s : kSigns) {
                AlphaForm form;
                for (int p = 0; p < 3; ++p) {
                    form.terms.emplace_back(2 * s[p], pairs[p].first, pairs[p].second);
                    form.constant -= s[p];
                }
                add(relation, idx, form, kind, -1);
            }
        } else {
            skip(relation, idx);
        }
    }

private:
    const AlphaMatrix& alpha_;
    double tau_;
    std::vector<RelationCheck>& out_;
};

template <typename T>
RelationReport lin_rel_impl(const SymmetricMatrix<T>& a, const SupportFamily& supports, double tau) {
    const int n = a.dim();
    if (supports.n() != n) throw DimensionMismatch("support family ground set does not match matrix");
    RelationReport report;
    report.alpha = AlphaMatrix(n);
    for (int i = 0; i < n; ++i) {
        check_unit_diagonal(a(i, i), i, tau);
        for (int j = i + 1; j < n; ++j) {
            check_off_diagonal(a(i, j), i, j, tau);
            auto [v, e] = alpha_of(a(i, j));
            report.alpha.set(i, j, v, std::move(e));
        }
    }

    RelationEvaluator eval(report.alpha, tau, report.checks);
    const auto& sets = supports.sets();
    auto is_support = [&](IndexSet s) { return supports.contains(s); };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const IndexSet pair = IndexSet::of({i, j});
            if (is_support(pair)) {
                eval.add('a', {i, j}, AlphaForm{{{1, i, j}}, 0}, RelationKind::Equal, 0);
            } else {
                eval.add('b', {i, j}, AlphaForm{{{1, i, j}}, 0}, RelationKind::Greater, 0);
            }
        }
    }

    for (IndexSet s : sets) {
        if (s.size() >= 2) eval.cut_polytope('c', s, false);
    }

    std::set<IndexSet> strict_subsets;
    for (IndexSet s : sets) {
        for (std::uint32_t sub = (s.bits() - 1) & s.bits(); sub != 0; sub = (sub - 1) & s.bits()) {
            if (IndexSet(sub).size() >= 2) strict_subsets.insert(IndexSet(sub));
        }
    }
    for (IndexSet s : strict_subsets) eval.cut_polytope('d', s, true);

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const IndexSet triple = IndexSet::of({i, j, k});
                const AlphaForm sum{{{1, i, j}, {1, i, k}, {1, j, k}}, 0};
                if (is_support(triple)) eval.add('e', {i, j, k}, sum, RelationKind::Equal, 1);
                const bool covers = std::any_of(sets.begin(), sets.end(), [&](IndexSet s) { return s.subset_of(triple); });
                if (!covers) eval.add('f', {i, j, k}, sum, RelationKind::Greater, 1);
            }
        }
    }

    for (IndexSet s : sets) {
        if (s.size() != 2) continue;
        const auto e = s.elements();
        for (int k = 0; k < n; ++k) {
            if (s.contains(k)) continue;
            eval.add('g', {e[0], e[1], k}, AlphaForm{{{1, e[0], k}, {1, e[1], k}}, 0}, RelationKind::GreaterEqual, 1);
        }
    }

    if (n >= 5) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != 5) continue;
            const auto idx = IndexSet(mask).elements();
            AlphaForm form;
            for (std::size_t p = 0; p < idx.size(); ++p) {
                for (std::size_t q = p + 1; q < idx.size(); ++q) form.terms.emplace_back(1, idx[p], idx[q]);
            }
            eval.add('h', idx, form, RelationKind::GreaterEqual, 4);
        }
    }
    return report;
}

}  // namespace

NonnegativeIrreducibility irreducible_wrt_nonnegative(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz) {
    return nonnegative_impl(a, mz, 0.0);
}

NonnegativeIrreducibility irreducible_wrt_nonnegative(const SymmetricFloatMatrix& a, const FloatMinimalZeroSet& mz,
                                                      double tau) {
    return nonnegative_impl(a, mz, tau);
}

PsdIrreducibility irreducible_wrt_psd(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz) {
    std::vector<Vector<Rational>> vectors;
    for (const auto& z : mz.zeros) vectors.push_back(z.vector);
    PsdIrreducibility out;
    out.span_rank = rank(vectors);
    out.irreducible = out.span_rank == a.dim();
    return out;
}

PsdIrreducibility irreducible_wrt_psd(const SymmetricFloatMatrix& a, const FloatMinimalZeroSet& mz, double tau) {
    std::vector<std::vector<double>> rows;
    for (const auto& z : mz.zeros) rows.push_back(z.vector);
    PsdIrreducibility out;
    out.span_rank = float_rank(std::move(rows), tau);
    out.irreducible = out.span_rank == a.dim();
    return out;
}

bool irreducible_wrt_generator(const SymmetricRationalMatrix& a, const MinimalZeroSet& mz, const Generator& gen) {
    if (const auto* e = std::get_if<Eij>(&gen)) {
        if (e->i < 0 || e->j < 0 || e->i >= a.dim() || e->j >= a.dim()) throw PreconditionViolation("E_ij index out of range");
        for (const auto& z : mz.zeros) {
            const auto au = a.apply(z.vector);
            if (au[e->i].is_zero() && au[e->j].is_zero() && (z.vector[e->i] + z.vector[e->j]).sign() > 0) return true;
        }
        return false;
    }
    const auto& w = std::get<RankOne>(gen).w;
    if (static_cast<int>(w.size()) != a.dim()) throw DimensionMismatch("generator vector length does not match matrix");
    if (std::all_of(w.begin(), w.end(), [](const Rational& x) { return x.is_zero(); })) {
        throw PreconditionViolation("rank-one generator needs a nonzero vector");
    }
    return std::any_of(mz.zeros.begin(), mz.zeros.end(), [&](const Zero& z) { return !dot(w, z.vector).is_zero(); });
}

AlphaMatrix::AlphaMatrix(int n)
    : n_(n), values_(static_cast<std::size_t>(n) * n, 1.0), exact_(static_cast<std::size_t>(n) * n, Rational(1)) {}

std::size_t AlphaMatrix::index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

double AlphaMatrix::value(int i, int j) const { return values_[index(i, j)]; }

const std::optional<Rational>& AlphaMatrix::exact(int i, int j) const { return exact_[index(i, j)]; }

void AlphaMatrix::set(int i, int j, double value, std::optional<Rational> exact) {
    values_[index(i, j)] = value;
    values_[index(j, i)] = value;
    exact_[index(i, j)] = exact;
    exact_[index(j, i)] = std::move(exact);
}

bool RelationReport::holds(char relation) const {
    return std::all_of(checks.begin(), checks.end(),
                       [&](const RelationCheck& c) { return c.relation != relation || !c.evaluated || c.pass; });
}

nlohmann::json RelationReport::to_json() const {
    nlohmann::json j;
    nlohmann::json alpha_rows = nlohmann::json::array();
    for (int i = 0; i < alpha.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < alpha.n(); ++k) row.push_back(alpha.value(i, k));
        alpha_rows.push_back(std::move(row));
    }
    j["alpha"] = std::move(alpha_rows);
    nlohmann::json rel = nlohmann::json::object();
    for (char r = 'a'; r <= 'h'; ++r) {
        int instances = 0;
        int skipped = 0;
        nlohmann::json failures = nlohmann::json::array();
        for (const auto& c : checks) {
            if (c.relation != r) continue;
            if (!c.evaluated) {
                ++skipped;
                continue;
            }
            ++instances;
            if (!c.pass) {
                nlohmann::json idx = nlohmann::json::array();
                for (int i : c.indices) idx.push_back(i + 1);
                failures.push_back({{"indices", idx}, {"lhs", c.lhs}, {"rhs", c.rhs}});
            }
        }
        rel[std::string(1, r)] = {{"holds", holds(r)}, {"instances", instances}, {"not_evaluated", skipped},
                                  {"failures", failures}};
    }
    j["relations"] = std::move(rel);
    return j;
}

RelationReport lin_rel_check(const SymmetricRationalMatrix& a, const SupportFamily& supports, double tau) {
    return lin_rel_impl(a, supports, tau);
}

RelationReport lin_rel_check(const SymmetricFloatMatrix& a, const SupportFamily& supports, double tau) {
    return lin_rel_impl(a, supports, tau);
}

}  // namespace copos
