#include "copos/condition_v.hpp"

#include <algorithm>
#include <set>

#include "copos/errors.hpp"

namespace copos {

CutPolytopeVertices::CutPolytopeVertices(int size) : k(size) {
    if (k < 1 || k > 20) throw DimensionMismatch("cut polytope size must be in 1..20");
    for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::vector<int> v(k, 1);
        for (int i = 1; i < k; ++i) {
            if ((mask >> (i - 1)) & 1u) v[i] = -1;
        }
        signs.push_back(std::move(v));
    }
}

namespace {

std::string joined(IndexSet s, char sep) {
    std::string out;
    for (int i : s.elements()) {
        if (!out.empty()) out += sep;
        out += std::to_string(i + 1);
    }
    return out;
}

void add_block(ConditionVProgram& prog, char relation, IndexSet set) {
    auto& lp = prog.lp;
    const auto idx = set.elements();
    const int k = static_cast<int>(idx.size());
    const CutPolytopeVertices verts(k);
    LambdaBlock block{relation, set, lp.num_variables(), static_cast<int>(verts.size())};
    const std::string tag = std::string(1, relation) + joined(set, '_');
    for (std::size_t v = 0; v < verts.size(); ++v) lp.add_variable("l" + tag + "." + std::to_string(v));

    std::vector<LpTerm> sum;
    for (int v = 0; v < block.count; ++v) sum.push_back({block.first_var + v, 1});
    lp.add_constraint(std::move(sum), Relation::Eq, 1, std::string("(") + relation + ") weights " + set.to_string());
    for (int p = 0; p < k; ++p) {
        for (int q = p + 1; q < k; ++q) {
            // 2 alpha_pq - sum_v lambda_v (vv^T)_pq = 1
            std::vector<LpTerm> row{{prog.alpha(idx[p], idx[q]), 2}};
            for (int v = 0; v < block.count; ++v) row.push_back({block.first_var + v, -verts.entry(v, p, q)});
            lp.add_constraint(std::move(row), Relation::Eq, 1,
                              std::string("(") + relation + ") coupling " + set.to_string() + " pair " +
                                  std::to_string(idx[p] + 1) + "," + std::to_string(idx[q] + 1));
        }
    }
    if (relation == 'd') {
        // lambda_v >= eps / 2^k
        const Rational scale(1, 1LL << k);
        for (int v = 0; v < block.count; ++v) {
            lp.add_constraint({{block.first_var + v, 1}, {prog.eps, -scale}}, Relation::Ge, 0,
                              "(d) interior " + set.to_string());
        }
    }
    prog.blocks.push_back(block);
}

}  // namespace

ConditionVProgram build_condition_v_lp(const SupportFamily& f) {
    const auto pre = cond_i_ii(f);
    if (!pre.cond_i.passed() || !pre.cond_ii.passed()) {
        throw PreconditionViolation("condition (v) needs a family satisfying (i) and (ii)");
    }
    const int n = f.n();
    ConditionVProgram prog;
    prog.n = n;
    prog.alpha_index.assign(static_cast<std::size_t>(n) * n, -1);
    auto& lp = prog.lp;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int v = lp.add_variable("a" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            prog.alpha_index[static_cast<std::size_t>(i) * n + j] = v;
            prog.alpha_index[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    prog.eps = lp.add_variable("eps");

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) lp.add_le({{prog.alpha(i, j), 1}}, 1, "alpha <= 1");
    }
    lp.add_le({{prog.eps, 1}}, 1, "eps <= 1");

    const auto& sets = f.sets();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const IndexSet pair = IndexSet::of({i, j});
            if (f.contains(pair)) {
                lp.add_constraint({{prog.alpha(i, j), 1}}, Relation::Eq, 0, "(a) " + pair.to_string());
            } else {
                lp.add_constraint({{prog.alpha(i, j), 1}, {prog.eps, -1}}, Relation::Ge, 0, "(b) " + pair.to_string());
            }
        }
    }

    for (IndexSet s : sets) {
        if (s.size() >= 3) add_block(prog, 'c', s);
    }
    std::set<IndexSet> inner;
    for (IndexSet s : sets) {
        for (std::uint32_t sub = (s.bits() - 1) & s.bits(); sub != 0; sub = (sub - 1) & s.bits()) {
            if (std::popcount(sub) >= 2) inner.insert(IndexSet(sub));
        }
    }
    for (IndexSet s : inner) add_block(prog, 'd', s);

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const IndexSet triple = IndexSet::of({i, j, k});
                std::vector<LpTerm> sum{{prog.alpha(i, j), 1}, {prog.alpha(i, k), 1}, {prog.alpha(j, k), 1}};
                if (f.contains(triple)) {
                    lp.add_constraint(sum, Relation::Eq, 1, "(e) " + triple.to_string());
                }
                const bool covers = std::any_of(sets.begin(), sets.end(), [&](IndexSet s) { return s.subset_of(triple); });
                if (!covers) {
                    sum.push_back({prog.eps, -1});
                    lp.add_constraint(std::move(sum), Relation::Ge, 1, "(f) " + triple.to_string());
                }
            }
        }
    }

    for (IndexSet s : sets) {
        if (s.size() != 2) continue;
        const auto e = s.elements();
        for (int k = 0; k < n; ++k) {
            if (s.contains(k)) continue;
            lp.add_constraint({{prog.alpha(e[0], k), 1}, {prog.alpha(e[1], k), 1}}, Relation::Ge, 1,
                              "(g) " + s.to_string() + " with " + std::to_string(k + 1));
        }
    }

    if (n >= 5) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != 5) continue;
            const auto idx = IndexSet(mask).elements();
            std::vector<LpTerm> row;
            for (int p = 0; p < 5; ++p) {
                for (int q = p + 1; q < 5; ++q) row.push_back({prog.alpha(idx[p], idx[q]), 1});
            }
            lp.add_constraint(std::move(row), Relation::Ge, 4, "(h) " + IndexSet(mask).to_string());
        }
    }

    lp.set_objective({{prog.eps, 1}});
    return prog;
}

ConditionOutcome holds_condition_v(const SupportFamily& f) {
    const auto pre = cond_i_ii(f);
    if (!pre.cond_i.passed() || !pre.cond_ii.passed()) return ConditionOutcome::not_evaluated("requires (i) and (ii)");
    const ConditionVProgram prog = build_condition_v_lp(f);
    const LpOutcome out = simplex_solve(prog.lp);
    if (out.status == LpStatus::Infeasible) {
        nlohmann::json rows = nlohmann::json::array();
        const auto& cons = prog.lp.constraints();
        for (std::size_t i = 0; i < cons.size(); ++i) {
            if (!out.farkas[i].is_zero()) rows.push_back({{"constraint", cons[i].label}, {"multiplier", out.farkas[i].to_string()}});
        }
        return ConditionOutcome::fail({{"status", "infeasible"}, {"farkas", rows}}, "the relations (a)-(h) are infeasible");
    }
    // eps <= 1 keeps the program bounded.
    nlohmann::json alpha = nlohmann::json::object();
    for (int i = 0; i < f.n(); ++i) {
        for (int j = i + 1; j < f.n(); ++j) alpha[std::to_string(i + 1) + "," + std::to_string(j + 1)] = out.point[prog.alpha(i, j)].to_string();
    }
    nlohmann::json cert{{"status", to_string(out.status)}, {"epsilon", out.value.to_string()}, {"alpha", alpha}};
    if (out.value.sign() > 0) return ConditionOutcome::pass(cert, "optimal eps = " + out.value.to_string());
    return ConditionOutcome::fail(cert, "optimal eps = " + out.value.to_string() + " is not positive");
}

bool condition_v_passes(const SupportFamily& f) {
    const LpOutcome out = simplex_solve(build_condition_v_lp(f).lp);
    return out.status != LpStatus::Infeasible && out.value.sign() > 0;
}

}  // namespace copos
