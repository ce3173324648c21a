#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "copos/family.hpp"

namespace copos {

enum class Verdict { Pass, Fail, NotEvaluated };

std::string to_string(Verdict v);

struct ConditionOutcome {
    Verdict verdict = Verdict::NotEvaluated;
    nlohmann::json witness;  ///< null unless verdict == Fail (or a certificate on Pass)
    std::string detail;

    [[nodiscard]] bool passed() const { return verdict == Verdict::Pass; }
    [[nodiscard]] nlohmann::json to_json() const;

    static ConditionOutcome pass(nlohmann::json certificate = nullptr, std::string detail = {});
    static ConditionOutcome fail(nlohmann::json witness, std::string detail);
    static ConditionOutcome not_evaluated(std::string why);
};

struct ConditionReport {
    ConditionOutcome cond_i;
    ConditionOutcome cond_ii;
    ConditionOutcome cond_iii;
    ConditionOutcome cond_iv;
    ConditionOutcome cond_v;

    [[nodiscard]] const ConditionOutcome& get(int index) const;  ///< 1..5
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

struct CondIAndII {
    ConditionOutcome cond_i;
    ConditionOutcome cond_ii;
};

/// (i) every member has 2 <= |I| <= n-2; (ii) no member strictly contains another.
CondIAndII cond_i_ii(const SupportFamily& f);

/**
 * How the intersections I_{i^r} ∩ I of a chain may relate. NonStrict allows
 * equal consecutive intersections; Strict requires proper inclusion.
 */
enum class ChainMode { NonStrict, Strict };

/// Not evaluated unless (i) and (ii) hold. Fail witness: {"I", "S", "j"}.
ConditionOutcome cond_iii(const SupportFamily& f, ChainMode mode = ChainMode::NonStrict);

/// Fail witness lists the bipartite components of G_2 left unmatched.
ConditionOutcome cond_iv(const SupportFamily& f);

/// A connected component of the pair-support graph G_2.
struct G2Component {
    IndexSet vertices;
    bool bipartite = false;
    IndexSet color_class;  ///< one side of a 2-coloring (bipartite components only)
};

/// Components in order of their smallest vertex; isolated vertices are single-vertex components.
std::vector<G2Component> g2_components(const SupportFamily& f);

/// Maximum matching of the contracted component/support graph; returns size, fills match[c] = set index or -1.
int component_matching(const SupportFamily& f, const std::vector<G2Component>& bipartite, std::vector<int>& match);

// Allocation-light predicates on sorted, validated member lists (used by the census).
bool holds_i(int n, std::span<const IndexSet> sets);
bool holds_ii(std::span<const IndexSet> sets);
bool holds_iii(std::span<const IndexSet> sets, ChainMode mode = ChainMode::NonStrict);
bool holds_iv(int n, std::span<const IndexSet> sets);

}  // namespace copos
