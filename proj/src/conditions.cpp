#include "copos/conditions.hpp"

#include <algorithm>
#include <optional>

#include "copos/errors.hpp"

namespace copos {

namespace {

nlohmann::json set_json(IndexSet s) {
    nlohmann::json a = nlohmann::json::array();
    for (int i : s.elements()) a.push_back(i + 1);
    return a;
}

struct IiiViolation {
    IndexSet base;
    std::vector<IndexSet> chain;
    IndexSet j;
};

// Index sets strictly inside some member, deduplicated.
std::vector<std::uint32_t> inner_sets(std::span<const IndexSet> sets) {
    std::vector<std::uint32_t> out;
    for (IndexSet s : sets) {
        const std::uint32_t b = s.bits();
        for (std::uint32_t sub = (b - 1) & b; sub != 0; sub = (sub - 1) & b) out.push_back(sub);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

class IiiSearch {
public:
    IiiSearch(std::span<const IndexSet> sets, ChainMode mode) : sets_(sets), mode_(mode) {
        if (sets.size() > 64) throw GuardExceeded("condition (iii) is limited to families of at most 64 sets");
    }

    std::optional<IiiViolation> run() {
        for (std::uint32_t base : inner_sets(sets_)) {
            base_ = base;
            cand_.clear();
            for (std::size_t c = 0; c < sets_.size(); ++c) {
                if (std::popcount(sets_[c].bits() & ~base) == 1) cand_.push_back(static_cast<int>(c));
            }
            if (cand_.empty()) continue;
            if (mode_ == ChainMode::NonStrict) {
                values_.clear();
                for (int c : cand_) values_.push_back(sets_[c].bits() & base);
                std::sort(values_.begin(), values_.end());
                values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
                for (std::uint32_t v : values_) {
                    chain_values_.assign(1, v);
                    if (extend_values()) return found_;
                }
            } else {
                for (int c : cand_) {
                    chain_members_.assign(1, c);
                    if (extend_members()) return found_;
                }
            }
        }
        return std::nullopt;
    }

private:
    bool check(std::uint64_t in_chain, std::uint32_t cover) {
        for (std::size_t j = 0; j < sets_.size(); ++j) {
            if ((in_chain >> j) & 1u) continue;
            if ((sets_[j].bits() & ~cover) == 0) {
                IiiViolation v{IndexSet(base_), {}, sets_[j]};
                for (std::size_t c = 0; c < sets_.size(); ++c) {
                    if ((in_chain >> c) & 1u) v.chain.push_back(sets_[c]);
                }
                found_ = v;
                return true;
            }
        }
        return false;
    }

    // All candidates whose intersection with the base lies on the value chain.
    bool extend_values() {
        std::uint64_t in_chain = 0;
        std::uint32_t cover = base_;
        for (int c : cand_) {
            const std::uint32_t v = sets_[c].bits() & base_;
            if (std::find(chain_values_.begin(), chain_values_.end(), v) != chain_values_.end()) {
                in_chain |= std::uint64_t{1} << c;
                cover |= sets_[c].bits();
            }
        }
        if (check(in_chain, cover)) return true;
        const std::uint32_t last = chain_values_.back();
        for (std::uint32_t w : values_) {
            if (w != last && (last & ~w) == 0) {
                chain_values_.push_back(w);
                if (extend_values()) return true;
                chain_values_.pop_back();
            }
        }
        return false;
    }

    // One member per link, intersections strictly increasing.
    bool extend_members() {
        std::uint64_t in_chain = 0;
        std::uint32_t cover = base_;
        for (int c : chain_members_) {
            in_chain |= std::uint64_t{1} << c;
            cover |= sets_[c].bits();
        }
        if (check(in_chain, cover)) return true;
        const std::uint32_t last = sets_[chain_members_.back()].bits() & base_;
        for (int c : cand_) {
            const std::uint32_t w = sets_[c].bits() & base_;
            if (w != last && (last & ~w) == 0) {
                chain_members_.push_back(c);
                if (extend_members()) return true;
                chain_members_.pop_back();
            }
        }
        return false;
    }

    std::span<const IndexSet> sets_;
    ChainMode mode_;
    std::uint32_t base_ = 0;
    std::vector<int> cand_;
    std::vector<std::uint32_t> values_;
    std::vector<std::uint32_t> chain_values_;
    std::vector<int> chain_members_;
    IiiViolation found_;
};

std::vector<G2Component> components_of(int n, std::span<const IndexSet> sets) {
    std::vector<std::uint32_t> adj(n, 0);
    for (IndexSet s : sets) {
        if (s.size() != 2) continue;
        const auto e = s.elements();
        adj[e[0]] |= 1u << e[1];
        adj[e[1]] |= 1u << e[0];
    }
    std::vector<int> color(n, -1);
    std::vector<G2Component> out;
    for (int start = 0; start < n; ++start) {
        if (color[start] >= 0) continue;
        G2Component comp;
        comp.bipartite = true;
        std::vector<int> stack{start};
        color[start] = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.vertices = comp.vertices.with(v);
            if (color[v] == 0) comp.color_class = comp.color_class.with(v);
            for (int w = 0; w < n; ++w) {
                if (!((adj[v] >> w) & 1u)) continue;
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    stack.push_back(w);
                } else if (color[w] == color[v]) {
                    comp.bipartite = false;
                }
            }
        }
        if (!comp.bipartite) comp.color_class = IndexSet();
        out.push_back(comp);
    }
    return out;
}

bool augment(int c, const std::vector<std::vector<int>>& edges, std::vector<int>& owner, std::vector<char>& seen,
             std::vector<int>& match) {
    for (int w : edges[c]) {
        if (seen[w]) continue;
        seen[w] = 1;
        if (owner[w] < 0 || augment(owner[w], edges, owner, seen, match)) {
            owner[w] = c;
            match[c] = w;
            return true;
        }
    }
    return false;
}

int matching(std::span<const IndexSet> sets, const std::vector<G2Component>& bipartite, std::vector<int>& match) {
    std::vector<std::vector<int>> edges(bipartite.size());
    for (std::size_t c = 0; c < bipartite.size(); ++c) {
        for (std::size_t w = 0; w < sets.size(); ++w) {
            if (sets[w].size() >= 3 && !(sets[w] & bipartite[c].vertices).empty()) edges[c].push_back(static_cast<int>(w));
        }
    }
    match.assign(bipartite.size(), -1);
    std::vector<int> owner(sets.size(), -1);
    int size = 0;
    for (std::size_t c = 0; c < bipartite.size(); ++c) {
        std::vector<char> seen(sets.size(), 0);
        if (augment(static_cast<int>(c), edges, owner, seen, match)) ++size;
    }
    return size;
}

std::vector<G2Component> bipartite_only(std::vector<G2Component> comps) {
    std::erase_if(comps, [](const G2Component& c) { return !c.bipartite; });
    return comps;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotEvaluated: return "not_evaluated";
    }
    return "not_evaluated";
}

nlohmann::json ConditionOutcome::to_json() const {
    nlohmann::json j{{"verdict", to_string(verdict)}};
    if (!witness.is_null()) j[verdict == Verdict::Fail ? "witness" : "certificate"] = witness;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

ConditionOutcome ConditionOutcome::pass(nlohmann::json certificate, std::string detail) {
    return ConditionOutcome{Verdict::Pass, std::move(certificate), std::move(detail)};
}

ConditionOutcome ConditionOutcome::fail(nlohmann::json witness, std::string detail) {
    return ConditionOutcome{Verdict::Fail, std::move(witness), std::move(detail)};
}

ConditionOutcome ConditionOutcome::not_evaluated(std::string why) {
    return ConditionOutcome{Verdict::NotEvaluated, nullptr, std::move(why)};
}

const ConditionOutcome& ConditionReport::get(int index) const {
    switch (index) {
        case 1: return cond_i;
        case 2: return cond_ii;
        case 3: return cond_iii;
        case 4: return cond_iv;
        default: return cond_v;
    }
}

bool ConditionReport::all_pass() const {
    return cond_i.passed() && cond_ii.passed() && cond_iii.passed() && cond_iv.passed() && cond_v.passed();
}

nlohmann::json ConditionReport::to_json() const {
    return {{"i", cond_i.to_json()},
            {"ii", cond_ii.to_json()},
            {"iii", cond_iii.to_json()},
            {"iv", cond_iv.to_json()},
            {"v", cond_v.to_json()}};
}

CondIAndII cond_i_ii(const SupportFamily& f) {
    CondIAndII out;
    const int n = f.n();
    out.cond_i = ConditionOutcome::pass();
    for (IndexSet s : f.sets()) {
        if (s.size() < 2 || s.size() > n - 2) {
            out.cond_i = ConditionOutcome::fail({{"set", set_json(s)}, {"size", s.size()}, {"bounds", {2, n - 2}}},
                                                s.to_string() + " has " + std::to_string(s.size()) +
                                                    " elements, outside [2, " + std::to_string(n - 2) + "]");
            break;
        }
    }
    out.cond_ii = ConditionOutcome::pass();
    for (IndexSet a : f.sets()) {
        for (IndexSet b : f.sets()) {
            if (a.strict_subset_of(b)) {
                out.cond_ii = ConditionOutcome::fail({{"subset", set_json(a)}, {"superset", set_json(b)}},
                                                     a.to_string() + " is strictly contained in " + b.to_string());
                return out;
            }
        }
    }
    return out;
}

ConditionOutcome cond_iii(const SupportFamily& f, ChainMode mode) {
    const auto pre = cond_i_ii(f);
    if (!pre.cond_i.passed() || !pre.cond_ii.passed()) return ConditionOutcome::not_evaluated("requires (i) and (ii)");
    IiiSearch search(f.sets(), mode);
    const auto v = search.run();
    if (!v) return ConditionOutcome::pass();
    nlohmann::json chain = nlohmann::json::array();
    for (IndexSet s : v->chain) chain.push_back(set_json(s));
    return ConditionOutcome::fail({{"I", set_json(v->base)}, {"S", chain}, {"j", set_json(v->j)}},
                                  "I = " + v->base.to_string() + ": " + v->j.to_string() +
                                      " lies in I plus the extra indices of the chain but is not part of it");
}

std::vector<G2Component> g2_components(const SupportFamily& f) { return components_of(f.n(), f.sets()); }

int component_matching(const SupportFamily& f, const std::vector<G2Component>& bipartite, std::vector<int>& match) {
    return matching(f.sets(), bipartite, match);
}

ConditionOutcome cond_iv(const SupportFamily& f) {
    const auto comps = bipartite_only(g2_components(f));
    std::vector<int> match;
    const int size = component_matching(f, comps, match);
    const int r = static_cast<int>(comps.size());
    if (size == r) {
        nlohmann::json pairs = nlohmann::json::array();
        for (int c = 0; c < r; ++c) {
            pairs.push_back({{"component", set_json(comps[c].vertices)}, {"support", set_json(f.sets()[match[c]])}});
        }
        return ConditionOutcome::pass(pairs, "r = " + std::to_string(r));
    }
    nlohmann::json unmatched = nlohmann::json::array();
    for (int c = 0; c < r; ++c) {
        if (match[c] < 0) unmatched.push_back(set_json(comps[c].vertices));
    }
    return ConditionOutcome::fail({{"r", r}, {"matching_size", size}, {"unmatched_components", unmatched}},
                                  "maximum matching has size " + std::to_string(size) + " < r = " + std::to_string(r));
}

bool holds_i(int n, std::span<const IndexSet> sets) {
    return std::all_of(sets.begin(), sets.end(), [&](IndexSet s) { return s.size() >= 2 && s.size() <= n - 2; });
}

bool holds_ii(std::span<const IndexSet> sets) {
    for (IndexSet a : sets) {
        for (IndexSet b : sets) {
            if (a.strict_subset_of(b)) return false;
        }
    }
    return true;
}

bool holds_iii(std::span<const IndexSet> sets, ChainMode mode) {
    IiiSearch search(sets, mode);
    return !search.run().has_value();
}

bool holds_iv(int n, std::span<const IndexSet> sets) {
    const auto comps = bipartite_only(components_of(n, sets));
    std::vector<int> match;
    return matching(sets, comps, match) == static_cast<int>(comps.size());
}

}  // namespace copos
