#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "copos/conditions.hpp"
#include "copos/family.hpp"

namespace copos {

/// Subset of conditions (i)-(v).
struct ConditionSet {
    bool i = false;
    bool ii = false;
    bool iii = false;
    bool iv = false;
    bool v = false;

    static ConditionSet all() { return {true, true, true, true, true}; }
    /// Comma-separated roman numerals, e.g. "i,ii,iv". Throws std::invalid_argument.
    static ConditionSet parse(std::string_view text);
    [[nodiscard]] std::vector<std::string> names() const;
    [[nodiscard]] bool empty() const { return !(i || ii || iii || iv || v); }
    friend bool operator==(const ConditionSet&, const ConditionSet&) = default;
};

struct CensusOptions {
    bool prune = true;             ///< cut branches that violate (iii) when (iii) is requested
    int jobs = 1;
    bool allow_long = false;       ///< permit the n = 7 runs
    ChainMode chain = ChainMode::NonStrict;
    std::uint64_t node_budget = 0; ///< canonical families visited; 0 = unlimited
    bool keep_classes = true;
};

struct CensusResult {
    int n = 0;
    ConditionSet conditions;
    std::uint64_t count = 0;
    std::vector<SupportFamily> classes;  ///< canonical, sorted
    std::uint64_t nodes = 0;
    std::int64_t elapsed_ms = 0;

    [[nodiscard]] nlohmann::json to_json() const;
};

/**
 * Isomorph-free enumeration of nonempty families over {1..n} whose members
 * have 2..n-2 elements and form an antichain, keeping those that satisfy the
 * requested conditions. The requested set must contain (i) and (ii).
 *
 * Generation is orderly: a family is extended only by sets following its
 * last member and kept only if it is canonical, so every class is produced
 * exactly once. Throws GuardExceeded for n > 7, for n = 7 without
 * allow_long or without (iii) pruning, and when the node budget runs out.
 */
CensusResult enumerate_classes(int n, const ConditionSet& conditions, const CensusOptions& options = {});

/// Visits every canonical (i),(ii) family once (only (i)-(iii) families when prune_iii).
/// `visit(task, sets)` may run concurrently for different task indices.
struct SearchStats {
    std::uint64_t nodes = 0;
    std::size_t tasks = 0;
};
SearchStats search_families(int n, bool prune_iii, const CensusOptions& options, const std::function<void(std::size_t)>& prepare,
                            const std::function<void(std::size_t, std::span<const IndexSet>)>& visit);

/// Conditions (i)-(v) evaluated standalone; (iii)-(v) are skipped when (i) or (ii) fails.
ConditionReport check_family(const SupportFamily& f, ChainMode chain = ChainMode::NonStrict);

/// Representatives of the 44 classes listed for n = 6, numbered 1..44.
const std::vector<SupportFamily>& table1_families();

struct Table2Row {
    std::string label;
    ConditionSet conditions;
    std::vector<std::string> expected;  ///< for n = 4, 5, 6, 7; lower bounds start with '>'
};

const std::vector<Table2Row>& table2_rows();

struct TableCell {
    std::string row;
    int n = 0;
    std::string expected;
    std::optional<std::uint64_t> actual;  ///< empty when not computed
    bool match = false;
    std::string note;
};

struct TableReport {
    int which = 2;
    std::vector<TableCell> cells;
    // Table 1 comparison
    std::vector<SupportFamily> missing;     ///< listed classes not produced
    std::vector<SupportFamily> unexpected;  ///< produced classes not listed
    std::vector<SupportFamily> produced;

    [[nodiscard]] bool ok() const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string to_text() const;
};

/**
 * Table 2 counts for the given sizes (4..7). For n <= 6 one (i),(ii) pass
 * tallies every row; n = 7 needs allow_long and computes only the rows with
 * (iii) exactly ((i)-(iv) and (i)-(v)); other n = 7 cells are reported as
 * not computed.
 */
TableReport reproduce_table2(const std::vector<int>& sizes, const CensusOptions& options = {});

/// n = 6 census under (i)-(v) compared with the listed classes up to relabeling.
TableReport reproduce_table1(const CensusOptions& options = {});

/// Numbered rows "No.  family", one per line.
std::string format_classes(const std::vector<SupportFamily>& classes);

}  // namespace copos
