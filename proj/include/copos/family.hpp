#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace copos {

/// Largest ground set an IndexSet can hold.
inline constexpr int kMaxGroundSet = 32;

/**
 * Subset of {0, ..., n-1} stored as a bitmask. Printed 1-based.
 *
 * Ordering is by cardinality first, then lexicographic on the sorted
 * element list; every family in this library is sorted with it.
 */
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint32_t bits) : bits_(bits) {}

    /// From 0-based indices.
    static IndexSet of(std::initializer_list<int> zero_based);
    static IndexSet of(const std::vector<int>& zero_based);
    /// {0, ..., k-1}
    static constexpr IndexSet prefix(int k) { return IndexSet(k >= 32 ? ~0u : ((1u << k) - 1)); }

    [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    [[nodiscard]] constexpr bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool strict_subset_of(IndexSet other) const { return subset_of(other) && bits_ != other.bits_; }
    [[nodiscard]] constexpr int max_element() const { return bits_ == 0 ? -1 : 31 - std::countl_zero(bits_); }

    /// 0-based elements, ascending.
    [[nodiscard]] std::vector<int> elements() const;
    /// e.g. "{1,2,5}"
    [[nodiscard]] std::string to_string() const;

    constexpr IndexSet with(int i) const { return IndexSet(bits_ | (1u << i)); }
    constexpr IndexSet without(int i) const { return IndexSet(bits_ & ~(1u << i)); }
    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }

    friend constexpr bool operator==(IndexSet a, IndexSet b) = default;
    friend constexpr std::strong_ordering operator<=>(IndexSet a, IndexSet b) {
        if (a.bits_ == b.bits_) return std::strong_ordering::equal;
        if (a.size() != b.size()) return a.size() <=> b.size();
        // The set holding the smallest differing element is lexicographically first.
        const std::uint32_t low = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
        return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    std::uint32_t bits_ = 0;
};

/**
 * A collection of nonempty index subsets of {1..n}, deduplicated and sorted
 * by (cardinality, lexicographic).
 */
class SupportFamily {
public:
    SupportFamily() = default;
    SupportFamily(int n, std::vector<IndexSet> sets);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const std::vector<IndexSet>& sets() const { return sets_; }
    [[nodiscard]] std::size_t size() const { return sets_.size(); }
    [[nodiscard]] bool empty() const { return sets_.empty(); }
    [[nodiscard]] bool contains(IndexSet s) const;

    [[nodiscard]] SupportFamily with(IndexSet s) const;
    /// Image under a relabeling, perm[i] = image of 0-based index i.
    [[nodiscard]] SupportFamily relabel(const std::vector<int>& perm) const;

    /// Family literal: `{1,2},{2,3}`.
    [[nodiscard]] std::string to_string() const;
    /// Array of 1-based index arrays.
    [[nodiscard]] nlohmann::json to_json() const;

    friend bool operator==(const SupportFamily&, const SupportFamily&) = default;
    friend std::strong_ordering operator<=>(const SupportFamily& a, const SupportFamily& b);

private:
    int n_ = 0;
    std::vector<IndexSet> sets_;
};

/// Parses `{1,2},{2,3,4}` (1-based). Whitespace is ignored. Throws ParseError.
SupportFamily parse_family(int n, std::string_view text);
SupportFamily family_from_json(int n, const nlohmann::json& j);

}  // namespace copos
