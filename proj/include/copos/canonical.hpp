#pragma once

#include <span>
#include <vector>

#include "copos/family.hpp"

namespace copos {

inline constexpr int kMaxCanonicalGroundSet = 9;

/**
 * Least relabeling of a family over all permutations of {1..n}, comparing
 * sorted member lists lexicographically with the IndexSet order.
 *
 * Branch-and-prune over partial permutations: the next member of the image is
 * the least set any unplaced member can still be mapped to, so only
 * assignments reaching that set are explored. Throws GuardExceeded for n > 9.
 */
SupportFamily canonical_form(const SupportFamily& f);

/// True iff f equals its canonical form.
bool is_canonical(const SupportFamily& f);

// Same on a sorted member list over {0..n-1}, without validation.
std::vector<IndexSet> canonical_sets(int n, std::span<const IndexSet> sorted);
bool is_canonical_sets(int n, std::span<const IndexSet> sorted);

}  // namespace copos
