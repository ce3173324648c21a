#include "copos/canonical.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "copos/errors.hpp"

namespace copos {

namespace {

void check_ground_set(int n) {
    if (n > kMaxCanonicalGroundSet) {
        throw GuardExceeded("canonical forms are limited to n <= " + std::to_string(kMaxCanonicalGroundSet));
    }
}

// k lowest set bits of mask.
std::uint32_t lowest_bits(std::uint32_t mask, int k) {
    std::uint32_t out = 0;
    for (int i = 0; i < k; ++i) {
        const std::uint32_t low = mask & (~mask + 1);
        out |= low;
        mask ^= low;
    }
    return out;
}

class Relabeler {
public:
    enum class Mode { Check, Minimize };

    Relabeler(int n, std::span<const IndexSet> sorted, Mode mode)
        : n_(n), src_(sorted), mode_(mode), placed_(sorted.size(), 0), image_(sorted.size()) {
        map_.fill(-1);
        if (mode_ == Mode::Check) best_.assign(sorted.begin(), sorted.end());
    }

    /// Check mode: true iff some relabeling is strictly smaller than the input.
    bool run() { return step(0); }

    std::vector<IndexSet> best() && { return std::move(best_); }

private:
    struct Reach {
        std::uint32_t image;
        std::uint32_t fixed;  // image of already assigned elements
        std::uint32_t open;   // unassigned elements of the source set
    };

    Reach reach(IndexSet s) const {
        std::uint32_t fixed = 0;
        std::uint32_t open = 0;
        for (std::uint32_t b = s.bits(); b != 0; b &= b - 1) {
            const int i = std::countr_zero(b);
            if (map_[i] >= 0) {
                fixed |= 1u << map_[i];
            } else {
                open |= 1u << i;
            }
        }
        const std::uint32_t free = ((n_ >= 32 ? 0u : (1u << n_)) - 1) & ~used_;
        return {fixed | lowest_bits(free, std::popcount(open)), fixed, open};
    }

    // Sign of image_[0..t) compared with best_[0..t).
    int prefix_order(std::size_t t) const {
        for (std::size_t i = 0; i < t; ++i) {
            if (image_[i] != best_[i]) return image_[i] < best_[i] ? -1 : 1;
        }
        return 0;
    }

    bool step(std::size_t t) {
        if (t == src_.size()) {
            if (mode_ == Mode::Minimize && (best_.empty() || prefix_order(t) < 0)) best_ = image_;
            return false;
        }
        std::optional<IndexSet> least;
        for (std::size_t k = 0; k < src_.size(); ++k) {
            if (placed_[k]) continue;
            const IndexSet img(reach(src_[k]).image);
            if (!least || img < *least) least = img;
        }
        const IndexSet v = *least;
        if (!best_.empty()) {
            const int rel = prefix_order(t);
            if (rel > 0) return false;
            if (rel == 0) {
                if (v > best_[t]) return false;
                if (v < best_[t] && mode_ == Mode::Check) return true;
            }
        }
        image_[t] = v;
        for (std::size_t k = 0; k < src_.size(); ++k) {
            if (placed_[k]) continue;
            const Reach r = reach(src_[k]);
            if (r.image != v.bits()) continue;
            std::array<int, 32> from{};
            std::array<int, 32> to{};
            int m = 0;
            for (std::uint32_t b = r.open; b != 0; b &= b - 1) from[m++] = std::countr_zero(b);
            int q = 0;
            for (std::uint32_t b = r.image & ~r.fixed; b != 0; b &= b - 1) to[q++] = std::countr_zero(b);
            placed_[k] = 1;
            used_ |= r.image & ~r.fixed;
            do {
                for (int i = 0; i < m; ++i) map_[from[i]] = to[i];
                if (step(t + 1)) return true;
            } while (std::next_permutation(to.begin(), to.begin() + m));
            for (int i = 0; i < m; ++i) map_[from[i]] = -1;
            used_ &= ~(r.image & ~r.fixed);
            placed_[k] = 0;
        }
        return false;
    }

    int n_;
    std::span<const IndexSet> src_;
    Mode mode_;
    std::array<int, 32> map_{};
    std::uint32_t used_ = 0;
    std::vector<char> placed_;
    std::vector<IndexSet> image_;
    std::vector<IndexSet> best_;
};

}  // namespace

std::vector<IndexSet> canonical_sets(int n, std::span<const IndexSet> sorted) {
    check_ground_set(n);
    if (sorted.empty()) return {};
    Relabeler r(n, sorted, Relabeler::Mode::Minimize);
    r.run();
    return std::move(r).best();
}

bool is_canonical_sets(int n, std::span<const IndexSet> sorted) {
    check_ground_set(n);
    Relabeler r(n, sorted, Relabeler::Mode::Check);
    return !r.run();
}

SupportFamily canonical_form(const SupportFamily& f) { return SupportFamily(f.n(), canonical_sets(f.n(), f.sets())); }

bool is_canonical(const SupportFamily& f) { return is_canonical_sets(f.n(), f.sets()); }

}  // namespace copos
