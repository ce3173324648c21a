#include "copos/family.hpp"

#include <algorithm>
#include <cctype>

#include "copos/errors.hpp"

namespace copos {

IndexSet IndexSet::of(std::initializer_list<int> zero_based) {
    return of(std::vector<int>(zero_based));
}

IndexSet IndexSet::of(const std::vector<int>& zero_based) {
    std::uint32_t bits = 0;
    for (int i : zero_based) {
        if (i < 0 || i >= kMaxGroundSet) throw PreconditionViolation("index out of range for IndexSet");
        bits |= 1u << i;
    }
    return IndexSet(bits);
}

std::vector<int> IndexSet::elements() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

std::string IndexSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i : elements()) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "}";
}

SupportFamily::SupportFamily(int n, std::vector<IndexSet> sets) : n_(n), sets_(std::move(sets)) {
    if (n < 1 || n > kMaxGroundSet) throw PreconditionViolation("family ground set size out of range");
    for (IndexSet s : sets_) {
        if (s.empty()) throw PreconditionViolation("family contains an empty index set");
        if (s.max_element() >= n) throw PreconditionViolation("family index " + std::to_string(s.max_element() + 1) +
                                                              " exceeds n = " + std::to_string(n));
    }
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

bool SupportFamily::contains(IndexSet s) const { return std::binary_search(sets_.begin(), sets_.end(), s); }

SupportFamily SupportFamily::with(IndexSet s) const {
    std::vector<IndexSet> sets = sets_;
    sets.push_back(s);
    return SupportFamily(n_, std::move(sets));
}

SupportFamily SupportFamily::relabel(const std::vector<int>& perm) const {
    std::vector<IndexSet> sets;
    sets.reserve(sets_.size());
    for (IndexSet s : sets_) {
        std::uint32_t img = 0;
        for (int i : s.elements()) img |= 1u << perm.at(i);
        sets.emplace_back(img);
    }
    return SupportFamily(n_, std::move(sets));
}

std::string SupportFamily::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
        if (k) out += ",";
        out += sets_[k].to_string();
    }
    return out;
}

nlohmann::json SupportFamily::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (IndexSet s : sets_) {
        nlohmann::json inner = nlohmann::json::array();
        for (int i : s.elements()) inner.push_back(i + 1);
        arr.push_back(std::move(inner));
    }
    return arr;
}

std::strong_ordering operator<=>(const SupportFamily& a, const SupportFamily& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    if (a.sets_.size() != b.sets_.size()) return a.sets_.size() <=> b.sets_.size();
    for (std::size_t k = 0; k < a.sets_.size(); ++k) {
        if (auto c = a.sets_[k] <=> b.sets_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

SupportFamily parse_family(int n, std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) { return ParseError(msg, 1, static_cast<int>(pos) + 1); };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };

    std::vector<IndexSet> sets;
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '{') throw fail("expected '{'");
        ++pos;
        std::uint32_t bits = 0;
        bool need_number = true;
        while (true) {
            skip_ws();
            if (pos >= text.size()) throw fail("unterminated index set");
            if (text[pos] == '}') {
                if (need_number) throw fail("empty index set or trailing comma");
                ++pos;
                break;
            }
            if (!need_number) {
                if (text[pos] != ',') throw fail("expected ',' or '}'");
                ++pos;
                need_number = true;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail("expected an index");
            long value = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                value = value * 10 + (text[pos] - '0');
                if (value > kMaxGroundSet) throw fail("index too large");
                ++pos;
            }
            if (value < 1 || value > n) throw fail("index " + std::to_string(value) + " outside 1.." + std::to_string(n));
            bits |= 1u << (value - 1);
            need_number = false;
        }
        sets.emplace_back(bits);
        skip_ws();
        if (pos < text.size()) {
            if (text[pos] != ',') throw fail("expected ',' between index sets");
            ++pos;
            skip_ws();
            if (pos >= text.size()) throw fail("trailing ','");
        }
    }
    return SupportFamily(n, std::move(sets));
}

SupportFamily family_from_json(int n, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("family JSON must be an array of arrays", 1, 1);
    std::vector<IndexSet> sets;
    for (const auto& inner : j) {
        if (!inner.is_array() || inner.empty()) throw ParseError("each index set must be a nonempty array", 1, 1);
        std::uint32_t bits = 0;
        for (const auto& v : inner) {
            if (!v.is_number_integer()) throw ParseError("indices must be integers", 1, 1);
            int k = v.get<int>();
            if (k < 1 || k > n) throw ParseError("index " + std::to_string(k) + " outside 1.." + std::to_string(n), 1, 1);
            bits |= 1u << (k - 1);
        }
        sets.emplace_back(bits);
    }
    return SupportFamily(n, std::move(sets));
}

}  // namespace copos
