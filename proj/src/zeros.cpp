#include "copos/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "copos/errors.hpp"
#include "copos/jacobi.hpp"
#include "copos/ratlin.hpp"

namespace copos {

namespace {

constexpr int kMaxZeroSearchDim = 24;

// Calls f(mask) for every k-subset of {0..n-1} in increasing numeric order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
    if (k == 0 || k > n) return;
    std::uint32_t mask = (1u << k) - 1;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
        f(IndexSet(mask));
        const std::uint32_t c = mask & (~mask + 1);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

// Subsets of equal cardinality visited in family order (lexicographic on elements).
std::vector<IndexSet> subsets_in_order(int n, int k) {
    std::vector<IndexSet> out;
    for_each_subset(n, k, [&](IndexSet s) { out.push_back(s); });
    std::sort(out.begin(), out.end());
    return out;
}

bool contains_found(const std::vector<IndexSet>& found, IndexSet s) {
    return std::any_of(found.begin(), found.end(), [&](IndexSet f) { return f.subset_of(s); });
}

template <typename T>
Vector<T> lift(const Vector<T>& local, IndexSet support, int n) {
    Vector<T> full(static_cast<std::size_t>(n), T(0));
    const auto idx = support.elements();
    for (std::size_t k = 0; k < idx.size(); ++k) full[idx[k]] = local[k];
    return full;
}

void check_dimension(int n) {
    if (n > kMaxZeroSearchDim) {
        throw GuardExceeded("minimal zero search is limited to n <= " + std::to_string(kMaxZeroSearchDim));
    }
}

}  // namespace

IndexSet support_of(const Vector<Rational>& u) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].sign() > 0) bits |= 1u << i;
    }
    return IndexSet(bits);
}

IndexSet support_of(const Vector<double>& u, double tau) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > tau) bits |= 1u << i;
    }
    return IndexSet(bits);
}

MinimalZeroSet find_minimal_zeros(const SymmetricRationalMatrix& a) {
    const int n = a.dim();
    check_dimension(n);
    MinimalZeroSet result;
    result.n = n;
    std::vector<IndexSet> found;

    for (int k = 1; k <= n; ++k) {
        for (IndexSet s : subsets_in_order(n, k)) {
            if (contains_found(found, s)) continue;
            const auto idx = s.elements();
            const PsdStatus status = psd_status(a.principal(idx));
            if (!status.psd()) {
                const auto& w = status.witness;
                const bool nonneg = std::all_of(w.begin(), w.end(), [](const Rational& x) { return x.sign() >= 0; });
                const bool nonpos = std::all_of(w.begin(), w.end(), [](const Rational& x) { return x.sign() <= 0; });
                if (nonneg || nonpos) {
                    Vector<Rational> local = w;
                    if (!nonneg) {
                        for (auto& x : local) x = -x;
                    }
                    throw NotCopositiveEvidence(lift(local, s, n), status.witness_value);
                }
                continue;
            }
            if (status.corank != 1) continue;
            Vector<Rational> v = status.kernel.front();
            const bool positive = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.sign() > 0; });
            if (!positive) continue;  // the normalized generator has a positive lead, so mixed or zero entries
            result.zeros.push_back(Zero{lift(v, s, n), s, true});
            found.push_back(s);
        }
    }
    return result;
}

FloatMinimalZeroSet find_minimal_zeros(const SymmetricFloatMatrix& a, double tau) {
    const int n = a.dim();
    check_dimension(n);
    FloatMinimalZeroSet result;
    result.n = n;
    std::vector<IndexSet> found;

    for (int k = 1; k <= n; ++k) {
        for (IndexSet s : subsets_in_order(n, k)) {
            if (contains_found(found, s)) continue;
            const auto idx = s.elements();
            const EigenDecomposition eig = jacobi_eigen(a.principal(idx));
            if (eig.values.front() < -tau) {
                std::vector<double> w = eig.vectors.front();
                const bool nonneg = std::all_of(w.begin(), w.end(), [](double x) { return x >= 0.0; });
                const bool nonpos = std::all_of(w.begin(), w.end(), [](double x) { return x <= 0.0; });
                if (nonneg || nonpos) {
                    Vector<Rational> local;
                    for (double x : w) local.emplace_back(mpq_class(std::abs(x)));
                    throw NotCopositiveEvidence(lift(local, s, n), Rational(mpq_class(eig.values.front())));
                }
                continue;
            }
            const auto corank = std::count_if(eig.values.begin(), eig.values.end(),
                                              [&](double l) { return std::abs(l) <= tau; });
            if (corank != 1) continue;
            std::vector<double> v = eig.vectors.front();
            if (v.front() < 0) {
                for (auto& x : v) x = -x;
            }
            if (!std::all_of(v.begin(), v.end(), [&](double x) { return x > tau; })) continue;
            const double top = *std::max_element(v.begin(), v.end());
            for (auto& x : v) x /= top;
            result.zeros.push_back(FloatZero{lift(v, s, n), s, true});
            found.push_back(s);
        }
    }
    return result;
}

std::vector<std::pair<Zero, Rational>> decompose_zero(const SymmetricRationalMatrix& a, const Vector<Rational>& u) {
    const int n = a.dim();
    if (static_cast<int>(u.size()) != n) throw DimensionMismatch("zero vector length does not match matrix");
    if (std::any_of(u.begin(), u.end(), [](const Rational& x) { return x.sign() < 0; })) {
        throw NotAZero("vector has negative entries");
    }
    if (support_of(u).empty()) throw NotAZero("vector is zero");
    const Rational value = a.quadratic_form(u);
    if (!value.is_zero()) throw NotAZero("u^T A u = " + value.to_string() + ", not zero");

    const MinimalZeroSet mz = find_minimal_zeros(a);
    std::vector<std::pair<Zero, Rational>> parts;
    Vector<Rational> residual = u;
    IndexSet supp = support_of(residual);
    while (!supp.empty()) {
        auto it = std::find_if(mz.zeros.begin(), mz.zeros.end(), [&](const Zero& z) { return z.support.subset_of(supp); });
        if (it == mz.zeros.end()) {
            throw NoMinimalZeroInside("no minimal zero with support inside " + supp.to_string());
        }
        std::optional<Rational> coef;
        for (int i : it->support.elements()) {
            Rational ratio = residual[i] / it->vector[i];
            if (!coef || ratio < *coef) coef = ratio;
        }
        for (int i : it->support.elements()) residual[i].sub_mul(*coef, it->vector[i]);
        parts.emplace_back(*it, *coef);
        const IndexSet next = support_of(residual);
        if (!next.strict_subset_of(supp)) throw NoMinimalZeroInside("residual support did not shrink");
        supp = next;
    }
    return parts;
}

ZeroDiagnostics zero_diagnostics(const SymmetricRationalMatrix& a, const Vector<Rational>& u, std::optional<int> distinguished) {
    ZeroDiagnostics d;
    d.au = a.apply(u);
    d.value = dot(u, d.au);
    d.is_zero = d.value.is_zero() && !support_of(u).empty();
    d.first_order_ok = std::all_of(d.au.begin(), d.au.end(), [](const Rational& x) { return x.sign() >= 0; });
    const IndexSet supp = support_of(u);
    d.support_orthogonality_ok = true;
    for (int i : supp.elements()) {
        if (!d.au[i].is_zero()) d.support_orthogonality_ok = false;
    }
    if (d.value.sign() < 0 && std::all_of(u.begin(), u.end(), [](const Rational& x) { return x.sign() >= 0; })) {
        d.not_copositive_evidence = u;
    }
    if (distinguished && supp.contains(*distinguished)) {
        const int k = *distinguished;
        const IndexSet rest = supp.without(k);
        const auto idx = rest.elements();
        Vector<Rational> scaled;
        for (int i : idx) scaled.push_back(u[i] / u[k]);
        d.pd_identity_ok = idx.empty() ? a(k, k).is_zero() : a(k, k) == a.principal(idx).quadratic_form(scaled);
    }
    return d;
}

}  // namespace copos
