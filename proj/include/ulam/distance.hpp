#pragma once

#include <stdexcept>
#include <vector>

#include "ulam/alignment.hpp"
#include "ulam/types.hpp"

namespace ulam {

namespace detail {

// Ulam distance on raw one-line sequences, both assumed to be permutations
// of the same n. d(x,y) = n - LIS(x^{-1} ∘ y), evaluated by patience sorting
// after relabeling y through the positions of x.
inline int ulam_distance_raw(const std::vector<int>& x, const std::vector<int>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<int> pos(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) pos[static_cast<std::size_t>(x[static_cast<std::size_t>(k)])] = k + 1;
    std::vector<int> relabeled(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) relabeled[static_cast<std::size_t>(k)] = pos[static_cast<std::size_t>(y[static_cast<std::size_t>(k)])];
    return n - lis_length(relabeled);
}

// Indel edit distance on raw sequences: |s| + |t| - 2*LCS(s,t).
inline int edit_distance_indel_raw(const std::vector<int>& s, const std::vector<int>& t) {
    return static_cast<int>(s.size()) + static_cast<int>(t.size()) - 2 * lcs_length(s, t);
}

}  // namespace detail

// Minimum number of symbol moves (delete + reinsert) turning x into y.
inline int ulam_distance(const Permutation& x, const Permutation& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    return detail::ulam_distance_raw(x.elems(), y.elems());
}

// Minimum number of insertions plus deletions turning s into t. For two
// permutations of [n] this equals twice their Ulam distance.
inline int edit_distance_indel(const SymbolString& s, const SymbolString& t) {
    return detail::edit_distance_indel_raw(s.elems(), t.elems());
}

inline long long objective(const std::vector<Permutation>& S, const Permutation& y) {
    long long total = 0;
    for (const auto& x : S) total += ulam_distance(x, y);
    return total;
}

inline long long objective(const std::vector<SymbolString>& S, const SymbolString& y) {
    long long total = 0;
    for (const auto& x : S) total += edit_distance_indel(x, y);
    return total;
}

// Metric-dispatched objective over raw sequences; used by the oracle's
// enumeration loops where constructing typed values per candidate would
// dominate the running time. Callers guarantee the metric's preconditions.
inline long long objective_raw(const std::vector<std::vector<int>>& S, const std::vector<int>& y,
                               Metric metric) {
    long long total = 0;
    for (const auto& x : S) {
        total += metric == Metric::Ulam ? detail::ulam_distance_raw(x, y)
                                        : detail::edit_distance_indel_raw(x, y);
    }
    return total;
}

// Symbols of `reference` left unmatched by the canonical LCS alignment with
// x. Sorted ascending; its size equals ulam_distance(reference, x).
inline std::vector<int> moved_set(const Permutation& reference, const Permutation& x) {
    if (reference.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    const AlignmentPairs a = lcs_alignment(reference, x);
    std::vector<char> matched(static_cast<std::size_t>(reference.size()) + 1, 0);
    for (const auto& [i, j] : a.pairs) {
        matched[static_cast<std::size_t>(reference.elems()[static_cast<std::size_t>(i - 1)])] = 1;
    }
    std::vector<int> moved;
    for (int v = 1; v <= reference.size(); ++v) {
        if (!matched[static_cast<std::size_t>(v)]) moved.push_back(v);
    }
    return moved;
}

}  // namespace ulam
