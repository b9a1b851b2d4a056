#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ulam/types.hpp"

namespace ulam {

// Longest strictly increasing subsequence length via patience sorting,
// O(L log L).
inline int lis_length(const std::vector<int>& seq) {
    std::vector<int> tails;
    tails.reserve(seq.size());
    for (int v : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end()) {
            tails.push_back(v);
        } else {
            *it = v;
        }
    }
    return static_cast<int>(tails.size());
}

// Classic O(L1*L2) LCS length.
inline int lcs_length(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 || lb == 0) return 0;
    std::vector<int> prev(lb + 1, 0), cur(lb + 1, 0);
    for (std::size_t i = 1; i <= la; ++i) {
        for (std::size_t j = 1; j <= lb; ++j) {
            if (a[i - 1] == b[j - 1]) {
                cur[j] = prev[j - 1] + 1;
            } else {
                cur[j] = std::max(prev[j], cur[j - 1]);
            }
        }
        std::swap(prev, cur);
    }
    return prev[lb];
}

// Canonical maximum monotone matching between a and b: among all LCS
// witnesses, the lexicographically smallest pair list (ties broken by
// smallest index into a, then smallest index into b). Pairs are 1-based.
// The fixed tie-break makes moved-symbol sets reproducible across runs.
inline AlignmentPairs lcs_alignment(const std::vector<int>& a, const std::vector<int>& b) {
    const int la = static_cast<int>(a.size());
    const int lb = static_cast<int>(b.size());
    AlignmentPairs out;
    if (la == 0 || lb == 0) return out;

    // suf[i][j] = LCS length of a[i..], b[j..] (0-based suffixes).
    std::vector<std::vector<int>> suf(static_cast<std::size_t>(la) + 1,
                                      std::vector<int>(static_cast<std::size_t>(lb) + 1, 0));
    for (int i = la - 1; i >= 0; --i) {
        for (int j = lb - 1; j >= 0; --j) {
            if (a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) {
                suf[i][j] = suf[i + 1][j + 1] + 1;
            } else {
                suf[i][j] = std::max(suf[i + 1][j], suf[i][j + 1]);
            }
        }
    }

    // For each symbol, the ascending list of its positions in b.
    std::unordered_map<int, std::vector<int>> occ;
    for (int j = 0; j < lb; ++j) occ[b[static_cast<std::size_t>(j)]].push_back(j);

    int remaining = suf[0][0];
    int i = 0, j = 0;
    out.pairs.reserve(static_cast<std::size_t>(remaining));
    while (remaining > 0) {
        // Greedy front-to-back: the smallest a-index that still admits an
        // optimal completion, then the smallest b-index for it. For a fixed
        // a-index the earliest matching b-position dominates later ones, so
        // only that one needs checking.
        bool found = false;
        for (; i < la; ++i) {
            auto it = occ.find(a[static_cast<std::size_t>(i)]);
            if (it == occ.end()) continue;
            const auto& positions = it->second;
            auto pit = std::lower_bound(positions.begin(), positions.end(), j);
            if (pit == positions.end()) continue;
            const int jj = *pit;
            if (suf[i + 1][jj + 1] >= remaining - 1) {
                out.pairs.emplace_back(i + 1, jj + 1);
                j = jj + 1;
                ++i;
                --remaining;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("lcs reconstruction lost an optimal completion");
    }
    return out;
}

inline AlignmentPairs lcs_alignment(const Permutation& a, const Permutation& b) {
    return lcs_alignment(a.elems(), b.elems());
}

inline AlignmentPairs lcs_alignment(const SymbolString& a, const SymbolString& b) {
    return lcs_alignment(a.elems(), b.elems());
}

}  // namespace ulam
