#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ulam {

enum class Metric { Ulam, EditIndel };

inline const char* metric_name(Metric m) {
    return m == Metric::Ulam ? "ulam" : "edit-indel";
}

// A permutation of {1..n} in one-line notation. Validated at construction;
// downstream code may assume bijectivity.
class Permutation {
public:
    explicit Permutation(std::vector<int> elems) : elems_(std::move(elems)) {
        const int n = static_cast<int>(elems_.size());
        if (n == 0) throw std::invalid_argument("permutation: empty sequence");
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : elems_) {
            if (v < 1 || v > n) {
                throw std::invalid_argument("permutation: value " + std::to_string(v) +
                                            " outside 1.." + std::to_string(n));
            }
            if (seen[static_cast<std::size_t>(v)]) {
                throw std::invalid_argument("permutation: duplicate value " + std::to_string(v));
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> e(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = i + 1;
        return Permutation(std::move(e));
    }

    int size() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elems() const { return elems_; }

    // positions()[v] is the 1-based position of symbol v; index 0 unused.
    std::vector<int> positions() const {
        std::vector<int> pos(elems_.size() + 1, 0);
        for (std::size_t k = 0; k < elems_.size(); ++k) pos[static_cast<std::size_t>(elems_[k])] = static_cast<int>(k) + 1;
        return pos;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.elems_ == b.elems_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

private:
    std::vector<int> elems_;
};

// A string over alphabet {1..sigma}; repeats allowed, may be empty.
class SymbolString {
public:
    SymbolString() : sigma_(0) {}

    SymbolString(std::vector<int> elems, int sigma) : elems_(std::move(elems)), sigma_(sigma) {
        if (sigma_ < 0) throw std::invalid_argument("string: negative alphabet size");
        for (int v : elems_) {
            if (v < 1 || v > sigma_) {
                throw std::invalid_argument("string: symbol " + std::to_string(v) +
                                            " outside 1.." + std::to_string(sigma_));
            }
        }
    }

    // Alphabet inferred as the largest symbol present.
    explicit SymbolString(std::vector<int> elems) : elems_(std::move(elems)), sigma_(0) {
        for (int v : elems_) {
            if (v < 1) throw std::invalid_argument("string: symbol " + std::to_string(v) + " below 1");
            sigma_ = std::max(sigma_, v);
        }
    }

    explicit SymbolString(const Permutation& p) : elems_(p.elems()), sigma_(p.size()) {}

    int length() const { return static_cast<int>(elems_.size()); }
    int sigma() const { return sigma_; }
    const std::vector<int>& elems() const { return elems_; }

    // True when the content is a bijection on {1..length}.
    bool is_permutation() const {
        const int n = length();
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (int v : elems_) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return n >= 1;
    }

    friend bool operator==(const SymbolString& a, const SymbolString& b) { return a.elems_ == b.elems_; }
    friend bool operator!=(const SymbolString& a, const SymbolString& b) { return !(a == b); }

private:
    std::vector<int> elems_;
    int sigma_;
};

// Matched positions of a common subsequence. Indices are 1-based into the
// first and second sequence; strictly increasing in both coordinates and the
// paired symbols are equal.
struct AlignmentPairs {
    std::vector<std::pair<int, int>> pairs;

    friend bool operator==(const AlignmentPairs& a, const AlignmentPairs& b) { return a.pairs == b.pairs; }
};

inline bool alignment_is_valid(const AlignmentPairs& a, const std::vector<int>& first,
                               const std::vector<int>& second) {
    int pi = 0, pj = 0;
    for (const auto& [i, j] : a.pairs) {
        if (i <= pi || j <= pj) return false;
        if (i > static_cast<int>(first.size()) || j > static_cast<int>(second.size())) return false;
        if (first[static_cast<std::size_t>(i - 1)] != second[static_cast<std::size_t>(j - 1)]) return false;
        pi = i;
        pj = j;
    }
    return true;
}

}  // namespace ulam
